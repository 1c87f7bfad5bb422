//! Acceptance suite. Every test prints one `PASS`/`FAIL` line for its
//! criterion before asserting, so `cargo test --test acceptance -- --nocapture`
//! gives a readable summary.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use segmental::basis::{eval_t, eval_u};
use segmental::interpolation::check_resonance;
use segmental::{
    apply_k_rho, cl_log_bounds, equidistant_bounds, interpolate, k_rho_eigenvalue, lebesgue_constant,
    lebesgue_constant_with, measure_with, operator_norm, vandermonde, BasisTag, ChebExpansion, Error,
    MeasurementVector, NodalInterpolant, QuadratureConfig, SegmentSet, SupConfig,
};

const REPRODUCTION_TOL: f64 = 1e-7;
const REPRODUCTION_BUDGET: Duration = Duration::from_secs(10);
const SMALL_CASE_TOL: f64 = 1e-6;
const SANDWICH_BUDGET: Duration = Duration::from_secs(30);
const EQUALITY_REL_TOL: f64 = 1e-6;
const CLO_MIN_GAP: f64 = 0.5;
const CL_STABILITY: f64 = 0.02;
const CL_BUDGET: Duration = Duration::from_secs(120);
const RESONANT_PIVOT_RATIO: f64 = 1e6;
const EIGEN_TOL: f64 = 1e-9;
const AFFINE_REL_TOL: f64 = 1e-8;
const COMMUTATION_TOL: f64 = 1e-8;
const RUNGE_FACTOR: f64 = 5.0;
const RUNGE_CL_MAX: f64 = 0.1;

fn report(n: u32, ok: bool, detail: String) {
    println!("criterion {n:>2}: {} {detail}", if ok { "PASS" } else { "FAIL" });
}

fn grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| -1.0 + 2.0 * k as f64 / (n - 1) as f64)
}

fn exact_mu(set: &SegmentSet, p: &ChebExpansion) -> MeasurementVector {
    MeasurementVector::external(set.segments().iter().map(|s| p.integrate(s.alpha(), s.beta())).collect())
}

fn random_chain(rng: &mut ChaCha8Rng, r: usize, interval: (f64, f64)) -> SegmentSet {
    let weights: Vec<f64> = (0..r).map(|_| rng.gen_range(0.2..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let (lo, hi) = interval;
    let mut cuts = vec![lo];
    let mut acc = 0.0;
    for w in &weights[..r - 1] {
        acc += w;
        cuts.push(lo + (hi - lo) * acc / total);
    }
    cuts.push(hi);
    let pairs: Vec<(f64, f64)> = cuts.windows(2).map(|w| (w[0], w[1])).collect();
    SegmentSet::from_endpoints(&pairs, interval).unwrap()
}

#[test]
fn criterion_01_polynomial_reproduction() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for r in 1..=15 {
        let mut sets = vec![SegmentSet::chebyshev_lobatto(r).unwrap(), SegmentSet::cl_overlapping(r).unwrap()];
        for lambda in [0.3, 0.5, 0.7] {
            sets.push(SegmentSet::arc_uniform_cl_midpoints(r, lambda).unwrap());
        }
        if r <= 10 {
            sets.push(SegmentSet::equidistant(r, -1.0, 1.0).unwrap());
        }
        for set in &sets {
            for _ in 0..100 {
                let p = ChebExpansion::new((0..r).map(|_| rng.gen_range(-1.0..=1.0)).collect()).unwrap();
                let q = interpolate(set, &exact_mu(set, &p)).unwrap();
                let err = grid(1001).map(|x| (q.eval(x) - p.eval(x)).abs()).fold(0.0, f64::max);
                worst = worst.max(err);
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = worst <= REPRODUCTION_TOL && elapsed < REPRODUCTION_BUDGET;
    report(1, ok, format!("{cases} cases, worst sup error {worst:.2e}, {elapsed:.2?}"));
    assert!(worst <= REPRODUCTION_TOL);
    assert!(elapsed < REPRODUCTION_BUDGET);
}

#[test]
fn criterion_02_small_cases() {
    // equidistant r=2: l_1 = 1/2 - x, l_2 = x + 1/2, lengths 1, so
    // Lambda = sup |1/2 - x| + |x + 1/2| = 2 at x = +-1.
    // CLO r=2: s_1 = [-1,0], s_2 = [-1,1], l_1 = -2x, l_2 = x + 1/2, so
    // Lambda = sup 2|x| + |2x + 1| = 5 at x = 1, while the kernel on the
    // elementary intervals [-1,0] (both) and [0,1] (s_2 only) gives
    // |1/2 - x| + |x + 1/2| with supremum 2.
    let eq = lebesgue_constant(&SegmentSet::equidistant(2, -1.0, 1.0).unwrap()).unwrap().value;
    let clo_set = SegmentSet::cl_overlapping(2).unwrap();
    let clo = lebesgue_constant(&clo_set).unwrap().value;
    let op = operator_norm(&clo_set).unwrap().value;
    let ok = (eq - 2.0).abs() <= SMALL_CASE_TOL && (clo - 5.0).abs() <= SMALL_CASE_TOL && (op - 2.0).abs() <= SMALL_CASE_TOL;
    report(2, ok, format!("Lambda_2(eq) = {eq}, Lambda_2(CLO) = {clo}, opnorm_2(CLO) = {op}"));
    assert!(ok);
}

#[test]
fn criterion_03_equidistant_sandwich() {
    let start = Instant::now();
    let mut values = vec![0.0; 21];
    let mut inside = true;
    for r in 2..=20 {
        let v = lebesgue_constant(&SegmentSet::equidistant(r, -1.0, 1.0).unwrap()).unwrap().value;
        let (lo, hi) = equidistant_bounds(r).unwrap();
        inside &= lo <= v && v <= hi;
        values[r] = v;
    }
    values[1] = lebesgue_constant(&SegmentSet::equidistant(1, -1.0, 1.0).unwrap()).unwrap().value;
    let monotone = (4..=20).all(|r| values[r] >= values[r - 1]);
    let elapsed = start.elapsed();
    let ok = inside && monotone && elapsed < SANDWICH_BUDGET;
    report(
        3,
        ok,
        format!("r=2..20 inside bounds: {inside}, monotone from r=4: {monotone}, Lambda_20 = {:.1}, {elapsed:.2?}", values[20]),
    );
    assert!(inside && monotone);
    assert!(elapsed < SANDWICH_BUDGET);
}

#[test]
fn criterion_04_operator_norm_vs_lebesgue() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_rel: f64 = 0.0;
    for _ in 0..50 {
        let r = rng.gen_range(1..=12);
        let set = random_chain(&mut rng, r, (-1.0, 1.0));
        let lambda = lebesgue_constant(&set).unwrap().value;
        let op = operator_norm(&set).unwrap().value;
        worst_rel = worst_rel.max((lambda - op).abs() / lambda);
    }
    let mut min_gap = f64::INFINITY;
    for r in 4..=20 {
        let set = SegmentSet::cl_overlapping(r).unwrap();
        let gap = lebesgue_constant(&set).unwrap().value - operator_norm(&set).unwrap().value;
        min_gap = min_gap.min(gap);
    }
    let ok = worst_rel <= EQUALITY_REL_TOL && min_gap >= CLO_MIN_GAP;
    report(4, ok, format!("chains: max |Lambda - opnorm|/Lambda = {worst_rel:.2e}; CLO r=4..20 min gap {min_gap:.3}"));
    assert!(worst_rel <= EQUALITY_REL_TOL);
    assert!(min_gap >= CLO_MIN_GAP);
}

#[test]
fn criterion_05_cl_logarithmic_regime() {
    let start = Instant::now();
    let mut above = true;
    let (mut best, mut best_r, mut best_doubled) = (0.0f64, 0, 0.0f64);
    let mut worst_drift: f64 = 0.0;
    for r in 2..=100 {
        let set = SegmentSet::chebyshev_lobatto(r).unwrap();
        let v = lebesgue_constant(&set).unwrap().value;
        let fine = lebesgue_constant_with(&set, SupConfig::default().doubled()).unwrap().value;
        let (lower, shape) = cl_log_bounds(r).unwrap();
        above &= v > lower;
        worst_drift = worst_drift.max((fine - v).abs() / v);
        if v / shape > best {
            best = v / shape;
            best_r = r;
            best_doubled = fine / shape;
        }
    }
    let stable = (best_doubled - best).abs() <= CL_STABILITY * best;
    let elapsed = start.elapsed();
    let ok = above && best.is_finite() && stable && elapsed < CL_BUDGET;
    report(
        5,
        ok,
        format!(
            "above lower bound r=2..100: {above}; max Lambda/(ln r + pi/2) = {best:.4} at r={best_r} \
             (doubled grid {best_doubled:.4}, worst per-r drift {worst_drift:.1e}), {elapsed:.2?}"
        ),
    );
    assert!(above && best.is_finite() && stable);
    assert!(elapsed < CL_BUDGET);
}

#[test]
fn criterion_06_resonant_radii() {
    let singular = [
        (vec![PI / 3.0, 2.0 * PI / 3.0], PI / 2.0),
        (vec![PI / 4.0, PI / 2.0, 3.0 * PI / 4.0], PI / 3.0),
        (vec![PI / 4.0, PI / 2.0, 3.0 * PI / 4.0], 2.0 * PI / 3.0),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for (taus, rho) in &singular {
        let set = SegmentSet::arc_uniform(taus, *rho).unwrap();
        let v = vandermonde(&set, BasisTag::ChebU).unwrap();
        let flagged = matches!(segmental::linalg::LuFactorization::new(v.matrix()), Err(Error::SingularSystem { .. }));
        let analytic = check_resonance(*rho, taus.len()).is_err();
        ok &= flagged && analytic;
        detail.push_str(&format!("rho={:.4} r={} singular={flagged}; ", rho, taus.len()));
    }
    for rho in [0.4 * PI, 0.15 * PI] {
        for taus in [vec![PI / 3.0, 2.0 * PI / 3.0], vec![PI / 4.0, PI / 2.0, 3.0 * PI / 4.0]] {
            let set = SegmentSet::arc_uniform(&taus, rho).unwrap();
            let v = vandermonde(&set, BasisTag::ChebU).unwrap();
            match segmental::linalg::LuFactorization::new(v.matrix()) {
                Ok(lu) => {
                    ok &= lu.pivot_ratio() < RESONANT_PIVOT_RATIO;
                    detail.push_str(&format!("rho={rho:.4} r={} pivot ratio {:.2}; ", taus.len(), lu.pivot_ratio()));
                }
                Err(e) => {
                    ok = false;
                    detail.push_str(&format!("rho={rho:.4} r={} unexpected {e}; ", taus.len()));
                }
            }
        }
    }
    report(6, ok, detail);
    assert!(ok);
}

#[test]
fn criterion_07_k_rho_eigenrelation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let rho = rng.gen_range(0.01..PI - 0.01);
        let t = rng.gen_range(0.01..PI - 0.01);
        for j in 0..=15 {
            let lhs = apply_k_rho(|x| eval_u(j, x), rho, t).unwrap();
            let rhs = k_rho_eigenvalue(j, rho).unwrap() * eval_u(j, t.cos());
            worst = worst.max((lhs - rhs).abs());
        }
    }
    let ok = worst <= EIGEN_TOL;
    report(7, ok, format!("20 random (rho, t), j <= 15: max deviation {worst:.2e}"));
    assert!(ok);
}

#[test]
fn criterion_08_affine_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let r = rng.gen_range(1..=12);
        let set = random_chain(&mut rng, r, (-1.0, 1.0));
        let moved = set.affine_map((0.0, 7.0)).unwrap();
        let a = lebesgue_constant(&set).unwrap().value;
        let b = lebesgue_constant(&moved).unwrap().value;
        worst = worst.max((a - b).abs() / a);
    }
    let ok = worst <= AFFINE_REL_TOL;
    report(8, ok, format!("20 random chains on [-1,1] vs [0,7]: max relative gap {worst:.2e}"));
    assert!(ok);
}

#[test]
fn criterion_09_commutation() {
    let f = |x: f64| eval_t(5, x);
    let mut worst: f64 = 0.0;
    for r in 4..=8 {
        for set in [SegmentSet::chebyshev_lobatto(r).unwrap(), SegmentSet::equidistant(r, -1.0, 1.0).unwrap()] {
            let nodes = set.chain_nodes().unwrap();
            let xs = nodes.nodes().to_vec();
            let mu = MeasurementVector::external(xs.windows(2).map(|w| f(w[1]) - f(w[0])).collect());
            let p = interpolate(&set, &mu).unwrap();
            let nodal = NodalInterpolant::from_fn(nodes, f);
            let gap = grid(1001).map(|x| (p.eval(x) - nodal.eval_deriv(x)).abs()).fold(0.0, f64::max);
            worst = worst.max(gap);
        }
    }
    let ok = worst <= COMMUTATION_TOL;
    report(9, ok, format!("f = T_5, r = 4..8: max sup gap {worst:.2e}"));
    assert!(ok);
}

#[test]
fn criterion_10_runge() {
    let runge = |x: f64| 1.0 / (1.0 + 10.0 * x * x);
    let error = |set: &SegmentSet| {
        let mu = measure_with(runge, set, QuadratureConfig::default()).unwrap();
        let p = interpolate(set, &mu).unwrap();
        grid(1000).map(|x| (p.eval(x) - runge(x)).abs()).fold(0.0, f64::max)
    };
    let eq = error(&SegmentSet::equidistant(10, -1.0, 1.0).unwrap());
    let cl = error(&SegmentSet::chebyshev_lobatto(10).unwrap());
    let ok = eq >= RUNGE_FACTOR * cl && cl <= RUNGE_CL_MAX;
    report(10, ok, format!("r=10 max error: equidistant {eq:.4}, CL {cl:.4}, factor {:.2}", eq / cl));
    assert!(ok);
}
