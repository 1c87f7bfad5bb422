//! Conditioning of segmental interpolation: Lebesgue constants, operator
//! norms, fill distance, error bounds and the segment-averaging operator
//! `K_rho` with its spectral data.
//!
//! Suprema over `x` are taken on a Chebyshev-clustered grid followed by a
//! golden-section refinement next to the discrete maximizer. The reported
//! value is always an attained function value, so it never exceeds the true
//! supremum.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::basis::{eval_u, fill_u, ChebExpansion};
use crate::error::{invalid, Result};
use crate::interpolation::{arc_eigenvalue, SegmentalBasis};
use crate::linalg::{LuFactorization, Matrix};
use crate::quadrature::QuadratureRule;
use crate::segments::{Family, NodeSet, SegmentClass, SegmentSet};

/// Grid and refinement parameters for suprema over an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupConfig {
    /// Lower bound on the number of grid points.
    pub min_points: usize,
    /// Points per degree of freedom; the grid has
    /// `max(min_points, per_dof * r)` points.
    pub per_dof: usize,
    /// Golden-section steps in each cell next to the grid maximizer.
    pub refine_steps: usize,
}

impl Default for SupConfig {
    fn default() -> Self {
        Self {
            min_points: 4096,
            per_dof: 200,
            refine_steps: 40,
        }
    }
}

impl SupConfig {
    pub fn points(&self, r: usize) -> usize {
        self.min_points.max(self.per_dof * r).max(2)
    }

    /// Same scheme on a grid twice as fine.
    pub fn doubled(&self) -> Self {
        Self {
            min_points: 2 * self.min_points,
            per_dof: 2 * self.per_dof,
            ..*self
        }
    }
}

/// Result of a supremum search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupEstimate {
    pub value: f64,
    pub argmax: f64,
    pub grid_points: usize,
}

/// `x_k = mid - half cos(pi k / (n - 1))`, increasing, endpoints exact.
pub fn clustered_grid(interval: (f64, f64), n: usize) -> Vec<f64> {
    let (lo, hi) = interval;
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    (0..n)
        .map(|k| match k {
            0 => lo,
            _ if k == n - 1 => hi,
            _ => mid - half * (PI * k as f64 / (n - 1) as f64).cos(),
        })
        .collect()
}

fn better(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    // larger value wins, ties go to the smaller abscissa
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, steps: usize) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut best = better((fc, c), (fd, d));
    for _ in 0..steps {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
            best = better(best, (fc, c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
            best = better(best, (fd, d));
        }
    }
    best
}

/// Supremum of `f` over `interval` with `n` grid points.
pub fn sup_on_interval<F>(f: F, interval: (f64, f64), n: usize, refine_steps: usize) -> SupEstimate
where
    F: Fn(f64) -> f64 + Sync,
{
    let grid = clustered_grid(interval, n.max(2));
    let values: Vec<f64> = grid.par_iter().map(|&x| f(x)).collect();
    let mut k = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[k] {
            k = i;
        }
    }
    let mut best = (values[k], grid[k]);
    if refine_steps > 0 {
        if k > 0 {
            best = better(best, golden_max(&f, grid[k - 1], grid[k], refine_steps));
        }
        if k + 1 < grid.len() {
            best = better(best, golden_max(&f, grid[k], grid[k + 1], refine_steps));
        }
    }
    SupEstimate {
        value: best.0,
        argmax: best.1,
        grid_points: grid.len(),
    }
}

/// `sum_i |s_i| |l_{s_i}(x)|` for a segmental Lagrange basis.
pub fn lebesgue_function(basis: &SegmentalBasis, x: f64) -> f64 {
    let r = basis.len();
    let mut scratch = vec![0.0; r];
    let mut values = vec![0.0; r];
    basis.eval_all(x, &mut scratch, &mut values);
    values.iter().zip(basis.lengths()).map(|(l, s)| s * l.abs()).sum()
}

/// Lebesgue constant `sup_x sum_i |s_i| |l_{s_i}(x)|` with the default grid.
pub fn lebesgue_constant(set: &SegmentSet) -> Result<SupEstimate> {
    lebesgue_constant_with(set, SupConfig::default())
}

pub fn lebesgue_constant_with(set: &SegmentSet, config: SupConfig) -> Result<SupEstimate> {
    let basis = SegmentalBasis::new(set)?;
    Ok(sup_on_interval(
        |x| lebesgue_function(&basis, x),
        set.interval(),
        config.points(set.len()),
        config.refine_steps,
    ))
}

/// Coverage of the elementary intervals cut out by all segment endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelProfile {
    breakpoints: Vec<f64>,
    coverage: Vec<Vec<usize>>,
}

impl KernelProfile {
    pub fn new(set: &SegmentSet) -> Self {
        let (lo, hi) = set.interval();
        let mut breakpoints = vec![lo, hi];
        for s in set.segments() {
            breakpoints.push(s.alpha());
            breakpoints.push(s.beta());
        }
        breakpoints.sort_by(f64::total_cmp);
        breakpoints.dedup();
        let coverage = breakpoints
            .windows(2)
            .map(|w| {
                set.segments()
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.alpha() <= w[0] && w[1] <= s.beta())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Self { breakpoints, coverage }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Indices of the segments covering each elementary interval.
    pub fn coverage(&self) -> &[Vec<usize>] {
        &self.coverage
    }

    /// `int |sum_i l_i(x) 1_{s_i}(t)| dt` given the basis values `l_i(x)`.
    pub fn kernel_norm(&self, values: &[f64]) -> f64 {
        self.breakpoints
            .windows(2)
            .zip(&self.coverage)
            .map(|(w, cov)| (w[1] - w[0]) * cov.iter().map(|&i| values[i]).sum::<f64>().abs())
            .sum()
    }
}

/// Operator norm of the interpolation operator on `L_inf`:
/// `sup_x int |sum_i l_{s_i}(x) 1_{s_i}(t)| dt`, exact in `t`.
pub fn operator_norm(set: &SegmentSet) -> Result<SupEstimate> {
    operator_norm_with(set, SupConfig::default())
}

pub fn operator_norm_with(set: &SegmentSet, config: SupConfig) -> Result<SupEstimate> {
    let basis = SegmentalBasis::new(set)?;
    let profile = KernelProfile::new(set);
    let r = set.len();
    let f = |x: f64| {
        let mut scratch = vec![0.0; r];
        let mut values = vec![0.0; r];
        basis.eval_all(x, &mut scratch, &mut values);
        profile.kernel_norm(&values)
    };
    Ok(sup_on_interval(f, set.interval(), config.points(r), config.refine_steps))
}

/// `sup_x min_i max(|x - alpha_i|, |x - beta_i|)`, computed exactly.
///
/// Each `max(|x - alpha_i|, |x - beta_i|)` is `|x - m_i| + h_i` with
/// midpoint `m_i` and half-length `h_i`, so the lower envelope is piecewise
/// linear and its maximum sits at an interval end, a vertex, or where a
/// rising branch meets a falling one.
pub fn fill_distance(set: &SegmentSet) -> f64 {
    let (lo, hi) = set.interval();
    let vs: Vec<(f64, f64)> = set
        .segments()
        .iter()
        .map(|s| (s.midpoint(), 0.5 * s.len()))
        .collect();
    let envelope = |x: f64| vs.iter().map(|(m, h)| (x - m).abs() + h).fold(f64::INFINITY, f64::min);
    let mut candidates = vec![lo, hi];
    for &(mi, hi_) in &vs {
        candidates.push(mi);
        for &(mj, hj) in &vs {
            candidates.push(0.5 * (mi + mj + hj - hi_));
        }
    }
    candidates
        .into_iter()
        .filter(|x| (lo..=hi).contains(x))
        .map(envelope)
        .fold(0.0, f64::max)
}

/// Grid estimate (from below) of `omega(f, delta) = sup_{|x-y| <= delta} |f(x) - f(y)|`
/// on `points` equally spaced samples.
pub fn modulus_of_continuity(f: impl Fn(f64) -> f64, interval: (f64, f64), delta: f64, points: usize) -> f64 {
    let (lo, hi) = interval;
    let n = points.max(2);
    let step = (hi - lo) / (n - 1) as f64;
    let values: Vec<f64> = (0..n).map(|k| f(lo + step * k as f64)).collect();
    let window = ((delta / step) * (1.0 + 1e-12)).floor() as usize;
    if window == 0 {
        return 0.0;
    }
    // sliding max and min over windows of `window + 1` samples
    let mut maxq = std::collections::VecDeque::new();
    let mut minq = std::collections::VecDeque::new();
    let mut best: f64 = 0.0;
    for j in 0..n {
        while maxq.back().is_some_and(|&k: &usize| values[k] <= values[j]) {
            maxq.pop_back();
        }
        maxq.push_back(j);
        while minq.back().is_some_and(|&k: &usize| values[k] >= values[j]) {
            minq.pop_back();
        }
        minq.push_back(j);
        let start = j.saturating_sub(window);
        while maxq.front().is_some_and(|&k| k < start) {
            maxq.pop_front();
        }
        while minq.front().is_some_and(|&k| k < start) {
            minq.pop_front();
        }
        best = best.max(values[maxq[0]] - values[minq[0]]);
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBound {
    pub lambda: f64,
    pub fill_distance: f64,
    pub omega: f64,
    /// `lambda * omega(f, h)`.
    pub bound: f64,
}

/// `Lambda_r(S) omega(f, h)` with `omega` sampled on `delta_grid` points.
pub fn error_bound(set: &SegmentSet, f: impl Fn(f64) -> f64, delta_grid: usize) -> Result<ErrorBound> {
    if delta_grid < 2 {
        return Err(invalid("modulus-of-continuity grid needs at least 2 points"));
    }
    let lambda = lebesgue_constant(set)?.value;
    let h = fill_distance(set);
    let omega = modulus_of_continuity(f, set.interval(), h, delta_grid);
    Ok(ErrorBound {
        lambda,
        fill_distance: h,
        omega,
        bound: lambda * omega,
    })
}

/// Barycentric weights `1 / prod_{k != j} (xi_j - xi_k)`.
fn barycentric_weights(xs: &[f64]) -> Vec<f64> {
    (0..xs.len())
        .map(|j| {
            1.0 / xs
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &xk)| xs[j] - xk)
                .product::<f64>()
        })
        .collect()
}

/// `sum_j |l_{xi_j}(x)|` for point interpolation.
fn nodal_lebesgue_function(xs: &[f64], w: &[f64], x: f64) -> f64 {
    if xs.contains(&x) {
        return 1.0;
    }
    let node_poly: f64 = xs.iter().map(|xi| x - xi).product();
    node_poly.abs() * xs.iter().zip(w).map(|(xi, wj)| (wj / (x - xi)).abs()).sum::<f64>()
}

/// Nodal Lebesgue constant `sup_x sum_j |l_{xi_j}(x)|` over the node set's
/// interval.
pub fn nodal_lebesgue_constant(nodes: &NodeSet) -> SupEstimate {
    nodal_lebesgue_constant_with(nodes, SupConfig::default())
}

pub fn nodal_lebesgue_constant_with(nodes: &NodeSet, config: SupConfig) -> SupEstimate {
    let xs = nodes.nodes();
    let w = barycentric_weights(xs);
    sup_on_interval(
        |x| nodal_lebesgue_function(xs, &w, x),
        nodes.interval(),
        config.points(xs.len()),
        config.refine_steps,
    )
}

/// `(2 / (b - a)) max|s_i| r^3 Lambda_{r+1}(X)` with `X` the chain nodes.
pub fn bound_c1_vs_nodal(set: &SegmentSet) -> Result<f64> {
    if set.class() != SegmentClass::Chain {
        return Err(invalid("the chain bound needs a chain set"));
    }
    let (a, b) = set.interval();
    let r = set.len() as f64;
    let longest = set.lengths().into_iter().fold(0.0, f64::max);
    let nodal = nodal_lebesgue_constant(&set.chain_nodes()?).value;
    Ok(2.0 / (b - a) * longest * r.powi(3) * nodal)
}

/// `((1/pi) 2^(r-1) / r^2, r 2^(r+4))` for equidistant segments.
pub fn equidistant_bounds(r: usize) -> Result<(f64, f64)> {
    if r == 0 {
        return Err(invalid("r must be at least 1"));
    }
    let rf = r as f64;
    Ok((2f64.powi(r as i32 - 1) / (PI * rf * rf), rf * 2f64.powi(r as i32 + 4)))
}

/// `((1/2)((4/pi^2) ln r - 1), ln r + pi/2)` for Chebyshev-Lobatto segments.
/// The second entry is the logarithmic shape only; the multiplier norm
/// factor comes from [`k_inverse_norm_bounds`].
pub fn cl_log_bounds(r: usize) -> Result<(f64, f64)> {
    if r == 0 {
        return Err(invalid("r must be at least 1"));
    }
    let l = (r as f64).ln();
    Ok((projection_lower_bound(r), l + PI / 2.0))
}

/// Lower bound `(1/2)((4/pi^2) ln r - 1)` valid for every projection onto
/// polynomials of degree `r - 1`.
pub fn projection_lower_bound(r: usize) -> f64 {
    0.5 * (4.0 / (PI * PI) * (r as f64).ln() - 1.0)
}

/// Eigenvalue `sin((j+1) rho) / ((j+1) sin rho)` of `K_rho` for `U_j`.
pub fn k_rho_eigenvalue(j: usize, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(arc_eigenvalue(j, rho))
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho > 0.0 && rho < PI) {
        return Err(invalid(format!("arc radius {rho} outside (0, pi)")));
    }
    Ok(())
}

/// Offset used in place of `t = 0` and `t = pi`.
pub const K_RHO_ENDPOINT_SHIFT: f64 = 1e-8;

/// Average of `f` over `[cos(t + rho), cos(t - rho)]` by 64-point
/// Gauss-Legendre quadrature.
pub fn apply_k_rho(f: impl Fn(f64) -> f64, rho: f64, t: f64) -> Result<f64> {
    check_rho(rho)?;
    if !(0.0..=PI).contains(&t) {
        return Err(invalid(format!("angle {t} outside [0, pi]")));
    }
    let t = t.clamp(K_RHO_ENDPOINT_SHIFT, PI - K_RHO_ENDPOINT_SHIFT);
    let a = (t + rho).cos();
    let b = (t - rho).cos();
    let rule = QuadratureRule::gauss_legendre(64)?;
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    // average = (1/|s|) (|s|/2) sum w f
    let sum: f64 = rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .map(|(x, w)| w * f(mid + half * x))
        .sum();
    Ok(0.5 * sum)
}

/// Truncation of the multiplier-norm integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VinogradovConfig {
    pub z_max: f64,
    /// Gauss-Legendre points per outer panel (and per inner panel).
    pub quad_points: usize,
    /// Width of the outer panels in `z`.
    pub panel_width: f64,
}

impl Default for VinogradovConfig {
    fn default() -> Self {
        Self {
            z_max: 200.0,
            quad_points: 64,
            panel_width: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KInverseBounds {
    /// `lambda pi / sin(lambda pi)`, the limit of the spectral radius.
    pub spectral_lower: f64,
    /// `(2/pi) int_0^{z_max} z |int_0^2 u phi(u) sin(zu) du| dz`.
    pub multiplier_norm: f64,
    /// `spectral_lower * multiplier_norm`.
    pub vinogradov_upper_estimate: f64,
    /// Contribution of `z in [z_max/2, z_max]` to `multiplier_norm`.
    pub tail: f64,
    /// Always true: the outer integral is cut at `z_max`.
    pub truncated: bool,
    /// Brute-force estimate of the norm for the given `r`.
    pub finite_r: KInverseEstimate,
}

/// `phi_lambda(u)`: `lambda u pi / sin(lambda u pi)` on `[0, 1]`, then linear
/// down to zero at `u = 2`.
pub fn multiplier_profile(lambda: f64, u: f64) -> f64 {
    let peak = lambda * PI / (lambda * PI).sin();
    if u <= 0.0 {
        1.0
    } else if u <= 1.0 {
        let a = lambda * u * PI;
        a / a.sin()
    } else if u <= 2.0 {
        (2.0 - u) * peak
    } else {
        0.0
    }
}

fn inner_sine_transform(lambda: f64, z: f64, rule: &QuadratureRule) -> f64 {
    // sin(zu) has about z / pi half-waves on [0, 2]
    let panels = 1 + (z / 8.0).ceil() as usize;
    let g = |u: f64| u * multiplier_profile(lambda, u) * (z * u).sin();
    rule.integrate(g, 0.0, 1.0, panels).expect("finite integrand") + rule.integrate(g, 1.0, 2.0, panels).expect("finite integrand")
}

/// Spectral lower bound and truncated multiplier estimate for
/// `sup_r ||K^{-1}_{lambda pi / r, r}||`, plus the brute-force estimate at
/// the given `r`.
pub fn k_inverse_norm_bounds(lambda: f64, r: usize, config: VinogradovConfig) -> Result<KInverseBounds> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(invalid(format!("lambda {lambda} outside (0, 1)")));
    }
    if (lambda * PI).sin() < 1e-12 {
        return Err(invalid("lambda too close to 1: sin(lambda pi) below 1e-12"));
    }
    if r == 0 || !(config.z_max > 0.0) || !(config.panel_width > 0.0) {
        return Err(invalid("r, z_max and panel width must be positive"));
    }
    let spectral_lower = lambda * PI / (lambda * PI).sin();
    let rule = QuadratureRule::gauss_legendre(config.quad_points)?;
    let panels = (config.z_max / config.panel_width).ceil() as usize;
    let width = config.z_max / panels as f64;
    let pieces: Vec<(f64, f64)> = (0..panels)
        .into_par_iter()
        .map(|p| {
            let a = p as f64 * width;
            let b = a + width;
            let v = rule
                .integrate(|z| z * inner_sine_transform(lambda, z, &rule).abs(), a, b, 1)
                .expect("finite integrand");
            (a, v)
        })
        .collect();
    let scale = 2.0 / PI;
    let multiplier_norm = scale * pieces.iter().map(|p| p.1).sum::<f64>();
    let tail = scale
        * pieces
            .iter()
            .filter(|p| p.0 >= 0.5 * config.z_max - 1e-9)
            .map(|p| p.1)
            .sum::<f64>();
    Ok(KInverseBounds {
        spectral_lower,
        multiplier_norm,
        vinogradov_upper_estimate: spectral_lower * multiplier_norm,
        tail,
        truncated: true,
        finite_r: k_inverse_norm_estimate(lambda * PI / r as f64, r)?,
    })
}

/// Brute-force bracket for `||K^{-1}_{rho,r}||` on polynomials of degree
/// `r - 1` in the sup norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KInverseEstimate {
    /// `max_j 1 / |eigenvalue_j|`; attained by `U_j`.
    pub spectral_radius: f64,
    /// Best ratio `||K^{-1} p|| / ||p||` over the trial polynomials.
    pub lower: f64,
    /// `sup_x sum_k |K^{-1} L_k(x)|` with `L_k` the Chebyshev-node Lagrange
    /// basis, times the nodal Lebesgue constant of those nodes.
    pub upper: f64,
}

fn sup_abs_expansion(coeffs: &[f64], grid: &[f64]) -> f64 {
    let p = ChebExpansion::new(coeffs.to_vec()).expect("r >= 1");
    grid.iter().map(|&x| p.eval(x).abs()).fold(0.0, f64::max)
}

/// Estimates `||K^{-1}_{rho,r}||` by ratio maximization (lower) and a
/// Lagrange majorant (upper).
pub fn k_inverse_norm_estimate(rho: f64, r: usize) -> Result<KInverseEstimate> {
    check_rho(rho)?;
    if r == 0 {
        return Err(invalid("r must be at least 1"));
    }
    crate::interpolation::check_resonance(rho, r)?;
    let inv: Vec<f64> = (0..r).map(|j| 1.0 / arc_eigenvalue(j, rho)).collect();
    let spectral_radius = inv.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    // Lagrange basis at Chebyshev nodes, in U coefficients
    let nodes = NodeSet::chebyshev(r)?;
    let mut nodal = Matrix::zeros(r);
    let mut u = vec![0.0; r];
    for (i, &x) in nodes.nodes().iter().enumerate() {
        fill_u(x, &mut u);
        for (j, &uj) in u.iter().enumerate() {
            nodal[(i, j)] = uj;
        }
    }
    let lagrange = LuFactorization::new(&nodal)?.inverse_columns();
    let mapped: Vec<Vec<f64>> = lagrange
        .iter()
        .map(|c| c.iter().zip(&inv).map(|(a, s)| a * s).collect())
        .collect();

    let grid = clustered_grid((-1.0, 1.0), SupConfig::default().points(r));
    let eval_all = |coeffs: &[Vec<f64>], x: f64, out: &mut [f64]| {
        let mut u = vec![0.0; r];
        fill_u(x, &mut u);
        for (o, c) in out.iter_mut().zip(coeffs) {
            *o = c.iter().zip(&u).map(|(a, b)| a * b).sum();
        }
    };
    let majorant = grid
        .par_iter()
        .map(|&x| {
            let mut vals = vec![0.0; r];
            eval_all(&mapped, x, &mut vals);
            (vals.iter().map(|v| v.abs()).sum::<f64>(), x)
        })
        .collect::<Vec<_>>();
    let nodal_lebesgue = nodal_lebesgue_constant(&nodes).value;
    let upper = majorant.iter().fold(0.0f64, |m, v| m.max(v.0)) * nodal_lebesgue.max(1.0);

    // trial polynomials: sign patterns that saturate K^{-1} at the most
    // sensitive abscissae, plus seeded random value vectors
    let mut order: Vec<usize> = (0..majorant.len()).collect();
    order.sort_by(|&a, &b| majorant[b].0.total_cmp(&majorant[a].0).then(a.cmp(&b)));
    let mut trials: Vec<Vec<f64>> = Vec::new();
    for &k in order.iter().take(8) {
        let mut vals = vec![0.0; r];
        eval_all(&mapped, majorant[k].1, &mut vals);
        trials.push(vals.iter().map(|v| if *v >= 0.0 { 1.0 } else { -1.0 }).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e9);
    for _ in 0..32 {
        trials.push((0..r).map(|_| rng.gen_range(-1.0..=1.0)).collect());
    }
    let ratio = |values: &[f64]| {
        // p = sum_k v_k L_k and K^{-1} p in U coefficients
        let mut p = vec![0.0; r];
        let mut q = vec![0.0; r];
        for (v, (l, m)) in values.iter().zip(lagrange.iter().zip(&mapped)) {
            for j in 0..r {
                p[j] += v * l[j];
                q[j] += v * m[j];
            }
        }
        let np = sup_abs_expansion(&p, &grid);
        if np > 0.0 {
            sup_abs_expansion(&q, &grid) / np
        } else {
            0.0
        }
    };
    let best_trial = trials.par_iter().map(|t| ratio(t)).reduce(|| 0.0, f64::max);
    Ok(KInverseEstimate {
        spectral_radius,
        lower: spectral_radius.max(best_trial),
        upper,
    })
}

/// A named bound attached to a report.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedBound {
    pub name: &'static str,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LebesgueReport {
    pub r: usize,
    pub lambda_const: f64,
    pub argmax_x: f64,
    pub op_norm: f64,
    pub fill_distance_h: f64,
    pub bounds: Vec<NamedBound>,
    pub grid_points: usize,
}

impl LebesgueReport {
    pub const CSV_HEADER: &'static str = "r,lambda,argmax,opnorm,h,bound_name,lower,upper";

    /// One row per bound, without the header.
    pub fn csv_rows(&self) -> String {
        let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
        let mut out = String::new();
        for b in &self.bounds {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                self.r,
                self.lambda_const,
                self.argmax_x,
                self.op_norm,
                self.fill_distance_h,
                b.name,
                opt(b.lower),
                opt(b.upper)
            );
        }
        out
    }

    pub fn to_csv(&self) -> String {
        format!("{}\n{}", Self::CSV_HEADER, self.csv_rows())
    }

    pub fn bound(&self, name: &str) -> Option<&NamedBound> {
        self.bounds.iter().find(|b| b.name == name)
    }
}

/// Lebesgue constant, operator norm, fill distance and every bound that
/// applies to the set.
pub fn full_report(set: &SegmentSet) -> Result<LebesgueReport> {
    full_report_with(set, SupConfig::default())
}

pub fn full_report_with(set: &SegmentSet, config: SupConfig) -> Result<LebesgueReport> {
    let r = set.len();
    let lambda = lebesgue_constant_with(set, config)?;
    let op = if set.is_nonoverlapping() {
        // the two suprema coincide; reuse the Lebesgue sweep
        lambda
    } else {
        operator_norm_with(set, config)?
    };
    let mut bounds = vec![NamedBound {
        name: "projection_lower",
        lower: Some(projection_lower_bound(r)),
        upper: None,
    }];
    if set.family() == Family::Equidistant && set.class() == SegmentClass::Chain {
        let (lo, hi) = equidistant_bounds(r)?;
        bounds.push(NamedBound {
            name: "equidistant",
            lower: Some(lo),
            upper: Some(hi),
        });
    }
    if set.family() == Family::ChebyshevLobatto {
        let (lo, shape) = cl_log_bounds(r)?;
        bounds.push(NamedBound {
            name: "cl_log",
            lower: Some(lo),
            upper: Some(shape),
        });
    }
    if set.class() == SegmentClass::Chain {
        bounds.push(NamedBound {
            name: "chain_vs_nodal",
            lower: None,
            upper: Some(bound_c1_vs_nodal(set)?),
        });
    }
    Ok(LebesgueReport {
        r,
        lambda_const: lambda.value,
        argmax_x: lambda.argmax,
        op_norm: op.value,
        fill_distance_h: fill_distance(set),
        bounds,
        grid_points: lambda.grid_points,
    })
}

/// `U_j` as a closure, for feeding [`apply_k_rho`].
pub fn u_poly(j: usize) -> impl Fn(f64) -> f64 {
    move |x| eval_u(j, x)
}
