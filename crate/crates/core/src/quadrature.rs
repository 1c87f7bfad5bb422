//! Gauss-Legendre quadrature and segment measurements `mu_i = int_{s_i} f`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::segments::{Segment, SegmentSet};

/// Largest supported rule size.
pub const MAX_NODES: usize = 512;

/// An `n`-point rule on `[-1, 1]`, exact for degree `2n - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// `(P_n(x), P_n'(x))` by the Bonnet recurrence.
pub(crate) fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl QuadratureRule {
    /// Newton iteration on `P_n` from the Chebyshev-like guesses
    /// `cos(pi (k - 1/4) / (n + 1/2))`. Nodes are mirrored so the rule is
    /// exactly symmetric.
    pub fn gauss_legendre(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_NODES {
            return Err(invalid(format!("rule size {n} outside 1..={MAX_NODES}")));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let half = n.div_ceil(2);
        for k in 0..half {
            let mut x = (PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            // middle node of an odd rule is exactly 0
            if n % 2 == 1 && k == half - 1 {
                x = 0.0;
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[k] = -x;
            nodes[n - 1 - k] = x;
            weights[k] = w;
            weights[n - 1 - k] = w;
        }
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `int_a^b f` with a single panel; `f` may fail.
    fn apply<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> Result<f64> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let t = mid + half * x;
            let v = f(t);
            if !v.is_finite() {
                return Err(Error::NonFiniteValue { x: t });
            }
            acc += w * v;
        }
        Ok(acc * half)
    }

    /// Composite rule over `panels` equal panels of `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64, panels: usize) -> Result<f64> {
        if panels == 0 {
            return Err(invalid("at least one panel required"));
        }
        let width = (b - a) / panels as f64;
        let mut acc = 0.0;
        for k in 0..panels {
            let lo = a + width * k as f64;
            let hi = if k + 1 == panels { b } else { a + width * (k + 1) as f64 };
            acc += self.apply(&f, lo, hi)?;
        }
        Ok(acc)
    }
}

/// Rule size and panel count used to manufacture measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureConfig {
    pub nodes: usize,
    pub panels: usize,
}

impl QuadratureConfig {
    /// 64 nodes, one panel: smooth integrands.
    pub const SMOOTH: Self = Self { nodes: 64, panels: 1 };
    /// 16 nodes on 32 panels: integrands with kinks or jumps.
    pub const PIECEWISE: Self = Self { nodes: 16, panels: 32 };
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self::SMOOTH
    }
}

/// Where the measurement values came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Quadrature,
    External,
}

/// Segment integrals `mu_1, ..., mu_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementVector {
    values: Vec<f64>,
    provenance: Provenance,
}

impl MeasurementVector {
    /// User-supplied data; bypasses quadrature.
    pub fn external(values: Vec<f64>) -> Self {
        Self {
            values,
            provenance: Provenance::External,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// CSV with header `i,mu`, 1-based.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,mu\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{},{}", i + 1, v);
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("i,") {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            let (i, v) = line
                .split_once(',')
                .ok_or_else(|| err("expected `i,mu`".into()))?;
            let idx: usize = i.trim().parse().map_err(|e| err(format!("bad index: {e}")))?;
            if idx != values.len() + 1 {
                return Err(err(format!("expected index {}, found {idx}", values.len() + 1)));
            }
            let v: f64 = v.trim().parse().map_err(|e| err(format!("bad value: {e}")))?;
            if !v.is_finite() {
                return Err(err("non-finite value".into()));
            }
            values.push(v);
        }
        Ok(Self::external(values))
    }
}

/// Approximates `int_alpha^beta f` by a composite mapped rule.
pub fn measure<F: Fn(f64) -> f64>(f: F, seg: &Segment, rule: &QuadratureRule, panels: usize) -> Result<f64> {
    rule.integrate(f, seg.alpha(), seg.beta(), panels)
}

/// [`measure`] on every segment of the set.
pub fn measure_vector<F: Fn(f64) -> f64>(
    f: F,
    set: &SegmentSet,
    rule: &QuadratureRule,
    panels: usize,
) -> Result<MeasurementVector> {
    let values = set
        .segments()
        .iter()
        .map(|s| measure(&f, s, rule, panels))
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasurementVector {
        values,
        provenance: Provenance::Quadrature,
    })
}

/// [`measure_vector`] with a [`QuadratureConfig`].
pub fn measure_with<F: Fn(f64) -> f64>(f: F, set: &SegmentSet, config: QuadratureConfig) -> Result<MeasurementVector> {
    let rule = QuadratureRule::gauss_legendre(config.nodes)?;
    measure_vector(f, set, &rule, config.panels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{eval_u, integrate_u};
    use proptest::prelude::*;

    #[test]
    fn small_rules_match_closed_forms() {
        let r1 = QuadratureRule::gauss_legendre(1).unwrap();
        assert_eq!(r1.nodes(), &[0.0]);
        assert_eq!(r1.weights(), &[2.0]);

        let r2 = QuadratureRule::gauss_legendre(2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((r2.nodes()[0] + x).abs() < 1e-15 && (r2.nodes()[1] - x).abs() < 1e-15);
        assert!(r2.weights().iter().all(|w| (w - 1.0).abs() < 1e-15));

        let r3 = QuadratureRule::gauss_legendre(3).unwrap();
        let x = (0.6f64).sqrt();
        assert!((r3.nodes()[0] + x).abs() < 1e-15 && r3.nodes()[1] == 0.0);
        let expected = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
        for (w, e) in r3.weights().iter().zip(expected) {
            assert!((w - e).abs() < 1e-15);
        }
    }

    #[test]
    fn rule_invariants() {
        for n in [1, 2, 5, 16, 64, 128, 257, 512] {
            let rule = QuadratureRule::gauss_legendre(n).unwrap();
            let total: f64 = rule.weights().iter().sum();
            assert!((total - 2.0).abs() < 1e-12, "n={n}: sum {total}");
            assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
            assert!(rule.weights().iter().all(|&w| w > 0.0));
            if n <= 64 {
                // A double-precision node can only sit within half an ulp
                // of the true root, which caps the attainable residual.
                for &x in rule.nodes() {
                    let (p, dp) = legendre_with_derivative(n, x);
                    let floor = dp.abs() * f64::EPSILON * x.abs();
                    assert!(p.abs() <= 1e-14f64.max(floor), "n={n} x={x}: {p:e}");
                }
            }
        }
        assert!(QuadratureRule::gauss_legendre(0).is_err());
        assert!(QuadratureRule::gauss_legendre(513).is_err());
    }

    #[test]
    fn measure_examples() {
        let seg = |a, b| Segment::new(a, b).unwrap();
        let r2 = QuadratureRule::gauss_legendre(2).unwrap();
        // exact up to the rounding of the two abscissae
        let third = measure(|x| x * x, &seg(0.0, 1.0), &r2, 1).unwrap();
        assert!((third - 1.0 / 3.0).abs() <= 2.0 * f64::EPSILON / 3.0);

        let r64 = QuadratureRule::gauss_legendre(64).unwrap();
        assert!(measure(|x| (PI * x).cos(), &seg(-1.0, 1.0), &r64, 1).unwrap().abs() < 1e-15);

        let runge = measure(|x| 1.0 / (1.0 + 10.0 * x * x), &seg(-1.0, 1.0), &r64, 1).unwrap();
        let closed = 2.0 / 10f64.sqrt() * 10f64.sqrt().atan();
        assert!((runge - closed).abs() < 1e-14);
        assert!((closed - 0.799752).abs() < 1e-6);
    }

    #[test]
    fn non_finite_reports_abscissa() {
        let rule = QuadratureRule::gauss_legendre(3).unwrap();
        let seg = Segment::new(-1.0, 1.0).unwrap();
        match measure(|x| if x == 0.0 { f64::NAN } else { x }, &seg, &rule, 1) {
            Err(Error::NonFiniteValue { x }) => assert_eq!(x, 0.0),
            other => panic!("expected NonFiniteValue, got {other:?}"),
        }
    }

    #[test]
    fn measure_vector_examples() {
        let r64 = QuadratureRule::gauss_legendre(64).unwrap();
        let eq4 = SegmentSet::equidistant(4, -1.0, 1.0).unwrap();
        let mu = measure_vector(|_| 1.0, &eq4, &r64, 1).unwrap();
        assert!(mu.values().iter().all(|v| (v - 0.5).abs() < 1e-15));
        assert_eq!(mu.provenance(), Provenance::Quadrature);

        let eq2 = SegmentSet::equidistant(2, -1.0, 1.0).unwrap();
        let mu = measure_vector(|x| x, &eq2, &r64, 1).unwrap();
        assert!((mu.values()[0] + 0.5).abs() < 1e-15 && (mu.values()[1] - 0.5).abs() < 1e-15);

        let cl2 = SegmentSet::chebyshev_lobatto(2).unwrap();
        let mu = measure_vector(|x| eval_u(1, x), &cl2, &r64, 1).unwrap();
        assert!((mu.values()[0] + 1.0).abs() < 1e-15 && (mu.values()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn panel_refinement_is_stable_for_runge() {
        let r64 = QuadratureRule::gauss_legendre(64).unwrap();
        let f = |x: f64| 1.0 / (1.0 + 10.0 * x * x);
        for panels in [1, 2, 4, 8] {
            let a = r64.integrate(f, -1.0, 1.0, panels).unwrap();
            let b = r64.integrate(f, -1.0, 1.0, 2 * panels).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn measurement_csv() {
        let mu = MeasurementVector::external(vec![0.25, -1.5, 3.0]);
        let back = MeasurementVector::from_csv(&mu.to_csv()).unwrap();
        assert_eq!(back, mu);
        assert!(MeasurementVector::from_csv("i,mu\n2,1.0\n").is_err());
        assert!(MeasurementVector::from_csv("1,abc\n").is_err());
    }

    proptest! {
        #[test]
        fn exact_for_polynomials_up_to_2n_minus_1(
            n in 1usize..=20,
            seed_coeffs in proptest::collection::vec(-1.0f64..1.0, 40),
            a in -1.0f64..0.0,
            b in 0.0f64..1.0,
        ) {
            prop_assume!(b - a > 1e-3);
            let rule = QuadratureRule::gauss_legendre(n).unwrap();
            let deg = 2 * n - 1;
            let coeffs = &seed_coeffs[..deg + 1];
            let f = |x: f64| coeffs.iter().enumerate().map(|(j, c)| c * eval_u(j, x)).sum::<f64>();
            let exact: f64 = coeffs.iter().enumerate().map(|(j, c)| c * integrate_u(j, a, b)).sum();
            let q = measure(f, &Segment::new(a, b).unwrap(), &rule, 1).unwrap();
            prop_assert!((q - exact).abs() <= 1e-12);
        }

        #[test]
        fn chain_measurements_telescope(r in 1usize..=30, freq in 0.5f64..6.0) {
            let rule = QuadratureRule::gauss_legendre(64).unwrap();
            let f = |x: f64| (freq * x).sin() + 1.0 / (1.0 + x * x);
            let set = SegmentSet::chebyshev_lobatto(r).unwrap();
            let mu = measure_vector(f, &set, &rule, 1).unwrap();
            let whole = rule.integrate(f, -1.0, 1.0, 1).unwrap();
            prop_assert!((mu.values().iter().sum::<f64>() - whole).abs() <= 1e-10);
        }
    }
}
