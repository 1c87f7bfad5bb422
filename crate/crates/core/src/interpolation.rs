//! Segmental interpolation: find `p` of degree `r - 1` with
//! `int_{s_i} p = mu_i` for every segment.
//!
//! The general route builds the second-kind Chebyshev Vandermonde matrix on
//! the set mapped to `[-1, 1]` and solves it by LU. Arc-uniform sets have a
//! fast route through nodal interpolation at the arc-midpoints followed by a
//! diagonal rescaling of the coefficients. Chains and left-anchored sets
//! have explicit Lagrange bases built from derivatives of nodal Lagrange
//! polynomials.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::basis::{fill_u, nodal_lagrange, nodal_lagrange_deriv, ChebExpansion};
use crate::error::{invalid, Error, Result};
use crate::linalg::{LuFactorization, Matrix};
use crate::quadrature::MeasurementVector;
use crate::segments::{AffineMap, NodeSet, SegmentClass, SegmentSet};

/// Distance below which an arc radius counts as resonant.
pub const RESONANCE_TOLERANCE: f64 = 1e-10;

/// Residual (relative to `max(1, |mu|_inf)`) above which a solve is flagged.
pub const RESIDUAL_WARNING: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisTag {
    Monomial,
    ChebU,
}

/// Row `i` holds the integrals over `s_i` of the basis functions.
#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeMatrix {
    matrix: Matrix,
    basis: BasisTag,
}

impl VandermondeMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }
}

/// Segment Vandermonde matrix of the set as given (no normalization).
///
/// Monomial entries are `(beta^j - alpha^j) / j`; second-kind Chebyshev
/// entries are
/// `(2/j) sin(j (acos alpha + acos beta)/2) sin(j (acos alpha - acos beta)/2)`,
/// which needs every endpoint inside `[-1, 1]`.
pub fn vandermonde(set: &SegmentSet, basis: BasisTag) -> Result<VandermondeMatrix> {
    let r = set.len();
    let segs = set.segments();
    let matrix = match basis {
        BasisTag::Monomial => Matrix::from_fn(r, |i, j| {
            let p = (j + 1) as i32;
            (segs[i].beta().powi(p) - segs[i].alpha().powi(p)) / p as f64
        }),
        BasisTag::ChebU => {
            if segs.iter().any(|s| s.alpha() < -1.0 || s.beta() > 1.0) {
                return Err(Error::Internal(
                    "Chebyshev Vandermonde needs endpoints in [-1, 1]; normalize first".into(),
                ));
            }
            Matrix::from_fn(r, |i, j| {
                let a = segs[i].alpha().acos();
                let b = segs[i].beta().acos();
                let jf = (j + 1) as f64;
                (2.0 / jf) * (jf * (a + b) / 2.0).sin() * (jf * (a - b) / 2.0).sin()
            })
        }
    };
    Ok(VandermondeMatrix { matrix, basis })
}

/// Coefficients and pivot-ratio condition estimate of a dense solve.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSolution {
    pub coeffs: Vec<f64>,
    pub cond_estimate: f64,
}

/// LU solve of `V a = mu`. A pivot below `1e-12 * |V|_inf` is reported as
/// [`Error::SingularSystem`]: the set is not unisolvent.
pub fn solve_dense(v: &VandermondeMatrix, rhs: &MeasurementVector) -> Result<DenseSolution> {
    if v.matrix.dim() != rhs.len() {
        return Err(invalid(format!(
            "matrix has {} rows but {} measurements were given",
            v.matrix.dim(),
            rhs.len()
        )));
    }
    let lu = LuFactorization::new(&v.matrix)?;
    Ok(DenseSolution {
        coeffs: lu.solve(rhs.values())?,
        cond_estimate: lu.pivot_ratio(),
    })
}

/// A `U`-expansion in the reference coordinate `t` of an interval:
/// `p(x) = sum_j a_j U_j(t(x))` with `t` the affine map onto `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalPoly {
    expansion: ChebExpansion,
    interval: (f64, f64),
    map: AffineMap,
}

impl IntervalPoly {
    pub fn new(expansion: ChebExpansion, interval: (f64, f64)) -> Self {
        Self {
            expansion,
            interval,
            map: AffineMap::to_reference(interval),
        }
    }

    /// Coefficients in the reference coordinate.
    pub fn expansion(&self) -> &ChebExpansion {
        &self.expansion
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.expansion.eval(self.map.apply(x))
    }

    pub fn eval_deriv(&self, x: f64) -> f64 {
        self.expansion.eval_deriv(self.map.apply(x)) * self.map.scale()
    }

    /// Exact `int_a^b p`.
    pub fn integrate(&self, a: f64, b: f64) -> f64 {
        self.expansion.integrate(self.map.apply(a), self.map.apply(b)) / self.map.scale()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolvePath {
    Vandermonde,
    C1Explicit,
    C2Fast,
    C3Explicit,
}

impl SolvePath {
    pub fn name(&self) -> &'static str {
        match self {
            SolvePath::Vandermonde => "vandermonde",
            SolvePath::C1Explicit => "c1_explicit",
            SolvePath::C2Fast => "c2_fast",
            SolvePath::C3Explicit => "c3_explicit",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    /// `max_i |int_{s_i} p - mu_i|`, recomputed after the solve.
    pub residual_inf: f64,
    pub cond_estimate: f64,
    pub path: SolvePath,
    /// Residual exceeded `1e-6 * max(1, |mu|_inf)`.
    pub warning: bool,
}

/// Solved interpolation problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Interpolant {
    poly: IntervalPoly,
    set: SegmentSet,
    diagnostics: Diagnostics,
}

impl Interpolant {
    fn assemble(set: &SegmentSet, poly: IntervalPoly, mu: &MeasurementVector, path: SolvePath, cond: f64) -> Self {
        let residual_inf = set
            .segments()
            .iter()
            .zip(mu.values())
            .map(|(s, m)| (poly.integrate(s.alpha(), s.beta()) - m).abs())
            .fold(0.0, f64::max);
        let warning = !(residual_inf <= RESIDUAL_WARNING * mu.max_abs().max(1.0));
        Self {
            poly,
            set: set.clone(),
            diagnostics: Diagnostics {
                residual_inf,
                cond_estimate: cond,
                path,
                warning,
            },
        }
    }

    pub fn poly(&self) -> &IntervalPoly {
        &self.poly
    }

    pub fn set(&self) -> &SegmentSet {
        &self.set
    }

    pub fn diagnostics(&self) -> &Diagnostics {
        &self.diagnostics
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.poly.eval(x)
    }

    pub fn eval_deriv(&self, x: f64) -> f64 {
        self.poly.eval_deriv(x)
    }

    /// `# path,cond,residual` header, the working interval, then `j,a_j`
    /// rows with coefficients in the reference coordinate.
    pub fn to_csv(&self) -> String {
        let d = &self.diagnostics;
        let (lo, hi) = self.poly.interval;
        let mut out = String::from("# path,cond,residual\n");
        let _ = writeln!(out, "# {},{:e},{:e}", d.path.name(), d.cond_estimate, d.residual_inf);
        let _ = writeln!(out, "# interval,{lo},{hi}");
        out.push_str("j,a_j\n");
        for (j, a) in self.poly.expansion.coeffs().iter().enumerate() {
            let _ = writeln!(out, "{j},{a}");
        }
        out
    }
}

/// Rejects `rho` within [`RESONANCE_TOLERANCE`] of `k pi / j`,
/// `1 <= k < j <= r`.
pub fn check_resonance(rho: f64, r: usize) -> Result<()> {
    for j in 2..=r {
        for k in 1..j {
            if (rho - k as f64 * PI / j as f64).abs() < RESONANCE_TOLERANCE {
                return Err(Error::ResonantRadius { rho, k, j });
            }
        }
    }
    Ok(())
}

/// `K_rho` eigenvalue `sin((j+1) rho) / ((j+1) sin rho)` of `U_j`.
pub(crate) fn arc_eigenvalue(j: usize, rho: f64) -> f64 {
    let m = (j + 1) as f64;
    (m * rho).sin() / (m * rho.sin())
}

/// A factored solver reusable across right-hand sides.
#[derive(Debug, Clone)]
pub(crate) enum Solver {
    Vandermonde {
        lu: LuFactorization,
        scale: f64,
    },
    C2 {
        lu: LuFactorization,
        lengths: Vec<f64>,
        inv_eigen: Vec<f64>,
    },
}

impl Solver {
    /// The dispatch used by [`interpolate`].
    pub(crate) fn for_set(set: &SegmentSet) -> Result<Self> {
        if set.class() == SegmentClass::ArcUniform && set.arc().is_some() {
            Self::c2(set)
        } else {
            Self::vandermonde(set)
        }
    }

    pub(crate) fn vandermonde(set: &SegmentSet) -> Result<Self> {
        let reference = set.affine_map((-1.0, 1.0))?;
        let v = vandermonde(&reference, BasisTag::ChebU)?;
        Ok(Solver::Vandermonde {
            lu: LuFactorization::new(&v.matrix)?,
            scale: AffineMap::to_reference(set.interval()).scale(),
        })
    }

    pub(crate) fn c2(set: &SegmentSet) -> Result<Self> {
        let arc = set
            .arc()
            .ok_or_else(|| invalid("fast arc-uniform path needs a set with arc data"))?;
        if set.interval() != (-1.0, 1.0) {
            return Err(invalid("arc-uniform sets live on [-1, 1]"));
        }
        let r = set.len();
        let rho = arc.rho();
        check_resonance(rho, r)?;
        let midpoints = arc.midpoints();
        let mut nodal = Matrix::zeros(r);
        let mut u = vec![0.0; r];
        for (i, &c) in midpoints.iter().enumerate() {
            fill_u(c, &mut u);
            for (j, &uj) in u.iter().enumerate() {
                nodal[(i, j)] = uj;
            }
        }
        let lu = LuFactorization::new(&nodal)?;
        let lengths = arc.taus().iter().map(|t| 2.0 * t.sin() * rho.sin()).collect();
        let inv_eigen = (0..r).map(|j| 1.0 / arc_eigenvalue(j, rho)).collect();
        Ok(Solver::C2 { lu, lengths, inv_eigen })
    }

    pub(crate) fn path(&self) -> SolvePath {
        match self {
            Solver::Vandermonde { .. } => SolvePath::Vandermonde,
            Solver::C2 { .. } => SolvePath::C2Fast,
        }
    }

    pub(crate) fn cond_estimate(&self) -> f64 {
        match self {
            Solver::Vandermonde { lu, .. } => lu.pivot_ratio(),
            Solver::C2 { lu, inv_eigen, .. } => {
                lu.pivot_ratio() * inv_eigen.iter().fold(0.0f64, |m, v| m.max(v.abs()))
            }
        }
    }

    /// Reference-coordinate coefficients for the data `mu`.
    pub(crate) fn solve(&self, mu: &[f64]) -> Result<Vec<f64>> {
        match self {
            Solver::Vandermonde { lu, scale } => {
                let rhs: Vec<f64> = mu.iter().map(|m| m * scale).collect();
                lu.solve(&rhs)
            }
            Solver::C2 { lu, lengths, inv_eigen } => {
                let averages: Vec<f64> = mu.iter().zip(lengths).map(|(m, l)| m / l).collect();
                let b = lu.solve(&averages)?;
                Ok(b.iter().zip(inv_eigen).map(|(b, s)| b * s).collect())
            }
        }
    }
}

fn check_lengths(set: &SegmentSet, mu: &MeasurementVector) -> Result<()> {
    if set.len() != mu.len() {
        return Err(invalid(format!(
            "{} segments but {} measurements",
            set.len(),
            mu.len()
        )));
    }
    Ok(())
}

/// Solves the segmental interpolation problem. Arc-uniform sets take the
/// fast route; everything else is solved through the Chebyshev Vandermonde
/// system on the set mapped to `[-1, 1]`.
pub fn interpolate(set: &SegmentSet, mu: &MeasurementVector) -> Result<Interpolant> {
    check_lengths(set, mu)?;
    let solver = Solver::for_set(set)?;
    let coeffs = solver.solve(mu.values())?;
    let poly = IntervalPoly::new(ChebExpansion::new(coeffs)?, set.interval());
    Ok(Interpolant::assemble(set, poly, mu, solver.path(), solver.cond_estimate()))
}

/// Fast route for sets with arc data: nodal interpolation of `mu_i / |s_i|`
/// at `cos tau_i`, then `a_j = b_j (j+1) sin(rho) / sin((j+1) rho)`.
pub fn interpolate_c2_fast(set: &SegmentSet, mu: &MeasurementVector) -> Result<Interpolant> {
    check_lengths(set, mu)?;
    let solver = Solver::c2(set)?;
    let coeffs = solver.solve(mu.values())?;
    let poly = IntervalPoly::new(ChebExpansion::new(coeffs)?, set.interval());
    Ok(Interpolant::assemble(set, poly, mu, SolvePath::C2Fast, solver.cond_estimate()))
}

/// Interpolates through the explicit Lagrange basis of a chain or
/// left-anchored set: `p = sum_j mu_j l_{s_j}` is sampled at `r` Chebyshev
/// points and converted to a `U`-expansion.
pub fn interpolate_explicit(set: &SegmentSet, mu: &MeasurementVector) -> Result<Interpolant> {
    check_lengths(set, mu)?;
    let r = set.len();
    let (path, basis_at): (SolvePath, Box<dyn Fn(usize, f64) -> Result<f64>>) = match set.class() {
        SegmentClass::Chain => (SolvePath::C1Explicit, Box::new(|j, x| lagrange_c1(set, j, x))),
        SegmentClass::LeftAnchored => (SolvePath::C3Explicit, Box::new(|j, x| lagrange_c3(set, j, x))),
        _ => return Err(invalid("explicit bases exist for chain and left-anchored sets only")),
    };
    let reference = NodeSet::chebyshev(r)?;
    let back = AffineMap::to_reference(set.interval()).inverse();
    let mut nodal = Matrix::zeros(r);
    let mut values = vec![0.0; r];
    let mut u = vec![0.0; r];
    for (i, &t) in reference.nodes().iter().enumerate() {
        fill_u(t, &mut u);
        for (j, &uj) in u.iter().enumerate() {
            nodal[(i, j)] = uj;
        }
        let x = back.apply(t);
        let mut acc = 0.0;
        for (j, m) in mu.values().iter().enumerate() {
            acc += m * basis_at(j, x)?;
        }
        values[i] = acc;
    }
    let lu = LuFactorization::new(&nodal)?;
    let poly = IntervalPoly::new(ChebExpansion::new(lu.solve(&values)?)?, set.interval());
    Ok(Interpolant::assemble(set, poly, mu, path, lu.pivot_ratio()))
}

/// Segmental Lagrange polynomial of a chain, 0-based `j`:
/// `l_{s_j} = sum_{k > j} l'_{xi_k}` over the chain nodes `xi_0..xi_r`.
pub fn lagrange_c1(set: &SegmentSet, j: usize, x: f64) -> Result<f64> {
    if set.class() != SegmentClass::Chain {
        return Err(invalid("chain basis requested for a non-chain set"));
    }
    let r = set.len();
    if j >= r {
        return Err(invalid(format!("basis index {j} out of range 0..{r}")));
    }
    let nodes = set.chain_nodes()?;
    (j + 1..=r).map(|k| nodal_lagrange_deriv(&nodes, k, x)).sum()
}

/// Segmental Lagrange polynomial of a left-anchored set, 0-based `j`:
/// `l'_{beta_j}` over the nodes `{alpha, beta_1, ..., beta_r}`.
pub fn lagrange_c3(set: &SegmentSet, j: usize, x: f64) -> Result<f64> {
    if set.class() != SegmentClass::LeftAnchored && set.len() != 1 {
        return Err(invalid("left-anchored basis requested for another class"));
    }
    let r = set.len();
    if j >= r {
        return Err(invalid(format!("basis index {j} out of range 0..{r}")));
    }
    let segs = set.segments();
    let mut nodes = Vec::with_capacity(r + 1);
    nodes.push(segs[0].alpha());
    nodes.extend(segs.iter().map(|s| s.beta()));
    let nodes = NodeSet::new(nodes, set.interval())?;
    nodal_lagrange_deriv(&nodes, j + 1, x)
}

/// `j`-th segmental Lagrange polynomial from one solve with data `e_j`.
pub fn lagrange_generic(set: &SegmentSet, j: usize) -> Result<IntervalPoly> {
    let r = set.len();
    if j >= r {
        return Err(invalid(format!("basis index {j} out of range 0..{r}")));
    }
    let solver = Solver::for_set(set)?;
    let mut e = vec![0.0; r];
    e[j] = 1.0;
    Ok(IntervalPoly::new(ChebExpansion::new(solver.solve(&e)?)?, set.interval()))
}

/// The full segmental Lagrange basis, evaluated jointly.
#[derive(Debug, Clone)]
pub struct SegmentalBasis {
    /// `coeffs[j]` are the reference-coordinate coefficients of `l_{s_j}`.
    coeffs: Vec<Vec<f64>>,
    map: AffineMap,
    lengths: Vec<f64>,
    path: SolvePath,
}

impl SegmentalBasis {
    pub fn new(set: &SegmentSet) -> Result<Self> {
        let solver = Solver::for_set(set)?;
        let r = set.len();
        let coeffs = (0..r)
            .map(|j| {
                let mut e = vec![0.0; r];
                e[j] = 1.0;
                solver.solve(&e)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            coeffs,
            map: AffineMap::to_reference(set.interval()),
            lengths: set.lengths(),
            path: solver.path(),
        })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn path(&self) -> SolvePath {
        self.path
    }

    pub fn polys(&self, interval: (f64, f64)) -> Vec<IntervalPoly> {
        self.coeffs
            .iter()
            .map(|c| IntervalPoly::new(ChebExpansion::new(c.clone()).expect("r >= 1"), interval))
            .collect()
    }

    /// Writes `l_{s_j}(x)` into `out[j]`; `scratch` must have length `r`.
    pub fn eval_all(&self, x: f64, scratch: &mut [f64], out: &mut [f64]) {
        let t = self.map.apply(x);
        fill_u(t, scratch);
        for (o, c) in out.iter_mut().zip(&self.coeffs) {
            *o = c.iter().zip(scratch.iter()).map(|(a, u)| a * u).sum();
        }
    }
}

/// Classical interpolation through point values.
#[derive(Debug, Clone)]
pub struct NodalInterpolant {
    nodes: NodeSet,
    values: Vec<f64>,
}

impl NodalInterpolant {
    pub fn new(nodes: NodeSet, values: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(invalid("one value per node required"));
        }
        Ok(Self { nodes, values })
    }

    pub fn from_fn(nodes: NodeSet, f: impl Fn(f64) -> f64) -> Self {
        let values = nodes.nodes().iter().map(|&x| f(x)).collect();
        Self { nodes, values }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (0..self.values.len())
            .map(|j| self.values[j] * nodal_lagrange(&self.nodes, j, x).expect("index in range"))
            .sum()
    }

    pub fn eval_deriv(&self, x: f64) -> f64 {
        (0..self.values.len())
            .map(|j| self.values[j] * nodal_lagrange_deriv(&self.nodes, j, x).expect("index in range"))
            .sum()
    }
}
