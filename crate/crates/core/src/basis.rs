//! Chebyshev polynomials of the first and second kind, expansions in the
//! second-kind basis `{U_j}`, and nodal Lagrange polynomials.
//!
//! The second-kind basis is the working representation throughout the
//! crate: it integrates in closed form through `T_{j+1}' = (j+1) U_j`,
//! which turns segment averages into cheap, exact linear functionals.

use crate::error::{invalid, Result};
use crate::segments::{NodeSet, Segment};

/// `U_j(x)` by the three-term recurrence. Valid for any real `x`.
pub fn eval_u(j: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if j == 0 {
        return prev;
    }
    for _ in 1..j {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `T_j(x)` by the three-term recurrence.
pub fn eval_t(j: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if j == 0 {
        return prev;
    }
    for _ in 1..j {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Fills `out[j] = U_j(x)` for `j < out.len()`.
pub fn fill_u(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() > 1 {
        out[1] = 2.0 * x;
    }
    for j in 2..out.len() {
        out[j] = 2.0 * x * out[j - 1] - out[j - 2];
    }
}

/// Exact `int_alpha^beta U_j(x) dx = (T_{j+1}(beta) - T_{j+1}(alpha)) / (j+1)`.
pub fn integrate_u(j: usize, alpha: f64, beta: f64) -> f64 {
    (eval_t(j + 1, beta) - eval_t(j + 1, alpha)) / (j + 1) as f64
}

/// [`integrate_u`] over a segment.
pub fn integrate_u_over(j: usize, seg: &Segment) -> f64 {
    integrate_u(j, seg.alpha(), seg.beta())
}

/// Polynomial `sum_j a_j U_j(x)`. Trailing zeros are allowed; the length is
/// a degree bound, not the exact degree.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebExpansion {
    coeffs: Vec<f64>,
}

impl ChebExpansion {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(invalid("expansion needs at least one coefficient"));
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Clenshaw backward recurrence: `b_k = a_k + 2x b_{k+1} - b_{k+2}`,
    /// result `b_0`.
    pub fn eval(&self, x: f64) -> f64 {
        let two_x = 2.0 * x;
        let (mut b1, mut b2) = (0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            let b0 = a + two_x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        b1
    }

    /// Derivative via the forward recurrence
    /// `U'_{j+1} = 2 U_j + 2x U'_j - U'_{j-1}`.
    pub fn eval_deriv(&self, x: f64) -> f64 {
        let n = self.coeffs.len();
        if n < 2 {
            return 0.0;
        }
        let (mut u_prev, mut u_cur) = (1.0, 2.0 * x);
        let (mut d_prev, mut d_cur) = (0.0, 2.0);
        let mut acc = self.coeffs[1] * d_cur;
        for &a in &self.coeffs[2..] {
            let u_next = 2.0 * x * u_cur - u_prev;
            let d_next = 2.0 * u_cur + 2.0 * x * d_cur - d_prev;
            acc += a * d_next;
            u_prev = u_cur;
            u_cur = u_next;
            d_prev = d_cur;
            d_cur = d_next;
        }
        acc
    }

    /// Exact integral over `[alpha, beta]`.
    pub fn integrate(&self, alpha: f64, beta: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| a * integrate_u(j, alpha, beta))
            .sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * factor).collect(),
        }
    }
}

/// Polynomial `sum_j c_j x^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialPoly {
    coeffs: Vec<f64>,
}

impl MonomialPoly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(invalid("polynomial needs at least one coefficient"));
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

/// Monomial coefficients of `U_0, ..., U_{n-1}`: row `j` holds `U_j`.
/// Built from `U_{j+1} = 2x U_j - U_{j-1}`.
fn u_in_monomials(n: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = vec![0.0; n];
        match j {
            0 => row[0] = 1.0,
            1 => row[1] = 2.0,
            _ => {
                for k in 0..n - 1 {
                    row[k + 1] += 2.0 * rows[j - 1][k];
                }
                for k in 0..n {
                    row[k] -= rows[j - 2][k];
                }
            }
        }
        rows.push(row);
    }
    rows
}

/// Basis change `U -> monomial`.
pub fn cheb_to_monomial(p: &ChebExpansion) -> MonomialPoly {
    let n = p.len();
    let rows = u_in_monomials(n);
    let mut c = vec![0.0; n];
    for (a, row) in p.coeffs.iter().zip(&rows) {
        for (ck, rk) in c.iter_mut().zip(row) {
            *ck += a * rk;
        }
    }
    MonomialPoly { coeffs: c }
}

/// Basis change `monomial -> U`. The `U`-to-monomial matrix is triangular
/// with leading entries `2^j`; back substitution from the top degree.
pub fn monomial_to_cheb(p: &MonomialPoly) -> ChebExpansion {
    let n = p.coeffs.len();
    let rows = u_in_monomials(n);
    let mut rest = p.coeffs.clone();
    let mut a = vec![0.0; n];
    for j in (0..n).rev() {
        let aj = rest[j] / rows[j][j];
        a[j] = aj;
        for k in 0..=j {
            rest[k] -= aj * rows[j][k];
        }
    }
    ChebExpansion { coeffs: a }
}

/// `l_j(x) = prod_{i != j} (x - xi_i) / (xi_j - xi_i)`, 0-based `j`.
pub fn nodal_lagrange(nodes: &NodeSet, j: usize, x: f64) -> Result<f64> {
    let xs = nodes.nodes();
    if j >= xs.len() {
        return Err(invalid(format!("node index {j} out of range 0..{}", xs.len())));
    }
    let xj = xs[j];
    Ok(xs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, &xi)| (x - xi) / (xj - xi))
        .product())
}

/// `l_j'(x)` by the product rule
/// `sum_{i != j} prod_{k != i, j} (x - xi_k) / prod_{i != j} (xi_j - xi_i)`.
/// Unlike the logarithmic-derivative form this is finite at the nodes.
pub fn nodal_lagrange_deriv(nodes: &NodeSet, j: usize, x: f64) -> Result<f64> {
    let xs = nodes.nodes();
    if j >= xs.len() {
        return Err(invalid(format!("node index {j} out of range 0..{}", xs.len())));
    }
    let xj = xs[j];
    let denom: f64 = xs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, &xi)| xj - xi)
        .product();
    let mut sum = 0.0;
    for (i, _) in xs.iter().enumerate().filter(|&(i, _)| i != j) {
        let term: f64 = xs
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, &xk)| x - xk)
            .product();
        sum += term;
    }
    Ok(sum / denom)
}

/// `l_j'(x) = l_j(x) sum_{i != j} 1/(x - xi_i)`. Singular at the nodes; kept
/// as an independent cross-check of [`nodal_lagrange_deriv`] away from them.
pub fn nodal_lagrange_deriv_logarithmic(nodes: &NodeSet, j: usize, x: f64) -> Result<f64> {
    let l = nodal_lagrange(nodes, j, x)?;
    let s: f64 = nodes
        .nodes()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, &xi)| 1.0 / (x - xi))
        .sum();
    Ok(l * s)
}
