//! Dense square matrices and LU factorization with partial pivoting.

use crate::error::{invalid, Error, Result};

/// Row-major dense square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(invalid("matrix rows must form a square"));
        }
        Ok(Self {
            n,
            data: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Relative pivot threshold below which a system is reported singular.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

/// `PA = LU` with unit lower `L`, both packed into one matrix.
#[derive(Debug, Clone)]
pub struct LuFactorization {
    lu: Matrix,
    perm: Vec<usize>,
    pivot_ratio: f64,
}

impl LuFactorization {
    /// Factors `a`. Fails with [`Error::SingularSystem`] as soon as a pivot
    /// falls below `PIVOT_TOLERANCE * max row norm`.
    pub fn new(a: &Matrix) -> Result<Self> {
        let n = a.dim();
        if n == 0 {
            return Err(invalid("empty system"));
        }
        let threshold = PIVOT_TOLERANCE * a.norm_inf();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let (mut pmax, mut pmin) = (0.0f64, f64::INFINITY);
        for k in 0..n {
            let (p, mag) = (k..n)
                .map(|i| (i, lu[(i, k)].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(mag >= threshold) || mag == 0.0 {
                return Err(Error::SingularSystem {
                    pivot: k,
                    magnitude: mag,
                    threshold,
                });
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            pmax = pmax.max(mag);
            pmin = pmin.min(mag);
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor != 0.0 {
                    for j in k + 1..n {
                        lu[(i, j)] -= factor * lu[(k, j)];
                    }
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            pivot_ratio: pmax / pmin,
        })
    }

    /// Ratio of the largest to the smallest absolute pivot; a cheap
    /// condition indicator.
    pub fn pivot_ratio(&self) -> f64 {
        self.pivot_ratio
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.lu.dim();
        if rhs.len() != n {
            return Err(invalid(format!("rhs has length {}, expected {n}", rhs.len())));
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let s: f64 = row[..i].iter().zip(&x[..i]).map(|(a, b)| a * b).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let s: f64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(a, b)| a * b).sum();
            x[i] = (x[i] - s) / row[i];
        }
        Ok(x)
    }

    /// All columns of `A^{-1}`; column `j` is returned as `inverse[j]`.
    pub fn inverse_columns(&self) -> Vec<Vec<f64>> {
        let n = self.lu.dim();
        (0..n)
            .map(|j| {
                let mut e = vec![0.0; n];
                e[j] = 1.0;
                self.solve(&e).expect("dimension checked")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve() {
        let lu = LuFactorization::new(&Matrix::identity(3)).unwrap();
        assert_eq!(lu.solve(&[1.0, 0.0, 0.0]).unwrap(), vec![1.0, 0.0, 0.0]);
        assert_eq!(lu.pivot_ratio(), 1.0);
    }

    #[test]
    fn pivoting_required() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let x = LuFactorization::new(&a).unwrap().solve(&[2.0, 3.0]).unwrap();
        assert_eq!(x, vec![3.0, 2.0]);
    }

    #[test]
    fn singular_reports_pivot() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        match LuFactorization::new(&a) {
            Err(Error::SingularSystem { pivot, .. }) => assert_eq!(pivot, 1),
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn residual_small_on_random_system() {
        let a = Matrix::from_fn(6, |i, j| ((i * 7 + j * 3) % 11) as f64 - 5.0 + if i == j { 9.0 } else { 0.0 });
        let b: Vec<f64> = (0..6).map(|i| i as f64 - 2.5).collect();
        let x = LuFactorization::new(&a).unwrap().solve(&b).unwrap();
        for (ax, bi) in a.mul_vec(&x).iter().zip(&b) {
            assert!((ax - bi).abs() < 1e-12);
        }
    }

    #[test]
    fn wrong_rhs_length() {
        let lu = LuFactorization::new(&Matrix::identity(2)).unwrap();
        assert!(lu.solve(&[1.0]).is_err());
    }
}
