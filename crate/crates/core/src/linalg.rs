//! Dense matrices, LU factorization with partial pivoting, vector norms.

use serde::{Deserialize, Serialize};

use crate::real::Real;

/// Row-major dense square or rectangular matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Real> Matrix<R> {
    pub fn from_rows(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn identity(n: usize, like: &R) -> Self {
        Self::from_fn(n, n, |i, j| like.lift(if i == j { 1.0 } else { 0.0 }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[R]) -> Vec<R> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// Induced sup-norm: maximum absolute row sum.
    pub fn sup_norm(&self) -> R {
        let zero = self.data[0].zero_like();
        (0..self.rows)
            .map(|i| self.row(i).iter().fold(zero.clone(), |acc, v| acc + v.abs()))
            .fold(zero.clone(), R::max_of)
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

fn dot<R: Real>(a: &[R], b: &[R]) -> R {
    let zero = a[0].zero_like();
    a.iter().zip(b).fold(zero, |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Pivots smaller than this multiple of epsilon times the row scale are singular.
const PIVOT_FACTOR: f64 = 1e3;

/// LU factorization `P A = L U` of a square matrix.
#[derive(Debug, Clone)]
pub struct Lu<R> {
    n: usize,
    lu: Vec<R>,
    perm: Vec<usize>,
}

/// Marker error: a pivot fell below the singularity threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Singular;

impl<R: Real> Lu<R> {
    pub fn factor(a: &Matrix<R>) -> Result<Self, Singular> {
        assert_eq!(a.rows, a.cols, "LU needs a square matrix");
        let n = a.rows;
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let eps = lu[0].epsilon();
        let zero = lu[0].zero_like();

        // Row scales are taken from the original matrix.
        let scales: Vec<R> = (0..n).map(|i| a.row(i).iter().fold(zero.clone(), |m, v| m.max_of(v.abs()))).collect();

        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].abs();
            for i in k + 1..n {
                let v = lu[i * n + k].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            let threshold = eps.lift(PIVOT_FACTOR) * eps.clone() * scales[perm[p]].clone();
            if !(best > threshold) || best.is_zero() {
                return Err(Singular);
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k].clone();
            for i in k + 1..n {
                let factor = lu[i * n + k].clone() / pivot.clone();
                for j in k + 1..n {
                    let update = factor.clone() * lu[k * n + j].clone();
                    lu[i * n + j] = lu[i * n + j].clone() - update;
                }
                lu[i * n + k] = factor;
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve(&self, b: &[R]) -> Vec<R> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut x: Vec<R> = self.perm.iter().map(|&i| b[i].clone()).collect();
        for i in 0..n {
            for j in 0..i {
                let t = self.lu[i * n + j].clone() * x[j].clone();
                x[i] = x[i].clone() - t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = self.lu[i * n + j].clone() * x[j].clone();
                x[i] = x[i].clone() - t;
            }
            x[i] = x[i].clone() / self.lu[i * n + i].clone();
        }
        x
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix<R>) -> Matrix<R> {
        assert_eq!(b.rows, self.n);
        let mut out = b.clone();
        for j in 0..b.cols {
            let col: Vec<R> = (0..b.rows).map(|i| b.get(i, j).clone()).collect();
            for (i, v) in self.solve(&col).into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    }
}

/// Vector norm used for residuals and distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    #[default]
    Sup,
    Euclidean,
}

impl NormKind {
    pub fn norm<R: Real>(self, v: &[R]) -> R {
        let zero = v[0].zero_like();
        match self {
            NormKind::Sup => v.iter().fold(zero, |m, x| m.max_of(x.abs())),
            NormKind::Euclidean => v.iter().fold(zero, |acc, x| acc + x.clone() * x.clone()).sqrt(),
        }
    }

    pub fn distance<R: Real>(self, a: &[R], b: &[R]) -> R {
        let diff: Vec<R> = a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect();
        self.norm(&diff)
    }
}

pub fn sub_vec<R: Real>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn add_vec<R: Real>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn scale_vec<R: Real>(s: &R, a: &[R]) -> Vec<R> {
    a.iter().map(|x| s.clone() * x.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> Matrix<f64> {
        let n = rows.len();
        Matrix::from_rows(n, rows[0].len(), rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    #[test]
    fn solves_with_pivoting() {
        // Zero leading entry forces a row swap.
        let a = m(&[&[0.0, 2.0, 1.0], &[1.0, 1.0, 0.0], &[3.0, 0.0, 1.0]]);
        let x = [1.0, -2.0, 0.5];
        let b = a.mul_vec(&x);
        let sol = Lu::factor(&a).unwrap().solve(&b);
        for (s, t) in sol.iter().zip(x) {
            assert!((s - t).abs() < 1e-14);
        }
    }

    #[test]
    fn detects_singular_matrix() {
        let a = m(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert_eq!(Lu::factor(&a).unwrap_err(), Singular);
        let z = m(&[&[0.0]]);
        assert!(Lu::factor(&z).is_err());
    }

    #[test]
    fn nearly_singular_below_threshold() {
        let a = m(&[&[1.0, 1.0], &[1.0, 1.0 + 1e-15]]);
        assert!(Lu::factor(&a).is_err());
        let b = m(&[&[1.0, 1.0], &[1.0, 1.0 + 1e-9]]);
        assert!(Lu::factor(&b).is_ok());
    }

    #[test]
    fn sup_norm_is_max_row_sum() {
        let a = m(&[&[1.0, -2.0], &[0.5, 0.25]]);
        assert_eq!(a.sup_norm(), 3.0);
        assert_eq!(NormKind::Sup.norm(&[1.0, -3.0, 2.0]), 3.0);
        assert_eq!(NormKind::Euclidean.norm(&[3.0, 4.0]), 5.0);
    }

    #[test]
    fn solve_matrix_gives_inverse_columns() {
        let a = m(&[&[4.0, 1.0], &[2.0, 3.0]]);
        let inv = Lu::factor(&a).unwrap().solve_matrix(&Matrix::identity(2, &0.0));
        let expect = [0.3, -0.1, -0.2, 0.4];
        for (i, e) in expect.iter().enumerate() {
            assert!((inv.get(i / 2, i % 2) - e).abs() < 1e-15);
        }
    }
}
