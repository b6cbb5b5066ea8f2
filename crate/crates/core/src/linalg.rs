//! Dense square matrices, just enough for change-of-basis and differentiation maps.

use std::ops::{Index, IndexMut};

use crate::scalar::Real;

/// Row-major dense `n × n` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        SquareMatrix {
            n,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// `selfᵀ · v`.
    pub fn transpose_mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.n);
        let mut out = vec![T::zero(); self.n];
        for (i, &vi) in v.iter().enumerate() {
            if vi == T::zero() {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = *o + a * vi;
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Spectral norm (largest singular value) by power iteration on `AᵀA`.
    ///
    /// Iterates until the Rayleigh quotient changes by less than `tol` relative.
    pub fn spectral_norm(&self, tol: T) -> T {
        let n = self.n;
        if n == 0 || self.max_abs() == T::zero() {
            return T::zero();
        }
        // Start from a vector with no special alignment to the (graded) structure.
        let mut v: Vec<T> = (0..n)
            .map(|i| T::one() + T::of_usize(i) / T::of_usize(n))
            .collect();
        normalize(&mut v);
        let mut lambda = T::zero();
        for _ in 0..10_000 {
            let av = self.mul_vec(&v);
            let mut w = self.transpose_mul_vec(&av);
            let next = dot(&v, &w);
            let len = normalize(&mut w);
            if len == T::zero() {
                return T::zero();
            }
            v = w;
            if (next - lambda).abs() <= tol * next.abs() {
                lambda = next;
                break;
            }
            lambda = next;
        }
        lambda.max(T::zero()).sqrt()
    }
}

impl<T> Index<(usize, usize)> for SquareMatrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for SquareMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

fn normalize<T: Real>(v: &mut [T]) -> T {
    let len = dot(v, v).sqrt();
    if len > T::zero() {
        v.iter_mut().for_each(|x| *x = *x / len);
    }
    len
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_norm_of_diagonal_and_nilpotent() {
        let m = SquareMatrix::<f64>::from_rows(&[vec![3.0, 0.0], vec![0.0, -5.0]]);
        assert!((m.spectral_norm(1e-12) - 5.0).abs() < 1e-9);
        // [[0, 1], [0, 0]] has singular values {1, 0}.
        let m = SquareMatrix::<f64>::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert!((m.spectral_norm(1e-12) - 1.0).abs() < 1e-9);
        assert_eq!(SquareMatrix::<f64>::zeros(3).spectral_norm(1e-10), 0.0);
    }

    #[test]
    fn products() {
        let a = SquareMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(a.mul_vec(&[1.0, 1.0]), vec![3.0, 7.0]);
        assert_eq!(a.transpose_mul_vec(&[1.0, 1.0]), vec![4.0, 6.0]);
        assert_eq!(a.mul(&SquareMatrix::identity(2)), a);
        assert_eq!(a.transpose().transpose(), a);
    }
}
