//! Dense complex matrices for operators without monomial structure.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

/// A square complex matrix, indexed `(row, column)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix(DMatrix<Complex64>);

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        DenseMatrix(DMatrix::identity(n, n))
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        DenseMatrix(DMatrix::from_fn(n, n, f))
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, |i, j| if i == j { entries[i] } else { Complex64::new(0.0, 0.0) })
    }

    /// Matrix whose columns are `columns`.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Self {
        let n = columns.len();
        Self::from_fn(n, |i, j| columns[j][i])
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.0[(row, col)] = value;
    }

    pub fn as_nalgebra(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    /// Rows in order, each as a slice-like vector.
    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.0[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        DenseMatrix(self.0.adjoint())
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> Self {
        DenseMatrix(&self.0 * &rhs.0)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.0[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        DenseMatrix(&self.0 * s)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity(self.dim());
        for _ in 0..n {
            acc = acc.matmul(self);
        }
        acc
    }

    pub fn commutator(&self, rhs: &DenseMatrix) -> Self {
        DenseMatrix(&self.0 * &rhs.0 - &rhs.0 * &self.0)
    }

    pub fn anticommutator(&self, rhs: &DenseMatrix) -> Self {
        DenseMatrix(&self.0 * &rhs.0 + &rhs.0 * &self.0)
    }

    pub fn kron(&self, rhs: &DenseMatrix) -> Self {
        DenseMatrix(self.0.kronecker(&rhs.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn determinant(&self) -> Complex64 {
        self.0.clone().determinant()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim(), "matrix dimensions must agree");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖M†M - I‖_max`.
    pub fn unitarity_deviation(&self) -> f64 {
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.dim()))
    }

    /// Largest modulus of an off-diagonal entry.
    pub fn off_diagonal_max(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    worst = worst.max(self.0[(i, j)].norm());
                }
            }
        }
        worst
    }

    /// Numerical rank from the singular values.
    pub fn rank(&self, tol: f64) -> usize {
        self.0.clone().svd(false, false).rank(tol)
    }

    /// Orthonormal eigenvectors of a Hermitian matrix, as columns in
    /// ascending eigenvalue order.
    pub fn hermitian_eigenvectors(&self) -> (Vec<f64>, Vec<Vec<Complex64>>) {
        let eig = self.0.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = order
            .iter()
            .map(|&j| (0..self.dim()).map(|i| eig.eigenvectors[(i, j)]).collect())
            .collect();
        (values, vectors)
    }
}

impl Add for &DenseMatrix {
    type Output = DenseMatrix;

    fn add(self, rhs: &DenseMatrix) -> DenseMatrix {
        DenseMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &DenseMatrix {
    type Output = DenseMatrix;

    fn sub(self, rhs: &DenseMatrix) -> DenseMatrix {
        DenseMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;

    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.matmul(rhs)
    }
}

/// `⟨u|v⟩`, conjugate-linear in `u`.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn commutator_of_pauli_like() {
        let x = DenseMatrix::from_fn(2, |i, j| if i != j { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let z = DenseMatrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let comm = x.commutator(&z);
        assert_eq!(comm.get(0, 1), c(-2.0, 0.0));
        assert_eq!(comm.get(1, 0), c(2.0, 0.0));
        assert_eq!(x.anticommutator(&z).max_abs(), 0.0);
    }

    #[test]
    fn rank_and_kron() {
        let i2 = DenseMatrix::identity(2);
        assert_eq!(i2.kron(&i2), DenseMatrix::identity(4));
        let singular = DenseMatrix::from_fn(3, |_, _| c(1.0, 0.0));
        assert_eq!(singular.rank(1e-10), 1);
    }

    #[test]
    fn hermitian_eigenpairs() {
        let h = DenseMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => c(0.0, -1.0),
            (1, 0) => c(0.0, 1.0),
            _ => c(0.0, 0.0),
        });
        let (values, vectors) = h.hermitian_eigenvectors();
        assert!((values[0] + 1.0).abs() < 1e-12 && (values[1] - 1.0).abs() < 1e-12);
        for (lambda, v) in values.iter().zip(&vectors) {
            let hv = h.apply(v);
            for k in 0..2 {
                assert!((hv[k] - v[k] * *lambda).norm() < 1e-12);
            }
        }
    }
}
