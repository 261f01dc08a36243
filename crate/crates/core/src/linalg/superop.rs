// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;

use super::{c, matrix_exp, matrix_unit, ComplexMatrix, FrobeniusBasis};
use crate::error::{Error, Result};

/// Linear map on `d × d` matrices stored as `W_jk = tr(F_j* Φ(F_k))`.
#[derive(Debug, Clone)]
pub struct Superoperator {
    matrix: ComplexMatrix,
    basis: Arc<FrobeniusBasis>,
}

impl PartialEq for Superoperator {
    fn eq(&self, other: &Self) -> bool {
        self.basis.dim() == other.basis.dim() && self.matrix == other.matrix
    }
}

impl Superoperator {
    pub fn new(matrix: ComplexMatrix, basis: Arc<FrobeniusBasis>) -> Result<Self> {
        let n = basis.len();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.nrows().max(matrix.ncols()),
            });
        }
        Ok(Self { matrix, basis })
    }

    pub fn identity(basis: Arc<FrobeniusBasis>) -> Self {
        let n = basis.len();
        Self {
            matrix: ComplexMatrix::identity(n, n),
            basis,
        }
    }

    pub fn zero(basis: Arc<FrobeniusBasis>) -> Self {
        let n = basis.len();
        Self {
            matrix: ComplexMatrix::zeros(n, n),
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn basis(&self) -> &Arc<FrobeniusBasis> {
        &self.basis
    }

    /// Same basis, new matrix.
    pub fn with_matrix(&self, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.nrows(), self.matrix.nrows());
        Self {
            matrix,
            basis: Arc::clone(&self.basis),
        }
    }

    /// Apply the map to a `d × d` matrix.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let v = self.basis.coefficients(x)?;
        self.basis.from_coefficients(&(&self.matrix * v))
    }

    pub fn scale(&self, s: f64) -> Self {
        self.with_matrix(self.matrix.scale(s))
    }

    pub fn compose(&self, other: &Self) -> Self {
        self.with_matrix(&self.matrix * &other.matrix)
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self.matrix.clone().try_inverse().ok_or(Error::Singular)?;
        Ok(self.with_matrix(inv))
    }

    /// `e^{s·W}`.
    pub fn exp_scaled(&self, s: f64) -> Result<Self> {
        Ok(self.with_matrix(matrix_exp(&self.matrix.scale(s))?))
    }

    pub fn determinant(&self) -> Complex64 {
        self.matrix.determinant()
    }

    /// Deviation of the last row from the unit row `(0, …, 0, 1)`.
    pub fn tp_residual(&self) -> f64 {
        let n = self.matrix.nrows();
        (0..n)
            .map(|j| (self.matrix[(n - 1, j)] - c(if j == n - 1 { 1.0 } else { 0.0 })).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry of the last row; zero for trace-annihilating generators.
    pub fn trace_annihilation_residual(&self) -> f64 {
        let n = self.matrix.nrows();
        self.matrix
            .row(n - 1)
            .iter()
            .fold(0.0, |a, z| a.max(z.norm()))
    }

    /// Largest imaginary part; zero iff the map preserves Hermiticity.
    pub fn star_residual(&self) -> f64 {
        self.matrix.iter().fold(0.0, |a, z| a.max(z.im.abs()))
    }

    /// Max-norm distance between two maps.
    pub fn distance(&self, other: &Self) -> f64 {
        super::max_abs(&(&self.matrix - &other.matrix))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.with_matrix(&self.matrix * &other.matrix - &other.matrix * &self.matrix)
    }

    /// Eigenvalues of the matrix representation.
    pub fn eigenvalues(&self) -> Result<DVector<Complex64>> {
        Ok(super::eig(&self.matrix)?.values)
    }
}

impl Add for &Superoperator {
    type Output = Superoperator;
    fn add(self, rhs: Self) -> Superoperator {
        self.with_matrix(&self.matrix + &rhs.matrix)
    }
}

impl Sub for &Superoperator {
    type Output = Superoperator;
    fn sub(self, rhs: Self) -> Superoperator {
        self.with_matrix(&self.matrix - &rhs.matrix)
    }
}

impl Mul for &Superoperator {
    type Output = Superoperator;
    fn mul(self, rhs: Self) -> Superoperator {
        self.compose(rhs)
    }
}

/// Matrix of a linear map: `W_jk = tr(F_j* apply(F_k))`.
pub fn vectorize_map<F>(apply: F, basis: &Arc<FrobeniusBasis>) -> Superoperator
where
    F: Fn(&ComplexMatrix) -> ComplexMatrix,
{
    let n = basis.len();
    let d = basis.dim();
    let mut images = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let y = apply(basis.element(k));
        assert_eq!(
            (y.nrows(), y.ncols()),
            (d, d),
            "map must return a {d}x{d} matrix"
        );
        images.set_column(k, &DVector::from_column_slice(y.as_slice()));
    }
    Superoperator {
        matrix: basis.vec_matrix().ad_mul(&images),
        basis: Arc::clone(basis),
    }
}

/// The map `x ↦ Σ_j (Σ_k S_jk tr(F_k* x)) F_j` as a closure.
pub fn devectorize_map(s: &Superoperator) -> impl Fn(&ComplexMatrix) -> Result<ComplexMatrix> + '_ {
    move |x| s.apply(x)
}

/// Choi matrix `Σ_ab E_ab ⊗ Φ(E_ab)`; block `(a, b)` is `Φ(E_ab)`.
pub fn choi_matrix(s: &Superoperator) -> ComplexMatrix {
    let d = s.dim();
    let mut out = ComplexMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            let img = s
                .apply(&matrix_unit(d, a, b))
                .expect("matrix unit has basis dimension");
            out.view_mut((a * d, b * d), (d, d)).copy_from(&img);
        }
    }
    out
}

/// Coefficients `t_jk` with `Φ(x) = Σ_jk t_jk F_j x F_k*`.
///
/// Hermitian iff the map preserves Hermiticity; unitarily similar to the
/// Choi matrix, hence PSD iff the map is completely positive.
pub fn process_matrix(s: &Superoperator) -> ComplexMatrix {
    let d = s.dim();
    let basis = s.basis();
    let n = d * d;
    let v = ComplexMatrix::from_fn(n, n, |r, j| {
        let (a, i) = (r / d, r % d);
        basis.element(j)[(i, a)]
    });
    v.ad_mul(&(choi_matrix(s) * &v))
}

/// Leading `(d²−1) × (d²−1)` block of a process matrix.
pub fn kossakowski_block(t: &ComplexMatrix) -> ComplexMatrix {
    let m = t.nrows() - 1;
    t.view((0, 0), (m, m)).into_owned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigen, max_abs, pauli, I};

    fn qubit() -> Arc<FrobeniusBasis> {
        FrobeniusBasis::shared(2).unwrap()
    }

    #[test]
    fn identity_map_vectorizes_to_identity() {
        let s = vectorize_map(|x| x.clone(), &qubit());
        assert!(max_abs(&(s.matrix() - ComplexMatrix::identity(4, 4))) < 1e-15);
    }

    #[test]
    fn pauli_conjugation_matrix() {
        let s1 = pauli(1);
        let s = vectorize_map(|x| &s1 * x * &s1, &qubit());
        let want = [1.0, -1.0, -1.0, 1.0];
        for j in 0..4 {
            for k in 0..4 {
                let w = if j == k { want[j] } else { 0.0 };
                assert!((s.matrix()[(j, k)] - c(w)).norm() < 1e-15);
            }
        }
        // Inverse direction.
        let diag = Superoperator::new(
            ComplexMatrix::from_diagonal(&DVector::from_vec(want.iter().map(|&w| c(w)).collect())),
            qubit(),
        )
        .unwrap();
        let x = ComplexMatrix::from_fn(2, 2, |i, j| Complex64::new(i as f64 + 0.5, j as f64 - 2.0));
        let got = devectorize_map(&diag)(&x).unwrap();
        assert!(max_abs(&(got - &s1 * &x * &s1)) < 1e-14);
    }

    #[test]
    fn choi_of_identity_and_transpose() {
        let id = Superoperator::identity(qubit());
        let h = hermitian_eigen(&choi_matrix(&id));
        assert!((h.values[3] - 2.0).abs() < 1e-14 && h.values[0].abs() < 1e-14);
        let tr = vectorize_map(|x| x.transpose(), &qubit());
        let h = hermitian_eigen(&choi_matrix(&tr));
        assert!((h.values[0] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn process_matrix_of_unitary_conjugation() {
        // x ↦ σ_3 x σ_3 = 2 F_3 x F_3*, so t has a single entry 2 at (3,3).
        let s3 = pauli(3);
        let s = vectorize_map(|x| &s3 * x * &s3, &qubit());
        let t = process_matrix(&s);
        let mut want = ComplexMatrix::zeros(4, 4);
        want[(2, 2)] = c(2.0);
        assert!(max_abs(&(t - want)) < 1e-14);
    }

    #[test]
    fn process_matrix_reconstructs_map() {
        let b = FrobeniusBasis::shared(3).unwrap();
        let m = ComplexMatrix::from_fn(3, 3, |i, j| {
            Complex64::new((i + 2 * j) as f64 * 0.1, (i as f64 - j as f64) * 0.2)
        });
        let s = vectorize_map(|x| &m * x * m.adjoint() + x.transpose() * I, &b);
        let t = process_matrix(&s);
        let rebuilt = vectorize_map(
            |x| {
                let mut acc = ComplexMatrix::zeros(3, 3);
                for j in 0..9 {
                    for k in 0..9 {
                        acc += (b.element(j) * x * b.element(k).adjoint()) * t[(j, k)];
                    }
                }
                acc
            },
            &b,
        );
        assert!(s.distance(&rebuilt) < 1e-13);
    }
}
