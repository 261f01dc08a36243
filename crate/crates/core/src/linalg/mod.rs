// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra at small dimension.
//!
//! Superoperators are stored as `d² × d²` matrices in a Hermitian,
//! orthonormal Frobenius basis `{F_1, …, F_{d²}}` with `F_{d²} = I/√d`.
//! In such a basis a map is trace preserving iff its last row is the unit
//! row, and Hermiticity preserving iff its matrix is real.

mod basis;
mod eigen;
mod expm;
mod logm;
mod superop;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub use basis::FrobeniusBasis;
pub use eigen::{eig, hermitian_eigen, EigenDecomposition, HermitianEigen};
pub use expm::matrix_exp;
pub use logm::{matrix_log, matrix_log_with, BranchPolicy, LogOptions};
pub use superop::{
    choi_matrix, devectorize_map, kossakowski_block, process_matrix, vectorize_map, Superoperator,
};

/// Dense square complex matrix.
pub type ComplexMatrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Default relative Hermiticity tolerance.
pub const TOL_HERM: f64 = 1e-10;
/// Default relative PSD tolerance.
pub const TOL_PSD: f64 = 1e-9;

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub(crate) fn ensure_square(m: &ComplexMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// Largest absolute entry.
pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `max_ij |m_ij − conj(m_ji)|`.
pub fn hermiticity_residual(m: &ComplexMatrix) -> f64 {
    let n = m.nrows().min(m.ncols());
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            r = r.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    r
}

/// Hermitian part `(m + m*)/2`.
pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Whether `m` is Hermitian to `tol · max(1, ‖m‖_max)`.
pub fn is_hermitian(m: &ComplexMatrix, tol: f64) -> bool {
    m.is_square() && hermiticity_residual(m) <= tol * max_abs(m).max(1.0)
}

/// Minimum eigenvalue of the Hermitian part of `m`.
///
/// Fails when the Hermiticity residual exceeds `TOL_HERM · max(1, ‖m‖)`.
pub fn hermitian_min_eig(m: &ComplexMatrix) -> Result<f64> {
    ensure_square(m)?;
    let scale = max_abs(m).max(1.0);
    let residual = hermiticity_residual(m);
    if residual > TOL_HERM * scale {
        return Err(Error::NotHermitian { residual });
    }
    Ok(hermitian_eigen(&hermitian_part(m)).min_value())
}

/// PSD test: Hermitian to `TOL_HERM` and `λ_min ≥ −tol_psd · max(1, ‖m‖)`.
pub fn is_psd(m: &ComplexMatrix, tol_psd: f64) -> bool {
    if !is_hermitian(m, TOL_HERM) {
        return false;
    }
    let scale = max_abs(m).max(1.0);
    hermitian_eigen(&hermitian_part(m)).min_value() >= -tol_psd * scale
}

/// Trace norm `‖m‖_1` (sum of singular values).
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    m.clone().svd(false, false).singular_values.iter().sum()
}

/// Spectral norm `‖m‖_2`.
pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Standard matrix unit `E_ab`.
pub fn matrix_unit(d: usize, a: usize, b: usize) -> ComplexMatrix {
    let mut e = ComplexMatrix::zeros(d, d);
    e[(a, b)] = c(1.0);
    e
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Pauli matrices `σ_1, σ_2, σ_3`.
pub fn pauli(j: usize) -> ComplexMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = c(1.0);
    match j {
        1 => ComplexMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        2 => ComplexMatrix::from_row_slice(2, 2, &[z, -I, I, z]),
        3 => ComplexMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
        _ => ComplexMatrix::identity(2, 2),
    }
}

/// Ladder operators `σ_± = (σ_1 ± iσ_2)/2`.
pub fn sigma_plus() -> ComplexMatrix {
    matrix_unit(2, 0, 1)
}

pub fn sigma_minus() -> ComplexMatrix {
    matrix_unit(2, 1, 0)
}
