// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the numerical pipeline.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid dimension {0}: the Hilbert-space dimension must be at least 2")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("eigenvalue {eigenvalue} lies on the branch cut of the principal logarithm")]
    BranchCut { eigenvalue: Complex64 },

    #[error("matrix is not diagonalizable (eigenvector condition number {condition:.3e})")]
    NonDiagonalizable { condition: f64 },

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("eigenvalue iteration did not converge")]
    EigenFailure,

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid generator at t = {t}: {reason}")]
    InvalidGenerator { t: f64, reason: String },

    #[error("superoperator is not a *-map (imaginary residual {residual:.3e})")]
    NotStarMap { residual: f64 },

    #[error("standard-form decomposition failed (reconstruction residual {residual:.3e})")]
    DecompositionFailed { residual: f64 },

    #[error("step {step} exceeds the smallest breakpoint gap {min_gap}")]
    StepTooLarge { step: f64, min_gap: f64 },

    #[error("quadrature did not converge: achieved {achieved:.3e}, target {target:.3e}")]
    QuadratureAccuracy { achieved: f64, target: f64 },

    #[error("generator family is not commutative (residual {residual:.3e} > tol {tol:.3e})")]
    NotCommutative { residual: f64, tol: f64 },

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("family value is singular at t = {t}")]
    SingularAt { t: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
