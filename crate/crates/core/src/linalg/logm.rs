// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::{eig, ensure_square, max_abs, ComplexMatrix};
use crate::error::{Error, Result};

/// Treatment of eigenvalues on or near the negative real axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchPolicy {
    /// Fail with a branch-cut error.
    #[default]
    Error,
    /// Assign argument `+π`, the closed end of the principal strip.
    ClosedPrincipal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogOptions {
    pub branch: BranchPolicy,
    /// Eigenvalues with `|arg λ| ≥ π − cut_tol` count as on the cut.
    pub cut_tol: f64,
    /// Eigenvector-matrix condition number beyond which the input is
    /// considered non-diagonalizable.
    pub max_condition: f64,
    /// `|λ| ≤ singular_tol · ‖M‖` counts as singular.
    pub singular_tol: f64,
}

impl Default for LogOptions {
    fn default() -> Self {
        Self {
            branch: BranchPolicy::Error,
            cut_tol: 1e-10,
            max_condition: 1e8,
            singular_tol: 1e-14,
        }
    }
}

/// Principal logarithm with default options.
pub fn matrix_log(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    matrix_log_with(m, &LogOptions::default())
}

/// Principal logarithm `V diag(log λ) V⁻¹` with eigenvalue arguments in `(−π, π]`.
///
/// Real inputs with no eigenvalue on the cut produce a real result.
pub fn matrix_log_with(m: &ComplexMatrix, opts: &LogOptions) -> Result<ComplexMatrix> {
    let n = ensure_square(m)?;
    if n == 0 {
        return Ok(m.clone());
    }
    let scale = max_abs(m);
    let e = eig(m)?;
    let mut on_cut = false;
    let mut logs = Vec::with_capacity(n);
    for &lambda in e.values.iter() {
        if lambda.norm() <= opts.singular_tol * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::Singular);
        }
        let arg = lambda.arg();
        if std::f64::consts::PI - arg.abs() <= opts.cut_tol {
            match opts.branch {
                BranchPolicy::Error => return Err(Error::BranchCut { eigenvalue: lambda }),
                BranchPolicy::ClosedPrincipal => {
                    on_cut = true;
                    logs.push(Complex64::new(lambda.norm().ln(), std::f64::consts::PI));
                }
            }
        } else {
            logs.push(lambda.ln());
        }
    }
    let condition = e.condition();
    if !(condition <= opts.max_condition) {
        return Err(Error::NonDiagonalizable { condition });
    }
    let v = &e.vectors;
    let vinv = v
        .clone()
        .try_inverse()
        .ok_or(Error::NonDiagonalizable { condition })?;
    let mut scaled = v.clone();
    for (j, l) in logs.iter().enumerate() {
        let col = scaled.column(j) * *l;
        scaled.set_column(j, &col);
    }
    let mut out = scaled * vinv;
    if !on_cut && m.iter().all(|z| z.im == 0.0) {
        out.iter_mut().for_each(|z| z.im = 0.0);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, matrix_exp};
    use nalgebra::DVector;

    #[test]
    fn log_of_identity_is_zero() {
        let l = matrix_log(&ComplexMatrix::identity(3, 3)).unwrap();
        assert!(max_abs(&l) < 1e-15);
    }

    #[test]
    fn log_of_diagonal() {
        let m = ComplexMatrix::from_diagonal(&DVector::from_vec(vec![
            c((-1f64).exp()),
            c((-2f64).exp()),
        ]));
        let l = matrix_log(&m).unwrap();
        assert!((l[(0, 0)] - c(-1.0)).norm() < 1e-14 && (l[(1, 1)] - c(-2.0)).norm() < 1e-14);
    }

    #[test]
    fn negative_eigenvalue_policies() {
        let m = ComplexMatrix::from_diagonal(&DVector::from_vec(vec![c(-0.5), c(2.0)]));
        assert!(matches!(matrix_log(&m), Err(Error::BranchCut { .. })));
        let opts = LogOptions {
            branch: BranchPolicy::ClosedPrincipal,
            ..LogOptions::default()
        };
        let l = matrix_log_with(&m, &opts).unwrap();
        assert!((l[(0, 0)] - Complex64::new(0.5f64.ln(), std::f64::consts::PI)).norm() < 1e-14);
        assert!(max_abs(&(matrix_exp(&l).unwrap() - m)) < 1e-14);
    }

    #[test]
    fn singular_and_defective_inputs() {
        let z = ComplexMatrix::from_diagonal(&DVector::from_vec(vec![c(0.0), c(1.0)]));
        assert_eq!(matrix_log(&z), Err(Error::Singular));
        let j = ComplexMatrix::from_row_slice(2, 2, &[c(1.0), c(1.0), c(0.0), c(1.0)]);
        assert!(matches!(
            matrix_log(&j),
            Err(Error::NonDiagonalizable { .. })
        ));
    }

    #[test]
    fn rotation_log() {
        let th = 0.7f64;
        let r = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(th.cos()), c(-th.sin()), c(th.sin()), c(th.cos())],
        );
        let l = matrix_log(&r).unwrap();
        assert!((l[(1, 0)] - c(th)).norm() < 1e-14 && l[(0, 0)].norm() < 1e-14);
    }
}
