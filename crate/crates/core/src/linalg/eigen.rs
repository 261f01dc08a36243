// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{linalg::Schur, DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::{ensure_square, ComplexMatrix};
use crate::error::{Error, Result};

/// Eigenpairs of a general complex matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: DVector<Complex64>,
    /// Unit-norm eigenvectors stored as columns.
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Spectral condition number `‖V‖₂ ‖V⁻¹‖₂` of the eigenvector matrix.
    pub fn condition(&self) -> f64 {
        let sv = self.vectors.clone().svd(false, false).singular_values;
        let min = sv.min();
        if min <= 0.0 {
            f64::INFINITY
        } else {
            sv.max() / min
        }
    }
}

/// Eigenpairs of a Hermitian matrix, sorted by ascending eigenvalue.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn min_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Eigenvector belonging to the smallest eigenvalue.
    pub fn min_vector(&self) -> DVector<Complex64> {
        self.vectors.column(0).into_owned()
    }
}

/// Eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigen(m: &ComplexMatrix) -> HermitianEigen {
    let se = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..se.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let values = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |r, k| {
        se.eigenvectors[(r, order[k])]
    });
    HermitianEigen { values, vectors }
}

/// Eigendecomposition of a general complex square matrix.
///
/// Uses the complex Schur form `m = Q T Q*` and back substitution on the
/// triangular factor. Repeated eigenvalues are handled by perturbing the
/// pivot as in LAPACK's `trevc`; defective matrices then yield (nearly)
/// parallel columns, which [`EigenDecomposition::condition`] exposes.
pub fn eig(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let n = ensure_square(m)?;
    if n == 0 {
        return Ok(EigenDecomposition {
            values: DVector::zeros(0),
            vectors: DMatrix::zeros(0, 0),
        });
    }
    let schur = Schur::try_new(m.clone(), f64::EPSILON, 10_000).ok_or(Error::EigenFailure)?;
    let (q, t) = schur.unpack();
    let values = DVector::from_fn(n, |i, _| t[(i, i)]);

    let tnorm = t
        .iter()
        .fold(0.0f64, |a, z| a.max(z.norm()))
        .max(f64::MIN_POSITIVE);
    let smin = f64::EPSILON * tnorm;
    let mut vectors = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut v = DVector::<Complex64>::zeros(n);
        v[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut s = Complex64::new(0.0, 0.0);
            for j in (i + 1)..=k {
                s += t[(i, j)] * v[j];
            }
            let mut den = t[(i, i)] - lambda;
            if den.norm() < smin {
                den = Complex64::new(smin, 0.0);
            }
            v[i] = -s / den;
            // Rescale to avoid overflow in strongly non-normal cases.
            let vmax = v.iter().fold(0.0f64, |a, z| a.max(z.norm()));
            if vmax > 1e100 {
                v /= Complex64::new(vmax, 0.0);
            }
        }
        let mut x = &q * v;
        let norm = x.norm();
        if norm > 0.0 {
            x /= Complex64::new(norm, 0.0);
        }
        vectors.set_column(k, &x);
    }
    Ok(EigenDecomposition { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    fn residual(m: &ComplexMatrix, e: &EigenDecomposition) -> f64 {
        let d = ComplexMatrix::from_diagonal(&e.values);
        max_abs(&(m * &e.vectors - &e.vectors * d))
    }

    #[test]
    fn eig_of_random_complex_matrix() {
        let n = 9;
        let m = ComplexMatrix::from_fn(n, n, |i, j| {
            let x = ((i * 7 + j * 13) % 17) as f64 / 17.0 - 0.5;
            let y = ((i * 5 + j * 3) % 11) as f64 / 11.0 - 0.5;
            Complex64::new(x, y)
        });
        let e = eig(&m).unwrap();
        assert!(residual(&m, &e) < 1e-12);
    }

    #[test]
    fn eig_of_rotation_generator() {
        let m = ComplexMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        let e = eig(&m).unwrap();
        let mut im: Vec<f64> = e.values.iter().map(|z| z.im).collect();
        im.sort_by(f64::total_cmp);
        assert!((im[0] + 1.0).abs() < 1e-14 && (im[1] - 1.0).abs() < 1e-14);
        assert!(residual(&m, &e) < 1e-14);
    }

    #[test]
    fn defective_matrix_is_ill_conditioned() {
        let m = ComplexMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ],
        );
        let e = eig(&m).unwrap();
        assert!(e.condition() > 1e8);
    }

    #[test]
    fn hermitian_eigen_is_sorted() {
        let m = ComplexMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.5, 0.0),
        ]));
        let h = hermitian_eigen(&m);
        assert_eq!(h.values, vec![-1.0, 0.5, 2.0]);
    }
}
