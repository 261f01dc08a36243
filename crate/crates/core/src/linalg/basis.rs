// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DVector;
use num_complex::Complex64;

use super::{c, ComplexMatrix, I};
use crate::error::{Error, Result};

/// Orthonormal Hermitian basis of `d × d` matrices under `⟨A, B⟩ = tr(A* B)`.
///
/// Ordering: off-diagonal symmetric elements (row-major pairs `j < k`),
/// antisymmetric elements (same pair order), traceless diagonal elements,
/// and finally `I/√d`. For `d = 2` this is `σ_1/√2, σ_2/√2, σ_3/√2, I/√2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusBasis {
    dim: usize,
    elements: Vec<ComplexMatrix>,
    /// Column `j` is `vec(F_j)` (column-major), so coefficients are `Vᴴ vec(x)`.
    columns: ComplexMatrix,
}

impl FrobeniusBasis {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        let s = 1.0 / 2f64.sqrt();
        let mut elements = Vec::with_capacity(d * d);
        for j in 0..d {
            for k in (j + 1)..d {
                let mut m = ComplexMatrix::zeros(d, d);
                m[(j, k)] = c(s);
                m[(k, j)] = c(s);
                elements.push(m);
            }
        }
        for j in 0..d {
            for k in (j + 1)..d {
                let mut m = ComplexMatrix::zeros(d, d);
                m[(j, k)] = -I * s;
                m[(k, j)] = I * s;
                elements.push(m);
            }
        }
        for l in 1..d {
            let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
            let mut m = ComplexMatrix::zeros(d, d);
            for i in 0..l {
                m[(i, i)] = c(norm);
            }
            m[(l, l)] = c(-(l as f64) * norm);
            elements.push(m);
        }
        elements.push(ComplexMatrix::identity(d, d).scale(1.0 / (d as f64).sqrt()));
        let columns = ComplexMatrix::from_fn(d * d, d * d, |r, j| elements[j].as_slice()[r]);
        Ok(Self {
            dim: d,
            elements,
            columns,
        })
    }

    /// Process-wide shared instance for dimension `d`.
    pub fn shared(d: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<FrobeniusBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(b) = guard.get(&d) {
            return Ok(Arc::clone(b));
        }
        let b = Arc::new(Self::new(d)?);
        guard.insert(d, Arc::clone(&b));
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of elements, `d²`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, j: usize) -> &ComplexMatrix {
        &self.elements[j]
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    /// Matrix whose columns are the column-major vectorizations of the elements.
    pub fn vec_matrix(&self) -> &ComplexMatrix {
        &self.columns
    }

    fn check(&self, x: &ComplexMatrix) -> Result<()> {
        if x.nrows() != self.dim || x.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.nrows().max(x.ncols()),
            });
        }
        Ok(())
    }

    /// Coordinates `x_j = tr(F_j* x)`.
    pub fn coefficients(&self, x: &ComplexMatrix) -> Result<DVector<Complex64>> {
        self.check(x)?;
        let v = DVector::from_column_slice(x.as_slice());
        Ok(self.columns.ad_mul(&v))
    }

    /// `Σ_j v_j F_j`.
    pub fn from_coefficients(&self, v: &DVector<Complex64>) -> Result<ComplexMatrix> {
        if v.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: v.len(),
            });
        }
        let flat = &self.columns * v;
        Ok(ComplexMatrix::from_column_slice(
            self.dim,
            self.dim,
            flat.as_slice(),
        ))
    }

    /// Gram matrix `tr(F_i* F_j)`.
    pub fn gram(&self) -> ComplexMatrix {
        self.columns.ad_mul(&self.columns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, pauli, trace};

    #[test]
    fn qubit_basis_is_scaled_pauli() {
        let b = FrobeniusBasis::new(2).unwrap();
        let s = 1.0 / 2f64.sqrt();
        for j in 0..3 {
            assert!(max_abs(&(b.element(j) - pauli(j + 1).scale(s))) < 1e-15);
        }
        assert!(max_abs(&(b.element(3) - ComplexMatrix::identity(2, 2).scale(s))) < 1e-15);
    }

    #[test]
    fn qutrit_basis_matches_gell_mann_order() {
        let b = FrobeniusBasis::new(3).unwrap();
        let s = 1.0 / 2f64.sqrt();
        // Symmetric (0,1), (0,2), (1,2); antisymmetric in the same order.
        assert_eq!(b.element(0)[(0, 1)], c(s));
        assert_eq!(b.element(1)[(0, 2)], c(s));
        assert_eq!(b.element(2)[(1, 2)], c(s));
        assert_eq!(b.element(3)[(0, 1)], -I * s);
        assert_eq!(b.element(5)[(2, 1)], I * s);
        let d8 = b.element(7);
        let n = 1.0 / 6f64.sqrt();
        assert!((d8[(2, 2)] - c(-2.0 * n)).norm() < 1e-15 && (d8[(0, 0)] - c(n)).norm() < 1e-15);
    }

    #[test]
    fn basis_is_orthonormal_hermitian_traceless() {
        for d in 2..=5 {
            let b = FrobeniusBasis::new(d).unwrap();
            let g = b.gram();
            assert!(max_abs(&(g - ComplexMatrix::identity(d * d, d * d))) < 1e-12);
            for j in 0..d * d - 1 {
                assert!(trace(b.element(j)).norm() < 1e-12);
                assert!(max_abs(&(b.element(j) - b.element(j).adjoint())) == 0.0);
            }
        }
    }

    #[test]
    fn rejects_small_dimension() {
        assert_eq!(FrobeniusBasis::new(1), Err(Error::InvalidDimension(1)));
    }

    #[test]
    fn coefficient_round_trip() {
        let b = FrobeniusBasis::new(3).unwrap();
        let x = ComplexMatrix::from_fn(3, 3, |i, j| {
            Complex64::new(i as f64 - 0.3 * j as f64, (i * j) as f64)
        });
        let back = b.from_coefficients(&b.coefficients(&x).unwrap()).unwrap();
        assert!(max_abs(&(back - x)) < 1e-14);
    }
}
