// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

//! Periodic Lindblad generators in first standard form
//! `L_t = −i[H_t, ·] + Σ_jk a_jk(t) D_jk`, with
//! `D_jk(x) = F_j x F_k* − ½{F_k* F_j, x}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    c, hermitian_eigen, hermitian_part, hermiticity_residual, kossakowski_block, max_abs,
    process_matrix, spectral_norm, trace, vectorize_map, ComplexMatrix, FrobeniusBasis,
    Superoperator, I, TOL_HERM, TOL_PSD,
};

/// Time-dependent matrix coefficient. Must be safe to evaluate concurrently.
pub type MatrixFn = Arc<dyn Fn(f64) -> ComplexMatrix + Send + Sync>;

/// Cached dissipator and commutator superoperators for one dimension.
#[derive(Debug)]
pub struct GeneratorFrame {
    basis: Arc<FrobeniusBasis>,
    /// `D_jk` at index `j·(d²−1) + k`.
    dissipators: Vec<ComplexMatrix>,
    /// `x ↦ [F_m, x]` for the traceless elements.
    commutators: Vec<ComplexMatrix>,
}

impl GeneratorFrame {
    fn build(basis: Arc<FrobeniusBasis>) -> Self {
        let m = basis.len() - 1;
        let mut dissipators = Vec::with_capacity(m * m);
        for j in 0..m {
            for k in 0..m {
                let fj = basis.element(j).clone();
                let fk = basis.element(k).adjoint();
                let anti = &fk * &fj;
                let s = vectorize_map(
                    |x| &fj * x * &fk - (&anti * x + x * &anti).scale(0.5),
                    &basis,
                );
                dissipators.push(s.into_matrix());
            }
        }
        let commutators = (0..m)
            .map(|j| {
                let f = basis.element(j).clone();
                vectorize_map(|x| &f * x - x * &f, &basis).into_matrix()
            })
            .collect();
        Self {
            basis,
            dissipators,
            commutators,
        }
    }

    /// Shared frame for dimension `d`.
    pub fn shared(d: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GeneratorFrame>>>> = OnceLock::new();
        let basis = FrobeniusBasis::shared(d)?;
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        Ok(Arc::clone(
            guard
                .entry(d)
                .or_insert_with(|| Arc::new(Self::build(basis))),
        ))
    }

    pub fn basis(&self) -> &Arc<FrobeniusBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `−i[H, ·] + Σ a_jk D_jk`, without validating `H` or `a`.
    pub fn assemble(&self, h: &ComplexMatrix, a: &ComplexMatrix) -> Result<Superoperator> {
        let d = self.dim();
        let m = d * d - 1;
        if h.nrows() != d || h.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: h.nrows().max(h.ncols()),
            });
        }
        if a.nrows() != m || a.ncols() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: a.nrows().max(a.ncols()),
            });
        }
        let n = m + 1;
        let mut out = ComplexMatrix::zeros(n, n);
        let hc = self.basis.coefficients(h)?;
        for (j, ad) in self.commutators.iter().enumerate() {
            let w = -I * hc[j];
            if w != Complex64::new(0.0, 0.0) {
                out.zip_apply(ad, |o, x| *o += w * x);
            }
        }
        for j in 0..m {
            for k in 0..m {
                let w = a[(j, k)];
                if w != Complex64::new(0.0, 0.0) {
                    out.zip_apply(&self.dissipators[j * m + k], |o, x| *o += w * x);
                }
            }
        }
        Superoperator::new(out, Arc::clone(&self.basis))
    }
}

/// The superoperator `D_jk` (zero-based indices `< d²−1`).
pub fn dissipator(j: usize, k: usize, basis: &FrobeniusBasis) -> Result<Superoperator> {
    let frame = GeneratorFrame::shared(basis.dim())?;
    let m = basis.len() - 1;
    for idx in [j, k] {
        if idx >= m {
            return Err(Error::IndexOutOfRange { index: idx, len: m });
        }
    }
    Superoperator::new(
        frame.dissipators[j * m + k].clone(),
        Arc::clone(frame.basis()),
    )
}

/// `−i[H, ·] + Σ a_jk D_jk` in the shared basis of dimension `H.nrows()`.
pub fn assemble_generator(h: &ComplexMatrix, a: &ComplexMatrix) -> Result<Superoperator> {
    GeneratorFrame::shared(h.nrows())?.assemble(h, a)
}

/// Periodic generator description: period, `t ↦ H_t`, `t ↦ a_t`, and the
/// times in `[0, T)` where the coefficients may jump or kink.
#[derive(Clone)]
pub struct LindbladSpec {
    period: f64,
    hamiltonian: MatrixFn,
    kossakowski: MatrixFn,
    breakpoints: Vec<f64>,
    frame: Arc<GeneratorFrame>,
}

impl fmt::Debug for LindbladSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LindbladSpec")
            .field("dim", &self.dim())
            .field("period", &self.period)
            .field("breakpoints", &self.breakpoints)
            .finish()
    }
}

/// Number of sample points used when validating a spec.
const VALIDATION_SAMPLES: usize = 16;

impl LindbladSpec {
    /// Validates dimensions, Hermiticity of `H`, positivity of `a` and
    /// periodicity on a sample grid plus the breakpoints.
    pub fn new(
        dim: usize,
        period: f64,
        hamiltonian: MatrixFn,
        kossakowski: MatrixFn,
        breakpoints: Vec<f64>,
    ) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "period must be positive, got {period}"
            )));
        }
        let frame = GeneratorFrame::shared(dim)?;
        let mut bps: Vec<f64> = Vec::with_capacity(breakpoints.len());
        for b in breakpoints {
            if !b.is_finite() {
                return Err(Error::InvalidArgument("non-finite breakpoint".into()));
            }
            let r = b.rem_euclid(period);
            // Snap values that round to the period back onto zero.
            bps.push(if period - r < 1e-14 * period { 0.0 } else { r });
        }
        bps.sort_by(f64::total_cmp);
        bps.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * period);
        let spec = Self {
            period,
            hamiltonian,
            kossakowski,
            breakpoints: bps,
            frame,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Spec built from jump operators `V_i(t)`:
    /// `L_t(x) = −i[H_t, x] + Σ_i V_i x V_i* − ½{V_i* V_i, x}`.
    ///
    /// Identity components of the `V_i` are moved into the Hamiltonian.
    pub fn from_jump_operators(
        dim: usize,
        period: f64,
        hamiltonian: MatrixFn,
        jumps: Arc<dyn Fn(f64) -> Vec<ComplexMatrix> + Send + Sync>,
        breakpoints: Vec<f64>,
    ) -> Result<Self> {
        let basis = FrobeniusBasis::shared(dim)?;
        let m = dim * dim - 1;
        let coeffs = {
            let basis = Arc::clone(&basis);
            let jumps = Arc::clone(&jumps);
            move |t: f64| -> Vec<DVector<Complex64>> {
                jumps(t)
                    .iter()
                    .map(|v| basis.coefficients(v).expect("jump operator dimension"))
                    .collect()
            }
        };
        let coeffs = Arc::new(coeffs);
        let kc = Arc::clone(&coeffs);
        let kossakowski: MatrixFn = Arc::new(move |t| {
            let mut a = ComplexMatrix::zeros(m, m);
            for x in kc(t) {
                for j in 0..m {
                    for k in 0..m {
                        a[(j, k)] += x[j] * x[k].conj();
                    }
                }
            }
            a
        });
        let hb = Arc::clone(&basis);
        let h0 = Arc::clone(&hamiltonian);
        let total_h: MatrixFn = Arc::new(move |t| {
            let mut h = h0(t);
            let sd = (dim as f64).sqrt();
            for x in coeffs(t) {
                let cid = x[m];
                let mut w = x.clone();
                w[m] = c(0.0);
                let wm = hb.from_coefficients(&w).expect("basis size");
                h += (&wm * cid.conj() - wm.adjoint() * cid) * (I / (2.0 * sd));
            }
            h
        });
        Self::new(dim, period, total_h, kossakowski, breakpoints)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        let m = d * d - 1;
        let mut samples: Vec<f64> = (0..VALIDATION_SAMPLES)
            .map(|k| self.period * k as f64 / VALIDATION_SAMPLES as f64)
            .collect();
        samples.extend(self.breakpoints.iter().copied());
        for &t in &samples {
            let h = (self.hamiltonian)(t);
            let a = (self.kossakowski)(t);
            if h.shape() != (d, d) {
                return Err(Error::InvalidModel(format!(
                    "H_t at t={t} has shape {:?}, expected {d}x{d}",
                    h.shape()
                )));
            }
            if a.shape() != (m, m) {
                return Err(Error::InvalidModel(format!(
                    "Kossakowski matrix at t={t} has shape {:?}, expected {m}x{m}",
                    a.shape()
                )));
            }
            self.check_coefficients(t, &h, &a)?;
            // Periodicity, away from breakpoints where one-sided limits differ.
            if !self
                .breakpoints
                .iter()
                .any(|&b| (b - t).abs() < 1e-12 * self.period)
            {
                let tp = t + self.period;
                let dh = max_abs(&((self.hamiltonian)(tp) - &h));
                let da = max_abs(&((self.kossakowski)(tp) - &a));
                let scale = 1.0 + max_abs(&h) + max_abs(&a);
                if dh.max(da) > 1e-8 * scale {
                    return Err(Error::InvalidModel(format!(
                        "coefficients are not {}-periodic at t={t} (deviation {:.3e})",
                        self.period,
                        dh.max(da)
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_coefficients(&self, t: f64, h: &ComplexMatrix, a: &ComplexMatrix) -> Result<()> {
        let hr = hermiticity_residual(h);
        if hr > TOL_HERM * max_abs(h).max(1.0) {
            return Err(Error::InvalidGenerator {
                t,
                reason: format!("H_t not Hermitian (residual {hr:.3e})"),
            });
        }
        let scale = max_abs(a).max(1.0);
        let ar = hermiticity_residual(a);
        if ar > TOL_HERM * scale {
            return Err(Error::InvalidGenerator {
                t,
                reason: format!("Kossakowski matrix not Hermitian (residual {ar:.3e})"),
            });
        }
        let min = hermitian_eigen(&hermitian_part(a)).min_value();
        if min < -TOL_PSD * scale {
            return Err(Error::InvalidGenerator {
                t,
                reason: format!(
                    "Kossakowski matrix not positive semidefinite (min eigenvalue {min:.3e})"
                ),
            });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Sorted breakpoints in `[0, T)`.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Breakpoints and their translates by multiples of `T` inside `[a, b]`.
    pub fn breakpoints_in(&self, a: f64, b: f64) -> Vec<f64> {
        let mut out = Vec::new();
        if self.breakpoints.is_empty() || b < a {
            return out;
        }
        let first = (a / self.period).floor() as i64 - 1;
        let last = (b / self.period).ceil() as i64 + 1;
        for n in first..=last {
            for &bp in &self.breakpoints {
                let t = n as f64 * self.period + bp;
                if t >= a && t <= b {
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn basis(&self) -> &Arc<FrobeniusBasis> {
        self.frame.basis()
    }

    pub fn frame(&self) -> &Arc<GeneratorFrame> {
        &self.frame
    }

    pub fn hamiltonian_at(&self, t: f64) -> ComplexMatrix {
        (self.hamiltonian)(t)
    }

    pub fn kossakowski_at(&self, t: f64) -> ComplexMatrix {
        (self.kossakowski)(t)
    }

    pub fn hamiltonian_fn(&self) -> &MatrixFn {
        &self.hamiltonian
    }

    pub fn kossakowski_fn(&self) -> &MatrixFn {
        &self.kossakowski
    }

    /// `L_t` with `H_t` and `a_t` validated at `t`.
    pub fn generator(&self, t: f64) -> Result<Superoperator> {
        generator_at(self, t)
    }
}

/// The vectorized generator `L_t`.
pub fn generator_at(spec: &LindbladSpec, t: f64) -> Result<Superoperator> {
    let h = spec.hamiltonian_at(t);
    let a = spec.kossakowski_at(t);
    spec.check_coefficients(t, &h, &a)?;
    spec.frame.assemble(&h, &a)
}

/// `max ‖L_t L_s − L_s L_t‖₂` over the given time pairs.
pub fn commutativity_residual(spec: &LindbladSpec, grid: &[(f64, f64)]) -> Result<f64> {
    let mut cache: HashMap<u64, Superoperator> = HashMap::new();
    let mut get = |t: f64| -> Result<Superoperator> {
        if let Some(l) = cache.get(&t.to_bits()) {
            return Ok(l.clone());
        }
        let l = generator_at(spec, t)?;
        cache.insert(t.to_bits(), l.clone());
        Ok(l)
    };
    let mut r: f64 = 0.0;
    for &(t, s) in grid {
        let lt = get(t)?;
        let ls = get(s)?;
        r = r.max(spectral_norm(lt.commutator(&ls).matrix()));
    }
    Ok(r)
}

/// All ordered pairs of an `n`-point uniform grid on `[0, T)`, plus breakpoints.
pub fn commutativity_grid(spec: &LindbladSpec, n: usize) -> Vec<f64> {
    let mut ts: Vec<f64> = (0..n)
        .map(|k| spec.period() * k as f64 / n as f64)
        .collect();
    ts.extend(spec.breakpoints().iter().copied());
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

/// Commutativity verdict with the residual and the tolerance
/// `1e−9 · max‖L_t‖₂²` used for it.
pub fn commutativity_check(spec: &LindbladSpec, n: usize) -> Result<(bool, f64, f64)> {
    let ts = commutativity_grid(spec, n);
    let mut max_norm: f64 = 0.0;
    for &t in &ts {
        max_norm = max_norm.max(spectral_norm(generator_at(spec, t)?.matrix()));
    }
    let pairs: Vec<(f64, f64)> = ts
        .iter()
        .enumerate()
        .flat_map(|(i, &t)| ts[..i].iter().map(move |&s| (t, s)))
        .collect();
    let residual = commutativity_residual(spec, &pairs)?;
    let tol = 1e-9 * max_norm.max(1e-300).powi(2).max(1e-300);
    Ok((residual <= tol.max(1e-13), residual, tol))
}

/// Result of splitting a `*`-generator into Hamiltonian and dissipative parts.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardFormDecomposition {
    /// Traceless Hermitian `H`.
    pub hamiltonian_part: ComplexMatrix,
    /// Hermitian `(d²−1) × (d²−1)` coefficient matrix.
    pub kossakowski_part: ComplexMatrix,
    /// Whether the coefficient matrix is positive semidefinite.
    pub gksl_valid: bool,
    /// Smallest eigenvalue of the coefficient matrix.
    pub min_eig: f64,
    /// Max-entry reconstruction error.
    pub residual: f64,
}

/// Relative reconstruction tolerance of [`extract_standard_form`].
pub const DECOMPOSITION_TOL: f64 = 1e-8;

/// Recover `(H, a)` with `S = −i[H, ·] + Σ a_jk D_jk`.
pub fn extract_standard_form(s: &Superoperator) -> Result<StandardFormDecomposition> {
    let scale = max_abs(s.matrix()).max(1.0);
    let star = s.star_residual();
    if star > TOL_HERM * scale {
        return Err(Error::NotStarMap { residual: star });
    }
    let d = s.dim();
    let n = d * d;
    let basis = s.basis();
    let t = hermitian_part(&process_matrix(s));
    let a = kossakowski_block(&t);
    let sd = (d as f64).sqrt();
    let mut g = ComplexMatrix::identity(d, d) * (t[(n - 1, n - 1)] / (2.0 * d as f64));
    for j in 0..n - 1 {
        g += basis.element(j) * (t[(j, n - 1)] / sd);
    }
    let mut h = (&g - g.adjoint()) * (I * 0.5);
    let tr = trace(&h) / c(d as f64);
    for i in 0..d {
        h[(i, i)] -= tr;
    }
    let h = hermitian_part(&h);
    let rebuilt = GeneratorFrame::shared(d)?.assemble(&h, &a)?;
    let residual = s.distance(&rebuilt);
    if residual > DECOMPOSITION_TOL * scale {
        return Err(Error::DecompositionFailed { residual });
    }
    let min_eig = hermitian_eigen(&a).min_value();
    let gksl_valid = min_eig >= -TOL_PSD * max_abs(&a).max(1.0);
    Ok(StandardFormDecomposition {
        hamiltonian_part: h,
        kossakowski_part: a,
        gksl_valid,
        min_eig,
        residual,
    })
}

/// Whether `s` is a generator of standard GKSL form. Maps that are not
/// `*`-maps or not trace-annihilating are reported as not of standard form.
pub fn is_standard_form(s: &Superoperator) -> bool {
    match extract_standard_form(s) {
        Ok(dec) => dec.gksl_valid,
        Err(_) => false,
    }
}
