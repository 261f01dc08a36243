// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

//! Floquet normal form `Λ_t = P_t e^{tX}` of a periodic Lindblad propagator.

use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    c, eig, hermitian_eigen, hermitian_part, hermiticity_residual, matrix_log_with, max_abs, trace,
    BranchPolicy, ComplexMatrix, LogOptions, Superoperator, TOL_HERM,
};
use crate::lindblad::{commutativity_check, LindbladSpec};
use crate::solver::{integrate_general, Antiderivatives, PropagatorTrajectory};

/// How `X` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FloquetMode {
    /// Commutative formula when the sampled commutativity check passes,
    /// otherwise the logarithm of the integrated monodromy.
    Auto,
    /// `X = (1/T) ∫₀ᵀ L`.
    Commutative,
    /// `X = (1/T) log Λ_T` from numerical integration.
    GeneralLog,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloquetOptions {
    pub mode: FloquetMode,
    /// Integrator step for the general mode; `None` means `T/2000`.
    pub step: Option<f64>,
    /// Logarithm settings for the general mode.
    pub log: LogOptions,
    /// Points per period for the commutativity check of the auto mode.
    pub commutativity_samples: usize,
    /// Unit-circle tolerance used in the stability classification.
    pub unit_tol: f64,
}

impl Default for FloquetOptions {
    fn default() -> Self {
        Self {
            mode: FloquetMode::Auto,
            step: None,
            log: LogOptions {
                branch: BranchPolicy::ClosedPrincipal,
                ..LogOptions::default()
            },
            commutativity_samples: 16,
            unit_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone)]
enum PeriodicPart {
    Commutative(Antiderivatives),
    General(PropagatorTrajectory),
}

/// Normal form with spectral data of `X` and `Λ_T`.
#[derive(Debug, Clone)]
pub struct FloquetForm {
    spec: LindbladSpec,
    x: Superoperator,
    monodromy: Superoperator,
    periodic: PeriodicPart,
    multipliers: Vec<Complex64>,
    exponents: Vec<Complex64>,
    /// Coefficient vectors of the eigenvectors, as columns.
    eigvec_coords: ComplexMatrix,
    eigvecs: Vec<ComplexMatrix>,
    condition: f64,
    diagonalizable: bool,
    mode: FloquetMode,
    unit_tol: f64,
}

/// Classification of a characteristic multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplierClass {
    Decaying,
    Periodic,
    AntiPeriodic,
    PseudoPeriodic,
    Unstable,
}

impl MultiplierClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            MultiplierClass::Decaying => "decaying",
            MultiplierClass::Periodic => "periodic",
            MultiplierClass::AntiPeriodic => "anti-periodic",
            MultiplierClass::PseudoPeriodic => "pseudo-periodic",
            MultiplierClass::Unstable => "unstable",
        }
    }
}

/// Checks on eigenvectors: traceless and non-positive away from `λ = 1`,
/// a positive fixed point, and conjugate pairing.
#[derive(Debug, Clone, PartialEq)]
pub struct EigvecChecks {
    /// `max |tr φ_j|` over `λ_j ≠ 1`.
    pub trace_residual: f64,
    /// `max |(1 − λ_j) tr φ_j|` over all `j`.
    pub tp_condition_residual: f64,
    /// Every `λ_j ≠ 1` eigenvector is non-Hermitian or has a negative eigenvalue.
    pub non_unit_not_psd: bool,
    /// Some `λ = 1` eigenvector is positive semidefinite.
    pub fixed_point_psd: bool,
    /// `max_j ‖Λ_T(φ_j*) − λ̄_j φ_j*‖`.
    pub conjugate_pairing_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub classes: Vec<MultiplierClass>,
    /// `λ = 1`.
    pub e1_even: Vec<usize>,
    /// `λ = −1`.
    pub e1_odd: Vec<usize>,
    /// Unit circle away from `±1`.
    pub e2: Vec<usize>,
    /// `|λ| < 1`.
    pub e3: Vec<usize>,
    pub unstable: Vec<usize>,
    /// No anti-periodic or pseudo-periodic multipliers.
    pub periodic_limit_exists: bool,
    /// `min |Re μ_j|` over the decaying exponents.
    pub decay_rate: Option<f64>,
    /// `None` when the form is not diagonalizable.
    pub eigvec_checks: Option<EigvecChecks>,
}

/// Greedy minimum-distance matching of `targets` onto `candidates`;
/// returns for each target the index of its candidate.
fn greedy_match(targets: &[Complex64], candidates: &[Complex64]) -> Vec<usize> {
    let n = targets.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * candidates.len());
    for (i, t) in targets.iter().enumerate() {
        for (j, s) in candidates.iter().enumerate() {
            pairs.push(((t - s).norm(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut out = vec![usize::MAX; n];
    let mut used = vec![false; candidates.len()];
    for (_, i, j) in pairs {
        if out[i] == usize::MAX && !used[j] {
            out[i] = j;
            used[j] = true;
        }
    }
    out
}

/// Frobenius norm 1; phase making the first largest-magnitude entry
/// (row-major) positive real.
fn normalize_eigvec(
    v: &DVector<Complex64>,
    to_matrix: impl Fn(&DVector<Complex64>) -> ComplexMatrix,
) -> (DVector<Complex64>, ComplexMatrix) {
    let n = v.norm();
    let v = if n > 0.0 { v / c(n) } else { v.clone() };
    let m = to_matrix(&v);
    let big = max_abs(&m);
    let mut phase = c(1.0);
    'outer: for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            if z.norm() >= big * (1.0 - 1e-9) && z.norm() > 0.0 {
                phase = z.conj() / c(z.norm());
                break 'outer;
            }
        }
    }
    (&v * phase, m * phase)
}

impl FloquetForm {
    fn from_parts(
        spec: &LindbladSpec,
        x: Superoperator,
        monodromy: Superoperator,
        periodic: PeriodicPart,
        mode: FloquetMode,
        opts: &FloquetOptions,
    ) -> Result<Self> {
        let period = spec.period();
        let basis = Arc::clone(spec.basis());
        let ex = eig(x.matrix())?;
        let condition = ex.condition();
        let diagonalizable = condition <= opts.log.max_condition;
        let lam = eig(monodromy.matrix())?.values;
        let lam: Vec<Complex64> = lam.iter().copied().collect();

        let n = ex.values.len();
        let scale = ex
            .values
            .iter()
            .fold(0.0f64, |a, z| a.max(z.norm()))
            .max(1.0);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let (za, zb) = (ex.values[a], ex.values[b]);
            if (za.re - zb.re).abs() > 1e-9 * scale {
                zb.re.total_cmp(&za.re)
            } else {
                za.im.total_cmp(&zb.im)
            }
        });
        let exponents: Vec<Complex64> = order.iter().map(|&k| ex.values[k]).collect();
        let predicted: Vec<Complex64> = exponents.iter().map(|m| (m * period).exp()).collect();
        let matched = greedy_match(&predicted, &lam);
        let multipliers: Vec<Complex64> = matched.iter().map(|&j| lam[j]).collect();

        let mut coords = ComplexMatrix::zeros(n, n);
        let mut eigvecs = Vec::with_capacity(n);
        for (col, &k) in order.iter().enumerate() {
            let v = ex.vectors.column(k).into_owned();
            let (v, m) = normalize_eigvec(&v, |w| basis.from_coefficients(w).expect("basis size"));
            coords.set_column(col, &v);
            eigvecs.push(m);
        }
        Ok(Self {
            spec: spec.clone(),
            x,
            monodromy,
            periodic,
            multipliers,
            exponents,
            eigvec_coords: coords,
            eigvecs,
            condition,
            diagonalizable,
            mode,
            unit_tol: opts.unit_tol,
        })
    }

    pub fn spec(&self) -> &LindbladSpec {
        &self.spec
    }

    pub fn period(&self) -> f64 {
        self.spec.period()
    }

    pub fn x(&self) -> &Superoperator {
        &self.x
    }

    pub fn monodromy(&self) -> &Superoperator {
        &self.monodromy
    }

    /// Mode actually used (never `Auto`).
    pub fn mode(&self) -> FloquetMode {
        self.mode
    }

    pub fn multipliers(&self) -> &[Complex64] {
        &self.multipliers
    }

    pub fn exponents(&self) -> &[Complex64] {
        &self.exponents
    }

    pub fn eigvecs(&self) -> &[ComplexMatrix] {
        &self.eigvecs
    }

    pub fn diagonalizable(&self) -> bool {
        self.diagonalizable
    }

    /// Condition number of the eigenvector matrix of `X`.
    pub fn eigvec_condition(&self) -> f64 {
        self.condition
    }

    /// `e^{tX}`.
    pub fn exp_tx(&self, t: f64) -> Result<Superoperator> {
        self.x.exp_scaled(t)
    }

    /// `Λ_t` for `t ≥ 0`.
    pub fn propagator(&self, t: f64) -> Result<Superoperator> {
        if t < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "time must be non-negative, got {t}"
            )));
        }
        match &self.periodic {
            PeriodicPart::Commutative(anti) => anti.propagator(t),
            PeriodicPart::General(traj) => {
                let period = self.period();
                let n = (t / period).floor();
                let tau = (t - n * period).clamp(0.0, period);
                let mut out = traj.at(tau)?;
                let mut pow = self.monodromy.clone();
                let mut k = n as u64;
                while k > 0 {
                    if k & 1 == 1 {
                        out = out.compose(&pow);
                    }
                    pow = pow.compose(&pow);
                    k >>= 1;
                }
                Ok(out)
            }
        }
    }

    /// Periodic factor `P_t`.
    pub fn periodic_part(&self, t: f64) -> Result<Superoperator> {
        match &self.periodic {
            PeriodicPart::Commutative(anti) => {
                let period = self.period();
                let (h, a) = anti.at(t)?;
                let (ht, at) = anti.period_integrals();
                let s = t / period;
                let gen = self
                    .spec
                    .frame()
                    .assemble(&(h - ht.scale(s)), &(a - at.scale(s)))?;
                gen.exp_scaled(1.0)
            }
            PeriodicPart::General(_) => {
                let period = self.period();
                let tau = t.rem_euclid(period);
                Ok(self.propagator(tau)?.compose(&self.exp_tx(-tau)?))
            }
        }
    }

    /// Eigenvector coefficient vectors, as columns.
    pub fn eigvec_coordinates(&self) -> &ComplexMatrix {
        &self.eigvec_coords
    }

    fn require_diagonalizable(&self) -> Result<()> {
        if self.diagonalizable {
            Ok(())
        } else {
            Err(Error::NonDiagonalizable {
                condition: self.condition,
            })
        }
    }

    /// Stability classification and eigenvector diagnostics.
    pub fn stability(&self) -> StabilityReport {
        let tol = self.unit_tol;
        let mut report = StabilityReport {
            classes: Vec::with_capacity(self.multipliers.len()),
            e1_even: vec![],
            e1_odd: vec![],
            e2: vec![],
            e3: vec![],
            unstable: vec![],
            periodic_limit_exists: true,
            decay_rate: None,
            eigvec_checks: None,
        };
        for (j, &lam) in self.multipliers.iter().enumerate() {
            let r = lam.norm();
            let class = if r > 1.0 + tol {
                report.unstable.push(j);
                MultiplierClass::Unstable
            } else if r < 1.0 - tol {
                report.e3.push(j);
                MultiplierClass::Decaying
            } else if (lam - c(1.0)).norm() <= tol {
                report.e1_even.push(j);
                MultiplierClass::Periodic
            } else if (lam + c(1.0)).norm() <= tol {
                report.e1_odd.push(j);
                MultiplierClass::AntiPeriodic
            } else {
                report.e2.push(j);
                MultiplierClass::PseudoPeriodic
            };
            report.classes.push(class);
        }
        report.periodic_limit_exists = report.e1_odd.is_empty() && report.e2.is_empty();
        report.decay_rate = report
            .e3
            .iter()
            .map(|&j| self.exponents[j].re.abs())
            .min_by(f64::total_cmp);
        if self.diagonalizable {
            report.eigvec_checks = Some(self.eigvec_checks(&report));
        }
        report
    }

    fn eigvec_checks(&self, report: &StabilityReport) -> EigvecChecks {
        let mut trace_residual: f64 = 0.0;
        let mut tp_residual: f64 = 0.0;
        let mut non_unit_not_psd = true;
        let mut fixed_point_psd = false;
        let mut pairing: f64 = 0.0;
        for (j, phi) in self.eigvecs.iter().enumerate() {
            let lam = self.multipliers[j];
            let tr = trace(phi);
            tp_residual = tp_residual.max(((c(1.0) - lam) * tr).norm());
            let scale = max_abs(phi).max(f64::MIN_POSITIVE);
            let hermitian = hermiticity_residual(phi) <= 1e-8 * scale;
            if report.e1_even.contains(&j) {
                if hermitian {
                    let h = hermitian_eigen(&hermitian_part(phi));
                    let sign = if tr.re < 0.0 { -1.0 } else { 1.0 };
                    let min = if sign > 0.0 {
                        h.min_value()
                    } else {
                        -h.values.last().copied().unwrap_or(0.0)
                    };
                    if min >= -1e-8 * scale {
                        fixed_point_psd = true;
                    }
                }
            } else {
                trace_residual = trace_residual.max(tr.norm());
                if hermitian {
                    let h = hermitian_eigen(&hermitian_part(phi));
                    if h.min_value() >= -1e-8 * scale {
                        non_unit_not_psd = false;
                    }
                }
            }
            let conj = phi.adjoint();
            if let Ok(img) = self.monodromy.apply(&conj) {
                pairing = pairing.max(max_abs(&(img - &conj * lam.conj())));
            }
        }
        EigvecChecks {
            trace_residual,
            tp_condition_residual: tp_residual,
            non_unit_not_psd,
            fixed_point_psd,
            conjugate_pairing_residual: pairing,
        }
    }
}

fn general_form(spec: &LindbladSpec, opts: &FloquetOptions) -> Result<FloquetForm> {
    let period = spec.period();
    let step = opts.step.unwrap_or(period / 2000.0);
    let traj = integrate_general(spec, period, step)?;
    let monodromy = traj.last().clone();
    let log = matrix_log_with(monodromy.matrix(), &opts.log)?;
    let x = monodromy.with_matrix(log.scale(1.0 / period));
    FloquetForm::from_parts(
        spec,
        x,
        monodromy,
        PeriodicPart::General(traj),
        FloquetMode::GeneralLog,
        opts,
    )
}

fn commutative_form(spec: &LindbladSpec, opts: &FloquetOptions) -> Result<FloquetForm> {
    let period = spec.period();
    let anti = Antiderivatives::new(spec)?;
    let (ht, at) = anti.period_integrals();
    let x = spec
        .frame()
        .assemble(&ht.scale(1.0 / period), &at.scale(1.0 / period))?;
    let monodromy = x.exp_scaled(period)?;
    FloquetForm::from_parts(
        spec,
        x,
        monodromy,
        PeriodicPart::Commutative(anti),
        FloquetMode::Commutative,
        opts,
    )
}

/// Build the Floquet normal form.
pub fn floquet_split(spec: &LindbladSpec, opts: &FloquetOptions) -> Result<FloquetForm> {
    match opts.mode {
        FloquetMode::GeneralLog => general_form(spec, opts),
        FloquetMode::Commutative => {
            let (ok, residual, tol) = commutativity_check(spec, opts.commutativity_samples)?;
            if !ok {
                return Err(Error::NotCommutative { residual, tol });
            }
            commutative_form(spec, opts)
        }
        FloquetMode::Auto => {
            let (ok, _, _) = commutativity_check(spec, opts.commutativity_samples)?;
            if ok {
                commutative_form(spec, opts)
            } else {
                general_form(spec, opts)
            }
        }
    }
}

/// Multipliers, exponents, eigenvectors and their stability report.
pub fn characteristic_spectrum(
    form: &FloquetForm,
) -> (
    Vec<Complex64>,
    Vec<Complex64>,
    Vec<ComplexMatrix>,
    StabilityReport,
) {
    (
        form.multipliers.clone(),
        form.exponents.clone(),
        form.eigvecs.clone(),
        form.stability(),
    )
}

/// Floquet state `φ_j(t) = P_t(φ_j)`.
pub fn floquet_states(form: &FloquetForm, j: usize, t: f64) -> Result<ComplexMatrix> {
    form.require_diagonalizable()?;
    let phi = form.eigvecs.get(j).ok_or(Error::IndexOutOfRange {
        index: j,
        len: form.eigvecs.len(),
    })?;
    form.periodic_part(t)?.apply(phi)
}

/// Asymptotic (pseudo)periodic orbit of a given initial state.
#[derive(Debug, Clone)]
pub struct AsymptoticState {
    form: FloquetForm,
    /// Expansion coefficients `ρ₀ = Σ c_j φ_j`.
    pub coefficients: Vec<Complex64>,
    /// Indices kept in the limit (`|λ_j| = 1`).
    pub retained: Vec<usize>,
    /// The limit is `T`-periodic.
    pub periodic: bool,
    /// Rate `a` in `‖ρ_t − ρ∞_t‖₁ ≤ A e^{−at}`.
    pub decay_rate: Option<f64>,
}

impl AsymptoticState {
    /// `ρ∞_t = Σ_{retained} c_j e^{μ_j t} P_t(φ_j)`.
    pub fn at(&self, t: f64) -> Result<ComplexMatrix> {
        self.sum(t, &self.retained)
    }

    /// `ρ_t = Σ_j c_j e^{μ_j t} P_t(φ_j)`.
    pub fn state(&self, t: f64) -> Result<ComplexMatrix> {
        let all: Vec<usize> = (0..self.coefficients.len()).collect();
        self.sum(t, &all)
    }

    fn sum(&self, t: f64, idx: &[usize]) -> Result<ComplexMatrix> {
        let p = self.form.periodic_part(t)?;
        let d = self.form.spec.dim();
        let mut out = ComplexMatrix::zeros(d, d);
        for &j in idx {
            out +=
                &self.form.eigvecs[j] * (self.coefficients[j] * (self.form.exponents[j] * t).exp());
        }
        p.apply(&out)
    }
}

/// Checks that `rho` is Hermitian, unit-trace and positive semidefinite.
pub fn check_density_matrix(rho: &ComplexMatrix, d: usize) -> Result<()> {
    if rho.shape() != (d, d) {
        return Err(Error::NotDensityMatrix(format!(
            "expected {d}x{d}, got {:?}",
            rho.shape()
        )));
    }
    let hr = hermiticity_residual(rho);
    if hr > TOL_HERM.max(1e-10) * max_abs(rho).max(1.0) {
        return Err(Error::NotDensityMatrix(format!(
            "not Hermitian (residual {hr:.3e})"
        )));
    }
    let tr = trace(rho);
    if (tr - c(1.0)).norm() > 1e-10 {
        return Err(Error::NotDensityMatrix(format!(
            "trace {tr} differs from 1"
        )));
    }
    let min = hermitian_eigen(&hermitian_part(rho)).min_value();
    if min < -1e-10 {
        return Err(Error::NotDensityMatrix(format!(
            "negative eigenvalue {min:.3e}"
        )));
    }
    Ok(())
}

/// Asymptotic limit of the solution starting at `rho0`.
pub fn asymptotic_state(form: &FloquetForm, rho0: &ComplexMatrix) -> Result<AsymptoticState> {
    check_density_matrix(rho0, form.spec.dim())?;
    form.require_diagonalizable()?;
    let r = form.spec.basis().coefficients(rho0)?;
    let coeffs = form
        .eigvec_coords
        .clone()
        .lu()
        .solve(&r)
        .ok_or(Error::Singular)?;
    let report = form.stability();
    let retained: Vec<usize> = (0..coeffs.len())
        .filter(|j| !report.e3.contains(j))
        .collect();
    Ok(AsymptoticState {
        form: form.clone(),
        coefficients: coeffs.iter().copied().collect(),
        retained,
        periodic: report.periodic_limit_exists,
        decay_rate: report.decay_rate,
    })
}

/// Least-squares fit of `y ≈ A e^{−rate·t}` on the logarithms of positive
/// samples. Returns `(rate, A)`.
pub fn fit_exponential_decay(samples: &[(f64, f64)]) -> Result<(f64, f64)> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(_, y)| *y > 0.0)
        .map(|&(t, y)| (t, y.ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::InvalidArgument(
            "need at least two positive samples".into(),
        ));
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("sample times must differ".into()));
    }
    let slope = sxy / sxx;
    Ok((-slope, (my - slope * mt).exp()))
}

/// Largest eigenvalue gap of the best conjugation pairing of a spectrum;
/// zero iff the multiset is closed under complex conjugation.
pub fn conjugation_mismatch(values: &[Complex64]) -> f64 {
    let conj: Vec<Complex64> = values.iter().map(|z| z.conj()).collect();
    let m = greedy_match(values, &conj);
    values
        .iter()
        .zip(m)
        .map(|(v, j)| (v - conj[j]).norm())
        .fold(0.0, f64::max)
}
