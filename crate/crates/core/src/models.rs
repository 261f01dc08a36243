// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

//! Built-in periodic models with closed-form reference solutions:
//! Pauli-channel qubit dynamics with modulated rates, a driven two-level
//! system with pumping and damping, and a non-commuting qutrit generator.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, pauli, vectorize_map, ComplexMatrix, FrobeniusBasis, Superoperator, I};
use crate::lindblad::{LindbladSpec, MatrixFn};

/// Periodic scalar coefficient. `u = 2πt/T + phase` below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Profile {
    Constant {
        value: f64,
    },
    /// `offset + amplitude·cos u`.
    Cosine {
        offset: f64,
        amplitude: f64,
        #[serde(default)]
        phase: f64,
    },
    /// `offset + amplitude·(1 − cos u)/2`.
    RaisedCosine {
        offset: f64,
        amplitude: f64,
        #[serde(default)]
        phase: f64,
    },
    /// `offset + amplitude·max(0, cos u)`; kinks where `cos u = 0`.
    RectifiedCosine {
        offset: f64,
        amplitude: f64,
        #[serde(default)]
        phase: f64,
    },
    /// Periodic piecewise-linear interpolation through `(times[i], values[i])`,
    /// `times` strictly increasing in `[0, T)`.
    Table {
        times: Vec<f64>,
        values: Vec<f64>,
    },
}

/// `∫_{−π/2}^{u} max(0, cos s) ds`.
fn rectified_cos_integral(u: f64) -> f64 {
    let k = ((u + 0.5 * PI) / (2.0 * PI)).floor();
    let r = u - 2.0 * PI * k;
    2.0 * k + if r <= 0.5 * PI { r.sin() + 1.0 } else { 2.0 }
}

impl Profile {
    pub fn constant(value: f64) -> Self {
        Profile::Constant { value }
    }

    pub fn cosine(offset: f64, amplitude: f64, phase: f64) -> Self {
        Profile::Cosine {
            offset,
            amplitude,
            phase,
        }
    }

    /// Structural checks independent of the period.
    pub fn validate(&self, period: f64) -> Result<()> {
        let finite = |x: f64, what: &str| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidModel(format!(
                    "profile {what} must be finite"
                )))
            }
        };
        match self {
            Profile::Constant { value } => finite(*value, "value"),
            Profile::Cosine {
                offset,
                amplitude,
                phase,
            }
            | Profile::RaisedCosine {
                offset,
                amplitude,
                phase,
            }
            | Profile::RectifiedCosine {
                offset,
                amplitude,
                phase,
            } => {
                finite(*offset, "offset")?;
                finite(*amplitude, "amplitude")?;
                finite(*phase, "phase")
            }
            Profile::Table { times, values } => {
                if times.is_empty() || times.len() != values.len() {
                    return Err(Error::InvalidModel(
                        "table profile needs equally many times and values (at least one)".into(),
                    ));
                }
                if times[0] < 0.0 || *times.last().expect("nonempty") >= period {
                    return Err(Error::InvalidModel(format!(
                        "table times must lie in [0, {period})"
                    )));
                }
                if times.windows(2).any(|w| !(w[1] > w[0])) {
                    return Err(Error::InvalidModel(
                        "table times must be strictly increasing".into(),
                    ));
                }
                values.iter().try_for_each(|&v| finite(v, "value"))
            }
        }
    }

    fn phase_arg(t: f64, period: f64, phase: f64) -> f64 {
        2.0 * PI * t / period + phase
    }

    /// Table knots extended by one period on both sides for wrap-around.
    fn table_knots(times: &[f64], values: &[f64], period: f64) -> (Vec<f64>, Vec<f64>) {
        let n = times.len();
        let mut ts = Vec::with_capacity(n + 2);
        let mut vs = Vec::with_capacity(n + 2);
        ts.push(times[n - 1] - period);
        vs.push(values[n - 1]);
        ts.extend_from_slice(times);
        vs.extend_from_slice(values);
        ts.push(times[0] + period);
        vs.push(values[0]);
        (ts, vs)
    }

    pub fn value(&self, t: f64, period: f64) -> f64 {
        match self {
            Profile::Constant { value } => *value,
            Profile::Cosine {
                offset,
                amplitude,
                phase,
            } => offset + amplitude * Self::phase_arg(t, period, *phase).cos(),
            Profile::RaisedCosine {
                offset,
                amplitude,
                phase,
            } => offset + amplitude * 0.5 * (1.0 - Self::phase_arg(t, period, *phase).cos()),
            Profile::RectifiedCosine {
                offset,
                amplitude,
                phase,
            } => offset + amplitude * Self::phase_arg(t, period, *phase).cos().max(0.0),
            Profile::Table { times, values } => {
                let tau = t.rem_euclid(period);
                let (ts, vs) = Self::table_knots(times, values, period);
                let k = ts.partition_point(|&s| s <= tau).clamp(1, ts.len() - 1);
                let (t0, t1) = (ts[k - 1], ts[k]);
                let w = (tau - t0) / (t1 - t0);
                vs[k - 1] + w * (vs[k] - vs[k - 1])
            }
        }
    }

    /// `∫₀ᵗ value`.
    pub fn integral(&self, t: f64, period: f64) -> f64 {
        let scale = period / (2.0 * PI);
        match self {
            Profile::Constant { value } => value * t,
            Profile::Cosine {
                offset,
                amplitude,
                phase,
            } => {
                offset * t
                    + amplitude * scale * (Self::phase_arg(t, period, *phase).sin() - phase.sin())
            }
            Profile::RaisedCosine {
                offset,
                amplitude,
                phase,
            } => {
                offset * t
                    + 0.5
                        * amplitude
                        * (t - scale * (Self::phase_arg(t, period, *phase).sin() - phase.sin()))
            }
            Profile::RectifiedCosine {
                offset,
                amplitude,
                phase,
            } => {
                offset * t
                    + amplitude
                        * scale
                        * (rectified_cos_integral(Self::phase_arg(t, period, *phase))
                            - rectified_cos_integral(*phase))
            }
            Profile::Table { times, values } => {
                let per_period = self.table_integral_within(times, values, period, period);
                let n = (t / period).floor();
                let tau = t - n * period;
                n * per_period + self.table_integral_within(times, values, period, tau)
            }
        }
    }

    /// `∫₀^τ` of a table profile for `τ ∈ [0, T]`.
    fn table_integral_within(&self, times: &[f64], values: &[f64], period: f64, tau: f64) -> f64 {
        let (ts, vs) = Self::table_knots(times, values, period);
        let lin = |s: f64, k: usize| {
            vs[k - 1] + (s - ts[k - 1]) / (ts[k] - ts[k - 1]) * (vs[k] - vs[k - 1])
        };
        let mut acc = 0.0;
        for k in 1..ts.len() {
            let a = ts[k - 1].max(0.0);
            let b = ts[k].min(tau);
            if b > a {
                acc += 0.5 * (b - a) * (lin(a, k) + lin(b, k));
            }
        }
        acc
    }

    /// Points in `[0, T)` where the profile is not smooth.
    pub fn breakpoints(&self, period: f64) -> Vec<f64> {
        match self {
            Profile::RectifiedCosine {
                phase, amplitude, ..
            } if *amplitude != 0.0 => {
                let mut out: Vec<f64> = [0.5 * PI, 1.5 * PI]
                    .iter()
                    .map(|&u| ((u - phase) / (2.0 * PI) * period).rem_euclid(period))
                    .collect();
                out.sort_by(f64::total_cmp);
                out
            }
            Profile::Table { times, .. } if times.len() > 1 => times.clone(),
            _ => Vec::new(),
        }
    }

    /// Exact minimum over one period.
    pub fn min_value(&self) -> f64 {
        match self {
            Profile::Constant { value } => *value,
            Profile::Cosine {
                offset, amplitude, ..
            } => offset - amplitude.abs(),
            Profile::RaisedCosine {
                offset, amplitude, ..
            }
            | Profile::RectifiedCosine {
                offset, amplitude, ..
            } => offset + amplitude.min(0.0),
            Profile::Table { values, .. } => values.iter().copied().fold(f64::INFINITY, f64::min),
        }
    }

    /// Whether the profile is constant in time.
    pub fn is_constant(&self) -> bool {
        match self {
            Profile::Constant { .. } => true,
            Profile::Cosine { amplitude, .. }
            | Profile::RaisedCosine { amplitude, .. }
            | Profile::RectifiedCosine { amplitude, .. } => *amplitude == 0.0,
            Profile::Table { values, .. } => values.iter().all(|&v| v == values[0]),
        }
    }
}

fn merged_breakpoints<'a>(profiles: impl Iterator<Item = &'a Profile>, period: f64) -> Vec<f64> {
    let mut out: Vec<f64> = profiles.flat_map(|p| p.breakpoints(period)).collect();
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

fn diag(v: [f64; 4]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&DVector::from_iterator(4, v.iter().map(|&x| c(x))))
}

/// Qubit dynamics `L_t(ρ) = ½ Σ_j γ_j(t)(σ_j ρ σ_j − ρ)`.
///
/// In the basis `F_j = σ_j/√2` the Kossakowski matrix is `diag(γ_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomQubitModel {
    pub rates: [Profile; 3],
    pub period: f64,
}

impl RandomQubitModel {
    pub fn new(rates: [Profile; 3], period: f64) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidModel(format!(
                "period must be positive, got {period}"
            )));
        }
        for (j, r) in rates.iter().enumerate() {
            r.validate(period)?;
            let m = r.min_value();
            if m < 0.0 {
                return Err(Error::InvalidModel(format!(
                    "rate gamma_{} takes negative value {m}",
                    j + 1
                )));
            }
        }
        Ok(Self { rates, period })
    }

    /// `γ_j(t) = 1 + cos(2πt/T + 2πj/3)`, `T = 2π`.
    pub fn default_model() -> Self {
        let rates = [0.0, 1.0, 2.0].map(|k| Profile::cosine(1.0, 1.0, 2.0 * PI * k / 3.0));
        Self::new(rates, 2.0 * PI).expect("default rates are valid")
    }

    pub fn spec(&self) -> Result<LindbladSpec> {
        let rates = self.rates.clone();
        let period = self.period;
        let h: MatrixFn = Arc::new(|_| ComplexMatrix::zeros(2, 2));
        let a: MatrixFn = Arc::new(move |t| {
            let mut m = ComplexMatrix::zeros(3, 3);
            for j in 0..3 {
                m[(j, j)] = c(rates[j].value(t, period));
            }
            m
        });
        LindbladSpec::new(
            2,
            period,
            h,
            a,
            merged_breakpoints(self.rates.iter(), period),
        )
    }

    /// `γ_j(t)` for `j ∈ {0, 1, 2}`.
    pub fn gamma(&self, j: usize, t: f64) -> f64 {
        self.rates[j].value(t, self.period)
    }

    /// `Γ_j(t) = ∫₀ᵗ γ_j`.
    pub fn big_gamma(&self, j: usize, t: f64) -> f64 {
        self.rates[j].integral(t, self.period)
    }

    /// `ϑ_j(t) = Γ_j(t) − t Γ_j(T)/T`.
    pub fn theta(&self, j: usize, t: f64) -> f64 {
        self.big_gamma(j, t) - t * self.big_gamma(j, self.period) / self.period
    }

    pub fn thetas(&self, t: f64) -> [f64; 3] {
        [self.theta(0, t), self.theta(1, t), self.theta(2, t)]
    }

    fn basis(&self) -> Arc<FrobeniusBasis> {
        FrobeniusBasis::shared(2).expect("d = 2")
    }

    /// `Λ_t = diag(e^{−Γ_{2,3}}, e^{−Γ_{1,3}}, e^{−Γ_{1,2}}, 1)`.
    pub fn lambda_ref(&self, t: f64) -> Superoperator {
        let g = [
            self.big_gamma(0, t),
            self.big_gamma(1, t),
            self.big_gamma(2, t),
        ];
        let m = diag([
            (-(g[1] + g[2])).exp(),
            (-(g[0] + g[2])).exp(),
            (-(g[0] + g[1])).exp(),
            1.0,
        ]);
        Superoperator::new(m, self.basis()).expect("4x4")
    }

    /// `X = −diag(Γ_{2,3}(T), Γ_{1,3}(T), Γ_{1,2}(T), 0)/T`.
    pub fn x_ref(&self) -> Superoperator {
        let t = self.period;
        let g = [
            self.big_gamma(0, t),
            self.big_gamma(1, t),
            self.big_gamma(2, t),
        ];
        let m = diag([
            -(g[1] + g[2]) / t,
            -(g[0] + g[2]) / t,
            -(g[0] + g[1]) / t,
            0.0,
        ]);
        Superoperator::new(m, self.basis()).expect("4x4")
    }

    /// `P_t = diag(e^{−ϑ_{2,3}}, e^{−ϑ_{1,3}}, e^{−ϑ_{1,2}}, 1)` with `ϑ_{j,k} = ϑ_j + ϑ_k`.
    pub fn p_ref(&self, t: f64) -> Superoperator {
        let th = self.thetas(t);
        let m = diag([
            (-(th[1] + th[2])).exp(),
            (-(th[0] + th[2])).exp(),
            (-(th[0] + th[1])).exp(),
            1.0,
        ]);
        Superoperator::new(m, self.basis()).expect("4x4")
    }

    /// `X` written entrywise on a 2×2 matrix.
    pub fn x_map(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let t = self.period;
        let g = [
            self.big_gamma(0, t),
            self.big_gamma(1, t),
            self.big_gamma(2, t),
        ];
        let b1 = (g[0] + g[1]) / (2.0 * t);
        let b2 = (g[0] - g[1]) / (2.0 * t);
        let b3 = (g[0] + g[1] + 2.0 * g[2]) / (2.0 * t);
        let diff = x[(0, 0)] - x[(1, 1)];
        ComplexMatrix::from_row_slice(
            2,
            2,
            &[
                -diff * b1,
                x[(1, 0)] * b2 - x[(0, 1)] * b3,
                x[(0, 1)] * b2 - x[(1, 0)] * b3,
                diff * b1,
            ],
        )
    }

    /// `(ξ₁, ξ₂, χ₁, χ₂)` at time `t`.
    pub fn xi_chi(&self, t: f64) -> (f64, f64, f64, f64) {
        let th = self.thetas(t);
        let e12 = (-(th[0] + th[1])).exp();
        let e13 = (-(th[0] + th[2])).exp();
        let e23 = (-(th[1] + th[2])).exp();
        (
            0.5 * (1.0 + e12),
            0.5 * (1.0 - e12),
            0.5 * (e13 + e23),
            0.5 * (e13 - e23),
        )
    }

    /// `P_t` written entrywise on a 2×2 matrix.
    pub fn p_map(&self, t: f64, x: &ComplexMatrix) -> ComplexMatrix {
        let (xi1, xi2, chi1, chi2) = self.xi_chi(t);
        ComplexMatrix::from_row_slice(
            2,
            2,
            &[
                x[(0, 0)] * xi1 + x[(1, 1)] * xi2,
                x[(0, 1)] * chi1 - x[(1, 0)] * chi2,
                x[(1, 0)] * chi1 - x[(0, 1)] * chi2,
                x[(0, 0)] * xi2 + x[(1, 1)] * xi1,
            ],
        )
    }

    /// Choi matrix of `P_t` written out from `ξ`, `χ`.
    pub fn p_choi_ref(&self, t: f64) -> ComplexMatrix {
        let (xi1, xi2, chi1, chi2) = self.xi_chi(t);
        choi_from_xi_chi(xi1, xi2, chi1, chi2)
    }

    /// `ρ_t = I/2 + Σ_j c_j e^{−tΓ_{k,l}(T)/T} P_t(F_j)` with `c_j = tr(F_j ρ₀)`
    /// and `{j, k, l} = {1, 2, 3}`.
    pub fn state_ref(&self, rho0: &ComplexMatrix, t: f64) -> ComplexMatrix {
        let tp = self.period;
        let g = [
            self.big_gamma(0, tp),
            self.big_gamma(1, tp),
            self.big_gamma(2, tp),
        ];
        let s = 1.0 / 2f64.sqrt();
        let mut out = ComplexMatrix::identity(2, 2).scale(0.5);
        for (j, (k, l)) in [(1, 2), (0, 2), (0, 1)].into_iter().enumerate() {
            let f = pauli(j + 1).scale(s);
            let cj = (&f * rho0).trace();
            let decay = (-t * (g[k] + g[l]) / tp).exp();
            out += self.p_map(t, &f) * (cj * decay);
        }
        out
    }

    /// Multipliers `{1, e^{−Γ_{2,3}(T)}, e^{−Γ_{1,3}(T)}, e^{−Γ_{1,2}(T)}}`.
    pub fn multipliers_ref(&self) -> [f64; 4] {
        let t = self.period;
        let g = [
            self.big_gamma(0, t),
            self.big_gamma(1, t),
            self.big_gamma(2, t),
        ];
        [
            1.0,
            (-(g[1] + g[2])).exp(),
            (-(g[0] + g[2])).exp(),
            (-(g[0] + g[1])).exp(),
        ]
    }

    /// Sufficient CP condition for `P_t`: `ϑ_j(t) ≥ 0` for all `j`; returns the minimum.
    pub fn cp_margin(&self, t: f64) -> f64 {
        self.thetas(t).into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Local divisibility margin `min_j γ_j(t) − Γ_j(T)/T`.
    pub fn divisibility_margin(&self, t: f64) -> f64 {
        (0..3)
            .map(|j| self.gamma(j, t) - self.big_gamma(j, self.period) / self.period)
            .fold(f64::INFINITY, f64::min)
    }
}

/// The 4×4 Choi matrix of the qubit map
/// `x ↦ [[ξ₁x₁₁+ξ₂x₂₂, χ₁x₁₂−χ₂x₂₁], [χ₁x₂₁−χ₂x₁₂, ξ₂x₁₁+ξ₁x₂₂]]`.
pub fn choi_from_xi_chi(xi1: f64, xi2: f64, chi1: f64, chi2: f64) -> ComplexMatrix {
    let z = 0.0;
    let rows = [
        [xi1, z, z, chi1],
        [z, xi2, -chi2, z],
        [z, -chi2, xi2, z],
        [chi1, z, z, xi1],
    ];
    ComplexMatrix::from_fn(4, 4, |i, j| c(rows[i][j]))
}

/// Two-level system `L_t = −i(ω(t)/2)[σ₃, ·] + γ↑ D_{σ+} + γ↓ D_{σ−}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DrivenTlsModel {
    pub omega: Profile,
    pub gamma_up: f64,
    pub gamma_down: f64,
    pub period: f64,
}

impl DrivenTlsModel {
    pub fn new(omega: Profile, gamma_up: f64, gamma_down: f64, period: f64) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidModel(format!(
                "period must be positive, got {period}"
            )));
        }
        if !(gamma_up > 0.0 && gamma_down > 0.0 && gamma_up.is_finite() && gamma_down.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "rates must be positive, got gamma_up = {gamma_up}, gamma_down = {gamma_down}"
            )));
        }
        omega.validate(period)?;
        Ok(Self {
            omega,
            gamma_up,
            gamma_down,
            period,
        })
    }

    /// `ω(t) = 1 + cos(2πt/T)`, `γ↓ = 1`, `γ↑ = 0.5`, `T = 2π`.
    pub fn default_model() -> Self {
        Self::new(Profile::cosine(1.0, 1.0, 0.0), 0.5, 1.0, 2.0 * PI)
            .expect("default parameters are valid")
    }

    pub fn gamma(&self) -> f64 {
        self.gamma_up + self.gamma_down
    }

    /// Constant Kossakowski matrix in the basis `σ_j/√2`.
    pub fn kossakowski(&self) -> ComplexMatrix {
        let (gu, gd) = (self.gamma_up, self.gamma_down);
        let mut a = ComplexMatrix::zeros(3, 3);
        a[(0, 0)] = c(0.5 * (gd + gu));
        a[(1, 1)] = c(0.5 * (gd + gu));
        a[(0, 1)] = I * (0.5 * (gd - gu));
        a[(1, 0)] = -I * (0.5 * (gd - gu));
        a
    }

    pub fn spec(&self) -> Result<LindbladSpec> {
        let omega = self.omega.clone();
        let period = self.period;
        let h: MatrixFn = Arc::new(move |t| pauli(3).scale(0.5 * omega.value(t, period)));
        let a0 = self.kossakowski();
        let a: MatrixFn = Arc::new(move |_| a0.clone());
        LindbladSpec::new(2, period, h, a, self.omega.breakpoints(period))
    }

    /// `ϖ(t) = ∫₀ᵗ ω`.
    pub fn varpi(&self, t: f64) -> f64 {
        self.omega.integral(t, self.period)
    }

    /// Phase `e^{−iϖ(t)} e^{iϖ(T)t/T}` applied by `P_t` to the `(1,2)` entry.
    pub fn p_phase(&self, t: f64) -> Complex64 {
        (I * (-self.varpi(t) + self.varpi(self.period) * t / self.period)).exp()
    }

    /// `P_t` written entrywise.
    pub fn p_map(&self, t: f64, x: &ComplexMatrix) -> ComplexMatrix {
        let ph = self.p_phase(t);
        ComplexMatrix::from_row_slice(
            2,
            2,
            &[x[(0, 0)], x[(0, 1)] * ph, x[(1, 0)] * ph.conj(), x[(1, 1)]],
        )
    }

    /// `X` written entrywise.
    pub fn x_map(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let (gu, gd) = (self.gamma_up, self.gamma_down);
        let w = self.varpi(self.period) / self.period;
        let coh = Complex64::new(-0.5 * self.gamma(), -w);
        ComplexMatrix::from_row_slice(
            2,
            2,
            &[
                x[(0, 0)] * (-gd) + x[(1, 1)] * gu,
                x[(0, 1)] * coh,
                x[(1, 0)] * coh.conj(),
                x[(0, 0)] * gd - x[(1, 1)] * gu,
            ],
        )
    }

    /// `e^{tX}` written entrywise.
    pub fn exp_x_map(&self, t: f64, x: &ComplexMatrix) -> ComplexMatrix {
        let g = self.gamma();
        let decay = (-g * t).exp();
        let tr = x[(0, 0)] + x[(1, 1)];
        let p11 = x[(0, 0)] * decay + tr * (self.gamma_up / g * (1.0 - decay));
        let w = self.varpi(self.period) / self.period;
        let coh = (Complex64::new(-0.5 * g, -w) * t).exp();
        ComplexMatrix::from_row_slice(
            2,
            2,
            &[p11, x[(0, 1)] * coh, x[(1, 0)] * coh.conj(), tr - p11],
        )
    }

    fn basis(&self) -> Arc<FrobeniusBasis> {
        FrobeniusBasis::shared(2).expect("d = 2")
    }

    pub fn p_ref(&self, t: f64) -> Superoperator {
        vectorize_map(|x| self.p_map(t, x), &self.basis())
    }

    pub fn x_ref(&self) -> Superoperator {
        vectorize_map(|x| self.x_map(x), &self.basis())
    }

    /// `Λ_t = P_t e^{tX}`.
    pub fn lambda_ref(&self, t: f64) -> Superoperator {
        vectorize_map(|x| self.p_map(t, &self.exp_x_map(t, x)), &self.basis())
    }

    /// Exponents `μ₁ = 0, μ₂ = −γ, μ₃,₄ = −γ/2 ∓ iϖ(T)/T`, ordered to match
    /// [`Self::eigvecs_ref`].
    pub fn exponents_ref(&self) -> [Complex64; 4] {
        let g = self.gamma();
        let w = self.varpi(self.period) / self.period;
        [
            c(0.0),
            c(-g),
            Complex64::new(-0.5 * g, -w),
            Complex64::new(-0.5 * g, w),
        ]
    }

    /// `λ_j = e^{μ_j T}`.
    pub fn multipliers_ref(&self) -> [Complex64; 4] {
        self.exponents_ref().map(|m| (m * self.period).exp())
    }

    /// `φ₁ = √2 diag(γ↑, γ↓)/γ`, `φ₂ = σ₃/√2`, `φ₃ = −i√2 σ₊`, `φ₄ = φ₃* = i√2 σ₋`.
    pub fn eigvecs_ref(&self) -> [ComplexMatrix; 4] {
        let r2 = 2f64.sqrt();
        let g = self.gamma();
        let mut phi1 = ComplexMatrix::zeros(2, 2);
        phi1[(0, 0)] = c(r2 * self.gamma_up / g);
        phi1[(1, 1)] = c(r2 * self.gamma_down / g);
        let mut phi3 = ComplexMatrix::zeros(2, 2);
        phi3[(0, 1)] = -I * r2;
        let phi4 = phi3.adjoint();
        [phi1, pauli(3).scale(1.0 / r2), phi3, phi4]
    }

    /// Expansion coefficients of `ρ₀` in [`Self::eigvecs_ref`].
    pub fn coefficients_ref(&self, rho0: &ComplexMatrix) -> [Complex64; 4] {
        let r2 = 2f64.sqrt();
        let c1 = c(1.0 / r2);
        let c2 = (rho0[(0, 0)] - c(self.gamma_up / self.gamma())) * r2;
        let c3 = I * rho0[(0, 1)] / r2;
        [c1, c2, c3, c3.conj()]
    }

    /// Floquet states `φ_j(t) = P_t(φ_j)`.
    pub fn floquet_state_ref(&self, j: usize, t: f64) -> ComplexMatrix {
        self.p_map(t, &self.eigvecs_ref()[j])
    }

    /// Limit state `diag(γ↑, γ↓)/γ`.
    pub fn steady_state(&self) -> ComplexMatrix {
        let g = self.gamma();
        let mut s = ComplexMatrix::zeros(2, 2);
        s[(0, 0)] = c(self.gamma_up / g);
        s[(1, 1)] = c(self.gamma_down / g);
        s
    }

    /// `ρ_t = Σ_j c_j e^{μ_j t} φ_j(t)`.
    pub fn state_ref(&self, rho0: &ComplexMatrix, t: f64) -> ComplexMatrix {
        let cs = self.coefficients_ref(rho0);
        let mus = self.exponents_ref();
        let mut out = ComplexMatrix::zeros(2, 2);
        for j in 0..4 {
            out += self.floquet_state_ref(j, t) * (cs[j] * (mus[j] * t).exp());
        }
        out
    }
}

/// Kossakowski matrix of the qutrit example in the Gell-Mann basis.
pub fn m3_kossakowski(t: f64) -> ComplexMatrix {
    let ct = t.cos();
    let mut a = ComplexMatrix::zeros(8, 8);
    a[(1, 1)] = c(1.0);
    a[(6, 6)] = c(1.0);
    a[(4, 4)] = c(2.0);
    a[(7, 7)] = c(1.0 + ct);
    a[(4, 1)] = -I * ct;
    a[(6, 1)] = -I;
    a[(6, 4)] = c(ct);
    a[(1, 4)] = a[(4, 1)].conj();
    a[(1, 6)] = a[(6, 1)].conj();
    a[(4, 6)] = a[(6, 4)];
    a
}

/// `2π`-periodic qutrit generator with `H_t = 0` whose generators do not
/// commute at different times.
pub fn m3_counterexample() -> LindbladSpec {
    let h: MatrixFn = Arc::new(|_| ComplexMatrix::zeros(3, 3));
    let a: MatrixFn = Arc::new(m3_kossakowski);
    LindbladSpec::new(3, 2.0 * PI, h, a, vec![]).expect("qutrit example is a valid spec")
}

/// Names of the built-in models.
pub const BUILTIN_MODELS: [&str; 3] = ["random-qubit", "driven-tls", "m3-counterexample"];
