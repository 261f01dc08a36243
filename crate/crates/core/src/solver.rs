// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

//! Fundamental solution `Λ_t` of `dΛ/dt = L_t Λ`, `Λ_0 = id`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Superoperator};
use crate::lindblad::{commutativity_check, generator_at, LindbladSpec};
use crate::quad::{integrate_matrix, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    General,
    Commutative,
}

/// Propagator values on a time grid.
#[derive(Debug, Clone)]
pub struct PropagatorTrajectory {
    spec: LindbladSpec,
    times: Vec<f64>,
    values: Vec<Superoperator>,
    method: Method,
    max_local_error: f64,
}

impl PropagatorTrajectory {
    pub fn spec(&self) -> &LindbladSpec {
        &self.spec
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[Superoperator] {
        &self.values
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Largest difference between a full step and two half steps.
    pub fn max_local_error(&self) -> f64 {
        self.max_local_error
    }

    pub fn t_max(&self) -> f64 {
        *self.times.last().expect("trajectory holds t = 0")
    }

    pub fn last(&self) -> &Superoperator {
        self.values.last().expect("trajectory holds t = 0")
    }

    /// `Λ_t` for `t ∈ [0, t_max]`. Off-grid times take one partial
    /// midpoint step from the preceding node (general method) or are
    /// evaluated exactly (commutative method).
    pub fn at(&self, t: f64) -> Result<Superoperator> {
        let t_max = self.t_max();
        if !(0.0..=t_max).contains(&t) {
            return Err(Error::InvalidArgument(format!(
                "time {t} outside trajectory range [0, {t_max}]"
            )));
        }
        let k = self.times.partition_point(|&s| s <= t) - 1;
        if self.times[k] == t {
            return Ok(self.values[k].clone());
        }
        match self.method {
            Method::Commutative => solve_commutative(&self.spec, t),
            Method::General => {
                let h = t - self.times[k];
                let l = generator_at(&self.spec, self.times[k] + 0.5 * h)?;
                Ok(l.exp_scaled(h)?.compose(&self.values[k]))
            }
        }
    }
}

/// Step grid on `[0, t_max]`: a uniform grid of spacing `step` replicated
/// per period, merged with every breakpoint translate.
pub fn step_grid(spec: &LindbladSpec, t_max: f64, step: f64) -> Result<Vec<f64>> {
    let period = spec.period();
    let bps = spec.breakpoints();
    if !bps.is_empty() {
        let mut min_gap = f64::INFINITY;
        for (i, &b) in bps.iter().enumerate() {
            let next = if i + 1 < bps.len() {
                bps[i + 1]
            } else {
                bps[0] + period
            };
            min_gap = min_gap.min(next - b);
        }
        if step > min_gap * (1.0 + 1e-12) {
            return Err(Error::StepTooLarge { step, min_gap });
        }
    }
    let n = (period / step).ceil().max(1.0) as usize;
    let h = period / n as f64;
    let merge_tol = 1e-9 * h;
    let mut local: Vec<f64> = (0..n).map(|k| k as f64 * h).collect();
    for &b in bps {
        if local.iter().all(|&s| (s - b).abs() > merge_tol) {
            local.push(b);
        }
    }
    // Snap uniform nodes that sit next to a breakpoint onto it.
    local.sort_by(f64::total_cmp);
    local.dedup_by(|a, b| (*a - *b).abs() <= merge_tol);

    let periods = (t_max / period).ceil() as usize;
    let mut grid = Vec::with_capacity(periods * local.len() + 1);
    for p in 0..=periods {
        for &tau in &local {
            let t = p as f64 * period + tau;
            if t < t_max - merge_tol {
                grid.push(t);
            }
        }
    }
    grid.push(t_max);
    if grid.len() == 1 {
        grid.insert(0, 0.0);
        grid.dedup();
    }
    Ok(grid)
}

/// Second-order midpoint Magnus integration
/// `Λ_{k+1} = exp(h_k L(t_k + h_k/2)) Λ_k` on [`step_grid`].
pub fn integrate_general(
    spec: &LindbladSpec,
    t_max: f64,
    step: f64,
) -> Result<PropagatorTrajectory> {
    if !(t_max.is_finite() && t_max >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "t_max must be non-negative, got {t_max}"
        )));
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "step must be positive, got {step}"
        )));
    }
    let grid = step_grid(spec, t_max, step)?;
    let mut values = Vec::with_capacity(grid.len());
    let mut current = Superoperator::identity(Arc::clone(spec.basis()));
    values.push(current.clone());
    let mut max_err: f64 = 0.0;
    for w in grid.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let h = t1 - t0;
        let full = generator_at(spec, t0 + 0.5 * h)?.exp_scaled(h)?;
        let first = generator_at(spec, t0 + 0.25 * h)?.exp_scaled(0.5 * h)?;
        let second = generator_at(spec, t0 + 0.75 * h)?.exp_scaled(0.5 * h)?;
        max_err = max_err.max(full.distance(&second.compose(&first)));
        current = full.compose(&current);
        values.push(current.clone());
    }
    Ok(PropagatorTrajectory {
        spec: spec.clone(),
        times: grid,
        values,
        method: Method::General,
        max_local_error: max_err,
    })
}

/// Antiderivatives `ℋ_t = ∫₀ᵗ H`, `A_t = ∫₀ᵗ a` with the one-period
/// integrals cached, extended by `A_{nT+τ} = n A_T + A_τ`.
#[derive(Debug, Clone)]
pub struct Antiderivatives {
    spec: LindbladSpec,
    h_period: ComplexMatrix,
    a_period: ComplexMatrix,
}

impl Antiderivatives {
    pub fn new(spec: &LindbladSpec) -> Result<Self> {
        let t = spec.period();
        let (h_period, a_period) = Self::within_period(spec, t)?;
        Ok(Self {
            spec: spec.clone(),
            h_period,
            a_period,
        })
    }

    fn within_period(spec: &LindbladSpec, tau: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
        let bps = spec.breakpoints();
        let hf = spec.hamiltonian_fn();
        let af = spec.kossakowski_fn();
        let h = integrate_matrix(&|s| hf(s), 0.0, tau, bps, DEFAULT_TOL)?;
        let a = integrate_matrix(&|s| af(s), 0.0, tau, bps, DEFAULT_TOL)?;
        Ok((h, a))
    }

    /// `(ℋ_T, A_T)`.
    pub fn period_integrals(&self) -> (&ComplexMatrix, &ComplexMatrix) {
        (&self.h_period, &self.a_period)
    }

    /// `(ℋ_t, A_t)` for any real `t`.
    pub fn at(&self, t: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
        let period = self.spec.period();
        let n = (t / period).floor();
        let mut tau = t - n * period;
        let mut n = n;
        if tau >= period {
            tau -= period;
            n += 1.0;
        }
        let (h, a) = Self::within_period(&self.spec, tau)?;
        Ok((h + self.h_period.scale(n), a + self.a_period.scale(n)))
    }

    /// `Λ_t = exp(−i[ℋ_t, ·] + Σ A_jk(t) D_jk)`.
    pub fn propagator(&self, t: f64) -> Result<Superoperator> {
        let (h, a) = self.at(t)?;
        self.spec.frame().assemble(&h, &a)?.exp_scaled(1.0)
    }

    pub fn spec(&self) -> &LindbladSpec {
        &self.spec
    }
}

/// `(ℋ_t, A_t)` by adaptive quadrature.
pub fn antiderivatives(spec: &LindbladSpec, t: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    Antiderivatives::new(spec)?.at(t)
}

/// `Λ_t = exp ∫₀ᵗ L`, valid when the generators commute at all times.
pub fn solve_commutative(spec: &LindbladSpec, t: f64) -> Result<Superoperator> {
    Antiderivatives::new(spec)?.propagator(t)
}

/// [`solve_commutative`] preceded by a sampled commutativity check on
/// `n` points per period.
pub fn solve_commutative_checked(spec: &LindbladSpec, t: f64, n: usize) -> Result<Superoperator> {
    let (ok, residual, tol) = commutativity_check(spec, n)?;
    if !ok {
        return Err(Error::NotCommutative { residual, tol });
    }
    solve_commutative(spec, t)
}

/// Exact commutative propagators on the given times.
pub fn commutative_trajectory(spec: &LindbladSpec, times: &[f64]) -> Result<PropagatorTrajectory> {
    let anti = Antiderivatives::new(spec)?;
    let mut ts: Vec<f64> = times.to_vec();
    ts.push(0.0);
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let values = ts
        .iter()
        .map(|&t| anti.propagator(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(PropagatorTrajectory {
        spec: spec.clone(),
        times: ts,
        values,
        method: Method::Commutative,
        max_local_error: 0.0,
    })
}
