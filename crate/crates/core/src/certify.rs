// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

//! Complete positivity, CP-divisibility and related certificates.

use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::floquet::FloquetForm;
use crate::linalg::{
    choi_matrix, hermitian_eigen, hermitian_part, hermiticity_residual, kossakowski_block, max_abs,
    process_matrix, spectral_norm, ComplexMatrix, Superoperator, TOL_HERM, TOL_PSD,
};
use crate::lindblad::{commutativity_check, generator_at, is_standard_form, LindbladSpec};
use crate::solver::Antiderivatives;

pub use crate::floquet::conjugation_mismatch;

/// Default threshold separating violations from marginal points.
pub const BOUNDARY_TOL: f64 = 1e-8;

/// Complete-positivity / trace-preservation / Hermiticity-preservation verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct CPReport {
    pub cp: bool,
    /// Smallest eigenvalue of the Hermitian part of the Choi matrix.
    pub min_choi_eig: f64,
    pub tp_residual: f64,
    pub star_residual: f64,
    /// Hermiticity residual of the Choi matrix.
    pub choi_hermiticity_residual: f64,
    /// Spectral norm of the Choi matrix.
    pub choi_norm: f64,
    /// Eigenvector of the minimum eigenvalue, present when `cp` is false.
    pub witness: Option<DVector<Complex64>>,
}

impl CPReport {
    pub fn tp(&self, tol: f64) -> bool {
        self.tp_residual <= tol
    }
}

/// [`cptp_report_with`] at the default PSD tolerance.
pub fn cptp_report(s: &Superoperator) -> CPReport {
    cptp_report_with(s, TOL_PSD)
}

/// `cp ⇔` Choi matrix Hermitian and `λ_min ≥ −tol_psd·‖C‖₂`.
pub fn cptp_report_with(s: &Superoperator, tol_psd: f64) -> CPReport {
    let choi = choi_matrix(s);
    let norm = spectral_norm(&choi);
    let herm_res = hermiticity_residual(&choi);
    let eig = hermitian_eigen(&hermitian_part(&choi));
    let min = eig.min_value();
    let hermitian = herm_res <= TOL_HERM * norm.max(1.0);
    let cp = hermitian && min >= -tol_psd * norm;
    CPReport {
        cp,
        min_choi_eig: min,
        tp_residual: s.tp_residual(),
        star_residual: s.star_residual(),
        choi_hermiticity_residual: herm_res,
        choi_norm: norm,
        witness: if cp { None } else { Some(eig.min_vector()) },
    }
}

/// Local verdict at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalMargin {
    pub t: f64,
    /// Smallest eigenvalue of the tested matrix (negative means failure).
    pub min_eig: f64,
}

/// Grid-relative CP-divisibility verdict.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DivisibilityReport {
    pub interval: (f64, f64),
    pub grid: Vec<f64>,
    pub markovian: bool,
    /// Pairs `(t, s, λ_min(C[V_{t,s}]))` failing the Choi test.
    pub violations: Vec<(f64, f64, f64)>,
    /// Pairs whose Choi minimum lies within the boundary band.
    pub marginal_pairs: Vec<(f64, f64, f64)>,
    /// Per-point local margins (generator test or Kossakowski test).
    pub local: Vec<LocalMargin>,
    /// Points `(t, λ_min(a_t − A_T/T))` with negative margin.
    pub kossakowski_violations: Vec<(f64, f64)>,
    /// Points `(t, λ_min(A_t − (t/T)A_T))` for the CP sufficiency test.
    pub cp_sufficiency: Vec<(f64, f64)>,
    /// Points flagged marginal (`|margin| < boundary_tol`).
    pub marginal_points: Vec<f64>,
    /// Coalesced windows of local failure.
    pub nonmarkovian_windows: Vec<(f64, f64)>,
    pub boundary_tol: f64,
}

/// Uniform grid of `n ≥ 2` points on `[lo, hi]` merged with `extra` points inside.
pub fn scan_grid(lo: f64, hi: f64, n: usize, extra: &[f64]) -> Vec<f64> {
    let n = n.max(2);
    let mut g: Vec<f64> = (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect();
    g.extend(extra.iter().copied().filter(|&t| t > lo && t < hi));
    g.sort_by(f64::total_cmp);
    g.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (hi - lo).abs().max(1.0));
    g
}

/// Merge consecutive failing grid indices into closed windows. A single
/// failing point whose margin is marginal is skipped.
fn coalesce(grid: &[f64], failing: &[bool]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, &f) in failing.iter().enumerate() {
        match (f, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((grid[s], grid[i - 1]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((grid[s], grid[grid.len() - 1]));
    }
    out
}

/// Family value and its time derivative, by one-sided three-point
/// differences with one Richardson step.
fn derivative<F>(family: &F, t: f64, h: f64, forward: bool) -> Result<ComplexMatrix>
where
    F: Fn(f64) -> Result<Superoperator> + Sync + ?Sized,
{
    let sgn = if forward { 1.0 } else { -1.0 };
    let f0 = family(t)?.into_matrix();
    let one = |h: f64| -> Result<ComplexMatrix> {
        let f1 = family(t + sgn * h)?.into_matrix();
        let f2 = family(t + 2.0 * sgn * h)?.into_matrix();
        Ok((f1.scale(4.0) - &f0.scale(3.0) - f2).scale(sgn / (2.0 * h)))
    };
    let d1 = one(h)?;
    let d2 = one(0.5 * h)?;
    Ok((d2.scale(4.0) - d1).scale(1.0 / 3.0))
}

/// Pairwise Choi scan of `V_{t,s} = F(t) F(s)⁻¹` over `grid`, plus a
/// per-point test of the local generator `Ḟ(t) F(t)⁻¹`: its Kossakowski
/// block must be positive semidefinite.
///
/// `breakpoints` are times where `F` is not smooth; difference stencils
/// never straddle them.
pub fn divisibility_scan<F>(
    family: &F,
    grid: &[f64],
    breakpoints: &[f64],
    boundary_tol: f64,
) -> Result<DivisibilityReport>
where
    F: Fn(f64) -> Result<Superoperator> + Sync + ?Sized,
{
    if grid.len() < 2 {
        return Err(Error::InvalidArgument(
            "divisibility scan needs at least two grid points".into(),
        ));
    }
    let lo = grid[0];
    let hi = grid[grid.len() - 1];
    let values: Vec<Superoperator> = grid.par_iter().map(|&t| family(t)).collect::<Result<_>>()?;
    let inverses: Vec<Superoperator> = values
        .par_iter()
        .zip(grid.par_iter())
        .map(|(v, &t)| v.inverse().map_err(|_| Error::SingularAt { t }))
        .collect::<Result<_>>()?;

    let pairs: Vec<(usize, usize)> = (0..grid.len())
        .flat_map(|j| (0..j).map(move |i| (j, i)))
        .collect();
    let mins: Vec<f64> = pairs
        .par_iter()
        .map(|&(j, i)| {
            let v = values[j].compose(&inverses[i]);
            let r = cptp_report_with(&v, 0.0);
            if r.choi_hermiticity_residual > TOL_HERM * r.choi_norm.max(1.0) {
                f64::NEG_INFINITY
            } else {
                r.min_choi_eig
            }
        })
        .collect();
    let mut report = DivisibilityReport {
        interval: (lo, hi),
        grid: grid.to_vec(),
        boundary_tol,
        ..Default::default()
    };
    for (&(j, i), &m) in pairs.iter().zip(&mins) {
        if m < -boundary_tol {
            report.violations.push((grid[j], grid[i], m));
        } else if m < boundary_tol && m < 0.0 {
            report.marginal_pairs.push((grid[j], grid[i], m));
        }
    }

    let span = (hi - lo).abs().max(1e-300);
    let h0 = 2e-5 * span;
    let local: Vec<LocalMargin> = grid
        .par_iter()
        .enumerate()
        .map(|(k, &t)| -> Result<LocalMargin> {
            let forward = k + 1 < grid.len();
            let sgn = if forward { 1.0 } else { -1.0 };
            let mut h = h0;
            for &b in breakpoints {
                let dist = (b - t) * sgn;
                if dist > 0.0 && dist <= 2.0 * h {
                    h = dist / 3.0;
                }
            }
            let d = derivative(family, t, h, forward)?;
            let gen = values[k].with_matrix(d * inverses[k].matrix());
            let corner = kossakowski_block(&process_matrix(&gen));
            let scale = max_abs(&corner).max(1.0);
            let min = if hermiticity_residual(&corner) > 1e-6 * scale {
                f64::NEG_INFINITY
            } else {
                hermitian_eigen(&hermitian_part(&corner)).min_value()
            };
            Ok(LocalMargin { t, min_eig: min })
        })
        .collect::<Result<_>>()?;
    finish_local(&mut report, local);
    report.markovian = report.violations.is_empty();
    Ok(report)
}

fn finish_local(report: &mut DivisibilityReport, local: Vec<LocalMargin>) {
    let tol = report.boundary_tol;
    let failing: Vec<bool> = local.iter().map(|m| m.min_eig < -tol).collect();
    report.marginal_points = local
        .iter()
        .filter(|m| m.min_eig.abs() < tol)
        .map(|m| m.t)
        .collect();
    report.nonmarkovian_windows = coalesce(&report.grid, &failing);
    report.local = local;
}

/// Kossakowski-matrix route for commutative specs: per grid point,
/// `a_t − A_T/T ⪰ 0` (divisibility) and `A_t − (t/T) A_T ⪰ 0` (CP of `P_t`).
pub fn kossakowski_divisibility(
    spec: &LindbladSpec,
    grid: &[f64],
    boundary_tol: f64,
) -> Result<DivisibilityReport> {
    let (ok, residual, tol) = commutativity_check(spec, 16)?;
    if !ok {
        return Err(Error::NotCommutative { residual, tol });
    }
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty grid".into()));
    }
    let anti = Antiderivatives::new(spec)?;
    let period = spec.period();
    let mean = anti.period_integrals().1.scale(1.0 / period);
    let rows: Vec<(f64, f64, f64)> = grid
        .par_iter()
        .map(|&t| -> Result<(f64, f64, f64)> {
            let a = spec.kossakowski_at(t);
            let div = hermitian_eigen(&hermitian_part(&(a - &mean))).min_value();
            let (_, at) = anti.at(t)?;
            let cp = hermitian_eigen(&hermitian_part(&(at - mean.scale(t)))).min_value();
            Ok((t, div, cp))
        })
        .collect::<Result<_>>()?;
    let mut report = DivisibilityReport {
        interval: (grid[0], grid[grid.len() - 1]),
        grid: grid.to_vec(),
        boundary_tol,
        ..Default::default()
    };
    let local: Vec<LocalMargin> = rows
        .iter()
        .map(|&(t, m, _)| LocalMargin { t, min_eig: m })
        .collect();
    report.kossakowski_violations = rows
        .iter()
        .filter(|r| r.1 < -boundary_tol)
        .map(|r| (r.0, r.1))
        .collect();
    report.cp_sufficiency = rows.iter().map(|r| (r.0, r.2)).collect();
    finish_local(&mut report, local);
    report.markovian = report.kossakowski_violations.is_empty();
    Ok(report)
}

/// Sub-regions of the complete-positivity region of the qubit Pauli model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subregion {
    A1,
    A2,
    A3,
    None,
}

impl Subregion {
    pub fn as_str(&self) -> &'static str {
        match self {
            Subregion::A1 => "A1",
            Subregion::A2 => "A2",
            Subregion::A3 => "A3",
            Subregion::None => "none",
        }
    }
}

/// Lower bound of the first sub-region: `z = ln(cosh((x−y)/2) / cosh((x+y)/2))`.
pub fn boundary_surface_f1(x: f64, y: f64) -> f64 {
    (0.5 * (x - y)).cosh().ln() - (0.5 * (x + y)).cosh().ln()
}

/// Membership of `ϑ = (x, y, z)` via the cosh/sinh bounds.
pub fn region_a_membership(theta: [f64; 3]) -> (bool, Subregion) {
    let [x, y, z] = theta;
    if x >= 0.0 && y >= 0.0 && z >= boundary_surface_f1(x, y) {
        return (true, Subregion::A1);
    }
    if y < 0.0 && x + y > 0.0 {
        let bound = (0.5 * (x - y)).sinh().ln() - (0.5 * (x + y)).sinh().ln();
        if z >= bound {
            return (true, Subregion::A2);
        }
    }
    if x < 0.0 && x + y > 0.0 {
        let bound = (0.5 * (y - x)).sinh().ln() - (0.5 * (x + y)).sinh().ln();
        if z >= bound {
            return (true, Subregion::A3);
        }
    }
    (false, Subregion::None)
}

/// Slack `1 − lhs` of the four bilinear inequalities in `α_j = e^{−ϑ_j}`;
/// all non-negative iff the map is completely positive.
pub fn alpha_inequality_slacks(alpha: [f64; 3]) -> [f64; 4] {
    let [a1, a2, a3] = alpha;
    let (p12, p13, p23) = (a1 * a2, a1 * a3, a2 * a3);
    [
        1.0 - (p12 + p13 - p23),
        1.0 - (p12 - p13 + p23),
        1.0 - (-p12 + p13 + p23),
        1.0 - (-p12 - p13 - p23),
    ]
}

pub fn alpha_inequalities_hold(alpha: [f64; 3]) -> bool {
    alpha_inequality_slacks(alpha).iter().all(|&s| s >= 0.0)
}

/// Membership of `α` in the union of the three `ℬ` sub-regions.
pub fn region_b_membership(alpha: [f64; 3]) -> (bool, Subregion) {
    let [a1, a2, a3] = alpha;
    if a1 <= 1.0 && a2 <= 1.0 && a3 <= (1.0 + a1 * a2) / (a1 + a2) {
        return (true, Subregion::A1);
    }
    if a1 < 1.0 && a2 > 1.0 && a2 < 1.0 / a1 && a3 <= (a1 * a2 - 1.0) / (a1 - a2) {
        return (true, Subregion::A2);
    }
    if a1 > 1.0 && a2 < 1.0 / a1 && a3 <= (1.0 - a1 * a2) / (a1 - a2) {
        return (true, Subregion::A3);
    }
    (false, Subregion::None)
}

/// Agreement record of the two closed-form membership tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionVerdict {
    pub member: bool,
    pub subregion: Subregion,
    pub alpha_member: bool,
    pub agree: bool,
}

pub fn region_verdict(theta: [f64; 3]) -> RegionVerdict {
    let (member, subregion) = region_a_membership(theta);
    let alpha_member = alpha_inequalities_hold(theta.map(|x| (-x).exp()));
    RegionVerdict {
        member,
        subregion,
        alpha_member,
        agree: member == alpha_member,
    }
}

/// Outcome of the semigroup test on a Floquet pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemigroupTest {
    /// `a_0 − dP̃/dt|₀` is Hermitian and positive semidefinite.
    pub psd: bool,
    pub hermitian: bool,
    pub min_eig: f64,
    /// Standard-form verdict on `X` itself, for comparison.
    pub x_standard_form: bool,
}

/// PSD test of `a_0 − dP̃/dt|₀`, where `P̃` is the Kossakowski block of the
/// process matrix of `P_t`. The derivative uses central differences with
/// `h = 1e−5·T` and one Richardson step, or forward differences when `0`
/// is a breakpoint.
pub fn semigroup_test(form: &FloquetForm, spec: &LindbladSpec) -> Result<SemigroupTest> {
    let period = spec.period();
    let h = 1e-5 * period;
    let general = form.mode() == crate::floquet::FloquetMode::GeneralLog;
    let p_tilde = |s: f64| -> Result<ComplexMatrix> {
        let p = if general {
            // One midpoint step from t = 0 keeps the stencil off the integrator grid.
            generator_at(spec, 0.5 * s)?
                .exp_scaled(s)?
                .compose(&form.exp_tx(-s)?)
        } else {
            form.periodic_part(s.rem_euclid(period))?
        };
        Ok(kossakowski_block(&process_matrix(&p)))
    };
    let one_sided = spec.breakpoints().first().is_some_and(|&b| b == 0.0);
    let deriv = |h: f64| -> Result<ComplexMatrix> {
        if one_sided {
            let f0 = p_tilde(0.0)?;
            Ok((p_tilde(h)?.scale(4.0) - f0.scale(3.0) - p_tilde(2.0 * h)?).scale(1.0 / (2.0 * h)))
        } else {
            Ok((p_tilde(h)? - p_tilde(-h)?).scale(1.0 / (2.0 * h)))
        }
    };
    let d = (deriv(0.5 * h)?.scale(4.0) - deriv(h)?).scale(1.0 / 3.0);
    let m = spec.kossakowski_at(0.0) - d;
    let scale = max_abs(&m).max(1.0);
    let hermitian = hermiticity_residual(&m) <= 1e-6 * scale;
    let min_eig = hermitian_eigen(&hermitian_part(&m)).min_value();
    let psd = hermitian && min_eig >= -1e-6 * scale;
    Ok(SemigroupTest {
        psd,
        hermitian,
        min_eig,
        x_standard_form: is_standard_form(form.x()),
    })
}
