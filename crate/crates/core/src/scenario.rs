// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

//! Batch scenario files.
//!
//! A scenario is a TOML document with a `[model]` table (a builtin name
//! with optional parameters, or an `[model.inline]` table), an
//! ordered `commands` list and optional `[options]` / `[output]` tables:
//!
//! ```toml
//! name = "tls"
//! commands = ["floquet", { kind = "certify-divisibility", target = "periodic" }]
//!
//! [model]
//! builtin = "driven-tls"
//! gamma_up = 0.5
//! omega = { kind = "cosine", offset = 1.0, amplitude = 1.0 }
//!
//! [options]
//! grid = 128
//! ```
//!
//! [`run`] writes `manifest.json` plus one CSV table per command output.
//! Tables carry a header row with units and use 17 significant digits.

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::certify::{
    alpha_inequalities_hold, boundary_surface_f1, conjugation_mismatch, cptp_report_with,
    divisibility_scan, kossakowski_divisibility, region_a_membership, scan_grid, semigroup_test,
    DivisibilityReport,
};
use crate::error::Error;
use crate::floquet::{
    check_density_matrix, floquet_split, FloquetForm, FloquetMode, FloquetOptions,
};
use crate::linalg::{hermitian_eigen, hermitian_part, trace, ComplexMatrix, Superoperator};
use crate::lindblad::{extract_standard_form, LindbladSpec, MatrixFn};
use crate::models::{m3_counterexample, DrivenTlsModel, Profile, RandomQubitModel, BUILTIN_MODELS};
use crate::solver::integrate_general;

/// Default grid points per period.
pub const DEFAULT_GRID: usize = 128;
/// Default certification tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Output directory used when neither the scenario nor the caller sets one.
pub const DEFAULT_OUT_DIR: &str = "floquet-out";

/// One validation finding. `path` locates the offending key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    model: RawModel,
    #[serde(default)]
    commands: Vec<toml::Value>,
    #[serde(default)]
    options: RawOptions,
    #[serde(default)]
    output: RawOutput,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    builtin: Option<String>,
    period: Option<f64>,
    rates: Option<Vec<Profile>>,
    omega: Option<Profile>,
    gamma_up: Option<f64>,
    gamma_down: Option<f64>,
    inline: Option<RawInline>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInline {
    dimension: usize,
    period: f64,
    #[serde(default)]
    breakpoints: Vec<f64>,
    #[serde(default)]
    hamiltonian: Vec<MatrixEntry>,
    hamiltonian_table: Option<MatrixTable>,
    #[serde(default)]
    kossakowski: Vec<MatrixEntry>,
    kossakowski_table: Option<MatrixTable>,
}

/// Matrix entry `(row, col)` given by real and imaginary profiles.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixEntry {
    pub index: [usize; 2],
    pub re: Option<Profile>,
    pub im: Option<Profile>,
}

/// Sampled matrix: `rows[i]` holds the row-major entries at `times[i]` as
/// interleaved `re, im` pairs. Interpolation is periodic piecewise-linear.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixTable {
    pub times: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    step: Option<f64>,
    grid: Option<usize>,
    tol: Option<f64>,
    mode: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivisibilityTarget {
    #[default]
    Periodic,
    Lambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivisibilityMethod {
    #[default]
    Scan,
    Kossakowski,
}

/// A scenario command. Times default to one period; sample counts to the
/// grid density plus one.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    /// States `Λ_t(ρ₀)` from the time-ordered integrator; `rho0` rows of
    /// `[re, im]` pairs, default `|0⟩⟨0|`. Default horizon two periods.
    Simulate {
        t_end: Option<f64>,
        samples: Option<usize>,
        rho0: Option<Vec<Vec<[f64; 2]>>>,
    },
    /// Normal form, spectra and stability.
    Floquet {},
    /// `cptp_report` of `Λ_t`, `P_t` and `e^{tX}` on a grid.
    CertifyCp {
        t_end: Option<f64>,
        samples: Option<usize>,
    },
    CertifyDivisibility {
        #[serde(default)]
        target: DivisibilityTarget,
        #[serde(default)]
        method: DivisibilityMethod,
        t_end: Option<f64>,
    },
    /// Eigenvalues of `Λ_t`, `P_t` and `e^{tX}` along a time grid.
    SpectraTrajectory {
        t_start: Option<f64>,
        t_end: Option<f64>,
        samples: Option<usize>,
    },
    /// Samples of the lower boundary surface of the first CP sub-region.
    RegionA {
        extent: Option<f64>,
        samples: Option<usize>,
    },
}

impl Command {
    pub fn kind(&self) -> &'static str {
        match self {
            Command::Simulate { .. } => "simulate",
            Command::Floquet {} => "floquet",
            Command::CertifyCp { .. } => "certify-cp",
            Command::CertifyDivisibility { .. } => "certify-divisibility",
            Command::SpectraTrajectory { .. } => "spectra-trajectory",
            Command::RegionA { .. } => "region-a",
        }
    }
}

/// Matrix entry with validated profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct EntryProfile {
    pub row: usize,
    pub col: usize,
    pub re: Option<Profile>,
    pub im: Option<Profile>,
}

impl EntryProfile {
    fn value(&self, t: f64, period: f64) -> Complex64 {
        let f = |p: &Option<Profile>| p.as_ref().map_or(0.0, |p| p.value(t, period));
        Complex64::new(f(&self.re), f(&self.im))
    }

    fn profiles(&self) -> impl Iterator<Item = &Profile> {
        self.re.iter().chain(self.im.iter())
    }
}

/// User-supplied generator coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct InlineModel {
    pub dimension: usize,
    pub period: f64,
    pub breakpoints: Vec<f64>,
    /// Entries of `H_t` in the standard matrix basis.
    pub hamiltonian: Vec<EntryProfile>,
    /// Entries of `a_t` over the Frobenius basis.
    pub kossakowski: Vec<EntryProfile>,
}

fn assemble_entries(entries: &[EntryProfile], n: usize, t: f64, period: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for e in entries {
        m[(e.row, e.col)] += e.value(t, period);
    }
    m
}

impl InlineModel {
    pub fn spec(&self) -> crate::Result<LindbladSpec> {
        let d = self.dimension;
        let period = self.period;
        let hs = self.hamiltonian.clone();
        let ks = self.kossakowski.clone();
        let h: MatrixFn = Arc::new(move |t| assemble_entries(&hs, d, t, period));
        let a: MatrixFn = Arc::new(move |t| assemble_entries(&ks, d * d - 1, t, period));
        let mut bps = self.breakpoints.clone();
        for e in self.hamiltonian.iter().chain(&self.kossakowski) {
            for p in e.profiles() {
                bps.extend(p.breakpoints(period));
            }
        }
        LindbladSpec::new(d, period, h, a, bps)
    }
}

/// Model selected by a scenario.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelChoice {
    RandomQubit(RandomQubitModel),
    DrivenTls(DrivenTlsModel),
    M3Counterexample,
    Inline(InlineModel),
}

impl ModelChoice {
    pub fn name(&self) -> &'static str {
        match self {
            ModelChoice::RandomQubit(_) => "random-qubit",
            ModelChoice::DrivenTls(_) => "driven-tls",
            ModelChoice::M3Counterexample => "m3-counterexample",
            ModelChoice::Inline(_) => "inline",
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            ModelChoice::RandomQubit(_) | ModelChoice::DrivenTls(_) => 2,
            ModelChoice::M3Counterexample => 3,
            ModelChoice::Inline(m) => m.dimension,
        }
    }

    pub fn spec(&self) -> crate::Result<LindbladSpec> {
        match self {
            ModelChoice::RandomQubit(m) => m.spec(),
            ModelChoice::DrivenTls(m) => m.spec(),
            ModelChoice::M3Counterexample => Ok(m3_counterexample()),
            ModelChoice::Inline(m) => m.spec(),
        }
    }

    fn describe(&self, spec: &LindbladSpec) -> Value {
        let mut v = json!({
            "name": self.name(),
            "dimension": spec.dim(),
            "period": spec.period(),
            "breakpoints": spec.breakpoints(),
        });
        let params = match self {
            ModelChoice::RandomQubit(m) => json!({ "rates": m.rates }),
            ModelChoice::DrivenTls(m) => {
                json!({ "omega": m.omega, "gamma_up": m.gamma_up, "gamma_down": m.gamma_down })
            }
            _ => Value::Null,
        };
        if !params.is_null() {
            v["parameters"] = params;
        }
        v
    }
}

/// Numeric options shared by all commands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    /// Integrator step; `None` means `T/2000`.
    pub step: Option<f64>,
    /// Grid points per period.
    pub grid: usize,
    /// Certification tolerance.
    pub tol: f64,
    pub mode: FloquetMode,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            step: None,
            grid: DEFAULT_GRID,
            tol: DEFAULT_TOL,
            mode: FloquetMode::Auto,
        }
    }
}

/// Command-line overrides applied on top of a scenario.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub step: Option<f64>,
    pub grid: Option<usize>,
}

/// Validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: Option<String>,
    pub model: ModelChoice,
    pub commands: Vec<Command>,
    pub options: RunOptions,
    pub output_dir: Option<PathBuf>,
}

fn mode_name(mode: FloquetMode) -> &'static str {
    match mode {
        FloquetMode::Auto => "auto",
        FloquetMode::Commutative => "commutative",
        FloquetMode::GeneralLog => "general-log",
    }
}

fn check_positive(x: Option<f64>, path: &str, diags: &mut Vec<Diagnostic>) {
    if let Some(x) = x {
        if !(x.is_finite() && x > 0.0) {
            diags.push(Diagnostic::new(
                path,
                format!("must be a positive number, got {x}"),
            ));
        }
    }
}

fn check_samples(n: Option<usize>, path: &str, diags: &mut Vec<Diagnostic>) {
    if let Some(n) = n {
        if n < 2 {
            diags.push(Diagnostic::new(
                path,
                format!("need at least 2 samples, got {n}"),
            ));
        }
    }
}

fn rate_diagnostics(j: usize, p: &Profile, period: f64, diags: &mut Vec<Diagnostic>) {
    let path = format!("model.rates[{j}]");
    if let Err(e) = p.validate(period) {
        diags.push(Diagnostic::new(&path, e.to_string()));
        return;
    }
    match p {
        Profile::Table { times, values } => {
            for (r, (&t, &v)) in times.iter().zip(values).enumerate() {
                if v < 0.0 {
                    diags.push(Diagnostic::new(
                        &path,
                        format!("negative rate {v} at row {r} (t = {t})"),
                    ));
                }
            }
        }
        _ => {
            let m = p.min_value();
            if m < 0.0 {
                diags.push(Diagnostic::new(
                    &path,
                    format!("rate takes negative minimum value {m}"),
                ));
            }
        }
    }
}

fn build_builtin(raw: &RawModel, name: &str, diags: &mut Vec<Diagnostic>) -> Option<ModelChoice> {
    let unused = |field: &str, present: bool, diags: &mut Vec<Diagnostic>| {
        if present {
            diags.push(Diagnostic::new(
                format!("model.{field}"),
                format!("not a parameter of {name}"),
            ));
        }
    };
    check_positive(raw.period, "model.period", diags);
    match name {
        "random-qubit" => {
            unused("omega", raw.omega.is_some(), diags);
            unused("gamma_up", raw.gamma_up.is_some(), diags);
            unused("gamma_down", raw.gamma_down.is_some(), diags);
            let default = RandomQubitModel::default_model();
            let period = raw.period.unwrap_or(default.period);
            let rates = match &raw.rates {
                None => default.rates.clone(),
                Some(r) if r.len() == 3 => [r[0].clone(), r[1].clone(), r[2].clone()],
                Some(r) => {
                    diags.push(Diagnostic::new(
                        "model.rates",
                        format!("expected 3 rate profiles, got {}", r.len()),
                    ));
                    return None;
                }
            };
            let before = diags.len();
            for (j, p) in rates.iter().enumerate() {
                rate_diagnostics(j, p, period, diags);
            }
            if diags.len() > before {
                return None;
            }
            RandomQubitModel::new(rates, period)
                .map_err(|e| diags.push(Diagnostic::new("model", e.to_string())))
                .ok()
                .map(ModelChoice::RandomQubit)
        }
        "driven-tls" => {
            unused("rates", raw.rates.is_some(), diags);
            let d = DrivenTlsModel::default_model();
            let period = raw.period.unwrap_or(d.period);
            let omega = raw.omega.clone().unwrap_or(d.omega);
            if let Err(e) = omega.validate(period) {
                diags.push(Diagnostic::new("model.omega", e.to_string()));
                return None;
            }
            let up = raw.gamma_up.unwrap_or(d.gamma_up);
            let down = raw.gamma_down.unwrap_or(d.gamma_down);
            check_positive(Some(up), "model.gamma_up", diags);
            check_positive(Some(down), "model.gamma_down", diags);
            DrivenTlsModel::new(omega, up, down, period)
                .map_err(|e| diags.push(Diagnostic::new("model", e.to_string())))
                .ok()
                .map(ModelChoice::DrivenTls)
        }
        "m3-counterexample" => {
            unused("period", raw.period.is_some(), diags);
            unused("rates", raw.rates.is_some(), diags);
            unused("omega", raw.omega.is_some(), diags);
            unused("gamma_up", raw.gamma_up.is_some(), diags);
            unused("gamma_down", raw.gamma_down.is_some(), diags);
            Some(ModelChoice::M3Counterexample)
        }
        other => {
            diags.push(Diagnostic::new(
                "model.builtin",
                format!(
                    "unknown model {other:?}; available: {}",
                    BUILTIN_MODELS.join(", ")
                ),
            ));
            None
        }
    }
}

fn entries_from_list(
    list: &[MatrixEntry],
    n: usize,
    period: f64,
    path: &str,
    diags: &mut Vec<Diagnostic>,
) -> Vec<EntryProfile> {
    let mut out: Vec<EntryProfile> = Vec::new();
    for (i, e) in list.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let [r, c] = e.index;
        if r >= n || c >= n {
            diags.push(Diagnostic::new(
                &p,
                format!("index ({r}, {c}) out of range for a {n}x{n} matrix"),
            ));
            continue;
        }
        if out.iter().any(|o| o.row == r && o.col == c) {
            diags.push(Diagnostic::new(
                &p,
                format!("duplicate entry for index ({r}, {c})"),
            ));
            continue;
        }
        for prof in e.re.iter().chain(e.im.iter()) {
            if let Err(err) = prof.validate(period) {
                diags.push(Diagnostic::new(&p, err.to_string()));
            }
        }
        out.push(EntryProfile {
            row: r,
            col: c,
            re: e.re.clone(),
            im: e.im.clone(),
        });
    }
    out
}

fn entries_from_table(
    table: &MatrixTable,
    n: usize,
    period: f64,
    path: &str,
    diags: &mut Vec<Diagnostic>,
) -> Vec<EntryProfile> {
    let before = diags.len();
    if table.times.len() != table.rows.len() || table.times.is_empty() {
        diags.push(Diagnostic::new(
            path,
            format!(
                "{} times but {} rows (need equally many, at least one)",
                table.times.len(),
                table.rows.len()
            ),
        ));
        return Vec::new();
    }
    for (r, row) in table.rows.iter().enumerate() {
        if row.len() != 2 * n * n {
            diags.push(Diagnostic::new(
                format!("{path}.rows[{r}]"),
                format!(
                    "expected {} numbers ({n}x{n} complex entries), got {}",
                    2 * n * n,
                    row.len()
                ),
            ));
            continue;
        }
        let z = |j: usize, k: usize| Complex64::new(row[2 * (j * n + k)], row[2 * (j * n + k) + 1]);
        let scale = row.iter().fold(1.0f64, |a, x| a.max(x.abs()));
        for j in 0..n {
            for k in j..n {
                if (z(j, k) - z(k, j).conj()).norm() > 1e-12 * scale {
                    diags.push(Diagnostic::new(
                        format!("{path}.rows[{r}]"),
                        format!(
                            "not Hermitian at index pair ({j}, {k}) (t = {})",
                            table.times[r]
                        ),
                    ));
                }
            }
        }
    }
    if diags.len() > before {
        return Vec::new();
    }
    let mut out = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let col = |part: usize| -> Option<Profile> {
                let values: Vec<f64> = table
                    .rows
                    .iter()
                    .map(|row| row[2 * (j * n + k) + part])
                    .collect();
                values.iter().any(|&v| v != 0.0).then(|| Profile::Table {
                    times: table.times.clone(),
                    values,
                })
            };
            let (re, im) = (col(0), col(1));
            if re.is_some() || im.is_some() {
                out.push(EntryProfile {
                    row: j,
                    col: k,
                    re,
                    im,
                });
            }
        }
    }
    if let Some(p) = out.iter().flat_map(|e| e.profiles()).next() {
        if let Err(e) = p.validate(period) {
            diags.push(Diagnostic::new(format!("{path}.times"), e.to_string()));
        }
    }
    out
}

/// Hermiticity of entry families on a sample grid, one finding per pair.
fn entry_hermiticity(
    entries: &[EntryProfile],
    n: usize,
    period: f64,
    extra: &[f64],
    path: &str,
    diags: &mut Vec<Diagnostic>,
) {
    let mut times: Vec<f64> = (0..64).map(|k| period * k as f64 / 64.0).collect();
    times.extend_from_slice(extra);
    for j in 0..n {
        for k in j..n {
            let bad = times.iter().copied().find(|&t| {
                let m = assemble_entries(entries, n, t, period);
                let scale = m[(j, k)].norm().max(m[(k, j)].norm()).max(1.0);
                (m[(j, k)] - m[(k, j)].conj()).norm() > 1e-12 * scale
            });
            if let Some(t) = bad {
                diags.push(Diagnostic::new(
                    path,
                    format!("not Hermitian at index pair ({j}, {k}) (t = {t})"),
                ));
            }
        }
    }
}

fn build_inline(raw: &RawInline, diags: &mut Vec<Diagnostic>) -> Option<ModelChoice> {
    let before = diags.len();
    let d = raw.dimension;
    if d < 2 {
        diags.push(Diagnostic::new(
            "model.inline.dimension",
            format!("must be at least 2, got {d}"),
        ));
        return None;
    }
    check_positive(Some(raw.period), "model.inline.period", diags);
    if raw.breakpoints.iter().any(|b| !b.is_finite()) {
        diags.push(Diagnostic::new(
            "model.inline.breakpoints",
            "must be finite",
        ));
    }
    if diags.len() > before {
        return None;
    }
    let period = raw.period;
    let mut matrix = |list: &[MatrixEntry],
                      table: &Option<MatrixTable>,
                      n: usize,
                      name: &str|
     -> Vec<EntryProfile> {
        let path = format!("model.inline.{name}");
        match table {
            Some(_) if !list.is_empty() => {
                diags.push(Diagnostic::new(
                    &path,
                    format!("give either {name} or {name}_table, not both"),
                ));
                Vec::new()
            }
            Some(t) => entries_from_table(t, n, period, &format!("{path}_table"), diags),
            None => {
                let e = entries_from_list(list, n, period, &path, diags);
                let extra: Vec<f64> = e
                    .iter()
                    .flat_map(|x| x.profiles())
                    .flat_map(|p| p.breakpoints(period))
                    .collect();
                entry_hermiticity(&e, n, period, &extra, &path, diags);
                e
            }
        }
    };
    let hamiltonian = matrix(&raw.hamiltonian, &raw.hamiltonian_table, d, "hamiltonian");
    let kossakowski = matrix(
        &raw.kossakowski,
        &raw.kossakowski_table,
        d * d - 1,
        "kossakowski",
    );
    if diags.len() > before {
        return None;
    }
    let model = InlineModel {
        dimension: d,
        period,
        breakpoints: raw.breakpoints.clone(),
        hamiltonian,
        kossakowski,
    };
    match model.spec() {
        Ok(_) => Some(ModelChoice::Inline(model)),
        Err(e) => {
            diags.push(Diagnostic::new("model.inline", e.to_string()));
            None
        }
    }
}

fn rho_from_rows(rows: &[Vec<[f64; 2]>]) -> ComplexMatrix {
    let n = rows.len();
    ComplexMatrix::from_fn(n, n, |i, j| {
        rows[i].get(j).map_or(Complex64::new(f64::NAN, 0.0), |z| {
            Complex64::new(z[0], z[1])
        })
    })
}

fn validate_command(cmd: &Command, path: &str, dim: Option<usize>, diags: &mut Vec<Diagnostic>) {
    match cmd {
        Command::Simulate {
            t_end,
            samples,
            rho0,
        } => {
            check_positive(*t_end, &format!("{path}.t_end"), diags);
            check_samples(*samples, &format!("{path}.samples"), diags);
            if let (Some(rows), Some(d)) = (rho0, dim) {
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    diags.push(Diagnostic::new(
                        format!("{path}.rho0"),
                        format!("must be a {d}x{d} matrix"),
                    ));
                } else if let Err(e) = check_density_matrix(&rho_from_rows(rows), d) {
                    diags.push(Diagnostic::new(format!("{path}.rho0"), e.to_string()));
                }
            }
        }
        Command::Floquet {} => {}
        Command::CertifyCp { t_end, samples } => {
            check_positive(*t_end, &format!("{path}.t_end"), diags);
            check_samples(*samples, &format!("{path}.samples"), diags);
        }
        Command::CertifyDivisibility { t_end, .. } => {
            check_positive(*t_end, &format!("{path}.t_end"), diags)
        }
        Command::SpectraTrajectory {
            t_start,
            t_end,
            samples,
        } => {
            let (a, b) = (t_start.unwrap_or(0.0), *t_end);
            if !(a.is_finite() && a >= 0.0) {
                diags.push(Diagnostic::new(
                    format!("{path}.t_start"),
                    format!("must be non-negative, got {a}"),
                ));
            }
            check_positive(*t_end, &format!("{path}.t_end"), diags);
            if let Some(b) = b {
                if b <= a {
                    diags.push(Diagnostic::new(
                        format!("{path}.t_end"),
                        "must exceed t_start",
                    ));
                }
            }
            check_samples(*samples, &format!("{path}.samples"), diags);
        }
        Command::RegionA { extent, samples } => {
            check_positive(*extent, &format!("{path}.extent"), diags);
            check_samples(*samples, &format!("{path}.samples"), diags);
        }
    }
}

fn apply_overrides(
    options: &mut RunOptions,
    out: &mut Option<PathBuf>,
    o: &Overrides,
    diags: &mut Vec<Diagnostic>,
) {
    check_positive(o.tol, "--tol", diags);
    check_positive(o.step, "--step", diags);
    if let Some(g) = o.grid {
        if g < 2 {
            diags.push(Diagnostic::new(
                "--grid",
                format!("need at least 2 points per period, got {g}"),
            ));
        }
        options.grid = g;
    }
    if let Some(t) = o.tol {
        options.tol = t;
    }
    if o.step.is_some() {
        options.step = o.step;
    }
    if o.out.is_some() {
        out.clone_from(&o.out);
    }
}

impl Scenario {
    /// Parses and validates a scenario document.
    pub fn parse(text: &str) -> Result<Self, Vec<Diagnostic>> {
        let raw: RawScenario = toml::from_str(text)
            .map_err(|e| vec![Diagnostic::new("", e.to_string().trim_end())])?;
        let mut diags = Vec::new();
        let model = match (&raw.model.builtin, &raw.model.inline) {
            (Some(_), Some(_)) => {
                diags.push(Diagnostic::new(
                    "model",
                    "give either builtin or inline, not both",
                ));
                None
            }
            (None, None) => {
                diags.push(Diagnostic::new(
                    "model",
                    "missing builtin name or inline table",
                ));
                None
            }
            (Some(name), None) => build_builtin(&raw.model, name, &mut diags),
            (None, Some(inline)) => {
                for (field, set) in [
                    ("period", raw.model.period.is_some()),
                    ("rates", raw.model.rates.is_some()),
                    ("omega", raw.model.omega.is_some()),
                    ("gamma_up", raw.model.gamma_up.is_some()),
                    ("gamma_down", raw.model.gamma_down.is_some()),
                ] {
                    if set {
                        diags.push(Diagnostic::new(
                            format!("model.{field}"),
                            "only valid with a builtin model",
                        ));
                    }
                }
                build_inline(inline, &mut diags)
            }
        };
        let dim = model.as_ref().map(ModelChoice::dimension);

        let mut commands = Vec::new();
        if raw.commands.is_empty() {
            diags.push(Diagnostic::new("commands", "no commands given"));
        }
        for (i, v) in raw.commands.iter().enumerate() {
            let path = format!("commands[{i}]");
            let v = match v {
                toml::Value::String(s) => {
                    let mut t = toml::Table::new();
                    t.insert("kind".into(), toml::Value::String(s.clone()));
                    toml::Value::Table(t)
                }
                other => other.clone(),
            };
            match v.try_into::<Command>() {
                Ok(c) => {
                    validate_command(&c, &path, dim, &mut diags);
                    commands.push(c);
                }
                Err(e) => diags.push(Diagnostic::new(path, e.to_string().trim_end())),
            }
        }

        let mut options = RunOptions::default();
        check_positive(raw.options.step, "options.step", &mut diags);
        check_positive(raw.options.tol, "options.tol", &mut diags);
        options.step = raw.options.step;
        if let Some(t) = raw.options.tol {
            options.tol = t;
        }
        if let Some(g) = raw.options.grid {
            if g < 2 {
                diags.push(Diagnostic::new(
                    "options.grid",
                    format!("need at least 2 points per period, got {g}"),
                ));
            }
            options.grid = g;
        }
        if let Some(m) = &raw.options.mode {
            options.mode = match m.as_str() {
                "auto" => FloquetMode::Auto,
                "commutative" => FloquetMode::Commutative,
                "general-log" => FloquetMode::GeneralLog,
                other => {
                    diags.push(Diagnostic::new(
                        "options.mode",
                        format!(
                            "unknown mode {other:?}; expected auto, commutative or general-log"
                        ),
                    ));
                    FloquetMode::Auto
                }
            };
        }
        match model {
            Some(model) if diags.is_empty() => Ok(Self {
                name: raw.name,
                model,
                commands,
                options,
                output_dir: raw.output.dir,
            }),
            _ => Err(diags),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, Vec<Diagnostic>> {
        let text = fs::read_to_string(path).map_err(|e| {
            vec![Diagnostic::new(
                "",
                format!("cannot read {}: {e}", path.display()),
            )]
        })?;
        Self::parse(&text)
    }

    /// Copy with command-line overrides applied.
    pub fn with_overrides(&self, o: &Overrides) -> Result<Self, Vec<Diagnostic>> {
        let mut s = self.clone();
        let mut diags = Vec::new();
        apply_overrides(&mut s.options, &mut s.output_dir, o, &mut diags);
        if diags.is_empty() {
            Ok(s)
        } else {
            Err(diags)
        }
    }
}

/// Schema and invariant findings for a scenario document; empty when valid.
pub fn validate_str(text: &str) -> Vec<Diagnostic> {
    Scenario::parse(text).err().unwrap_or_default()
}

/// [`validate_str`] on a file.
pub fn validate_file(path: &Path) -> std::io::Result<Vec<Diagnostic>> {
    Ok(validate_str(&fs::read_to_string(path)?))
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("invalid scenario:\n{}", join(.0))]
    Schema(Vec<Diagnostic>),
    #[error("{kind} (command {index}) failed: {source}")]
    Numeric {
        index: usize,
        kind: &'static str,
        source: Error,
    },
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

fn join(d: &[Diagnostic]) -> String {
    d.iter()
        .map(|x| format!("  {x}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl RunError {
    /// 2 for schema errors, 3 for numeric failures, 1 for output errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Schema(_) => 2,
            RunError::Numeric { .. } => 3,
            RunError::Io(_) => 1,
        }
    }
}

/// Result of [`run`].
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub out_dir: PathBuf,
    /// Written files in order, manifest last.
    pub files: Vec<PathBuf>,
    pub manifest: Value,
}

fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n)
        .map(|k| {
            if k == n - 1 {
                b
            } else {
                a + (b - a) * k as f64 / (n - 1) as f64
            }
        })
        .collect()
}

fn sorted_eigenvalues(s: &Superoperator) -> crate::Result<Vec<Complex64>> {
    let mut v: Vec<Complex64> = s.eigenvalues()?.iter().copied().collect();
    v.sort_by(|a, b| b.re.total_cmp(&a.re).then(a.im.total_cmp(&b.im)));
    Ok(v)
}

fn complex_pairs(v: &[Complex64]) -> Value {
    Value::from(v.iter().map(|z| vec![z.re, z.im]).collect::<Vec<_>>())
}

struct CsvTable {
    suffix: &'static str,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    fn new(suffix: &'static str, header: &[&str]) -> Self {
        Self {
            suffix,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }
}

type CommandOutput = (Value, Vec<CsvTable>);

struct Runner<'a> {
    scenario: &'a Scenario,
    spec: LindbladSpec,
    form: Option<FloquetForm>,
}

impl Runner<'_> {
    fn period(&self) -> f64 {
        self.spec.period()
    }

    fn step(&self) -> f64 {
        self.scenario.options.step.unwrap_or(self.period() / 2000.0)
    }

    fn default_samples(&self) -> usize {
        self.scenario.options.grid + 1
    }

    fn form(&mut self) -> crate::Result<&FloquetForm> {
        if self.form.is_none() {
            let opts = FloquetOptions {
                mode: self.scenario.options.mode,
                step: self.scenario.options.step,
                ..FloquetOptions::default()
            };
            self.form = Some(floquet_split(&self.spec, &opts)?);
        }
        Ok(self.form.as_ref().expect("just set"))
    }

    fn execute(&mut self, cmd: &Command) -> crate::Result<CommandOutput> {
        match cmd {
            Command::Simulate {
                t_end,
                samples,
                rho0,
            } => self.simulate(*t_end, *samples, rho0.as_deref()),
            Command::Floquet {} => self.floquet(),
            Command::CertifyCp { t_end, samples } => self.certify_cp(*t_end, *samples),
            Command::CertifyDivisibility {
                target,
                method,
                t_end,
            } => self.certify_divisibility(*target, *method, *t_end),
            Command::SpectraTrajectory {
                t_start,
                t_end,
                samples,
            } => self.spectra(*t_start, *t_end, *samples),
            Command::RegionA { extent, samples } => self.region_a(*extent, *samples),
        }
    }

    fn simulate(
        &mut self,
        t_end: Option<f64>,
        samples: Option<usize>,
        rho0: Option<&[Vec<[f64; 2]>]>,
    ) -> crate::Result<CommandOutput> {
        let d = self.spec.dim();
        let t_end = t_end.unwrap_or(2.0 * self.period());
        let rho0 = match rho0 {
            Some(rows) => rho_from_rows(rows),
            None => crate::linalg::matrix_unit(d, 0, 0),
        };
        let traj = integrate_general(&self.spec, t_end, self.step())?;
        let mut header = vec!["t [time]".to_string()];
        for i in 0..d {
            for j in 0..d {
                header.push(format!("rho_{i}_{j}_re [1]"));
                header.push(format!("rho_{i}_{j}_im [1]"));
            }
        }
        header.push("trace [1]".into());
        header.push("min_eig [1]".into());
        let mut table = CsvTable {
            suffix: "",
            header,
            rows: Vec::new(),
        };
        let mut min_eig = f64::INFINITY;
        let mut last_trace = 0.0;
        for t in linspace(0.0, t_end, samples.unwrap_or(self.default_samples())) {
            let rho = traj.at(t)?.apply(&rho0)?;
            let mut row = vec![fmt_f(t)];
            for z in rho.transpose().iter() {
                row.push(fmt_f(z.re));
                row.push(fmt_f(z.im));
            }
            let tr = trace(&rho).re;
            let m = hermitian_eigen(&hermitian_part(&rho)).min_value();
            min_eig = min_eig.min(m);
            last_trace = tr;
            row.push(fmt_f(tr));
            row.push(fmt_f(m));
            table.rows.push(row);
        }
        let results = json!({
            "t_end": t_end,
            "step": self.step(),
            "grid_nodes": traj.times().len(),
            "max_local_error": traj.max_local_error(),
            "final_trace": last_trace,
            "min_eig": min_eig,
        });
        Ok((results, vec![table]))
    }

    fn floquet(&mut self) -> crate::Result<CommandOutput> {
        let spec = self.spec.clone();
        let form = self.form()?;
        let report = form.stability();
        let mut spectrum = CsvTable::new(
            "",
            &[
                "index [-]",
                "multiplier_re [1]",
                "multiplier_im [1]",
                "modulus [1]",
                "exponent_re [1/time]",
                "exponent_im [1/time]",
                "class [-]",
            ],
        );
        for (j, (l, m)) in form.multipliers().iter().zip(form.exponents()).enumerate() {
            spectrum.rows.push(vec![
                j.to_string(),
                fmt_f(l.re),
                fmt_f(l.im),
                fmt_f(l.norm()),
                fmt_f(m.re),
                fmt_f(m.im),
                report.classes[j].as_str().to_string(),
            ]);
        }
        let mut xt = CsvTable::new("-x", &["row [-]", "col [-]", "re [1/time]", "im [1/time]"]);
        let xm = form.x().matrix();
        for i in 0..xm.nrows() {
            for j in 0..xm.ncols() {
                xt.rows.push(vec![
                    i.to_string(),
                    j.to_string(),
                    fmt_f(xm[(i, j)].re),
                    fmt_f(xm[(i, j)].im),
                ]);
            }
        }
        let standard = match extract_standard_form(form.x()) {
            Ok(s) => {
                json!({ "gksl_valid": s.gksl_valid, "min_eig": s.min_eig, "residual": s.residual })
            }
            Err(e) => json!({ "gksl_valid": false, "error": e.to_string() }),
        };
        let semigroup = semigroup_test(form, &spec)?;
        let radius = form
            .multipliers()
            .iter()
            .fold(0.0f64, |a, z| a.max(z.norm()));
        let results = json!({
            "mode": mode_name(form.mode()),
            "diagonalizable": form.diagonalizable(),
            "eigvec_condition": form.eigvec_condition(),
            "multipliers": complex_pairs(form.multipliers()),
            "exponents": complex_pairs(form.exponents()),
            "spectral_radius": radius,
            "multiplier_conjugation_mismatch": conjugation_mismatch(form.multipliers()),
            "x_standard_form": standard,
            "semigroup_test": {
                "psd": semigroup.psd,
                "hermitian": semigroup.hermitian,
                "min_eig": semigroup.min_eig,
            },
            "stability": {
                "e1_even": report.e1_even,
                "e1_odd": report.e1_odd,
                "e2": report.e2,
                "e3": report.e3,
                "unstable": report.unstable,
                "periodic_limit_exists": report.periodic_limit_exists,
                "decay_rate": report.decay_rate,
            },
        });
        Ok((results, vec![spectrum, xt]))
    }

    fn certify_cp(
        &mut self,
        t_end: Option<f64>,
        samples: Option<usize>,
    ) -> crate::Result<CommandOutput> {
        let tol = self.scenario.options.tol;
        let t_end = t_end.unwrap_or(self.period());
        let times = linspace(0.0, t_end, samples.unwrap_or(self.default_samples()));
        let form = self.form()?;
        let mut table = CsvTable::new(
            "",
            &[
                "t [time]",
                "map [-]",
                "cp [-]",
                "min_choi_eig [1]",
                "tp_residual [1]",
                "star_residual [1]",
            ],
        );
        let mut summary = serde_json::Map::new();
        for map in ["lambda", "periodic", "exp-x"] {
            let (mut all, mut min, mut arg, mut failures) = (true, f64::INFINITY, 0.0, 0usize);
            for &t in &times {
                let s = match map {
                    "lambda" => form.propagator(t)?,
                    "periodic" => form.periodic_part(t)?,
                    _ => form.exp_tx(t)?,
                };
                let r = cptp_report_with(&s, tol);
                table.rows.push(vec![
                    fmt_f(t),
                    map.to_string(),
                    r.cp.to_string(),
                    fmt_f(r.min_choi_eig),
                    fmt_f(r.tp_residual),
                    fmt_f(r.star_residual),
                ]);
                all &= r.cp;
                failures += usize::from(!r.cp);
                if r.min_choi_eig < min {
                    min = r.min_choi_eig;
                    arg = t;
                }
            }
            summary.insert(
                map.into(),
                json!({ "all_cp": all, "failures": failures, "min_choi_eig": min, "argmin_t": arg }),
            );
        }
        let results =
            json!({ "t_end": t_end, "samples": times.len(), "tol": tol, "maps": summary });
        Ok((results, vec![table]))
    }

    fn certify_divisibility(
        &mut self,
        target: DivisibilityTarget,
        method: DivisibilityMethod,
        t_end: Option<f64>,
    ) -> crate::Result<CommandOutput> {
        let tol = self.scenario.options.tol;
        let period = self.period();
        let t_end = t_end.unwrap_or(period);
        let n = (self.scenario.options.grid as f64 * t_end / period).ceil() as usize + 1;
        let bps = self.spec.breakpoints_in(0.0, t_end);
        let grid = scan_grid(0.0, t_end, n, &bps);
        let report: DivisibilityReport = match method {
            DivisibilityMethod::Kossakowski => {
                if target != DivisibilityTarget::Periodic {
                    return Err(Error::InvalidArgument(
                        "the kossakowski method certifies the periodic factor only".into(),
                    ));
                }
                kossakowski_divisibility(&self.spec, &grid, tol)?
            }
            DivisibilityMethod::Scan => {
                let form = self.form()?;
                match target {
                    DivisibilityTarget::Periodic => {
                        divisibility_scan(&|t| form.periodic_part(t), &grid, &bps, tol)?
                    }
                    DivisibilityTarget::Lambda => {
                        divisibility_scan(&|t| form.propagator(t), &grid, &bps, tol)?
                    }
                }
            }
        };
        let mut local = CsvTable::new("", &["t [time]", "local_min_eig [1/time]", "status [-]"]);
        if method == DivisibilityMethod::Kossakowski {
            local.header.push("cp_sufficiency_min_eig [1]".into());
        }
        for (k, m) in report.local.iter().enumerate() {
            let status = if m.min_eig < -tol {
                "violation"
            } else if m.min_eig.abs() < tol {
                "marginal"
            } else {
                "ok"
            };
            let mut row = vec![fmt_f(m.t), fmt_f(m.min_eig), status.to_string()];
            if let Some(&(_, cp)) = report.cp_sufficiency.get(k) {
                row.push(fmt_f(cp));
            }
            local.rows.push(row);
        }
        let mut pairs = CsvTable::new("-pairs", &["t [time]", "s [time]", "min_choi_eig [1]"]);
        for &(t, s, m) in &report.violations {
            pairs.rows.push(vec![fmt_f(t), fmt_f(s), fmt_f(m)]);
        }
        let worst = report
            .violations
            .iter()
            .map(|v| v.2)
            .fold(f64::INFINITY, f64::min);
        let results = json!({
            "target": match target { DivisibilityTarget::Periodic => "periodic", DivisibilityTarget::Lambda => "lambda" },
            "method": match method { DivisibilityMethod::Scan => "scan", DivisibilityMethod::Kossakowski => "kossakowski" },
            "interval": [report.interval.0, report.interval.1],
            "grid_points": report.grid.len(),
            "grid_per_period": self.scenario.options.grid,
            "boundary_tol": tol,
            "markovian": report.markovian,
            "violations": report.violations.len(),
            "worst_violation": if worst.is_finite() { Value::from(worst) } else { Value::Null },
            "kossakowski_violations": report.kossakowski_violations.len(),
            "marginal_points": report.marginal_points,
            "nonmarkovian_windows": report.nonmarkovian_windows.iter().map(|w| vec![w.0, w.1]).collect::<Vec<_>>(),
        });
        let mut tables = vec![local];
        if method == DivisibilityMethod::Scan {
            tables.push(pairs);
        }
        Ok((results, tables))
    }

    fn spectra(
        &mut self,
        t_start: Option<f64>,
        t_end: Option<f64>,
        samples: Option<usize>,
    ) -> crate::Result<CommandOutput> {
        let a = t_start.unwrap_or(0.0);
        let b = t_end.unwrap_or(self.period());
        let times = linspace(a, b, samples.unwrap_or(self.default_samples()));
        let form = self.form()?;
        let mut table = CsvTable::new(
            "",
            &["t [time]", "map [-]", "index [-]", "re [1]", "im [1]"],
        );
        let mut summary = serde_json::Map::new();
        for map in ["lambda", "periodic", "exp-x"] {
            let (mut worst, mut last) = (0.0f64, 0.0);
            for &t in &times {
                let s = match map {
                    "lambda" => form.propagator(t)?,
                    "periodic" => form.periodic_part(t)?,
                    _ => form.exp_tx(t)?,
                };
                let ev = sorted_eigenvalues(&s)?;
                for (k, z) in ev.iter().enumerate() {
                    table.rows.push(vec![
                        fmt_f(t),
                        map.to_string(),
                        k.to_string(),
                        fmt_f(z.re),
                        fmt_f(z.im),
                    ]);
                }
                last = conjugation_mismatch(&ev);
                worst = worst.max(last);
            }
            summary.insert(
                map.into(),
                json!({ "max_conjugation_mismatch": worst, "final_conjugation_mismatch": last }),
            );
        }
        let results = json!({ "t_start": a, "t_end": b, "samples": times.len(), "maps": summary });
        Ok((results, vec![table]))
    }

    fn region_a(
        &mut self,
        extent: Option<f64>,
        samples: Option<usize>,
    ) -> crate::Result<CommandOutput> {
        let extent = extent.unwrap_or(3.0);
        let n = samples.unwrap_or(61);
        let mut surface = CsvTable::new("", &["x [1]", "y [1]", "z [1]"]);
        let axis = linspace(0.0, extent, n);
        for &x in &axis {
            for &y in &axis {
                surface
                    .rows
                    .push(vec![fmt_f(x), fmt_f(y), fmt_f(boundary_surface_f1(x, y))]);
            }
        }
        let mut results =
            json!({ "extent": extent, "samples_per_axis": n, "surface_points": n * n });
        let mut tables = vec![surface];
        if let ModelChoice::RandomQubit(m) = &self.scenario.model {
            let mut path = CsvTable::new(
                "-path",
                &[
                    "t [time]",
                    "theta1 [1]",
                    "theta2 [1]",
                    "theta3 [1]",
                    "member [-]",
                    "subregion [-]",
                    "alpha_member [-]",
                ],
            );
            let (mut all, mut agree) = (true, true);
            for t in linspace(0.0, m.period, self.default_samples()) {
                let th = m.thetas(t);
                let (member, sub) = region_a_membership(th);
                let alpha = alpha_inequalities_hold(th.map(|x| (-x).exp()));
                all &= member;
                agree &= alpha == member;
                path.rows.push(vec![
                    fmt_f(t),
                    fmt_f(th[0]),
                    fmt_f(th[1]),
                    fmt_f(th[2]),
                    member.to_string(),
                    sub.as_str().to_string(),
                    alpha.to_string(),
                ]);
            }
            results["path"] = json!({ "all_member": all, "routes_agree": agree });
            tables.push(path);
        }
        Ok((results, tables))
    }
}

fn write_csv(path: &Path, table: &CsvTable) -> std::io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()
}

/// Runs every command of a scenario in order and writes its outputs.
pub fn run(scenario: &Scenario, overrides: &Overrides) -> Result<RunSummary, RunError> {
    let sc = scenario
        .with_overrides(overrides)
        .map_err(RunError::Schema)?;
    let out_dir = sc
        .output_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    let spec = sc.model.spec().map_err(|source| RunError::Numeric {
        index: 0,
        kind: "model",
        source,
    })?;
    fs::create_dir_all(&out_dir)?;
    let model = sc.model.describe(&spec);
    let mut runner = Runner {
        scenario: &sc,
        spec,
        form: None,
    };
    let mut files = Vec::new();
    let mut entries = Vec::new();
    for (i, cmd) in sc.commands.iter().enumerate() {
        let (results, tables) = runner.execute(cmd).map_err(|source| RunError::Numeric {
            index: i,
            kind: cmd.kind(),
            source,
        })?;
        let mut names = Vec::new();
        for t in &tables {
            let name = format!("{:02}-{}{}.csv", i + 1, cmd.kind(), t.suffix);
            let path = out_dir.join(&name);
            write_csv(&path, t)?;
            files.push(path);
            names.push(name);
        }
        entries.push(json!({ "index": i, "kind": cmd.kind(), "files": names, "results": results }));
    }
    let manifest = json!({
        "scenario": sc.name,
        "version": env!("CARGO_PKG_VERSION"),
        "model": model,
        "options": {
            "step": runner.step(),
            "grid": sc.options.grid,
            "tol": sc.options.tol,
            "mode": mode_name(sc.options.mode),
        },
        "commands": entries,
    });
    let path = out_dir.join("manifest.json");
    let mut text = serde_json::to_string_pretty(&manifest).map_err(std::io::Error::other)?;
    text.push('\n');
    fs::write(&path, text)?;
    files.push(path);
    Ok(RunSummary {
        out_dir,
        files,
        manifest,
    })
}

/// Reads, validates and runs a scenario file.
pub fn run_file(path: &Path, overrides: &Overrides) -> Result<RunSummary, RunError> {
    let sc = Scenario::from_file(path).map_err(RunError::Schema)?;
    run(&sc, overrides)
}

/// One-line descriptions of the builtin models.
pub fn builtin_descriptions() -> Vec<(&'static str, String)> {
    let tls = DrivenTlsModel::default_model();
    vec![
        (
            "random-qubit",
            format!(
                "qubit Pauli-channel dynamics, rates 1 + cos(2 pi t/T + 2 pi j/3), T = {:.6}",
                RandomQubitModel::default_model().period
            ),
        ),
        (
            "driven-tls",
            format!(
                "driven two-level system, omega = 1 + cos(2 pi t/T), gamma_up = {}, gamma_down = {}, T = {:.6}",
                tls.gamma_up, tls.gamma_down, tls.period
            ),
        ),
        ("m3-counterexample", format!("qutrit generator with non-commuting values, T = {:.6}", 2.0 * PI)),
    ]
}
