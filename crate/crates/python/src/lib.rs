// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

//! Python module `floquet_lindblad`.
//!
//! Matrices cross the boundary as nested lists of Python complex numbers.
//! Superoperators are matrices in Frobenius-basis coordinates.

use std::path::PathBuf;

use floquet_core::certify;
use floquet_core::floquet::{self, FloquetMode, FloquetOptions};
use floquet_core::lindblad::{self, LindbladSpec};
use floquet_core::models::{m3_counterexample, DrivenTlsModel, RandomQubitModel};
use floquet_core::scenario::{self, Overrides, Scenario};
use floquet_core::solver;
use floquet_core::{ComplexMatrix, FrobeniusBasis, Superoperator};
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

type Rows = Vec<Vec<Complex64>>;

fn err(e: floquet_core::Error) -> PyErr {
    match e {
        floquet_core::Error::InvalidArgument(_)
        | floquet_core::Error::InvalidModel(_)
        | floquet_core::Error::InvalidDimension(_)
        | floquet_core::Error::DimensionMismatch { .. }
        | floquet_core::Error::NotSquare { .. }
        | floquet_core::Error::NotDensityMatrix(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_rows(m: &ComplexMatrix) -> Rows {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn from_rows(rows: &Rows) -> PyResult<ComplexMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != m) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    Ok(ComplexMatrix::from_fn(n, m, |i, j| rows[i][j]))
}

fn superop(rows: &Rows) -> PyResult<Superoperator> {
    let m = from_rows(rows)?;
    let d = (m.nrows() as f64).sqrt().round() as usize;
    if d * d != m.nrows() {
        return Err(PyValueError::new_err(
            "superoperator size must be a perfect square",
        ));
    }
    Superoperator::new(m, FrobeniusBasis::shared(d).map_err(err)?).map_err(err)
}

/// Periodic Lindblad generator.
#[pyclass(name = "Spec", frozen)]
struct PySpec(LindbladSpec);

#[pymethods]
impl PySpec {
    /// Builtin model by name with its default parameters.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        let spec = match name {
            "random-qubit" => RandomQubitModel::default_model().spec(),
            "driven-tls" => DrivenTlsModel::default_model().spec(),
            "m3-counterexample" => Ok(m3_counterexample()),
            other => return Err(PyValueError::new_err(format!("unknown model {other:?}"))),
        };
        spec.map(Self).map_err(err)
    }

    /// Constant generator from `H` and a Kossakowski matrix over the Frobenius basis.
    #[staticmethod]
    fn constant(hamiltonian: Rows, kossakowski: Rows, period: f64) -> PyResult<Self> {
        let h = from_rows(&hamiltonian)?;
        let a = from_rows(&kossakowski)?;
        let d = h.nrows();
        LindbladSpec::new(
            d,
            period,
            std::sync::Arc::new(move |_| h.clone()),
            std::sync::Arc::new(move |_| a.clone()),
            vec![],
        )
        .map(Self)
        .map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn period(&self) -> f64 {
        self.0.period()
    }

    #[getter]
    fn breakpoints(&self) -> Vec<f64> {
        self.0.breakpoints().to_vec()
    }

    fn generator(&self, t: f64) -> PyResult<Rows> {
        Ok(to_rows(
            lindblad::generator_at(&self.0, t).map_err(err)?.matrix(),
        ))
    }

    fn hamiltonian(&self, t: f64) -> Rows {
        to_rows(&self.0.hamiltonian_at(t))
    }

    fn kossakowski(&self, t: f64) -> Rows {
        to_rows(&self.0.kossakowski_at(t))
    }

    /// Time-ordered propagator at `t`.
    #[pyo3(signature = (t, step=None))]
    fn propagate(&self, t: f64, step: Option<f64>) -> PyResult<Rows> {
        let step = step.unwrap_or(self.0.period() / 2000.0);
        let traj = solver::integrate_general(&self.0, t, step).map_err(err)?;
        Ok(to_rows(traj.at(t).map_err(err)?.matrix()))
    }

    /// Propagator from the antiderivatives; valid for commuting generators.
    fn propagate_commutative(&self, t: f64) -> PyResult<Rows> {
        Ok(to_rows(
            solver::solve_commutative(&self.0, t).map_err(err)?.matrix(),
        ))
    }

    fn is_commutative(&self) -> PyResult<bool> {
        Ok(lindblad::commutativity_check(&self.0, 16).map_err(err)?.0)
    }

    fn __repr__(&self) -> String {
        format!("Spec(dim={}, period={})", self.0.dim(), self.0.period())
    }
}

/// Floquet normal form `Λ_t = P_t e^{tX}`.
#[pyclass(name = "Floquet", frozen)]
struct PyFloquet {
    form: floquet::FloquetForm,
    spec: LindbladSpec,
}

#[pymethods]
impl PyFloquet {
    #[new]
    #[pyo3(signature = (spec, mode="auto", step=None))]
    fn new(spec: &PySpec, mode: &str, step: Option<f64>) -> PyResult<Self> {
        let mode = match mode {
            "auto" => FloquetMode::Auto,
            "commutative" => FloquetMode::Commutative,
            "general-log" => FloquetMode::GeneralLog,
            other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
        };
        let opts = FloquetOptions {
            mode,
            step,
            ..FloquetOptions::default()
        };
        let form = floquet::floquet_split(&spec.0, &opts).map_err(err)?;
        Ok(Self {
            form,
            spec: spec.0.clone(),
        })
    }

    #[getter]
    fn mode(&self) -> &'static str {
        match self.form.mode() {
            FloquetMode::Commutative => "commutative",
            _ => "general-log",
        }
    }

    fn x(&self) -> Rows {
        to_rows(self.form.x().matrix())
    }

    fn monodromy(&self) -> Rows {
        to_rows(self.form.monodromy().matrix())
    }

    fn multipliers(&self) -> Vec<Complex64> {
        self.form.multipliers().to_vec()
    }

    fn exponents(&self) -> Vec<Complex64> {
        self.form.exponents().to_vec()
    }

    fn eigvecs(&self) -> Vec<Rows> {
        self.form.eigvecs().iter().map(to_rows).collect()
    }

    fn propagator(&self, t: f64) -> PyResult<Rows> {
        Ok(to_rows(self.form.propagator(t).map_err(err)?.matrix()))
    }

    fn periodic_part(&self, t: f64) -> PyResult<Rows> {
        Ok(to_rows(self.form.periodic_part(t).map_err(err)?.matrix()))
    }

    fn exp_tx(&self, t: f64) -> PyResult<Rows> {
        Ok(to_rows(self.form.exp_tx(t).map_err(err)?.matrix()))
    }

    fn stability<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = self.form.stability();
        let d = PyDict::new(py);
        d.set_item(
            "classes",
            r.classes.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
        )?;
        d.set_item("e1_even", r.e1_even)?;
        d.set_item("e1_odd", r.e1_odd)?;
        d.set_item("e2", r.e2)?;
        d.set_item("e3", r.e3)?;
        d.set_item("unstable", r.unstable)?;
        d.set_item("periodic_limit_exists", r.periodic_limit_exists)?;
        d.set_item("decay_rate", r.decay_rate)?;
        Ok(d)
    }

    /// Asymptotic state `ρ∞_t` reached from `rho0`.
    fn asymptotic_state(&self, rho0: Rows, t: f64) -> PyResult<Rows> {
        let a = floquet::asymptotic_state(&self.form, &from_rows(&rho0)?).map_err(err)?;
        Ok(to_rows(&a.at(t).map_err(err)?))
    }

    /// `(psd, min_eig)` of the semigroup test at `t = 0`.
    fn semigroup_test(&self) -> PyResult<(bool, f64)> {
        let r = certify::semigroup_test(&self.form, &self.spec).map_err(err)?;
        Ok((r.psd, r.min_eig))
    }
}

/// Complete-positivity report of a superoperator.
#[pyfunction]
#[pyo3(signature = (superoperator, tol=1e-9))]
fn cptp_report<'py>(
    py: Python<'py>,
    superoperator: Rows,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = certify::cptp_report_with(&superop(&superoperator)?, tol);
    let d = PyDict::new(py);
    d.set_item("cp", r.cp)?;
    d.set_item("min_choi_eig", r.min_choi_eig)?;
    d.set_item("tp_residual", r.tp_residual)?;
    d.set_item("star_residual", r.star_residual)?;
    d.set_item(
        "witness",
        r.witness.map(|w| w.iter().copied().collect::<Vec<_>>()),
    )?;
    Ok(d)
}

#[pyfunction]
fn choi_matrix(superoperator: Rows) -> PyResult<Rows> {
    Ok(to_rows(&floquet_core::linalg::choi_matrix(&superop(
        &superoperator,
    )?)))
}

/// Eigenvalues of a superoperator.
#[pyfunction]
fn spectrum(superoperator: Rows) -> PyResult<Vec<Complex64>> {
    Ok(superop(&superoperator)?
        .eigenvalues()
        .map_err(err)?
        .iter()
        .copied()
        .collect())
}

#[pyfunction]
fn frobenius_basis(d: usize) -> PyResult<Vec<Rows>> {
    let b = FrobeniusBasis::new(d).map_err(err)?;
    Ok(b.elements().iter().map(to_rows).collect())
}

#[pyfunction]
fn matrix_exp(m: Rows) -> PyResult<Rows> {
    Ok(to_rows(
        &floquet_core::linalg::matrix_exp(&from_rows(&m)?).map_err(err)?,
    ))
}

#[pyfunction]
fn matrix_log(m: Rows) -> PyResult<Rows> {
    Ok(to_rows(
        &floquet_core::linalg::matrix_log(&from_rows(&m)?).map_err(err)?,
    ))
}

/// `(member, subregion)` for the qubit Pauli-channel periodic part.
#[pyfunction]
fn region_a_membership(theta: [f64; 3]) -> (bool, &'static str) {
    let (m, s) = certify::region_a_membership(theta);
    (m, s.as_str())
}

/// Validation findings for a scenario file; empty when valid.
#[pyfunction]
fn validate_scenario(path: PathBuf) -> PyResult<Vec<String>> {
    let d = scenario::validate_file(&path).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(d.iter().map(ToString::to_string).collect())
}

/// Runs a scenario file; returns the manifest as JSON text.
#[pyfunction]
#[pyo3(signature = (path, out=None))]
fn run_scenario(path: PathBuf, out: Option<PathBuf>) -> PyResult<String> {
    let sc = Scenario::from_file(&path).map_err(|d| {
        PyValueError::new_err(
            d.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\n"),
        )
    })?;
    let summary = scenario::run(
        &sc,
        &Overrides {
            out,
            ..Overrides::default()
        },
    )
    .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(summary.manifest.to_string())
}

#[pymodule]
fn floquet_lindblad(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpec>()?;
    m.add_class::<PyFloquet>()?;
    m.add_function(wrap_pyfunction!(cptp_report, m)?)?;
    m.add_function(wrap_pyfunction!(choi_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_basis, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_exp, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_log, m)?)?;
    m.add_function(wrap_pyfunction!(region_a_membership, m)?)?;
    m.add_function(wrap_pyfunction!(validate_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    Ok(())
}
