// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

//! Floquet analysis of time-periodic Lindblad master equations.
//!
//! The crate solves `dΛ/dt = L_t Λ` for a periodic generator in first
//! standard form, splits the fundamental solution into its Floquet normal
//! form `Λ_t = P_t e^{tX}`, and certifies complete positivity and
//! CP-divisibility of each factor.
//!
//! Layout:
//! - [`linalg`]: Frobenius bases, superoperators, Choi matrices, `exp`/`log`.
//! - [`lindblad`]: periodic generator descriptions and standard forms.
//! - [`solver`]: time-ordered and commutative propagators.
//! - [`floquet`]: normal form, characteristic multipliers, asymptotics.
//! - [`certify`]: CP / CP-divisibility certification.
//! - [`models`]: built-in qubit and qutrit examples with closed forms.
//! - [`scenario`]: batch scenario files driving the CLI.

pub mod certify;
pub mod error;
pub mod floquet;
pub mod linalg;
pub mod lindblad;
pub mod models;
pub mod quad;
pub mod scenario;
pub mod solver;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, FrobeniusBasis, Superoperator};
