//! Classical and quantum Calogero–Moser–Sutherland (CMS) and Ruijsenaars–Schneider (RS)
//! many-body systems.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: model parameters, phase-space types, pair potentials and the special
//!   functions they need (Weierstrass ℘, complex Gamma).
//! - [`dynamics`]: Hamiltonians, Hamilton's equations, adaptive integration and
//!   finite-difference Poisson brackets.
//! - [`lax`]: the rational Lax pair, power traces, the projection method and scattering data.
//! - [`relativistic`]: RS interaction profiles, the integrals `S_{±r}`, the RS Lax matrix and
//!   the Poincaré algebra.
//! - [`actionangle`]: the rational action-angle map and its self-duality.
//! - [`polyring`]: exact sparse multivariate polynomials over Gaussian rationals.
//! - [`quantum`]: Dunkl operators, Jack polynomials, Baker–Akhiezer functions and S-matrices.
//! - [`adop`]: analytic difference operators of the quantum RS systems.

pub mod actionangle;
pub mod adop;
pub mod dynamics;
mod error;
pub mod lax;
pub mod linalg;
pub mod model;
pub mod polyring;
pub mod quantum;
pub mod relativistic;

pub use error::{Error, Result};
pub use model::{ModelSpec, PhaseState, PotentialKind, Trajectory};

/// Guard distance used by every singular evaluation (poles of potentials, lattice points,
/// collisions).
pub const POLE_GUARD: f64 = 1e-12;

pub type C64 = num_complex::Complex64;
