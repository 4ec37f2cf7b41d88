//! Explicit action-angle map of the rational system and its self-duality.

use crate::lax::{rational_lax_pair, SPECTRAL_GAP};
use crate::linalg::{frobenius, hermitian_eigen, min_spacing, CMatrix};
use crate::{Error, PhaseState, Result, C64};

/// Smallest admissible modulus of a raw component sum `(Ue)_j`.
pub const COMPONENT_GUARD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct ActionAngleData {
    pub x_tilde: Vec<f64>,
    /// Eigenvalues of `L`, strictly decreasing.
    pub p_tilde: Vec<f64>,
    /// Diagonalizer with `U L U* = diag(p̃)` and `Ue = e`.
    pub u: CMatrix,
    /// `U diag(x) U*`.
    pub a_tilde: CMatrix,
}

impl ActionAngleData {
    /// The dual phase point: positions `p̃`, momenta `x̃`.
    pub fn dual_state(&self) -> PhaseState {
        PhaseState::new(self.p_tilde.clone(), self.x_tilde.clone())
    }
}

pub fn action_angle_map(state: &PhaseState, g: f64) -> Result<ActionAngleData> {
    if g == 0.0 {
        return Err(Error::InvalidArgument("the action-angle map needs g ≠ 0".into()));
    }
    let n = state.n();
    let (l, _) = rational_lax_pair(state, g, 1.0)?;
    let (p_tilde, v) = hermitian_eigen(&l.entries);
    let gap = min_spacing(&p_tilde);
    if gap < SPECTRAL_GAP {
        return Err(Error::DegenerateSpectrum { gap });
    }
    let mut u = v.adjoint();
    for j in 0..n {
        let s: C64 = u.row(j).iter().sum();
        if s.norm() < COMPONENT_GUARD {
            return Err(Error::ZeroComponent { index: j, value: s.norm() });
        }
        // |s| = 1 in exact arithmetic, so a phase alone fixes (Ue)_j = 1 and keeps U unitary.
        let phase = s.conj() / s.norm();
        for c in 0..n {
            u[(j, c)] *= phase;
        }
    }
    let a = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        state.x.iter().map(|&x| C64::new(x, 0.0)),
    ));
    let a_tilde = &u * a * u.adjoint();
    let x_tilde = (0..n).map(|i| a_tilde[(i, i)].re).collect();
    Ok(ActionAngleData { x_tilde, p_tilde, u, a_tilde })
}

/// `‖Ã − L(−g; p̃, x̃)‖_F`.
pub fn self_duality_residual(state: &PhaseState, g: f64) -> Result<f64> {
    let data = action_angle_map(state, g)?;
    let (dual, _) = rational_lax_pair(&data.dual_state(), -g, 1.0)?;
    Ok(frobenius(&(&data.a_tilde - dual.entries)))
}
