//! Nonrelativistic Lax matrices, power-trace integrals, the projection method and
//! classical scattering data.

use serde::Serialize;

use crate::dynamics::{hamilton_vector_field, Hamiltonian, Observable};
use crate::linalg::{frobenius, hermitian_eigenvalues, min_spacing, CMatrix};
use crate::relativistic::{rs_lax_at, RsProfile};
use crate::{Error, ModelSpec, PhaseState, PotentialKind, Result, C64, POLE_GUARD};

/// Base step in β for the derivative of the RS Lax matrix.
pub const RS_LIMIT_STEP: f64 = 1e-4;
/// Smallest admissible gap between eigenvalues of `L` before the spectrum counts as degenerate.
pub const SPECTRAL_GAP: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LaxOrigin {
    RationalClosedForm,
    RsBetaDerivative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LaxMatrix {
    pub entries: CMatrix,
    pub origin: LaxOrigin,
}

impl LaxMatrix {
    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    /// Eigenvalues, sorted decreasing.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.entries)
    }
}

fn check_gaps(x: &[f64]) -> Result<()> {
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let gap = (x[i] - x[j]).abs();
            if gap < POLE_GUARD {
                return Err(Error::Collision { i, j, gap });
            }
        }
    }
    Ok(())
}

/// The rational Lax pair `(L, M)`.
pub fn rational_lax_pair(state: &PhaseState, g: f64, m: f64) -> Result<(LaxMatrix, CMatrix)> {
    let n = state.n();
    check_gaps(&state.x)?;
    let i = C64::i();
    let x = &state.x;
    let l = CMatrix::from_fn(n, n, |r, c| {
        if r == c {
            C64::new(state.p[r], 0.0)
        } else {
            i * g / (x[r] - x[c])
        }
    });
    let mut mm = CMatrix::from_fn(n, n, |r, c| {
        if r == c {
            C64::new(0.0, 0.0)
        } else {
            i * g / (m * (x[r] - x[c]).powi(2))
        }
    });
    for r in 0..n {
        let off: C64 = (0..n).filter(|&c| c != r).map(|c| mm[(r, c)]).sum();
        mm[(r, r)] = -off;
    }
    Ok((LaxMatrix { entries: l, origin: LaxOrigin::RationalClosedForm }, mm))
}

/// `‖dL/dt − (ML − LM)‖_F` with `dL/dt` taken from Hamilton's equations.
pub fn lax_equation_residual(state: &PhaseState, spec: &ModelSpec) -> Result<f64> {
    if spec.kind != PotentialKind::Rational {
        return Err(Error::Unsupported("the closed-form Lax pair is rational".into()));
    }
    spec.validate()?;
    let (l, m) = rational_lax_pair(state, spec.g, spec.m)?;
    let (dx, dp) = hamilton_vector_field(state, &Hamiltonian::NonRelativistic(spec.clone()))?;
    let n = state.n();
    let i = C64::i();
    let dl = CMatrix::from_fn(n, n, |r, c| {
        if r == c {
            C64::new(dp[r], 0.0)
        } else {
            -i * spec.g * (dx[r] - dx[c]) / (state.x[r] - state.x[c]).powi(2)
        }
    });
    let rhs = &m * &l.entries - &l.entries * &m;
    Ok(frobenius(&(dl - rhs)))
}

/// `H_r = tr(L^r)/r` for `r = 1..=upto`.
pub fn power_traces(l: &LaxMatrix, upto: usize) -> Result<Vec<f64>> {
    let n = l.n();
    if upto > n {
        return Err(Error::InvalidArgument(format!("power traces up to {upto} > N = {n}")));
    }
    let norm = frobenius(&l.entries).max(1.0);
    let mut power = CMatrix::identity(n, n);
    let mut out = Vec::with_capacity(upto);
    for r in 1..=upto {
        power = &power * &l.entries;
        let tr = power.trace() / r as f64;
        if !tr.re.is_finite() {
            return Err(Error::Overflow(tr.re));
        }
        if tr.im.abs() > 1e-12 * norm.powi(r as i32) {
            return Err(Error::InvalidState(format!("tr(L^{r}) has imaginary part {:e}", tr.im)));
        }
        out.push(tr.re);
    }
    Ok(out)
}

/// Nonrelativistic Lax matrix from the β-derivative of the RS Lax matrix at β = 0.
///
/// Uses the Richardson-extrapolated central difference on `±β, ±2β`, so the truncation
/// error is `O(β⁴)` and the rounding error about `1e-12`.
pub fn lax_from_rs_limit(state: &PhaseState, spec: &ModelSpec) -> Result<LaxMatrix> {
    let h = RS_LIMIT_STEP;
    let profile = RsProfile::from_spec(&spec.clone().with_beta(h))?;
    state.validate(spec)?;
    let at = |b: f64| rs_lax_at(state, &profile.at_beta(b));
    let near = at(h)? - at(-h)?;
    let far = at(2.0 * h)? - at(-2.0 * h)?;
    let entries = (near * C64::new(8.0, 0.0) - far) / C64::new(12.0 * h, 0.0);
    Ok(LaxMatrix { entries, origin: LaxOrigin::RsBetaDerivative })
}

/// Lax matrix for kinds I–III: the closed form for kind I, the RS limit otherwise.
pub fn nonrel_lax(state: &PhaseState, spec: &ModelSpec) -> Result<LaxMatrix> {
    match spec.kind {
        PotentialKind::Rational => Ok(rational_lax_pair(state, spec.g, spec.m)?.0),
        PotentialKind::Hyperbolic | PotentialKind::Trigonometric => lax_from_rs_limit(state, spec),
        PotentialKind::Elliptic => Err(Error::Unsupported("kind IV Lax integrals beyond H".into())),
    }
}

/// Observable `H_r = tr(L^r)/r`.
pub fn power_trace_observable(spec: ModelSpec, r: usize) -> Observable {
    Observable::new(format!("H{r}"), move |s| Ok(power_traces(&nonrel_lax(s, &spec)?, r)?[r - 1]))
}

/// Positions at time `t` from the eigenvalues of `X(0) + (t/m)·L(0)`, sorted decreasing.
pub fn projection_positions(state0: &PhaseState, g: f64, m: f64, t: f64) -> Result<Vec<f64>> {
    let (l, _) = rational_lax_pair(state0, g, m)?;
    let n = state0.n();
    let q = CMatrix::from_fn(n, n, |r, c| {
        let x = if r == c { state0.x[r] } else { 0.0 };
        C64::new(x, 0.0) + l.entries[(r, c)] * (t / m)
    });
    Ok(hermitian_eigenvalues(&q))
}

/// Asymptotic momenta: `p_out` sorted decreasing, `p_in` the same set increasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScatteringData {
    pub p_out: Vec<f64>,
    pub p_in: Vec<f64>,
}

pub fn scattering_data(state0: &PhaseState, spec: &ModelSpec) -> Result<ScatteringData> {
    if !matches!(spec.kind, PotentialKind::Rational | PotentialKind::Hyperbolic) {
        return Err(Error::Unsupported("scattering needs unbounded motion (kinds I, II)".into()));
    }
    state0.validate(spec)?;
    let p_out = nonrel_lax(state0, spec)?.eigenvalues();
    let gap = min_spacing(&p_out);
    if gap < SPECTRAL_GAP {
        return Err(Error::DegenerateSpectrum { gap });
    }
    let mut p_in = p_out.clone();
    p_in.reverse();
    Ok(ScatteringData { p_out, p_in })
}
