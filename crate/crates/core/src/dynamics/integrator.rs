//! Dormand–Prince 5(4) with step rejection at the walls of the configuration space.

use super::{hamilton_vector_field, Hamiltonian};
use crate::model::StepStats;
use crate::{Error, PhaseState, Result, Trajectory};

pub const MIN_TOL: f64 = 1e-12;
pub const MAX_TOL: f64 = 1e-4;
/// Steps below this size signal a near-collision beyond resolution.
pub const MIN_STEP: f64 = 1e-14;

// The flow is autonomous, so the stage nodes c_i are not needed.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights (identical to the last row of `A`, so the last stage is FSAL).
const B: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
/// Embedded fourth-order weights.
const BHAT: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

fn rhs(y: &[f64], n: usize, ham: &Hamiltonian) -> Result<Vec<f64>> {
    let state = PhaseState::new(y[..n].to_vec(), y[n..].to_vec());
    let (dx, dp) = hamilton_vector_field(&state, ham)?;
    Ok(dx.into_iter().chain(dp).collect())
}

fn to_state(y: &[f64], n: usize) -> PhaseState {
    PhaseState::new(y[..n].to_vec(), y[n..].to_vec())
}

struct Attempt {
    y: Vec<f64>,
    k_last: Vec<f64>,
    err: f64,
}

fn attempt(y: &[f64], k1: &[f64], h: f64, tol: f64, n: usize, ham: &Hamiltonian) -> Result<Attempt> {
    let dim = y.len();
    let mut ks: Vec<Vec<f64>> = Vec::with_capacity(7);
    ks.push(k1.to_vec());
    for s in 1..7 {
        let mut ys = y.to_vec();
        for (l, k) in ks.iter().enumerate() {
            let a = A[s][l];
            if a != 0.0 {
                for d in 0..dim {
                    ys[d] += h * a * k[d];
                }
            }
        }
        // Intermediate stages may land outside the cone; that rejects the step.
        to_state(&ys, n).validate(ham.spec())?;
        ks.push(rhs(&ys, n, ham)?);
    }
    let mut y_new = y.to_vec();
    let mut err = 0.0f64;
    for d in 0..dim {
        let mut hi = 0.0;
        let mut lo = 0.0;
        for s in 0..7 {
            hi += B[s] * ks[s][d];
            lo += BHAT[s] * ks[s][d];
        }
        y_new[d] += h * hi;
        let scale = tol * (1.0 + y[d].abs().max(y_new[d].abs()));
        err = err.max((h * (hi - lo)).abs() / scale);
    }
    Ok(Attempt { y: y_new, k_last: ks.pop().unwrap_or_default(), err })
}

/// Adaptive trajectory on `[0, t_end]` with local error ≤ `tol` (mixed absolute/relative).
///
/// Steps whose stages or end point leave the configuration space are rejected and retried
/// with a smaller step.
pub fn integrate(state0: &PhaseState, ham: &Hamiltonian, t_end: f64, tol: f64) -> Result<Trajectory> {
    if !(MIN_TOL..=MAX_TOL).contains(&tol) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} outside [1e-12, 1e-4]")));
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidArgument(format!("final time {t_end} must be finite and nonnegative")));
    }
    let spec = ham.spec();
    spec.validate()?;
    state0.validate(spec)?;
    let n = state0.n();

    let mut y: Vec<f64> = state0.x.iter().chain(&state0.p).copied().collect();
    let mut k1 = rhs(&y, n, ham)?;
    let mut t = 0.0;
    let mut traj = Trajectory {
        times: vec![0.0],
        states: vec![state0.clone()],
        stats: vec![StepStats { error_estimate: 0.0, min_gap: state0.min_gap(spec) }],
    };

    let fnorm = k1.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let mut h = (0.1 * tol.powf(0.2) / fnorm.max(1e-3)).min(t_end).max(MIN_STEP * 10.0);
    while t < t_end {
        if t + h > t_end {
            h = t_end - t;
        }
        match attempt(&y, &k1, h, tol, n, ham) {
            Ok(step) if step.err <= 1.0 && to_state(&step.y, n).validate(spec).is_ok() => {
                t = if t + h >= t_end { t_end } else { t + h };
                y = step.y;
                k1 = step.k_last;
                let state = to_state(&y, n);
                traj.stats.push(StepStats { error_estimate: step.err, min_gap: state.min_gap(spec) });
                traj.times.push(t);
                traj.states.push(state);
                let factor = if step.err == 0.0 { 5.0 } else { (0.9 * step.err.powf(-0.2)).clamp(0.2, 5.0) };
                h *= factor;
            }
            Ok(step) if step.err > 1.0 => {
                h *= (0.9 * step.err.powf(-0.2)).clamp(0.1, 0.9);
            }
            // Wall crossing or a singular stage evaluation.
            _ => h *= 0.25,
        }
        if h < MIN_STEP && t < t_end {
            return Err(Error::StepCollapse { t, h });
        }
    }
    Ok(traj)
}
