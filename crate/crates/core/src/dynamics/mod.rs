//! Hamiltonians, Hamilton's equations, adaptive integration and Poisson brackets.

mod integrator;

pub use integrator::{integrate, MAX_TOL, MIN_STEP, MIN_TOL};

use std::fmt;
use std::sync::Arc;

use crate::model::{potential_derivative, potential_value};
use crate::relativistic::RsProfile;
use crate::{Error, ModelSpec, PhaseState, Result};

/// Largest admissible rapidity sum `β·Σ|p_i|` before exponentials are considered overflowing.
pub const EXP_GUARD: f64 = 700.0;

/// `(1/2m)Σp_i² + (g²/m)Σ_{i<j}V(x_i − x_j)`.
pub fn hamiltonian_nonrel(state: &PhaseState, spec: &ModelSpec) -> Result<f64> {
    let kinetic: f64 = state.p.iter().map(|p| p * p).sum::<f64>() / (2.0 * spec.m);
    let mut pot = 0.0;
    let n = state.n();
    for i in 0..n {
        for j in i + 1..n {
            pot += potential_value(spec, state.x[i] - state.x[j])?;
        }
    }
    Ok(kinetic + spec.g * spec.g / spec.m * pot)
}

pub(crate) fn rapidity_guard(state: &PhaseState, beta: f64) -> Result<()> {
    let s = beta * state.p.iter().map(|p| p.abs()).sum::<f64>();
    if s > EXP_GUARD {
        Err(Error::Overflow(s))
    } else {
        Ok(())
    }
}

/// `F_i = Π_{j≠i} f(x_i − x_j)` for every particle.
pub(crate) fn profile_products(state: &PhaseState, profile: &RsProfile) -> Result<Vec<f64>> {
    let n = state.n();
    let mut out = vec![1.0; n];
    for i in 0..n {
        for j in i + 1..n {
            let f = profile.f(state.x[i] - state.x[j])?;
            out[i] *= f;
            out[j] *= f;
        }
    }
    Ok(out)
}

/// Relativistic Hamiltonian `(1/mβ²)Σ cosh(βp_i) Π_{j≠i} f(x_i − x_j)`.
pub fn hamiltonian_rel(state: &PhaseState, profile: &RsProfile) -> Result<f64> {
    let beta = profile.beta();
    rapidity_guard(state, beta)?;
    let prods = profile_products(state, profile)?;
    let sum: f64 = state.p.iter().zip(&prods).map(|(p, f)| (beta * p).cosh() * f).sum();
    Ok(sum / (profile.spec().m * beta * beta))
}

/// Relativistic momentum `(1/β)Σ sinh(βp_i) Π_{j≠i} f(x_i − x_j)`.
pub fn momentum_rel(state: &PhaseState, profile: &RsProfile) -> Result<f64> {
    let beta = profile.beta();
    rapidity_guard(state, beta)?;
    let prods = profile_products(state, profile)?;
    let sum: f64 = state.p.iter().zip(&prods).map(|(p, f)| (beta * p).sinh() * f).sum();
    Ok(sum / beta)
}

/// Boost generator `B = −mΣx_i`.
pub fn boost(state: &PhaseState, m: f64) -> f64 {
    -m * state.x.iter().sum::<f64>()
}

/// Which Hamiltonian generates the flow.
#[derive(Debug, Clone)]
pub enum Hamiltonian {
    NonRelativistic(ModelSpec),
    Relativistic(RsProfile),
}

impl Hamiltonian {
    /// Builds the flow for `spec`; the relativistic branch needs `beta` (and, for kind IV,
    /// use [`Hamiltonian::Relativistic`] with an explicit elliptic profile).
    pub fn new(spec: &ModelSpec, relativistic: bool) -> Result<Self> {
        spec.validate()?;
        if relativistic {
            Ok(Hamiltonian::Relativistic(RsProfile::from_spec(spec)?))
        } else {
            Ok(Hamiltonian::NonRelativistic(spec.clone()))
        }
    }

    pub fn spec(&self) -> &ModelSpec {
        match self {
            Hamiltonian::NonRelativistic(s) => s,
            Hamiltonian::Relativistic(p) => p.spec(),
        }
    }

    pub fn is_relativistic(&self) -> bool {
        matches!(self, Hamiltonian::Relativistic(_))
    }

    pub fn energy(&self, state: &PhaseState) -> Result<f64> {
        match self {
            Hamiltonian::NonRelativistic(s) => hamiltonian_nonrel(state, s),
            Hamiltonian::Relativistic(p) => hamiltonian_rel(state, p),
        }
    }
}

/// `(∂H/∂p, −∂H/∂x)` from closed-form derivatives of `V` (or of `ln f`).
pub fn hamilton_vector_field(state: &PhaseState, ham: &Hamiltonian) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = state.n();
    match ham {
        Hamiltonian::NonRelativistic(spec) => {
            let dx: Vec<f64> = state.p.iter().map(|p| p / spec.m).collect();
            let mut dp = vec![0.0; n];
            let c = spec.g * spec.g / spec.m;
            for i in 0..n {
                for j in i + 1..n {
                    // V' is odd, so the pair force is antisymmetric.
                    let d = c * potential_derivative(spec, state.x[i] - state.x[j])?;
                    dp[i] -= d;
                    dp[j] += d;
                }
            }
            Ok((dx, dp))
        }
        Hamiltonian::Relativistic(profile) => {
            let beta = profile.beta();
            let m = profile.spec().m;
            rapidity_guard(state, beta)?;
            let prods = profile_products(state, profile)?;
            let dx: Vec<f64> =
                state.p.iter().zip(&prods).map(|(p, f)| (beta * p).sinh() * f / (m * beta)).collect();
            let weights: Vec<f64> = state.p.iter().zip(&prods).map(|(p, f)| (beta * p).cosh() * f).collect();
            let mut dp = vec![0.0; n];
            let c = 1.0 / (m * beta * beta);
            for k in 0..n {
                for j in k + 1..n {
                    let psi = profile.log_derivative(state.x[k] - state.x[j])?;
                    let d = c * psi * (weights[k] + weights[j]);
                    dp[k] -= d;
                    dp[j] += d;
                }
            }
            Ok((dx, dp))
        }
    }
}

type ObservableFn = dyn Fn(&PhaseState) -> Result<f64> + Send + Sync;

/// A named real-valued function on phase space.
#[derive(Clone)]
pub struct Observable {
    name: String,
    func: Arc<ObservableFn>,
}

impl fmt::Debug for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Observable").field("name", &self.name).finish()
    }
}

impl Observable {
    pub fn new<F>(name: impl Into<String>, func: F) -> Self
    where
        F: Fn(&PhaseState) -> Result<f64> + Send + Sync + 'static,
    {
        Observable { name: name.into(), func: Arc::new(func) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, state: &PhaseState) -> Result<f64> {
        (self.func)(state)
    }

    pub fn position(i: usize) -> Self {
        Observable::new(format!("x{}", i + 1), move |s| Ok(s.x[i]))
    }

    pub fn momentum(i: usize) -> Self {
        Observable::new(format!("p{}", i + 1), move |s| Ok(s.p[i]))
    }

    pub fn energy(ham: Hamiltonian) -> Self {
        Observable::new("H", move |s| ham.energy(s))
    }

    pub fn relativistic_momentum(profile: RsProfile) -> Self {
        Observable::new("P", move |s| momentum_rel(s, &profile))
    }

    pub fn boost(m: f64) -> Self {
        Observable::new("B", move |s| Ok(boost(s, m)))
    }
}

/// Default central-difference step for [`poisson_bracket`].
pub const BRACKET_STEP: f64 = 1e-5;

/// `{F, G} = Σ_i (∂F/∂x_i ∂G/∂p_i − ∂F/∂p_i ∂G/∂x_i)` by central differences of step `h`.
pub fn poisson_bracket(f: &Observable, g: &Observable, state: &PhaseState, h: f64, spec: &ModelSpec) -> Result<f64> {
    if !(1e-7..=1e-3).contains(&h) {
        return Err(Error::InvalidArgument(format!("bracket step {h} outside [1e-7, 1e-3]")));
    }
    state.validate(spec)?;
    let n = state.n();
    let mut sum = 0.0;
    for i in 0..n {
        let mut plus = state.clone();
        let mut minus = state.clone();
        plus.x[i] += h;
        minus.x[i] -= h;
        if plus.validate(spec).is_err() || minus.validate(spec).is_err() {
            return Err(Error::StencilLeavesCone);
        }
        let fx = (f.eval(&plus)? - f.eval(&minus)?) / (2.0 * h);
        let gx = (g.eval(&plus)? - g.eval(&minus)?) / (2.0 * h);
        let mut plus = state.clone();
        let mut minus = state.clone();
        plus.p[i] += h;
        minus.p[i] -= h;
        let fp = (f.eval(&plus)? - f.eval(&minus)?) / (2.0 * h);
        let gp = (g.eval(&plus)? - g.eval(&minus)?) / (2.0 * h);
        sum += fx * gp - fp * gx;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: usize) -> ModelSpec {
        ModelSpec::rational(n, 1.0, 1.0)
    }

    #[test]
    fn nonrelativistic_energy_examples() {
        let s = PhaseState::at_rest(vec![1.0, -1.0]);
        assert!((hamiltonian_nonrel(&s, &rat(2)).unwrap() - 0.25).abs() < 1e-15);
        let free = ModelSpec::rational(2, 0.0, 1.0);
        let s = PhaseState::new(vec![1.0, -1.0], vec![1.0, 2.0]);
        assert!((hamiltonian_nonrel(&s, &free).unwrap() - 2.5).abs() < 1e-15);
        let s = PhaseState::at_rest(vec![2.0, 0.0, -2.0]);
        assert!((hamiltonian_nonrel(&s, &rat(3)).unwrap() - 0.5625).abs() < 1e-15);
    }

    #[test]
    fn vector_field_examples() {
        let ham = Hamiltonian::new(&rat(2), false).unwrap();
        let (dx, dp) = hamilton_vector_field(&PhaseState::at_rest(vec![1.0, -1.0]), &ham).unwrap();
        assert_eq!(dx, vec![0.0, 0.0]);
        assert!((dp[0] - 0.25).abs() < 1e-15 && (dp[1] + 0.25).abs() < 1e-15);

        let free = Hamiltonian::new(&ModelSpec::trigonometric(2, 0.0, 2.0, 1.0), false).unwrap();
        let s = PhaseState::new(vec![1.0, -1.0], vec![1.0, 3.0]);
        let (dx, dp) = hamilton_vector_field(&s, &free).unwrap();
        assert_eq!(dx, vec![0.5, 1.5]);
        assert_eq!(dp, vec![0.0, 0.0]);

        let rel = Hamiltonian::new(&ModelSpec::rational(2, 0.0, 1.0).with_beta(0.5), true).unwrap();
        let (dx, _) = hamilton_vector_field(&PhaseState::at_rest(vec![1.0, -1.0]), &rel).unwrap();
        assert_eq!(dx, vec![0.0, 0.0]);
    }

    #[test]
    fn vector_field_matches_energy_gradient() {
        let specs = [
            ModelSpec::rational(3, 1.3, 0.7),
            ModelSpec::hyperbolic(3, 0.8, 1.0, 0.9),
            ModelSpec::trigonometric(3, 1.1, 1.2, 0.8),
            ModelSpec::elliptic(3, 0.9, 1.0, 2.0, 1.5),
        ];
        let s = PhaseState::new(vec![1.6, 0.2, -1.1], vec![0.3, -0.4, 0.9]);
        for spec in &specs {
            for rel in [false, true] {
                if rel && spec.kind == crate::PotentialKind::Elliptic {
                    continue;
                }
                let spec = spec.clone().with_beta(0.6);
                let ham = Hamiltonian::new(&spec, rel).unwrap();
                let (dx, dp) = hamilton_vector_field(&s, &ham).unwrap();
                let h = 1e-6;
                for i in 0..3 {
                    let mut a = s.clone();
                    let mut b = s.clone();
                    a.p[i] += h;
                    b.p[i] -= h;
                    let ddp = (ham.energy(&a).unwrap() - ham.energy(&b).unwrap()) / (2.0 * h);
                    let mut a = s.clone();
                    let mut b = s.clone();
                    a.x[i] += h;
                    b.x[i] -= h;
                    let ddx = (ham.energy(&a).unwrap() - ham.energy(&b).unwrap()) / (2.0 * h);
                    assert!((dx[i] - ddp).abs() < 1e-7, "{:?} rel={rel}", spec.kind);
                    assert!((dp[i] + ddx).abs() < 1e-7, "{:?} rel={rel}", spec.kind);
                }
            }
        }
    }

    #[test]
    fn canonical_bracket() {
        let spec = rat(2);
        let s = PhaseState::new(vec![1.0, -1.0], vec![0.2, 0.1]);
        let b = poisson_bracket(&Observable::position(0), &Observable::momentum(0), &s, 1e-5, &spec).unwrap();
        assert!((b - 1.0).abs() < 1e-9);
        let b = poisson_bracket(&Observable::position(0), &Observable::momentum(1), &s, 1e-5, &spec).unwrap();
        assert!(b.abs() < 1e-9);
    }

    #[test]
    fn bracket_step_and_stencil_errors() {
        let spec = rat(2);
        let s = PhaseState::at_rest(vec![1.0, 1.0 - 1e-6]);
        let x = Observable::position(0);
        assert!(matches!(poisson_bracket(&x, &x, &s, 1e-5, &spec), Err(Error::StencilLeavesCone)));
        let s = PhaseState::at_rest(vec![1.0, -1.0]);
        assert!(matches!(poisson_bracket(&x, &x, &s, 1e-2, &spec), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn overflow_is_reported() {
        let profile = RsProfile::from_spec(&ModelSpec::rational(2, 1.0, 1.0).with_beta(1.0)).unwrap();
        let s = PhaseState::new(vec![1.0, -1.0], vec![400.0, 400.0]);
        assert!(matches!(hamiltonian_rel(&s, &profile), Err(Error::Overflow(_))));
    }
}
