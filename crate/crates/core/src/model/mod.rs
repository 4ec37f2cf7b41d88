//! Model parameters, phase-space types and the four pair potentials.

mod gamma;
mod weierstrass;

pub use gamma::gamma_fn;
pub use weierstrass::{weierstrass_p, weierstrass_p_and_derivative};

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::{Error, Result, C64, POLE_GUARD};

/// The four families of pair potential, types I–IV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    #[serde(alias = "Rational", alias = "I")]
    Rational,
    #[serde(alias = "Hyperbolic", alias = "II")]
    Hyperbolic,
    #[serde(alias = "Trigonometric", alias = "III")]
    Trigonometric,
    #[serde(alias = "Elliptic", alias = "IV")]
    Elliptic,
}

impl PotentialKind {
    pub fn roman(self) -> &'static str {
        match self {
            PotentialKind::Rational => "I",
            PotentialKind::Hyperbolic => "II",
            PotentialKind::Trigonometric => "III",
            PotentialKind::Elliptic => "IV",
        }
    }
}

/// Potential family, couplings and particle count.
///
/// `omega2_imag` stores `-i·ω₂`, so the imaginary half-period is `i·omega2_imag`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub kind: PotentialKind,
    #[serde(rename = "N")]
    pub n: usize,
    pub g: f64,
    pub m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega2_imag: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hbar: Option<f64>,
}

impl ModelSpec {
    fn base(kind: PotentialKind, n: usize, g: f64, m: f64) -> Self {
        ModelSpec { kind, n, g, m, beta: None, a: None, omega1: None, omega2_imag: None, hbar: None }
    }

    pub fn rational(n: usize, g: f64, m: f64) -> Self {
        Self::base(PotentialKind::Rational, n, g, m)
    }

    pub fn hyperbolic(n: usize, g: f64, m: f64, a: f64) -> Self {
        ModelSpec { a: Some(a), ..Self::base(PotentialKind::Hyperbolic, n, g, m) }
    }

    pub fn trigonometric(n: usize, g: f64, m: f64, a: f64) -> Self {
        ModelSpec { a: Some(a), ..Self::base(PotentialKind::Trigonometric, n, g, m) }
    }

    pub fn elliptic(n: usize, g: f64, m: f64, omega1: f64, omega2_imag: f64) -> Self {
        ModelSpec {
            omega1: Some(omega1),
            omega2_imag: Some(omega2_imag),
            ..Self::base(PotentialKind::Elliptic, n, g, m)
        }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn with_hbar(mut self, hbar: f64) -> Self {
        self.hbar = Some(hbar);
        self
    }

    /// Checks the parameter invariants for the selected kind.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidSpec(msg.to_string()));
        if self.n == 0 {
            return bad("N must be at least 1");
        }
        if !self.g.is_finite() {
            return bad("g must be finite");
        }
        if !(self.m > 0.0 && self.m.is_finite()) {
            return bad("m must be positive");
        }
        if let Some(b) = self.beta {
            if !(b > 0.0 && b.is_finite()) {
                return bad("beta must be positive");
            }
        }
        if let Some(h) = self.hbar {
            if !(h > 0.0 && h.is_finite()) {
                return bad("hbar must be positive");
            }
        }
        match self.kind {
            PotentialKind::Rational => {}
            PotentialKind::Hyperbolic | PotentialKind::Trigonometric => match self.a {
                Some(a) if a > 0.0 && a.is_finite() => {}
                _ => return bad("kinds II/III need a > 0"),
            },
            PotentialKind::Elliptic => {
                match self.omega1 {
                    Some(w) if w > 0.0 && w.is_finite() => {}
                    _ => return bad("kind IV needs omega1 > 0"),
                }
                match self.omega2_imag {
                    Some(t) if t > 0.0 && t.is_finite() => {}
                    _ => return bad("kind IV needs -i*omega2 > 0"),
                }
            }
        }
        Ok(())
    }

    /// Inverse length scale `a` (kinds II/III).
    pub fn a(&self) -> Result<f64> {
        self.a.ok_or_else(|| Error::InvalidSpec(format!("kind {} needs `a`", self.kind.roman())))
    }

    pub fn beta(&self) -> Result<f64> {
        self.beta.ok_or_else(|| Error::InvalidSpec("relativistic context needs `beta`".into()))
    }

    pub fn hbar(&self) -> f64 {
        self.hbar.unwrap_or(1.0)
    }

    /// Elliptic half-periods `(ω₁, -iω₂)`.
    pub fn half_periods(&self) -> Result<(f64, f64)> {
        match (self.omega1, self.omega2_imag) {
            (Some(w1), Some(t)) => Ok((w1, t)),
            _ => Err(Error::InvalidSpec("kind IV needs omega1 and omega2_imag".into())),
        }
    }

    /// Real period of the potential (`2π/a` for III, `2ω₁` for IV), if any.
    pub fn real_period(&self) -> Option<f64> {
        match self.kind {
            PotentialKind::Trigonometric => self.a.map(|a| 2.0 * PI / a),
            PotentialKind::Elliptic => self.omega1.map(|w| 2.0 * w),
            _ => None,
        }
    }
}

/// Positions and momenta of the N particles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseState {
    pub x: Vec<f64>,
    pub p: Vec<f64>,
}

impl PhaseState {
    pub fn new(x: Vec<f64>, p: Vec<f64>) -> Self {
        PhaseState { x, p }
    }

    pub fn at_rest(x: Vec<f64>) -> Self {
        let p = vec![0.0; x.len()];
        PhaseState { x, p }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Smallest distance to a wall of the configuration cone (or polytope for kinds III/IV).
    pub fn min_gap(&self, spec: &ModelSpec) -> f64 {
        let mut gap = f64::INFINITY;
        for w in self.x.windows(2) {
            gap = gap.min(w[0] - w[1]);
        }
        if let (Some(period), Some(first), Some(last)) = (spec.real_period(), self.x.first(), self.x.last()) {
            if self.x.len() > 1 {
                gap = gap.min(period - (first - last));
            }
        }
        gap
    }

    /// Checks dimensions, finiteness and the ordering constraints of the configuration space.
    pub fn validate(&self, spec: &ModelSpec) -> Result<()> {
        if self.x.len() != spec.n || self.p.len() != spec.n {
            return Err(Error::InvalidState(format!(
                "expected {} positions and momenta, got {} and {}",
                spec.n,
                self.x.len(),
                self.p.len()
            )));
        }
        if self.x.iter().chain(&self.p).any(|v| !v.is_finite()) {
            return Err(Error::InvalidState("non-finite coordinate".into()));
        }
        if spec.n > 1 && self.min_gap(spec) <= 0.0 {
            return Err(Error::InvalidState("positions outside the configuration space".into()));
        }
        Ok(())
    }

    pub fn flip_momenta(&self) -> PhaseState {
        PhaseState { x: self.x.clone(), p: self.p.iter().map(|v| -v).collect() }
    }
}

/// Per-step diagnostics recorded by the integrator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepStats {
    /// Scaled local error estimate of the step (≤ 1 for accepted steps).
    pub error_estimate: f64,
    /// Minimum wall distance of the state reached by the step.
    pub min_gap: f64,
}

/// Time-stamped sequence of accepted states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PhaseState>,
    pub stats: Vec<StepStats>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&PhaseState> {
        self.states.last()
    }

    pub fn min_gap(&self) -> f64 {
        self.stats.iter().map(|s| s.min_gap).fold(f64::INFINITY, f64::min)
    }

    /// CSV with header `t, x1..xN, p1..pN`, one row per accepted step, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let n = self.states.first().map_or(0, PhaseState::n);
        let mut out = String::from("t");
        for i in 1..=n {
            out.push_str(&format!(",x{i}"));
        }
        for i in 1..=n {
            out.push_str(&format!(",p{i}"));
        }
        out.push('\n');
        for (t, s) in self.times.iter().zip(&self.states) {
            out.push_str(&format!("{t:.16e}"));
            for v in s.x.iter().chain(&s.p) {
                out.push_str(&format!(",{v:.16e}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Distance from `x` to the nearest multiple of `period`.
pub(crate) fn distance_to_lattice(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    r.min(period - r)
}

fn pole_check(x: f64, spec: &ModelSpec) -> Result<()> {
    let d = match spec.real_period() {
        Some(period) if spec.kind == PotentialKind::Trigonometric => distance_to_lattice(x, period),
        _ => x.abs(),
    };
    if d < POLE_GUARD {
        Err(Error::Pole { at: x })
    } else {
        Ok(())
    }
}

/// The pair potential `V(x)` of the selected family.
pub fn potential_value(spec: &ModelSpec, x: f64) -> Result<f64> {
    match spec.kind {
        PotentialKind::Rational => {
            pole_check(x, spec)?;
            Ok(1.0 / (x * x))
        }
        PotentialKind::Hyperbolic => {
            pole_check(x, spec)?;
            let a = spec.a()?;
            let s = (a * x / 2.0).sinh();
            Ok(a * a / (4.0 * s * s))
        }
        PotentialKind::Trigonometric => {
            pole_check(x, spec)?;
            let a = spec.a()?;
            let s = (a * x / 2.0).sin();
            Ok(a * a / (4.0 * s * s))
        }
        PotentialKind::Elliptic => {
            let (w1, t) = spec.half_periods()?;
            Ok(weierstrass_p(C64::new(x, 0.0), w1, t)?.re)
        }
    }
}

/// `V'(x)` in closed form.
pub fn potential_derivative(spec: &ModelSpec, x: f64) -> Result<f64> {
    match spec.kind {
        PotentialKind::Rational => {
            pole_check(x, spec)?;
            Ok(-2.0 / (x * x * x))
        }
        PotentialKind::Hyperbolic => {
            pole_check(x, spec)?;
            let a = spec.a()?;
            let (s, c) = ((a * x / 2.0).sinh(), (a * x / 2.0).cosh());
            Ok(-a * a * a * c / (4.0 * s * s * s))
        }
        PotentialKind::Trigonometric => {
            pole_check(x, spec)?;
            let a = spec.a()?;
            let (s, c) = (a * x / 2.0).sin_cos();
            Ok(-a * a * a * c / (4.0 * s * s * s))
        }
        PotentialKind::Elliptic => {
            let (w1, t) = spec.half_periods()?;
            Ok(weierstrass_p_and_derivative(C64::new(x, 0.0), w1, t)?.1.re)
        }
    }
}
