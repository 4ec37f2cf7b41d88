//! Classical Ruijsenaars–Schneider systems: interaction profiles, the integrals `S_{±r}`,
//! the Lax matrix `𝓛 = d_i C_ij d_j`, Poincaré brackets and nonrelativistic limits.

use crate::dynamics::{
    hamiltonian_nonrel, hamiltonian_rel, momentum_rel, poisson_bracket, rapidity_guard, Hamiltonian,
    Observable, BRACKET_STEP,
};
use crate::linalg::{principal_minor, CMatrix};
use crate::model::{weierstrass_p, weierstrass_p_and_derivative};
use crate::{Error, ModelSpec, PhaseState, PotentialKind, Result, C64, POLE_GUARD};
use serde::Serialize;

/// Largest N for which principal minors are enumerated subset by subset.
pub const MINOR_GUARD: usize = 12;

/// Coefficients of the elliptic profile `f² = a_c + b_c·℘`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticCoefficients {
    pub a_c: f64,
    pub b_c: f64,
}

/// The interaction profile `f` of an RS system together with its couplings.
#[derive(Debug, Clone, PartialEq)]
pub struct RsProfile {
    spec: ModelSpec,
    beta: f64,
    elliptic: Option<EllipticCoefficients>,
}

impl RsProfile {
    /// Profile for kinds I–III; `spec.beta` must be set.
    pub fn from_spec(spec: &ModelSpec) -> Result<Self> {
        spec.validate()?;
        if spec.kind == PotentialKind::Elliptic {
            return Err(Error::InvalidSpec("kind IV profiles need a_c, b_c (use RsProfile::elliptic)".into()));
        }
        Ok(RsProfile { spec: spec.clone(), beta: spec.beta()?, elliptic: None })
    }

    /// Kind IV profile `f = √(a_c + b_c·℘(x))` with caller-supplied `a_c, b_c > 0`.
    pub fn elliptic(spec: &ModelSpec, a_c: f64, b_c: f64) -> Result<Self> {
        spec.validate()?;
        if spec.kind != PotentialKind::Elliptic {
            return Err(Error::InvalidSpec("elliptic coefficients given for a non-elliptic kind".into()));
        }
        if !(a_c > 0.0 && b_c > 0.0) {
            return Err(Error::InvalidSpec("a_c and b_c must be positive".into()));
        }
        Ok(RsProfile { spec: spec.clone(), beta: spec.beta()?, elliptic: Some(EllipticCoefficients { a_c, b_c }) })
    }

    /// Same profile at another value of β (any nonzero sign; used by the β-derivative).
    pub(crate) fn at_beta(&self, beta: f64) -> Self {
        RsProfile { beta, ..self.clone() }
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn kind(&self) -> PotentialKind {
        self.spec.kind
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn elliptic_coefficients(&self) -> Option<EllipticCoefficients> {
        self.elliptic
    }

    fn guard(&self, x: f64) -> Result<()> {
        let d = match self.spec.real_period() {
            Some(period) if self.spec.kind == PotentialKind::Trigonometric => {
                crate::model::distance_to_lattice(x, period)
            }
            _ => x.abs(),
        };
        if d < POLE_GUARD {
            Err(Error::Pole { at: x })
        } else {
            Ok(())
        }
    }

    fn elliptic_parts(&self) -> Result<(EllipticCoefficients, f64, f64)> {
        let c = self.elliptic.ok_or_else(|| Error::InvalidSpec("missing elliptic coefficients".into()))?;
        let (w1, t) = self.spec.half_periods()?;
        Ok((c, w1, t))
    }

    /// `(f², d(f²)/dx)`.
    fn radicand_and_slope(&self, x: f64) -> Result<(f64, f64)> {
        let g = self.spec.g;
        let b = self.beta;
        match self.spec.kind {
            PotentialKind::Rational => {
                self.guard(x)?;
                let c = (g * b) * (g * b);
                Ok((1.0 + c / (x * x), -2.0 * c / (x * x * x)))
            }
            PotentialKind::Hyperbolic => {
                self.guard(x)?;
                let a = self.spec.a()?;
                let c = (a * g * b / 2.0).sin().powi(2);
                let (s, ch) = ((a * x / 2.0).sinh(), (a * x / 2.0).cosh());
                Ok((1.0 + c / (s * s), -c * a * ch / (s * s * s)))
            }
            PotentialKind::Trigonometric => {
                self.guard(x)?;
                let a = self.spec.a()?;
                let c = (a * g * b / 2.0).sinh().powi(2);
                let (s, co) = (a * x / 2.0).sin_cos();
                Ok((1.0 + c / (s * s), -c * a * co / (s * s * s)))
            }
            PotentialKind::Elliptic => {
                let (coef, w1, t) = self.elliptic_parts()?;
                let (p, dp) = weierstrass_p_and_derivative(C64::new(x, 0.0), w1, t)?;
                Ok((coef.a_c + coef.b_c * p.re, coef.b_c * dp.re))
            }
        }
    }

    /// `f(x)²`.
    pub fn radicand(&self, x: f64) -> Result<f64> {
        if self.spec.kind == PotentialKind::Elliptic {
            let (coef, w1, t) = self.elliptic_parts()?;
            return Ok(coef.a_c + coef.b_c * weierstrass_p(C64::new(x, 0.0), w1, t)?.re);
        }
        Ok(self.radicand_and_slope(x)?.0)
    }

    pub fn f(&self, x: f64) -> Result<f64> {
        let r = self.radicand(x)?;
        if r < 0.0 {
            return Err(Error::NegativeRadicand(r));
        }
        Ok(r.sqrt())
    }

    /// `f′(x)/f(x)`.
    pub fn log_derivative(&self, x: f64) -> Result<f64> {
        let (r, dr) = self.radicand_and_slope(x)?;
        if r <= 0.0 {
            return Err(Error::NegativeRadicand(r));
        }
        Ok(dr / (2.0 * r))
    }
}

/// The profile function `f` at `x`.
pub fn rs_profile_f(profile: &RsProfile, x: f64) -> Result<f64> {
    profile.f(x)
}

/// `S_1..S_N` and `S_{−1}..S_{−N}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RsIntegrals {
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
}

impl RsIntegrals {
    /// `S_r` for `r ∈ ±{1..N}`; `S_0 = 1`.
    pub fn get(&self, r: i32) -> f64 {
        match r {
            0 => 1.0,
            r if r > 0 => self.plus[r as usize - 1],
            r => self.minus[(-r) as usize - 1],
        }
    }
}

fn profile_matrix(state: &PhaseState, profile: &RsProfile) -> Result<Vec<Vec<f64>>> {
    let n = state.n();
    let mut f = vec![vec![1.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = profile.f(state.x[i] - state.x[j])?;
            f[i][j] = v;
            f[j][i] = v;
        }
    }
    Ok(f)
}

/// Subset sums `S_{±r} = Σ_{|I|=r} exp(±βΣ_{i∈I}p_i) Π_{i∈I, j∉I} f(x_i − x_j)`.
pub fn rs_integrals(state: &PhaseState, profile: &RsProfile) -> Result<RsIntegrals> {
    let n = state.n();
    if n > 24 {
        return Err(Error::GuardExceeded(format!("subset enumeration for N = {n}")));
    }
    let beta = profile.beta();
    rapidity_guard(state, beta)?;
    let f = profile_matrix(state, profile)?;
    let mut plus = vec![0.0; n];
    let mut minus = vec![0.0; n];
    for mask in 1u32..(1 << n) {
        let r = mask.count_ones() as usize;
        let mut psum = 0.0;
        let mut prod = 1.0;
        for i in 0..n {
            if mask & (1 << i) == 0 {
                continue;
            }
            psum += state.p[i];
            for (j, fij) in f[i].iter().enumerate() {
                if mask & (1 << j) == 0 {
                    prod *= fij;
                }
            }
        }
        plus[r - 1] += (beta * psum).exp() * prod;
        minus[r - 1] += (-beta * psum).exp() * prod;
    }
    Ok(RsIntegrals { plus, minus })
}

/// Observable `S_r` (`r ∈ ±{1..N}`).
pub fn rs_integral_observable(profile: RsProfile, r: i32) -> Observable {
    Observable::new(format!("S{r}"), move |s| Ok(rs_integrals(s, &profile)?.get(r)))
}

/// `𝓛_ij = d_i C_ij d_j` at an arbitrary nonzero β (kinds I–III).
///
/// The factors `exp(±a x/2)` in `d_i` and `C_ij` cancel in the product and are dropped.
pub(crate) fn rs_lax_at(state: &PhaseState, profile: &RsProfile) -> Result<CMatrix> {
    let spec = profile.spec();
    let n = state.n();
    let beta = profile.beta();
    let g = spec.g;
    let i = C64::i();
    let coupling: Box<dyn Fn(f64) -> C64> = match spec.kind {
        PotentialKind::Rational => Box::new(move |x| i * g * beta / (x + i * g * beta)),
        PotentialKind::Hyperbolic => {
            let a = spec.a()?;
            let num = i * (beta * a * g / 2.0).sin();
            Box::new(move |x| num / (a * (C64::new(x, 0.0) + i * beta * g) / 2.0).sinh())
        }
        PotentialKind::Trigonometric => {
            let a = spec.a()?;
            let num = i * (beta * a * g / 2.0).sinh();
            Box::new(move |x| num / (a * (C64::new(x, 0.0) + i * beta * g) / 2.0).sin())
        }
        PotentialKind::Elliptic => {
            return Err(Error::Unsupported("the elliptic RS Lax matrix needs a spectral parameter".into()))
        }
    };
    rapidity_guard(state, beta.abs())?;
    let mut d = vec![0.0; n];
    for k in 0..n {
        let mut prod = 1.0;
        for j in 0..n {
            if j != k {
                let r = profile.radicand(state.x[k] - state.x[j])?;
                if r <= 0.0 {
                    return Err(Error::Branch(r));
                }
                prod *= r.sqrt();
            }
        }
        d[k] = (beta * state.p[k] / 2.0).exp() * prod.sqrt();
    }
    Ok(CMatrix::from_fn(n, n, |r, c| {
        let cij = if r == c { C64::new(1.0, 0.0) } else { coupling(state.x[r] - state.x[c]) };
        cij * d[r] * d[c]
    }))
}

/// The RS Lax matrix `𝓛` for kinds I–III.
pub fn rs_lax(state: &PhaseState, profile: &RsProfile) -> Result<CMatrix> {
    state.validate(profile.spec())?;
    rs_lax_at(state, profile)
}

/// `Σ_{|I|=r} det[M]_{I,I}` for `r = 1..N`, by direct subset enumeration.
pub fn principal_minor_sums(m: &CMatrix) -> Result<Vec<C64>> {
    let n = m.nrows();
    if n > MINOR_GUARD {
        return Err(Error::GuardExceeded(format!("principal minors for N = {n} > {MINOR_GUARD}")));
    }
    let mut sums = vec![C64::new(0.0, 0.0); n];
    for mask in 1u32..(1 << n) {
        let rows: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        sums[rows.len() - 1] += principal_minor(m, &rows);
    }
    Ok(sums)
}

/// `det(1/(z_i − w_j))`, computed directly.
pub fn cauchy_determinant(z: &[C64], w: &[C64]) -> C64 {
    let n = z.len();
    CMatrix::from_fn(n, n, |i, j| 1.0 / (z[i] - w[j])).lu().determinant()
}

/// Product side of Cauchy's identity.
pub fn cauchy_product(z: &[C64], w: &[C64]) -> C64 {
    let n = z.len();
    let mut out = C64::new(1.0, 0.0);
    for i in 0..n {
        out /= z[i] - w[i];
        for j in i + 1..n {
            out *= (z[i] - z[j]) * (w[i] - w[j]) / ((z[i] - w[j]) * (w[i] - z[j]));
        }
    }
    out
}

/// `(|{H,P}|, |{H,B} − P|, |{P,B} − m²β²H|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoincareResiduals {
    pub h_p: f64,
    pub h_b: f64,
    pub p_b: f64,
}

impl PoincareResiduals {
    pub fn max(&self) -> f64 {
        self.h_p.max(self.h_b).max(self.p_b)
    }
}

pub fn poincare_residuals(state: &PhaseState, profile: &RsProfile) -> Result<PoincareResiduals> {
    let spec = profile.spec();
    let m = spec.m;
    let beta = profile.beta();
    let h_obs = Observable::energy(Hamiltonian::Relativistic(profile.clone()));
    let p_obs = Observable::relativistic_momentum(profile.clone());
    let b_obs = Observable::boost(m);
    let h = BRACKET_STEP;
    let hp = poisson_bracket(&h_obs, &p_obs, state, h, spec)?;
    let hb = poisson_bracket(&h_obs, &b_obs, state, h, spec)?;
    let pb = poisson_bracket(&p_obs, &b_obs, state, h, spec)?;
    let p_val = momentum_rel(state, profile)?;
    let h_val = hamiltonian_rel(state, profile)?;
    Ok(PoincareResiduals {
        h_p: hp.abs(),
        h_b: (hb - p_val).abs(),
        p_b: (pb - m * m * beta * beta * h_val).abs(),
    })
}

/// `|H_rel(β) − N/(mβ²) − H_nonrel|` for each β (kinds I–III).
pub fn nonrel_limit_residual(state: &PhaseState, spec: &ModelSpec, betas: &[f64]) -> Result<Vec<f64>> {
    if spec.kind == PotentialKind::Elliptic {
        return Err(Error::Unsupported("nonrelativistic limit is checked for kinds I–III".into()));
    }
    let nonrel = hamiltonian_nonrel(state, spec)?;
    let rest = state.n() as f64 / spec.m;
    betas
        .iter()
        .map(|&b| {
            let profile = RsProfile::from_spec(&spec.clone().with_beta(b))?;
            Ok((hamiltonian_rel(state, &profile)? - rest / (b * b) - nonrel).abs())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lax::rational_lax_pair;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn profile(spec: ModelSpec) -> RsProfile {
        RsProfile::from_spec(&spec).unwrap()
    }

    #[test]
    fn profile_examples() {
        let p = profile(ModelSpec::rational(2, 1.0, 1.0).with_beta(1.0));
        assert!((rs_profile_f(&p, 2.0).unwrap() - 1.25f64.sqrt()).abs() < 1e-15);
        for spec in [
            ModelSpec::rational(2, 0.0, 1.0),
            ModelSpec::hyperbolic(2, 0.0, 1.0, 1.0),
            ModelSpec::trigonometric(2, 0.0, 1.0, 1.0),
        ] {
            assert_eq!(rs_profile_f(&profile(spec.with_beta(0.7)), 0.9).unwrap(), 1.0);
        }
        let p = profile(ModelSpec::hyperbolic(2, 1.0, 1.0, 1.0).with_beta(1.0));
        let expect = (1.0 + 0.5f64.sin().powi(2) / 0.5f64.sinh().powi(2)).sqrt();
        assert!((rs_profile_f(&p, 1.0).unwrap() - expect).abs() < 1e-14);
        assert!(matches!(p.f(0.0), Err(Error::Pole { .. })));
    }

    #[test]
    fn elliptic_profile_errors() {
        let spec = ModelSpec::elliptic(3, 1.0, 1.0, 1.0, 1.0).with_beta(0.5);
        assert!(RsProfile::from_spec(&spec).is_err());
        assert!(RsProfile::elliptic(&spec, -1.0, 1.0).is_err());
        let p = RsProfile::elliptic(&spec, 1.0, 1.0).unwrap();
        assert!(p.f(0.7).unwrap() > 1.0);
        assert!(p.f(0.7).unwrap() == p.f(-0.7).unwrap() || (p.f(0.7).unwrap() - p.f(-0.7).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn integrals_examples() {
        let p = profile(ModelSpec::rational(2, 1.0, 1.0).with_beta(1.0));
        let s = PhaseState::new(vec![1.0, -1.0], vec![1.0, 2.0]);
        let ints = rs_integrals(&s, &p).unwrap();
        assert!((ints.get(2) - 3f64.exp()).abs() < 1e-12);
        let s = PhaseState::at_rest(vec![1.0, -1.0]);
        let ints = rs_integrals(&s, &p).unwrap();
        assert!((ints.get(1) - 5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn hamiltonian_is_half_sum_of_s1_and_sm1() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let spec = ModelSpec::trigonometric(4, 0.7, 1.3, 0.9).with_beta(0.4);
        let p = profile(spec.clone());
        for _ in 0..5 {
            let s = PhaseState::new(vec![2.5, 1.0, -0.5, -2.0], (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let ints = rs_integrals(&s, &p).unwrap();
            let h = (ints.get(1) + ints.get(-1)) / (2.0 * spec.m * 0.16);
            let hr = hamiltonian_rel(&s, &p).unwrap();
            assert!((h - hr).abs() < 1e-13 * hr.abs());
            let n = 4;
            for r in 1..n {
                let lhs = ints.get(-r);
                let rhs = ints.get(n - r) / ints.get(n);
                assert!((lhs - rhs).abs() < 1e-12 * lhs.abs());
            }
        }
    }

    #[test]
    fn lax_matrix_is_hermitian_and_free_case_diagonal() {
        let s = PhaseState::new(vec![1.5, 0.1, -1.2], vec![0.3, -0.2, 0.5]);
        for spec in [
            ModelSpec::rational(3, 0.8, 1.0),
            ModelSpec::hyperbolic(3, 0.8, 1.0, 0.7),
            ModelSpec::trigonometric(3, 0.8, 1.0, 0.7),
        ] {
            let l = rs_lax(&s, &profile(spec.clone().with_beta(0.6))).unwrap();
            assert!(crate::linalg::hermiticity_defect(&l) < 1e-13);
            let free = ModelSpec { g: 0.0, ..spec }.with_beta(0.6);
            let l = rs_lax(&s, &profile(free)).unwrap();
            for r in 0..3 {
                for c in 0..3 {
                    let expect = if r == c { (0.6 * s.p[r]).exp() } else { 0.0 };
                    assert!((l[(r, c)] - C64::new(expect, 0.0)).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn rational_coupling_is_the_small_a_limit() {
        let s = PhaseState::new(vec![1.5, 0.1, -1.2], vec![0.3, -0.2, 0.5]);
        let rat = rs_lax(&s, &profile(ModelSpec::rational(3, 0.8, 1.0).with_beta(0.6))).unwrap();
        let hyp = rs_lax(&s, &profile(ModelSpec::hyperbolic(3, 0.8, 1.0, 1e-6).with_beta(0.6))).unwrap();
        assert!(crate::linalg::frobenius(&(rat - hyp)) < 1e-9);
    }

    #[test]
    fn beta_derivative_recovers_rational_lax() {
        let s = PhaseState::new(vec![1.5, 0.1, -1.2], vec![0.3, -0.2, 0.5]);
        let spec = ModelSpec::rational(3, 0.8, 1.0);
        let b = 1e-4;
        let p = profile(spec.clone().with_beta(b));
        let lp = rs_lax_at(&s, &p).unwrap();
        let lm = rs_lax_at(&s, &p.at_beta(-b)).unwrap();
        let deriv = (lp - lm) / C64::new(2.0 * b, 0.0);
        let (l, _) = rational_lax_pair(&s, 0.8, 1.0).unwrap();
        for (a, e) in deriv.iter().zip(l.entries.iter()) {
            assert!((a - e).norm() < 1e-7);
        }
    }

    #[test]
    fn cauchy_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=5 {
            let mut z: Vec<C64> = Vec::new();
            let mut w: Vec<C64> = Vec::new();
            for _ in 0..n {
                z.push(C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)));
                w.push(C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)));
            }
            let d = cauchy_determinant(&z, &w);
            let p = cauchy_product(&z, &w);
            assert!((d - p).norm() < 1e-12 * p.norm().max(1.0), "N={n}: {d} vs {p}");
        }
    }

    #[test]
    fn free_nonrelativistic_limit_is_the_cosh_series() {
        let spec = ModelSpec::rational(2, 0.0, 1.0);
        let s = PhaseState::new(vec![1.0, -1.0], vec![1.0, 2.0]);
        let b = 1e-3;
        let res = nonrel_limit_residual(&s, &spec, &[b]).unwrap()[0];
        // Σ(cosh βp − 1)/β² − Σp²/2 = β²Σp⁴/24 + O(β⁴).
        let series = b * b * (1.0 + 16.0) / 24.0;
        assert!((res - series).abs() < 1e-9, "{res} vs {series}");
    }

    #[test]
    fn rational_nonrelativistic_limit_is_quadratic() {
        let spec = ModelSpec::rational(2, 1.0, 1.0);
        let s = PhaseState::at_rest(vec![1.0, -1.0]);
        let r = nonrel_limit_residual(&s, &spec, &[1e-1, 1e-2, 1e-3]).unwrap();
        for w in r.windows(2) {
            let ratio = w[0] / w[1];
            assert!(ratio > 50.0 && ratio < 200.0, "{r:?}");
        }
    }

    fn random_cone(rng: &mut ChaCha8Rng, n: usize, spread: f64) -> PhaseState {
        let mut x = Vec::new();
        let mut cur = rng.gen_range(-0.5..0.5);
        for _ in 0..n {
            x.push(cur);
            cur -= rng.gen_range(0.5..spread);
        }
        PhaseState::new(x, (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
    }

    #[test]
    fn poincare_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for spec in [
            ModelSpec::rational(3, 0.7, 1.2),
            ModelSpec::hyperbolic(3, 0.7, 1.2, 0.9),
            ModelSpec::trigonometric(3, 0.7, 1.2, 0.9),
        ] {
            let p = profile(spec.with_beta(0.5));
            for _ in 0..5 {
                let s = random_cone(&mut rng, 3, 1.5);
                let r = poincare_residuals(&s, &p).unwrap();
                assert!(r.max() < 1e-6, "{:?} {r:?}", p.kind());
            }
        }
        let free = profile(ModelSpec::hyperbolic(3, 0.0, 1.0, 1.0).with_beta(0.5));
        let s = random_cone(&mut rng, 3, 1.5);
        assert!(poincare_residuals(&s, &free).unwrap().max() < 1e-9);
    }

    #[test]
    fn elliptic_poincare_algebra() {
        let spec = ModelSpec::elliptic(3, 1.0, 1.0, 1.5, 1.0).with_beta(0.4);
        let p = RsProfile::elliptic(&spec, 1.0, 1.0).unwrap();
        let s = PhaseState::new(vec![0.9, 0.1, -0.8], vec![0.3, -0.5, 0.2]);
        assert!(poincare_residuals(&s, &p).unwrap().max() < 1e-5);
    }

    #[test]
    fn profiles_are_affine_in_the_degenerate_potential() {
        use crate::model::potential_value;
        for spec in [
            ModelSpec::rational(2, 0.8, 1.0),
            ModelSpec::hyperbolic(2, 0.8, 1.0, 1.3),
            ModelSpec::trigonometric(2, 0.8, 1.0, 1.3),
        ] {
            let p = profile(spec.clone().with_beta(0.6));
            let (x0, x1) = (0.7, 1.9);
            let (v0, v1) = (potential_value(&spec, x0).unwrap(), potential_value(&spec, x1).unwrap());
            let (r0, r1) = (p.radicand(x0).unwrap(), p.radicand(x1).unwrap());
            let b_c = (r1 - r0) / (v1 - v0);
            let a_c = r0 - b_c * v0;
            for x in [0.3, 1.1, 1.5, 2.2] {
                let v = potential_value(&spec, x).unwrap();
                assert!((p.radicand(x).unwrap() - a_c - b_c * v).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn trigonometric_limit_slope_is_two() {
        let spec = ModelSpec::trigonometric(3, 0.9, 1.0, 0.8);
        let s = PhaseState::new(vec![2.0, 0.4, -1.5], vec![0.5, -0.3, 0.8]);
        let betas = [0.1, 0.05, 0.02, 0.01];
        let r = nonrel_limit_residual(&s, &spec, &betas).unwrap();
        let xs: Vec<f64> = betas.iter().map(|b| b.ln()).collect();
        let ys: Vec<f64> = r.iter().map(|v| v.ln()).collect();
        let (mx, my) = (xs.iter().sum::<f64>() / 4.0, ys.iter().sum::<f64>() / 4.0);
        let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
            / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
        assert!(slope > 1.0 && slope < 4.0, "{slope}");
    }

    #[test]
    fn principal_minors_are_the_integrals() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for spec in [
            ModelSpec::rational(4, 0.7, 1.0),
            ModelSpec::hyperbolic(4, 0.7, 1.0, 0.9),
            ModelSpec::trigonometric(4, 0.7, 1.0, 0.6),
        ] {
            for n in 1..=4 {
                let p = profile(ModelSpec { n, ..spec.clone() }.with_beta(0.8));
                let s = random_cone(&mut rng, n, 1.2);
                let l = rs_lax(&s, &p).unwrap();
                let sums = principal_minor_sums(&l).unwrap();
                let ints = rs_integrals(&s, &p).unwrap();
                for r in 1..=n {
                    let e = ints.get(r as i32);
                    assert!((sums[r - 1] - e).norm() < 1e-10 * e.max(1.0), "{:?} n={n} r={r}", p.kind());
                }
            }
        }
    }
}
