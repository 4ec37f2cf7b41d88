//! Analytic difference operators `Ŝ_{±r}` of the quantum RS systems (kinds I–III).
//!
//! `Ŝ_{±r} F(x) = Σ_{|I|=r} c^±_I(x) F(x ∓ iħβ e_I)` with
//! `c^±_I(x) = Π_{i∈I, j∉I} f_∓(x_ij) f_±(x_ij ∓ iħβ)`.
//! Each square root `f_±` is `exp(½ Log R_±)` with `R_±` the tabulated radicand and `Log`
//! principal. Since `R_± → 1` as `g → 0` this is the continuous branch in `g`, as long as no
//! radicand approaches the negative real axis; evaluation refuses points where it does.

use crate::{Error, ModelSpec, PotentialKind, Result, C64};

/// Minimum distance to a zero of a radicand denominator (a wall or one of its complex copies).
pub const WALL_GUARD: f64 = 0.1;
/// Minimum distance `π − |arg R|` of a radicand from the principal branch cut.
pub const BRANCH_GUARD: f64 = 0.1;

/// Affine form `Σ c_k x_k + c_0` with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Affine {
    pub coeffs: Vec<C64>,
    pub offset: C64,
}

impl Affine {
    pub fn eval(&self, x: &[C64]) -> C64 {
        self.coeffs.iter().zip(x).fold(self.offset, |acc, (c, xi)| acc + c * xi)
    }
}

/// Closed-form test function of the coordinates, evaluable at complex points.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedFormFn {
    Const(C64),
    Coord(usize),
    /// `exp(c x_i)`
    Exp { c: C64, i: usize },
    Sin(Affine),
    Sinh(Affine),
    Product(Vec<ClosedFormFn>),
    Sum(Vec<ClosedFormFn>),
    Pow(Box<ClosedFormFn>, i32),
}

impl ClosedFormFn {
    /// `exp(μ·x)`.
    pub fn plane_wave(mu: &[C64]) -> Self {
        ClosedFormFn::Product(mu.iter().enumerate().map(|(i, &c)| ClosedFormFn::Exp { c, i }).collect())
    }

    pub fn eval(&self, x: &[C64]) -> C64 {
        match self {
            ClosedFormFn::Const(c) => *c,
            ClosedFormFn::Coord(i) => x[*i],
            ClosedFormFn::Exp { c, i } => (c * x[*i]).exp(),
            ClosedFormFn::Sin(a) => a.eval(x).sin(),
            ClosedFormFn::Sinh(a) => a.eval(x).sinh(),
            ClosedFormFn::Product(fs) => fs.iter().map(|f| f.eval(x)).product(),
            ClosedFormFn::Sum(fs) => fs.iter().map(|f| f.eval(x)).sum(),
            ClosedFormFn::Pow(f, k) => f.eval(x).powi(*k),
        }
    }

    /// Largest coordinate index referenced, if any.
    pub fn max_coord(&self) -> Option<usize> {
        match self {
            ClosedFormFn::Const(_) => None,
            ClosedFormFn::Coord(i) | ClosedFormFn::Exp { i, .. } => Some(*i),
            ClosedFormFn::Sin(a) | ClosedFormFn::Sinh(a) => a.coeffs.len().checked_sub(1),
            ClosedFormFn::Product(fs) | ClosedFormFn::Sum(fs) => fs.iter().filter_map(|f| f.max_coord()).max(),
            ClosedFormFn::Pow(f, _) => f.max_coord(),
        }
    }
}

/// Tabulated radicand `R_s(z)` of `f_s`, `s = ±1`, with the value whose zeros are walls.
fn radicand(kind: PotentialKind, a: f64, gb: f64, s: f64, z: C64) -> Result<C64> {
    let i = C64::i();
    let (num, den, wall_dist) = match kind {
        PotentialKind::Rational => (z + i * s * gb, z, z.norm()),
        PotentialKind::Hyperbolic => {
            // zeros of sinh(az/2) on the imaginary axis, spacing 2π/a
            let period = 2.0 * std::f64::consts::PI / a;
            let k = (z.im / period).round();
            let dist = C64::new(z.re, z.im - k * period).norm();
            ((a * (z + i * s * gb) / 2.0).sinh(), (a * z / 2.0).sinh(), dist)
        }
        PotentialKind::Trigonometric => {
            let period = 2.0 * std::f64::consts::PI / a;
            let k = (z.re / period).round();
            let dist = C64::new(z.re - k * period, z.im).norm();
            ((a * (z + i * s * gb) / 2.0).sin(), (a * z / 2.0).sin(), dist)
        }
        PotentialKind::Elliptic => return Err(Error::Unsupported("difference operators for kind IV".into())),
    };
    if wall_dist < WALL_GUARD {
        return Err(Error::WallProximity);
    }
    Ok(num / den)
}

/// `f_s(z) = exp(½ Log R_s(z))`.
pub fn half_factor(spec: &ModelSpec, s: i32, z: C64) -> Result<C64> {
    let (a, gb, _) = params(spec)?;
    factor(spec.kind, a, gb, s as f64, z)
}

fn factor(kind: PotentialKind, a: f64, gb: f64, s: f64, z: C64) -> Result<C64> {
    let r = radicand(kind, a, gb, s, z)?;
    if std::f64::consts::PI - r.arg().abs() < BRANCH_GUARD {
        return Err(Error::BranchCut);
    }
    Ok((0.5 * r.ln()).exp())
}

/// `(a, gβ, ħβ)` with `a = 1` as a placeholder for kind I.
fn params(spec: &ModelSpec) -> Result<(f64, f64, f64)> {
    spec.validate()?;
    let beta = spec.beta()?;
    let a = match spec.kind {
        PotentialKind::Rational => 1.0,
        PotentialKind::Hyperbolic | PotentialKind::Trigonometric => spec.a()?,
        PotentialKind::Elliptic => return Err(Error::Unsupported("difference operators for kind IV".into())),
    };
    Ok((a, spec.g * beta, spec.hbar() * beta))
}

/// Coefficient `c^±_I` of one shift term, for a fixed subset and sign.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftCoefficients {
    /// Bitmask of `I`.
    pub subset: u32,
    /// `+1` for `Ŝ_r`, `−1` for `Ŝ_{−r}`.
    pub sign: i32,
    /// Always `"principal"`: see the module docs.
    pub branch: &'static str,
    kind: PotentialKind,
    n: usize,
    a: f64,
    gb: f64,
    hb: f64,
}

impl ShiftCoefficients {
    pub fn new(spec: &ModelSpec, subset: u32, sign: i32) -> Result<Self> {
        let (a, gb, hb) = params(spec)?;
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidArgument(format!("sign must be ±1, got {sign}")));
        }
        if spec.n >= 32 || subset >> spec.n != 0 {
            return Err(Error::InvalidArgument(format!("subset {subset:#b} outside N = {}", spec.n)));
        }
        Ok(ShiftCoefficients { subset, sign, branch: "principal", kind: spec.kind, n: spec.n, a, gb, hb })
    }

    pub fn eval(&self, x: &[C64]) -> Result<C64> {
        let s = self.sign as f64;
        let shift = C64::new(0.0, s * self.hb);
        let mut c = C64::new(1.0, 0.0);
        for i in (0..self.n).filter(|i| self.subset >> i & 1 == 1) {
            for j in (0..self.n).filter(|j| self.subset >> j & 1 == 0) {
                let z = x[i] - x[j];
                c *= factor(self.kind, self.a, self.gb, -s, z)?;
                c *= factor(self.kind, self.a, self.gb, s, z - shift)?;
            }
        }
        Ok(c)
    }

    /// The point `x ∓ iħβ e_I`.
    pub fn shifted(&self, x: &[C64]) -> Vec<C64> {
        let shift = C64::new(0.0, self.sign as f64 * self.hb);
        x.iter().enumerate().map(|(i, &xi)| if self.subset >> i & 1 == 1 { xi - shift } else { xi }).collect()
    }
}

fn subsets(n: usize, r: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |m| m.count_ones() as usize == r)
}

/// `Ŝ_{r_signed}` applied to an arbitrary evaluable `F`.
///
/// `F` must be analytic on the strip swept by the shifts; this is not checked.
pub fn adop_apply_with<F>(spec: &ModelSpec, r_signed: i32, f: &F, x: &[C64]) -> Result<C64>
where
    F: Fn(&[C64]) -> Result<C64> + ?Sized,
{
    let n = spec.n;
    if x.len() != n {
        return Err(Error::InvalidArgument(format!("point has {} coordinates, N = {n}", x.len())));
    }
    let r = r_signed.unsigned_abs() as usize;
    if r == 0 || r > n || n > 16 {
        return Err(Error::InvalidArgument(format!("r = {r_signed} outside ±1..±{n} (N ≤ 16)")));
    }
    let sign = r_signed.signum();
    let mut total = C64::new(0.0, 0.0);
    for subset in subsets(n, r) {
        let c = ShiftCoefficients::new(spec, subset, sign)?;
        total += c.eval(x)? * f(&c.shifted(x))?;
    }
    Ok(total)
}

pub fn adop_apply(spec: &ModelSpec, r_signed: i32, f: &ClosedFormFn, x: &[C64]) -> Result<C64> {
    if f.max_coord().is_some_and(|k| k >= spec.n) {
        return Err(Error::InvalidArgument("test function references a coordinate beyond N".into()));
    }
    adop_apply_with(spec, r_signed, &|y: &[C64]| Ok(f.eval(y)), x)
}

/// `(Ŝ_s Ŝ_r F)(x)` by nested evaluation.
pub fn adop_compose(spec: &ModelSpec, s: i32, r: i32, f: &ClosedFormFn, x: &[C64]) -> Result<C64> {
    if f.max_coord().is_some_and(|k| k >= spec.n) {
        return Err(Error::InvalidArgument("test function references a coordinate beyond N".into()));
    }
    let inner = |y: &[C64]| adop_apply_with(spec, r, &|z: &[C64]| Ok(f.eval(z)), y);
    adop_apply_with(spec, s, &inner, x)
}

/// `max |[Ŝ_r, Ŝ_s] F| / max |Ŝ_r Ŝ_s F|` over the points.
pub fn adop_commutator_residual(
    spec: &ModelSpec,
    r: i32,
    s: i32,
    f: &ClosedFormFn,
    points: &[Vec<C64>],
) -> Result<f64> {
    let mut diff = 0.0f64;
    let mut scale = 0.0f64;
    for x in points {
        let rs = adop_compose(spec, r, s, f, x)?;
        let sr = adop_compose(spec, s, r, f, x)?;
        diff = diff.max((rs - sr).norm());
        scale = scale.max(rs.norm());
    }
    if scale == 0.0 {
        return Ok(diff);
    }
    Ok(diff / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn generic_points(n: usize, count: usize, seed: u64, width: f64) -> Vec<Vec<C64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        while out.len() < count {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-width..width)).collect();
            let ok = (0..n).all(|i| (i + 1..n).all(|j| (x[i] - x[j]).abs() > 0.5));
            if ok {
                out.push(x.into_iter().map(c).collect());
            }
        }
        out
    }

    fn elementary(vals: &[C64], r: usize) -> C64 {
        subsets(vals.len(), r)
            .map(|m| (0..vals.len()).filter(|i| m >> i & 1 == 1).map(|i| vals[i]).product::<C64>())
            .sum()
    }

    #[test]
    fn free_case_is_elementary_symmetric() {
        let spec = ModelSpec::rational(3, 0.0, 1.0).with_beta(0.4).with_hbar(0.7);
        let mu = [c(0.3), C64::new(-0.5, 0.2), c(1.1)];
        let f = ClosedFormFn::plane_wave(&mu);
        let x = [c(0.2), c(-1.0), c(1.7)];
        for r in [1i32, 2, 3, -1, -2, -3] {
            let s = r.signum() as f64;
            let phases: Vec<C64> = mu.iter().map(|m| (-C64::i() * s * 0.28 * m).exp()).collect();
            let expect = elementary(&phases, r.unsigned_abs() as usize) * f.eval(&x);
            let got = adop_apply(&spec, r, &f, &x).unwrap();
            assert!((got - expect).norm() < 1e-13 * expect.norm(), "r = {r}");
        }
    }

    #[test]
    fn full_shift_has_unit_coefficient() {
        let spec = ModelSpec::hyperbolic(3, 0.6, 1.0, 0.8).with_beta(0.3);
        let f = ClosedFormFn::Sum(vec![
            ClosedFormFn::plane_wave(&[c(0.5), c(-0.2), c(0.1)]),
            ClosedFormFn::Sinh(Affine { coeffs: vec![c(1.0), c(0.5), c(0.0)], offset: c(0.1) }),
        ]);
        let x = [c(0.0), c(1.3), c(-1.1)];
        let shifted: Vec<C64> = x.iter().map(|v| v - C64::new(0.0, 0.3)).collect();
        assert_eq!(adop_apply(&spec, 3, &f, &x).unwrap(), f.eval(&shifted));
        let twice = adop_compose(&spec, 3, 3, &f, &x).unwrap();
        let double: Vec<C64> = x.iter().map(|v| v - C64::new(0.0, 0.6)).collect();
        assert_eq!(twice, f.eval(&double));
    }

    #[test]
    fn trigonometric_two_body_matches_direct_sum() {
        let spec = ModelSpec::trigonometric(2, 0.5, 1.0, 1.0).with_beta(1.0 / 3.0).with_hbar(1.0);
        let f = ClosedFormFn::plane_wave(&[c(1.0), c(2.0)]);
        let x = [c(1.0), c(0.0)];
        let got = adop_apply(&spec, 1, &f, &x).unwrap();

        let i = C64::i();
        let (gb, hb) = (0.5 / 3.0, 1.0 / 3.0);
        let fm = |z: C64| ((0.5 * (z - i * gb)).sin() / (0.5 * z).sin()).sqrt();
        let fp = |z: C64| ((0.5 * (z + i * gb)).sin() / (0.5 * z).sin()).sqrt();
        let term1 = fm(c(1.0)) * fp(c(1.0) - i * hb) * (c(1.0) - i * hb).exp();
        let term2 = fm(c(-1.0)) * fp(c(-1.0) - i * hb) * (2.0 * (-i * hb)).exp() * c(1.0).exp();
        let expect = term1 + term2;
        assert!((got - expect).norm() < 1e-12, "{got} vs {expect}");
    }

    #[test]
    fn operators_commute() {
        let f = ClosedFormFn::Sum(vec![
            ClosedFormFn::plane_wave(&[c(0.4), c(-0.3), c(0.7)]),
            ClosedFormFn::Product(vec![
                ClosedFormFn::Coord(0),
                ClosedFormFn::Sin(Affine { coeffs: vec![c(0.3), c(0.0), c(-0.6)], offset: c(0.2) }),
            ]),
        ]);
        let spec = ModelSpec::rational(3, 0.5, 1.0).with_beta(0.25);
        let pts = generic_points(3, 10, 7, 3.0);
        for (r, s) in [(1, 2), (1, -1), (2, -1)] {
            let res = adop_commutator_residual(&spec, r, s, &f, &pts).unwrap();
            assert!(res < 1e-9, "kind I ({r},{s}): {res:e}");
        }

        let spec = ModelSpec::hyperbolic(2, 0.7, 1.0, 1.0).with_beta(0.3);
        let f2 = ClosedFormFn::plane_wave(&[c(0.6), C64::new(-0.4, 0.1)]);
        let pts2 = generic_points(2, 10, 8, 3.0);
        let res = adop_commutator_residual(&spec, 1, -1, &f2, &pts2).unwrap();
        assert!(res < 1e-9, "kind II: {res:e}");

        let spec = ModelSpec::trigonometric(3, 0.4, 1.0, 1.0).with_beta(0.2);
        let pts3: Vec<Vec<C64>> = [[0.3, 1.6, 3.4], [-0.2, 1.0, 2.5], [0.1, 2.0, 4.1]]
            .iter()
            .map(|p| p.iter().map(|&v| c(v)).collect())
            .collect();
        for (r, s) in [(1, 2), (1, -1)] {
            let res = adop_commutator_residual(&spec, r, s, &f, &pts3).unwrap();
            assert!(res < 1e-9, "kind III ({r},{s}): {res:e}");
        }
    }

    #[test]
    fn commutator_vanishes_without_coupling() {
        let spec = ModelSpec::rational(3, 0.0, 1.0).with_beta(0.25);
        let f = ClosedFormFn::Product(vec![
            ClosedFormFn::plane_wave(&[c(0.4), c(-0.3), c(0.7)]),
            ClosedFormFn::Pow(Box::new(ClosedFormFn::Coord(1)), 2),
        ]);
        let pts = generic_points(3, 10, 3, 2.0);
        assert!(adop_commutator_residual(&spec, 1, 2, &f, &pts).unwrap() < 1e-13);
    }

    #[test]
    fn weak_coupling_converges_to_free_value() {
        let f = ClosedFormFn::plane_wave(&[c(0.4), c(-0.9)]);
        let x = [c(0.8), c(-0.7)];
        for kind in [PotentialKind::Rational, PotentialKind::Hyperbolic, PotentialKind::Trigonometric] {
            let mk = |g: f64| {
                let mut s = ModelSpec::rational(2, g, 1.0).with_beta(0.5);
                s.kind = kind;
                if kind != PotentialKind::Rational {
                    s.a = Some(1.0);
                }
                s
            };
            let free = adop_apply(&mk(0.0), 1, &f, &x).unwrap();
            let errs: Vec<f64> = [1e-2, 1e-4, 1e-6]
                .iter()
                .map(|&g| (adop_apply(&mk(g), 1, &f, &x).unwrap() - free).norm())
                .collect();
            assert!(errs[0] > errs[1] && errs[1] > errs[2], "{kind:?}: {errs:?}");
            assert!(errs[2] < 1e-5);
        }
    }

    /// `(Ŝ₁ + Ŝ₋₁ − 2N)/(ħβ)²` at `β → 0`, from a Richardson pair.
    fn nonrel_symbol(spec: &ModelSpec, f: &ClosedFormFn, x: &[C64]) -> C64 {
        let n = spec.n as f64;
        let at = |beta: f64| {
            let s = spec.clone().with_beta(beta);
            let hb = s.hbar() * beta;
            let v = adop_apply(&s, 1, f, x).unwrap() + adop_apply(&s, -1, f, x).unwrap() - 2.0 * n * f.eval(x);
            v / (hb * hb)
        };
        let (b1, b2) = (2e-3, 1e-3);
        (4.0 * at(b2) - at(b1)) / 3.0
    }

    #[test]
    fn nonrelativistic_limit() {
        // F ≡ 1 measures the potential term; a second F checks there is no first-order part.
        let hbar = 0.8;
        let g = 0.6;
        let x = [c(0.9), c(-0.6)];
        let x12 = 1.5;
        let one = ClosedFormFn::Const(c(1.0));
        let mu = [c(0.5), c(-0.3)];
        let wave = ClosedFormFn::plane_wave(&mu);
        let lap: C64 = mu.iter().map(|m| m * m).sum();

        let spec = ModelSpec::rational(2, g, 1.0).with_hbar(hbar);
        let w = nonrel_symbol(&spec, &one, &x);
        let expect = 2.0 * g * (g - hbar) / (hbar * hbar * x12 * x12);
        assert!((w - expect).norm() < 1e-6, "potential {w} vs {expect}");
        let hw = nonrel_symbol(&spec, &wave, &x) / wave.eval(&x);
        assert!((hw - (-lap + w)).norm() < 1e-6);

        // kind II: the same structure up to an additive constant measured at two separations
        let spec = ModelSpec::hyperbolic(2, g, 1.0, 1.0).with_hbar(hbar);
        let shape = |d: f64| 2.0 * g * (g - hbar) / (hbar * hbar) * 0.25 / (0.5 * d).sinh().powi(2);
        let c1 = nonrel_symbol(&spec, &one, &x) - shape(x12);
        let y = [c(1.4), c(-0.6)];
        let c2 = nonrel_symbol(&spec, &one, &y) - shape(2.0);
        assert!((c1 - c2).norm() < 1e-6 && c1.im.abs() < 1e-6, "{c1} {c2}");
        let hw = nonrel_symbol(&spec, &wave, &x) / wave.eval(&x);
        assert!((hw - (-lap + shape(x12) + c1)).norm() < 1e-6);
    }

    #[test]
    fn guards() {
        let spec = ModelSpec::rational(2, 0.5, 1.0).with_beta(0.25);
        let f = ClosedFormFn::Const(c(1.0));
        assert_eq!(adop_apply(&spec, 1, &f, &[c(0.0), c(0.05)]), Err(Error::WallProximity));
        assert!(adop_apply(&spec, 0, &f, &[c(0.0), c(1.0)]).is_err());
        assert!(adop_apply(&spec, 3, &f, &[c(0.0), c(1.0)]).is_err());
        let bad = ClosedFormFn::Coord(5);
        assert!(adop_apply(&spec, 1, &bad, &[c(0.0), c(1.0)]).is_err());
        // strong coupling with a large shift puts f_+(x − iħβ)² next to the negative axis
        let strong = ModelSpec::rational(2, 40.0, 1.0).with_beta(1.0).with_hbar(3.0);
        assert_eq!(adop_apply(&strong, 1, &f, &[c(0.0), c(0.15)]), Err(Error::BranchCut));
        let ell = ModelSpec::elliptic(2, 0.5, 1.0, 1.0, 1.0).with_beta(0.2);
        assert!(matches!(adop_apply(&ell, 1, &f, &[c(0.0), c(1.0)]), Err(Error::Unsupported(_))));
        assert!((half_factor(&ModelSpec::rational(2, 0.0, 1.0).with_beta(1.0), 1, c(2.0)).unwrap() - 1.0).norm() < 1e-15);
    }
}
