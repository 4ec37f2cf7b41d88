//! The gauge-transformed trigonometric CMS operator on symmetric Laurent polynomials in
//! `z_i = e^{iax_i}`, Jack polynomials, and a finite-difference check of the eigenfunctions.
//!
//! With `Ψ = W^{1/2}P(z)`, `W^{1/2} = Π_{i<j}|sin(a(x_i − x_j)/2)|^k` and `D_i = z_i∂/∂z_i`,
//! conjugating `H = −½Σ∂²_{x_i} + k(k−1)Σ_{i<j}a²/(4sin²(a(x_i − x_j)/2))` gives
//!
//! `W^{−1/2}(H − E₀)W^{1/2} = (a²/2)[Σ_i D_i² + k Σ_{i<j} (z_i + z_j)/(z_i − z_j)(D_i − D_j)]`
//!
//! with `E₀ = a²k²N(N²−1)/24`. `trig_cms_apply` acts by the bracket (`a = 1`).

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::polyring::{monomial_symmetric, partitions, GaussRat, Monomial, MultiPoly, Partition, Rat, SymmetricPoly};
use crate::{Error, ModelSpec, PotentialKind, Result, C64};

/// `poly · (z_1⋯z_N)^{−shift}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    pub poly: MultiPoly,
    pub shift: u32,
}

impl LaurentPoly {
    pub fn polynomial(poly: MultiPoly) -> Self {
        LaurentPoly { poly, shift: 0 }
    }

    /// Pulls common factors of `z_1⋯z_N` into the shift.
    pub fn normalize(mut self) -> Self {
        while self.shift > 0 && !self.poly.is_zero() && self.poly.terms().all(|(m, _)| m.0.iter().all(|&e| e > 0)) {
            let n = self.poly.nvars();
            let mut out = MultiPoly::zero(n);
            for (m, c) in self.poly.terms() {
                out.add_term(Monomial(m.0.iter().map(|e| e - 1).collect()), c.clone());
            }
            self.poly = out;
            self.shift -= 1;
        }
        if self.poly.is_zero() {
            self.shift = 0;
        }
        self
    }

    pub fn is_symmetric(&self) -> bool {
        self.poly.is_symmetric()
    }

    /// Value at `z` (componentwise nonzero).
    pub fn eval(&self, z: &[C64]) -> C64 {
        let e: C64 = z.iter().product();
        self.poly.eval(z) / e.powu(self.shift)
    }
}

/// Bracket operator on ordinary symmetric polynomials.
fn trig_bracket(k: &Rat, p: &MultiPoly) -> Result<MultiPoly> {
    let n = p.nvars();
    let mut out = MultiPoly::zero(n);
    let d: Vec<MultiPoly> = (0..n).map(|i| p.euler(i)).collect();
    for (i, di) in d.iter().enumerate() {
        out = &out + &di.euler(i);
    }
    let kk = GaussRat::real(k.clone());
    for i in 0..n {
        for j in i + 1..n {
            let quotient = (&d[i] - &d[j]).divide_linear(i, j)?;
            let sum = &MultiPoly::var(n, i) + &MultiPoly::var(n, j);
            out = &out + &quotient.checked_mul(&sum)?.scale(&kk);
        }
    }
    Ok(out.scale(&GaussRat::real(Rat::new(1.into(), 2.into()))))
}

/// Ground-energy-subtracted, gauge-transformed type III Hamiltonian (`a = 1`).
///
/// For `q = e_N^s P` with `e_N = z_1⋯z_N` the shift contributes `½(2s·ΣD_i + Ns²)P`.
pub fn trig_cms_apply(k: &Rat, q: &LaurentPoly) -> Result<LaurentPoly> {
    if !q.is_symmetric() {
        return Err(Error::NonSymmetric);
    }
    q.poly.check_degree()?;
    let n = q.poly.nvars();
    let mut out = trig_bracket(k, &q.poly)?;
    if q.shift > 0 {
        let s = -(q.shift as i64);
        let mut euler = MultiPoly::zero(n);
        for i in 0..n {
            euler = &euler + &q.poly.euler(i);
        }
        let half = Rat::new(1.into(), 2.into());
        let lin = GaussRat::real(Rat::from_integer(s.into()));
        let quad = GaussRat::real(half * Rat::from_integer((n as i64 * s * s).into()));
        out = &(&out + &euler.scale(&lin)) + &q.poly.scale(&quad);
    }
    Ok(LaurentPoly { poly: out, shift: q.shift }.normalize())
}

/// Expansion of `trig_cms_apply(m_μ)` in the monomial symmetric basis.
pub fn trig_cms_on_monomial(k: &Rat, mu: &Partition) -> Result<BTreeMap<Partition, GaussRat>> {
    let n = mu.len();
    let image = trig_cms_apply(k, &LaurentPoly::polynomial(monomial_symmetric(n, mu.parts())?))?;
    Ok(SymmetricPoly::new(image.poly)?.to_monomial_basis())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JackPolynomial {
    pub partition: Partition,
    pub poly: SymmetricPoly,
    /// Eigenvalue of `trig_cms_apply`.
    pub eigenvalue: GaussRat,
}

/// Monic, dominance-triangular eigenfunction `m_λ + Σ_{μ<λ} c_μ m_μ`.
pub fn jack_polynomial(lambda: &Partition, k: &Rat) -> Result<JackPolynomial> {
    let n = lambda.len();
    // Decreasing lexicographic order extends dominance, so every μ above ν comes first.
    let below: Vec<Partition> =
        partitions(lambda.weight(), n).into_iter().filter(|mu| mu.dominated_by(lambda).unwrap_or(false)).collect();
    let images: Vec<BTreeMap<Partition, GaussRat>> =
        below.iter().map(|mu| trig_cms_on_monomial(k, mu)).collect::<Result<_>>()?;
    let diag = |idx: usize| images[idx].get(&below[idx]).cloned().unwrap_or_else(GaussRat::zero);
    let e = diag(0);
    let mut coeffs: Vec<GaussRat> = vec![GaussRat::zero(); below.len()];
    coeffs[0] = GaussRat::one();
    for v in 1..below.len() {
        let mut rhs = GaussRat::zero();
        for mu in 0..v {
            if let Some(c) = images[mu].get(&below[v]) {
                rhs += &(&coeffs[mu] * c);
            }
        }
        let pivot = &e - &diag(v);
        if pivot.is_zero() {
            if rhs.is_zero() {
                continue;
            }
            return Err(Error::PivotVanished(format!("λ = {lambda}, μ = {}", below[v])));
        }
        coeffs[v] = &rhs / &pivot;
    }
    let basis: BTreeMap<Partition, GaussRat> =
        below.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect();
    Ok(JackPolynomial { partition: lambda.clone(), poly: SymmetricPoly::from_monomial_basis(n, &basis)?, eigenvalue: e })
}

/// Smallest admissible distance of a sample point from the walls `x_i − x_j ∈ (2π/a)ℤ`.
pub const WALL_MARGIN: f64 = 0.3;
pub const FD_STEP: f64 = 1e-4;
const EIGEN_POINTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JackEigenReport {
    /// `max |HΨ − E_λΨ| / max |E_λΨ|` over the sample points.
    pub residual: f64,
    /// `½Σ_i(aλ_i + ak(N − 2i + 1)/2)²`.
    pub energy_formula: f64,
    /// Rayleigh quotient `Σ Ψ̄HΨ / Σ|Ψ|²` over the sample points.
    pub energy_measured: f64,
    pub points: usize,
}

pub fn quasimomentum_energy(lambda: &Partition, k: f64, a: f64) -> f64 {
    let n = lambda.len() as f64;
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let q = a * l as f64 + a * k * (n - 2.0 * (i as f64 + 1.0) + 1.0) / 2.0;
            q * q / 2.0
        })
        .sum()
}

fn wall_distance(x: &[f64], period: f64) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let r = (x[i] - x[j]).rem_euclid(period);
            best = best.min(r.min(period - r));
        }
    }
    best
}

/// Interior sample points on the circle of circumference `2π/a`.
pub fn sample_points(n: usize, a: f64, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let period = 2.0 * std::f64::consts::PI / a;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..period)).collect();
        x.sort_by(|a, b| b.total_cmp(a));
        if wall_distance(&x, period) >= 2.0 * WALL_MARGIN {
            out.push(x);
        }
    }
    out
}

/// Finite-difference check of `HΨ = E_λΨ` for `Ψ = W^{1/2}P_λ(e^{iax})` at the given points.
pub fn jack_eigen_residual_at(
    jack: &JackPolynomial,
    k: f64,
    a: f64,
    points: &[Vec<f64>],
) -> Result<JackEigenReport> {
    let n = jack.partition.len();
    let period = 2.0 * std::f64::consts::PI / a;
    let psi = |x: &[f64]| -> C64 {
        let mut w = 1.0;
        for i in 0..n {
            for j in i + 1..n {
                w *= (a * (x[i] - x[j]) / 2.0).sin().abs().powf(k);
            }
        }
        let z: Vec<C64> = x.iter().map(|&xi| C64::from_polar(1.0, a * xi)).collect();
        jack.poly.poly().eval(&z) * w
    };
    let energy = quasimomentum_energy(&jack.partition, k, a);
    let h = FD_STEP;
    let (mut worst, mut scale, mut num, mut den) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for x in points {
        if x.len() != n || wall_distance(x, period) < WALL_MARGIN {
            return Err(Error::WallProximity);
        }
        let centre = psi(x);
        let mut lap = C64::new(0.0, 0.0);
        for i in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[i] += h;
            xm[i] -= h;
            lap += (psi(&xp) - centre * 2.0 + psi(&xm)) / (h * h);
        }
        let mut pot = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                pot += a * a / (4.0 * (a * (x[i] - x[j]) / 2.0).sin().powi(2));
            }
        }
        let h_psi = -lap / 2.0 + centre * (k * (k - 1.0) * pot);
        worst = worst.max((h_psi - centre * energy).norm());
        scale = scale.max((centre * energy).norm()).max(h_psi.norm());
        num += (centre.conj() * h_psi).re;
        den += centre.norm_sqr();
    }
    Ok(JackEigenReport {
        residual: if scale == 0.0 { 0.0 } else { worst / scale },
        energy_formula: energy,
        energy_measured: num / den,
        points: points.len(),
    })
}

/// Builds `P_λ` at coupling `k = spec.g` and checks it at deterministic interior points.
pub fn jack_eigen_check(lambda: &Partition, k: &Rat, spec: &ModelSpec) -> Result<JackEigenReport> {
    use num_traits::ToPrimitive;
    if spec.kind != PotentialKind::Trigonometric {
        return Err(Error::InvalidSpec("the Jack eigen-check needs a type III model".into()));
    }
    let kf = k.to_f64().unwrap_or(f64::NAN);
    if (spec.g - kf).abs() > 1e-12 || spec.m != 1.0 || spec.hbar() != 1.0 {
        return Err(Error::InvalidSpec("the Jack eigen-check needs g = k and ħ = m = 1".into()));
    }
    if spec.n != lambda.len() {
        return Err(Error::InvalidSpec(format!("partition has {} parts, N = {}", lambda.len(), spec.n)));
    }
    let a = spec.a()?;
    let jack = jack_polynomial(lambda, k)?;
    let seed = 0x7a11 + lambda.parts().iter().fold(0u64, |acc, &p| acc * 31 + p as u64);
    jack_eigen_residual_at(&jack, kf, a, &sample_points(lambda.len(), a, EIGEN_POINTS, seed))
}
