//! Weierstrass ℘ for a rectangular lattice `2ω₁ℤ + 2ω₂ℤ`, `ω₁ > 0`, `ω₂ = iτ`, `τ > 0`.
//!
//! The lattice sum is taken row by row. Each row `{w + 2kω₁ : k ∈ ℤ}` sums in closed form,
//! `Σ_k (z − 2kω₁)⁻² = c² csc²(cz)` with `c = π/2ω₁`, and row `n` contributes terms of size
//! `O(exp(−2c(2|n|−1)τ))`, ending the sum once that bound drops below machine precision.
//! When `τ < ω₁` the lattice is rotated by `i` first so the row sums always decay at least
//! as fast as `exp(−2π)`.

use std::f64::consts::PI;

use crate::{Error, Result, C64, POLE_GUARD};

const MAX_ROWS: usize = 64;

/// `℘(z; ω₁, iτ)`.
pub fn weierstrass_p(z: C64, omega1: f64, omega2_imag: f64) -> Result<C64> {
    weierstrass_p_and_derivative(z, omega1, omega2_imag).map(|(p, _)| p)
}

/// `(℘(z), ℘′(z))` for the lattice with half-periods `ω₁` and `iτ`.
pub fn weierstrass_p_and_derivative(z: C64, omega1: f64, omega2_imag: f64) -> Result<(C64, C64)> {
    if !(omega1 > 0.0 && omega2_imag > 0.0) {
        return Err(Error::InvalidArgument("half-periods must satisfy ω₁ > 0, -iω₂ > 0".into()));
    }
    if omega2_imag >= omega1 {
        row_sum(z, omega1, omega2_imag)
    } else {
        // ℘(z; Λ) = −℘(iz; iΛ), and iΛ has half-periods τ and iω₁.
        let iz = C64::i() * z;
        let (p, dp) = row_sum(iz, omega2_imag, omega1)?;
        Ok((-p, -C64::i() * dp))
    }
}

fn reduce(v: f64, half: f64) -> f64 {
    v - 2.0 * half * (v / (2.0 * half)).round()
}

/// `(csc²w, csc²w·cot w)` evaluated through `q = e^{±2iw}` with `|q| ≤ 1`.
fn csc2_cot(w: C64) -> (C64, C64) {
    let i = C64::i();
    let (q, sign) = if w.im >= 0.0 { ((2.0 * i * w).exp(), 1.0) } else { ((-2.0 * i * w).exp(), -1.0) };
    let one = C64::new(1.0, 0.0);
    let csc2 = -4.0 * q / ((one - q) * (one - q));
    let cot = sign * i * (q + one) / (q - one);
    (csc2, csc2 * cot)
}

fn row_sum(z: C64, omega1: f64, tau: f64) -> Result<(C64, C64)> {
    let zr = C64::new(reduce(z.re, omega1), reduce(z.im, tau));
    if zr.norm() < POLE_GUARD {
        return Err(Error::LatticePoint { re: z.re, im: z.im });
    }
    let c = PI / (2.0 * omega1);
    let (s0, d0) = csc2_cot(c * zr);
    let mut p = s0 - 1.0 / 3.0;
    let mut dp = d0;
    let decay = (-2.0 * c * tau).exp();
    let denom = (1.0 - decay) * (1.0 - decay);
    for n in 1..=MAX_ROWS {
        let shift = C64::new(0.0, 2.0 * n as f64 * tau);
        let (sp, dpp) = csc2_cot(c * (zr - shift));
        let (sm, dpm) = csc2_cot(c * (zr + shift));
        let (sc, _) = csc2_cot(c * shift);
        p += sp + sm - 2.0 * sc;
        dp += dpp + dpm;
        let bound = 12.0 * (-2.0 * c * (2.0 * n as f64 + 1.0) * tau).exp() / denom;
        if bound < 1e-17 * p.norm().max(1.0) {
            break;
        }
    }
    Ok((c * c * p, -2.0 * c * c * c * dp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Column-by-column oracle: sums each column `{2kω₁ + 2niτ : n}` in closed form with a
    /// plain complex sine, truncating at |k| ≤ K.
    fn column_oracle(z: C64, w1: f64, tau: f64, kmax: i64) -> C64 {
        let c = C64::new(0.0, -PI / (2.0 * tau)); // π/(2ω₂)
        let csc2 = |w: C64| {
            let s = w.sin();
            1.0 / (s * s)
        };
        let mut sum = c * c * csc2(c * z) - c * c / 3.0;
        for k in 1..=kmax {
            let w = C64::new(2.0 * k as f64 * w1, 0.0);
            let term = c * c * (csc2(c * (z - w)) + csc2(c * (z + w)) - 2.0 * csc2(c * w));
            if !term.is_finite() || term.norm() < 1e-18 * sum.norm() {
                break;
            }
            sum += term;
        }
        sum
    }

    /// Brute-force symmetric truncation of the double lattice sum.
    fn brute_force(z: C64, w1: f64, tau: f64, k: i64) -> C64 {
        let mut sum = 1.0 / (z * z);
        for a in -k..=k {
            for b in -k..=k {
                if a == 0 && b == 0 {
                    continue;
                }
                let w = C64::new(2.0 * a as f64 * w1, 2.0 * b as f64 * tau);
                sum += 1.0 / ((z - w) * (z - w)) - 1.0 / (w * w);
            }
        }
        sum
    }

    #[test]
    fn laurent_leading_term() {
        let v = weierstrass_p(C64::new(1e-3, 0.0), 1.0, 1.0).unwrap();
        assert!((v.re - 1e6).abs() / 1e6 < 1e-3);
    }

    #[test]
    fn agrees_with_column_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(w1, tau) in &[(1.0, 1.0), (0.8, 1.7), (1.9, 0.6), (PI / 2.0, 20.0)] {
            for _ in 0..10 {
                let z = C64::new(rng.gen_range(-w1..w1), rng.gen_range(-tau..tau));
                if z.norm() < 0.05 {
                    continue;
                }
                let ours = weierstrass_p(z, w1, tau).unwrap();
                let oracle = column_oracle(z, w1, tau, 200);
                assert!((ours - oracle).norm() < 1e-10 * oracle.norm().max(1.0), "{z}: {ours} vs {oracle}");
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_sum() {
        let z = C64::new(0.3, 0.2);
        let ours = weierstrass_p(z, 1.0, 1.3).unwrap();
        let bf = brute_force(z, 1.0, 1.3, 400);
        assert!((ours - bf).norm() < 1e-3 * bf.norm());
    }

    #[test]
    fn double_periodicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (w1, tau) = (1.1, 0.9);
        for _ in 0..10 {
            let z = C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let base = weierstrass_p(z, w1, tau).unwrap();
            let s1 = weierstrass_p(z + 2.0 * w1, w1, tau).unwrap();
            let s2 = weierstrass_p(z + C64::new(0.0, 2.0 * tau), w1, tau).unwrap();
            assert!((base - s1).norm() < 1e-9 * base.norm().max(1.0));
            assert!((base - s2).norm() < 1e-9 * base.norm().max(1.0));
        }
    }

    #[test]
    fn even_and_real_on_real_axis() {
        for &x in &[0.3, 0.9, 1.4] {
            let a = weierstrass_p(C64::new(x, 0.0), 1.5, 0.8).unwrap();
            let b = weierstrass_p(C64::new(-x, 0.0), 1.5, 0.8).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm());
            assert!(a.im.abs() < 1e-12 * a.norm());
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let (w1, tau) = (1.2, 1.0);
        let z = C64::new(0.4, 0.3);
        let h = 1e-5;
        let fd = (weierstrass_p(z + h, w1, tau).unwrap() - weierstrass_p(z - h, w1, tau).unwrap()) / (2.0 * h);
        let (_, dp) = weierstrass_p_and_derivative(z, w1, tau).unwrap();
        assert!((fd - dp).norm() < 1e-6 * dp.norm());
    }

    #[test]
    fn trigonometric_and_hyperbolic_degenerations() {
        let a: f64 = 1.0;
        let trig = |x: f64| {
            let s = (a * x / 2.0).sin();
            a * a / (4.0 * s * s)
        };
        let hyp = |x: f64| {
            let s = (a * x / 2.0).sinh();
            a * a / (4.0 * s * s)
        };
        let p_trig = |x: f64| weierstrass_p(C64::new(x, 0.0), PI / a, 20.0).unwrap().re;
        let p_hyp = |x: f64| weierstrass_p(C64::new(x, 0.0), 20.0, PI / a).unwrap().re;
        let c_trig = p_trig(0.7) - trig(0.7);
        let c_hyp = p_hyp(0.7) - hyp(0.7);
        for &x in &[0.3, 1.3, 2.2] {
            assert!((p_trig(x) - trig(x) - c_trig).abs() < 1e-8);
            assert!((p_hyp(x) - hyp(x) - c_hyp).abs() < 1e-8);
        }
    }

    #[test]
    fn lattice_points_are_rejected() {
        assert!(weierstrass_p(C64::new(0.0, 0.0), 1.0, 1.0).is_err());
        assert!(weierstrass_p(C64::new(2.0, 2.0), 1.0, 1.0).is_err());
        assert!(weierstrass_p(C64::new(4.0, 0.0), 1.0, 3.0).is_err());
    }
}
