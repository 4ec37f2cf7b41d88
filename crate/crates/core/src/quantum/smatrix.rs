//! Scattering phases of the rational and hyperbolic systems.

use crate::model::gamma_fn;
use crate::polyring::GaussRat;
use crate::{Error, Result, C64};

/// `(−1)^{(1−m)N(N−1)/2}`.
pub fn rational_smatrix_sign(n: usize, m: u32) -> i32 {
    let e = (1 - m as i64) * (n * n.saturating_sub(1) / 2) as i64;
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The momentum-independent rational S-matrix phase, by the closed form and, independently,
/// as the constant ratio `(−1)^{|σ₀|}A_m(iσ₀p)/A_m(ip)` for the order-reversing `σ₀`.
pub fn rational_smatrix_phase(n: usize, m: u32) -> Result<i32> {
    let formula = rational_smatrix_sign(n, m);
    if n < 2 {
        return Ok(formula);
    }
    let pairs = n * (n - 1) / 2;
    let a = crate::polyring::vandermonde(n, n).pow(m)?.scale(&GaussRat::i_pow((m as usize * pairs) as i64));
    let reversal: Vec<usize> = (0..n).rev().collect();
    let a_rev = a.act_permutation(&reversal);
    let sigma_sign = if pairs.is_multiple_of(2) { 1 } else { -1 };
    let ratio = if a_rev == a {
        sigma_sign
    } else if a_rev == -&a {
        -sigma_sign
    } else {
        return Err(Error::InvalidState("A_m(iσ₀p)/A_m(ip) is not constant".into()));
    };
    if ratio != formula {
        return Err(Error::InvalidState(format!("S-matrix phase mismatch: formula {formula}, ratio {ratio}")));
    }
    Ok(formula)
}

/// Two-body hyperbolic S-matrix `−u(v)`, `u(v) = Γ(iv+1)Γ(−iv+g)/(Γ(−iv+1)Γ(iv+g))`.
pub fn hyperbolic_two_body_smatrix(v: f64, g: f64) -> Result<C64> {
    if !(g > 0.0) {
        return Err(Error::InvalidArgument(format!("coupling g = {g} must be positive")));
    }
    let iv = C64::new(0.0, v);
    let num = gamma_fn(iv + 1.0)? * gamma_fn(-iv + g)?;
    let den = gamma_fn(-iv + 1.0)? * gamma_fn(iv + g)?;
    Ok(-(num / den))
}
