//! Baker–Akhiezer functions of the rational CMS operator at integer coupling `g = −m`.
//!
//! Elements are `ψ = P(λ, x)e^{iλ·x}` with `P = Q/Δ(x)^d`. The ring has `2N` variables:
//! `x_1..x_N` in slots `0..N` and `λ_1..λ_N` in slots `N..2N`.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::polyring::{vandermonde, GaussRat, Monomial, MultiPoly, Rat, RationalPoly};
use crate::{Error, Result};

/// Desk guard on `M = mN(N−1)/2`.
pub const BA_GUARD: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BAElement {
    pub n: usize,
    pub m: u32,
    pub prefactor: RationalPoly,
}

fn x_degree(m: &Monomial, n: usize) -> u32 {
    m.0[..n].iter().sum()
}

fn lambda_degree(m: &Monomial, n: usize) -> u32 {
    m.0[n..].iter().sum()
}

/// `A_m` of the `x` block (`lambda = false`) or the `λ` block, scaled by `i^{deg}` if asked.
fn vandermonde_power(n: usize, m: u32, lambda: bool, times_i: bool) -> Result<MultiPoly> {
    let base = vandermonde(n, n).pow(m)?;
    let offset = if lambda { n } else { 0 };
    let map: Vec<usize> = (0..n).map(|k| k + offset).collect();
    let mut out = base.remap(2 * n, &map);
    if times_i {
        out = out.scale(&GaussRat::i_pow((m as usize * n * (n - 1) / 2) as i64));
    }
    Ok(out)
}

/// Exact `Δ/(x_i − x_j)` in the `2N`-variable ring.
fn vandermonde_without(n: usize, i: usize, j: usize) -> MultiPoly {
    let mut out = MultiPoly::one(2 * n);
    for a in 0..n {
        for b in a + 1..n {
            if (a, b) != (i, j) {
                out = &out * &MultiPoly::difference(2 * n, a, b);
            }
        }
    }
    out
}

/// `T R = ½ΔR + iλ·∇R − m(m+1)Σ_{i<j}R/(x_i − x_j)²`, so that
/// `(½p₂(λ) − Ĥ)(R e^{iλ·x}) = (T R)e^{iλ·x}` for `Ĥ = −½Δ + m(m+1)Σ(x_i − x_j)^{−2}`.
pub fn ba_operator(n: usize, m: u32, r: &RationalPoly) -> Result<RationalPoly> {
    let nv = 2 * n;
    let q = &r.numerator;
    let d = GaussRat::from_int(r.denom_power as i64);
    let delta = vandermonde(nv, n);
    let delta2 = delta.checked_mul(&delta)?;
    let mut num = MultiPoly::zero(nv);
    let half = GaussRat::real(Rat::new(BigInt::from(1), BigInt::from(2)));
    let i_unit = GaussRat::i();
    for k in 0..n {
        let qk = q.derive(k);
        let qkk = qk.derive(k);
        let dk = delta.derive(k);
        let dkk = dk.derive(k);
        // Δ²(Q/Δ^d)'' = Δ²Q'' − 2dΔΔ'Q' − dΔQΔ'' + d(d+1)QΔ'², all over Δ^{d+2}.
        let mut lap = delta2.checked_mul(&qkk)?;
        lap = &lap - &delta.checked_mul(&dk)?.checked_mul(&qk)?.scale(&(&d * &GaussRat::from_int(2)));
        lap = &lap - &delta.checked_mul(q)?.checked_mul(&dkk)?.scale(&d);
        let dd1 = &d * &(&d + &GaussRat::one());
        lap = &lap + &q.checked_mul(&dk.checked_mul(&dk)?)?.scale(&dd1);
        num = &num + &lap.scale(&half);
        // iλ_k Δ(ΔQ' − dQΔ') over Δ^{d+2}.
        let grad = &delta.checked_mul(&qk)? - &q.checked_mul(&dk)?.scale(&d);
        let lam = MultiPoly::var(nv, n + k);
        num = &num + &lam.checked_mul(&delta.checked_mul(&grad)?)?.scale(&i_unit);
    }
    let coupling = GaussRat::from_int((m as i64) * (m as i64 + 1));
    for a in 0..n {
        for b in a + 1..n {
            let rest = vandermonde_without(n, a, b);
            num = &num - &q.checked_mul(&rest.checked_mul(&rest)?)?.scale(&coupling);
        }
    }
    Ok(RationalPoly::new(num, r.denom_power + 2, n))
}

/// `ψ = (1/M!)(½p₂(λ) − Ĥ)^M (A_m e^{iλ·x})` with `M = mN(N−1)/2`.
pub fn ba_function(n: usize, m: u32) -> Result<BAElement> {
    if n < 1 || m < 1 {
        return Err(Error::InvalidArgument("the BA function needs N ≥ 1 and m ≥ 1".into()));
    }
    let big_m = m * (n * (n - 1) / 2) as u32;
    if big_m > BA_GUARD {
        return Err(Error::GuardExceeded(format!("mN(N−1)/2 = {big_m} > {BA_GUARD}")));
    }
    let mut r = RationalPoly::polynomial(vandermonde_power(n, m, false, false)?, n);
    let mut factorial = BigInt::one();
    for step in 1..=big_m {
        r = ba_operator(n, m, &r)?;
        factorial *= BigInt::from(step);
    }
    let scale = GaussRat::real(Rat::new(BigInt::one(), factorial));
    let prefactor = RationalPoly::new(r.numerator.scale(&scale), r.denom_power, n);
    Ok(BAElement { n, m, prefactor })
}

impl BAElement {
    /// `M = mN(N−1)/2`.
    pub fn order(&self) -> u32 {
        self.m * (self.n * (self.n - 1) / 2) as u32
    }

    /// `e^{−iλ·x}(Ĥ − ½p₂(λ))ψ`, which must vanish identically.
    pub fn eigen_defect(&self) -> Result<RationalPoly> {
        let t = ba_operator(self.n, self.m, &self.prefactor)?;
        Ok(RationalPoly::new(-t.numerator, t.denom_power, self.n))
    }

    /// Top λ-degree part of the prefactor, as a rational function.
    pub fn leading_term(&self) -> RationalPoly {
        let n = self.n;
        let q = &self.prefactor.numerator;
        let top = q.terms().map(|(m, _)| lambda_degree(m, n)).max().unwrap_or(0);
        let part = q.filter(|m| lambda_degree(m, n) == top);
        RationalPoly::new(part, self.prefactor.denom_power, n)
    }

    /// Whether the leading term equals `A_m(iλ)`.
    pub fn leading_term_is_vandermonde(&self) -> Result<bool> {
        Ok(self.leading_term() == RationalPoly::polynomial(vandermonde_power(self.n, self.m, true, true)?, self.n))
    }

    /// Pole order of the prefactor along every wall `x_i = x_j`.
    pub fn wall_pole_orders(&self) -> Vec<((usize, usize), i64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(((i, j), self.prefactor.wall_pole_order(i, j)));
            }
        }
        out
    }

    /// `ψ(σ_{i,i+1}λ, x) = (−1)^m ψ(λ, σ_{i,i+1}x)` for every adjacent transposition.
    pub fn sign_law_holds(&self) -> bool {
        let n = self.n;
        let q = &self.prefactor.numerator;
        // With Δ(σx) = −Δ(x) the identity reads Q(σλ, x) = (−1)^{m+d} Q(λ, σx).
        let sign = if (self.m + self.prefactor.denom_power).is_multiple_of(2) { GaussRat::one() } else { -GaussRat::one() };
        (0..n.saturating_sub(1)).all(|i| q.swap(n + i, n + i + 1) == q.swap(i, i + 1).scale(&sign))
    }
}

/// `Σ_{k<K} (iλ_a u)^k/k!` with `u` in slot `u_slot`.
fn exp_series(nv: usize, lambda_slot: usize, u_slot: usize, order: u32) -> MultiPoly {
    let mut out = MultiPoly::zero(nv);
    let mut fact = BigInt::one();
    for k in 0..order {
        if k > 0 {
            fact *= BigInt::from(k);
        }
        let mut e = vec![0; nv];
        e[lambda_slot] = k;
        e[u_slot] = k;
        let c = &GaussRat::i_pow(k as i64) * &GaussRat::real(Rat::new(BigInt::one(), fact.clone()));
        out.add_term(Monomial(e), c);
    }
    out
}

/// Quotient witness for `Ψ = Σ_σ (−1)^σ ψ(σλ, x) = A_{m+1}(x) J_m(λ, x)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntisymmetrizationWitness {
    /// Vanishing order of `Ψ` verified along each wall (at least `m + 1`).
    pub wall_orders: Vec<((usize, usize), u32)>,
    /// `J_m(λ, 0)` in the canonical text form, variables `x1..xN` standing for `λ_1..λ_N`.
    pub j_at_origin: String,
    pub j_at_origin_is_zero: bool,
}

/// Checks `A_{m+1} | Ψ` and extracts `J_m(λ, 0)`.
///
/// `Ψ` involves the exponentials `e^{iσλ·x}`, so divisibility is tested on expansions. Near
/// `x_i = x_j` the permutations pair up as `σ`, `τ_ij σ` with a shared exponential factor, and
/// relabelling `λ` reduces every pair to the identity pair: `Q(λ)e^{iλ_i u} − Q(τλ)e^{iλ_j u}`
/// with `x_i = x_j + u` must be `O(u^{d+m+1})`. At `x = 0` the Taylor series of `Δ^dΨ` starts
/// in degree `(d+m+1)N(N−1)/2` with `Δ^{d+m+1}J_m(λ, 0)`.
pub fn ba_antisymmetrize(psi: &BAElement) -> Result<AntisymmetrizationWitness> {
    let n = psi.n;
    let nv = 2 * n;
    let q = &psi.prefactor.numerator;
    let d = psi.prefactor.denom_power;
    let order = d + psi.m + 1;

    let mut wall_orders = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let shift = &MultiPoly::var(nv, i) + &MultiPoly::var(nv, j);
            let q_id = q.substitute(i, &shift)?;
            let q_tau = q.swap(n + i, n + j).substitute(i, &shift)?;
            let f = &q_id.checked_mul(&exp_series(nv, n + i, i, order))?
                - &q_tau.checked_mul(&exp_series(nv, n + j, i, order))?;
            if f.terms().any(|(m, _)| m.0[i] < order) {
                return Err(Error::NotDivisible(format!("Ψ vanishes to order < {} on x{} = x{}", psi.m + 1, i + 1, j + 1)));
            }
            wall_orders.push(((i, j), psi.m + 1));
        }
    }

    let top = order * (n * (n - 1) / 2) as u32;
    let mut series_sum = MultiPoly::zero(nv);
    for (sigma, sign) in permutations_with_sign(n) {
        // λ ↦ σλ on the λ block only.
        let map: Vec<usize> = (0..n).chain(sigma.iter().map(|&s| n + s)).collect();
        let q_sigma = q.act_permutation(&map);
        // Truncated e^{i(σλ)·x}: (i Σ_k λ_{σ(k)} x_k)^r / r! for r ≤ top.
        let mut lin = MultiPoly::zero(nv);
        for k in 0..n {
            lin = &lin + &(&MultiPoly::var(nv, k) * &MultiPoly::var(nv, n + sigma[k]));
        }
        lin = lin.scale(&GaussRat::i());
        let mut power = MultiPoly::one(nv);
        let mut fact = BigInt::one();
        let sign_c = GaussRat::from_int(sign);
        for r in 0..=top {
            if r > 0 {
                power = power.checked_mul(&lin)?;
                fact *= BigInt::from(r);
            }
            let low = q_sigma.filter(|m| x_degree(m, n) + r <= top);
            if low.is_empty() {
                continue;
            }
            let c = &sign_c * &GaussRat::real(Rat::new(BigInt::one(), fact.clone()));
            series_sum = &series_sum + &low.checked_mul(&power)?.scale(&c);
        }
    }
    let truncated = series_sum.filter(|m| x_degree(m, n) <= top);
    if truncated.terms().any(|(m, _)| x_degree(m, n) < top) {
        return Err(Error::NotDivisible("Ψ does not vanish to the expected order at x = 0".into()));
    }
    let j0 = truncated.divide_by_vandermonde(n).and_then(|p| {
        let mut p = p;
        for _ in 1..order {
            p = p.divide_by_vandermonde(n)?;
        }
        Ok(p)
    })?;
    if j0.terms().any(|(m, _)| x_degree(m, n) != 0) {
        return Err(Error::NotDivisible("J_m(λ, 0) depends on x".into()));
    }
    let lambda_map: Vec<usize> = (0..nv).map(|k| k.saturating_sub(n)).collect();
    let j_lambda = j0.remap(n, &lambda_map);
    Ok(AntisymmetrizationWitness {
        wall_orders,
        j_at_origin_is_zero: j_lambda.is_zero(),
        j_at_origin: j_lambda.to_string(),
    })
}

/// All permutations of `0..n` with their signs.
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut perms = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
            (p, if inversions % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_body_m1_closed_form() {
        // N = 2, m = 1: P = i(λ1 − λ2) − 2/(x1 − x2).
        let psi = ba_function(2, 1).unwrap();
        let x12 = MultiPoly::difference(4, 0, 1);
        let l12 = MultiPoly::difference(4, 2, 3).scale(&GaussRat::i());
        let expect = &(&l12 * &x12) - &MultiPoly::constant(4, GaussRat::from_int(2));
        assert_eq!(psi.prefactor, RationalPoly::new(expect, 1, 2));
        assert!(psi.eigen_defect().unwrap().is_zero());
        assert!(psi.leading_term_is_vandermonde().unwrap());
        assert!(psi.sign_law_holds());
        for (_, order) in psi.wall_pole_orders() {
            assert!(order <= 1);
        }
    }

    #[test]
    fn two_body_m2() {
        let psi = ba_function(2, 2).unwrap();
        assert!(psi.eigen_defect().unwrap().is_zero());
        assert!(psi.leading_term_is_vandermonde().unwrap());
        assert!(psi.sign_law_holds());
        assert!(psi.wall_pole_orders().iter().all(|(_, o)| *o <= 2));
        let w = ba_antisymmetrize(&psi).unwrap();
        assert!(!w.j_at_origin_is_zero);
    }

    #[test]
    fn antisymmetrization_two_body() {
        let psi = ba_function(2, 1).unwrap();
        let w = ba_antisymmetrize(&psi).unwrap();
        assert_eq!(w.wall_orders, vec![((0, 1), 2)]);
        assert!(!w.j_at_origin_is_zero, "{}", w.j_at_origin);
    }

    #[test]
    fn three_body_m1() {
        let psi = ba_function(3, 1).unwrap();
        assert!(psi.eigen_defect().unwrap().is_zero());
        assert!(psi.leading_term_is_vandermonde().unwrap());
        assert!(psi.sign_law_holds());
        assert!(psi.wall_pole_orders().iter().all(|(_, o)| *o <= 1));
        let w = ba_antisymmetrize(&psi).unwrap();
        assert_eq!(w.wall_orders.len(), 3);
        assert!(!w.j_at_origin_is_zero);
    }

    #[test]
    fn broken_prefactor_is_caught() {
        let mut psi = ba_function(2, 1).unwrap();
        psi.prefactor.numerator = &psi.prefactor.numerator + &MultiPoly::one(4);
        assert!(!psi.eigen_defect().unwrap().is_zero());
        assert!(ba_antisymmetrize(&psi).is_err());
    }

    #[test]
    fn guard() {
        assert!(matches!(ba_function(4, 3), Err(Error::GuardExceeded(_))));
        assert_eq!(permutations_with_sign(3).iter().filter(|(_, s)| *s < 0).count(), 3);
    }

}
