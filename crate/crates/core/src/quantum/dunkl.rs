//! Rational Dunkl operators, the restricted k-Laplacian and the gauged quantum integrals.

use serde::Serialize;

use crate::polyring::{GaussRat, MultiPoly, Rat, SymmetricPoly};
use crate::{Error, Result};

/// `D_i(k) p = ∂_i p + k Σ_{j≠i} (p − σ_ij p)/(x_i − x_j)`.
pub fn dunkl_apply(i: usize, k: &Rat, p: &MultiPoly) -> Result<MultiPoly> {
    p.check_degree()?;
    let n = p.nvars();
    if i >= n {
        return Err(Error::InvalidArgument(format!("Dunkl index {i} out of range for N = {n}")));
    }
    let mut exchange = MultiPoly::zero(n);
    for j in (0..n).filter(|&j| j != i) {
        exchange = &exchange + &p.divided_difference(i, j);
    }
    Ok(&p.derive(i) + &exchange.scale(&GaussRat::real(k.clone())))
}

/// `Σ_i D_i(k)² p`.
pub fn dunkl_laplacian(k: &Rat, p: &MultiPoly) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(p.nvars());
    for i in 0..p.nvars() {
        out = &out + &dunkl_apply(i, k, &dunkl_apply(i, k, p)?)?;
    }
    Ok(out)
}

/// `Σ∂_i² p + 2k Σ_{i<j} (∂_i − ∂_j)p/(x_i − x_j)` on symmetric `p`.
pub fn restricted_laplacian_apply(k: &Rat, p: &SymmetricPoly) -> Result<SymmetricPoly> {
    let q = p.poly();
    q.check_degree()?;
    let n = q.nvars();
    let mut out = MultiPoly::zero(n);
    for i in 0..n {
        out = &out + &q.derive(i).derive(i);
    }
    let two_k = GaussRat::real(k.clone() * Rat::from_integer(2.into()));
    for i in 0..n {
        for j in i + 1..n {
            let diff = &q.derive(i) - &q.derive(j);
            out = &out + &diff.divide_linear(i, j)?.scale(&two_k);
        }
    }
    SymmetricPoly::new(out)
}

/// `p(−iD_1, …, −iD_N) q` for a symmetric polynomial `pspec` in N commuting slots.
pub fn gauged_integral_apply(pspec: &MultiPoly, k: &Rat, q: &SymmetricPoly) -> Result<SymmetricPoly> {
    let n = q.nvars();
    if pspec.nvars() != n {
        return Err(Error::InvalidArgument(format!("operator symbol has {} slots, N = {n}", pspec.nvars())));
    }
    if !pspec.is_symmetric() {
        return Err(Error::NonSymmetric);
    }
    let mut out = MultiPoly::zero(n);
    for (mono, c) in pspec.terms() {
        let mut cur = q.poly().clone();
        for (i, &e) in mono.0.iter().enumerate() {
            for _ in 0..e {
                cur = dunkl_apply(i, k, &cur)?;
            }
        }
        let phase = GaussRat::i_pow(-(mono.degree() as i64));
        out = &out + &cur.scale(&(c * &phase));
    }
    SymmetricPoly::new(out)
}

/// Outcome of an exhaustive exact identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// All monomials in `n` variables of total degree ≤ `max_degree`.
pub fn monomials_up_to(n: usize, max_degree: u32) -> Vec<MultiPoly> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut exps = Vec::new();
    rec(n, max_degree, &mut Vec::new(), &mut exps);
    exps.into_iter().map(|e| MultiPoly::term(n, e, GaussRat::from_int(1))).collect()
}

/// `[D_i, D_j] = 0` on every monomial of degree ≤ `max_degree`.
pub fn check_commutativity(n: usize, max_degree: u32, k: &Rat) -> Result<IdentityReport> {
    let mut report = IdentityReport { name: "dunkl-commutativity".into(), checked: 0, failures: 0 };
    for p in monomials_up_to(n, max_degree) {
        let d: Vec<MultiPoly> = (0..n).map(|i| dunkl_apply(i, k, &p)).collect::<Result<_>>()?;
        for i in 0..n {
            for j in i + 1..n {
                let lhs = dunkl_apply(i, k, &d[j])?;
                let rhs = dunkl_apply(j, k, &d[i])?;
                report.checked += 1;
                if lhs != rhs {
                    report.failures += 1;
                }
            }
        }
    }
    Ok(report)
}

/// `σ_ij D_i σ_ij = D_j` and `σ_jl D_i σ_jl = D_i` (`l ≠ i`) on every monomial.
pub fn check_equivariance(n: usize, max_degree: u32, k: &Rat) -> Result<IdentityReport> {
    let mut report = IdentityReport { name: "dunkl-equivariance".into(), checked: 0, failures: 0 };
    for p in monomials_up_to(n, max_degree) {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let conj = dunkl_apply(i, k, &p.swap(i, j))?.swap(i, j);
                report.checked += 1;
                if conj != dunkl_apply(j, k, &p)? {
                    report.failures += 1;
                }
                for l in (0..n).filter(|&l| l != i && l != j && j < l) {
                    let conj = dunkl_apply(i, k, &p.swap(j, l))?.swap(j, l);
                    report.checked += 1;
                    if conj != dunkl_apply(i, k, &p)? {
                        report.failures += 1;
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `D_i` maps polynomials to polynomials whose degree drops by exactly one (or to zero).
pub fn check_invariance(n: usize, max_degree: u32, k: &Rat) -> Result<IdentityReport> {
    let mut report = IdentityReport { name: "dunkl-polynomial-invariance".into(), checked: 0, failures: 0 };
    for p in monomials_up_to(n, max_degree) {
        let deg = p.degree().unwrap_or(0);
        for i in 0..n {
            let d = dunkl_apply(i, k, &p)?;
            report.checked += 1;
            let ok = d.is_zero() || (deg > 0 && d.terms().all(|(m, _)| m.degree() == deg - 1));
            if !ok {
                report.failures += 1;
            }
        }
    }
    Ok(report)
}
