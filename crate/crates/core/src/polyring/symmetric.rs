//! Symmetric polynomials and the monomial, power-sum and Vandermonde-power bases.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::coeff::GaussRat;
use super::partition::Partition;
use super::poly::{vandermonde, MultiPoly};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisKind {
    /// `m_λ`: sum over the distinct permutations of `x^λ`.
    Monomial(Partition),
    /// `p_r = Σ x_i^r`.
    PowerSum(u32),
    /// `A_m = Δ^m`.
    VandermondePower(u32),
}

/// Distinct rearrangements of a multiset of exponents.
pub fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    fn rec(counts: &mut BTreeMap<u32, usize>, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        let keys: Vec<u32> = counts.iter().filter(|(_, &c)| c > 0).map(|(&k, _)| k).collect();
        for k in keys.into_iter().rev() {
            *counts.get_mut(&k).unwrap() -= 1;
            cur.push(k);
            rec(counts, left - 1, cur, out);
            cur.pop();
            *counts.get_mut(&k).unwrap() += 1;
        }
    }
    let mut counts = BTreeMap::new();
    for &e in v {
        *counts.entry(e).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    rec(&mut counts, v.len(), &mut Vec::new(), &mut out);
    out
}

pub fn symmetric_basis(n: usize, kind: &BasisKind) -> Result<MultiPoly> {
    match kind {
        BasisKind::Monomial(lambda) => {
            let lambda = Partition::with_len(lambda.parts().to_vec(), n)?;
            let mut out = MultiPoly::zero(n);
            for e in distinct_permutations(lambda.parts()) {
                out = &out + &MultiPoly::term(n, e, GaussRat::one());
            }
            out.check_degree()?;
            Ok(out)
        }
        BasisKind::PowerSum(r) => {
            let mut out = MultiPoly::zero(n);
            for i in 0..n {
                let mut e = vec![0; n];
                e[i] = *r;
                out = &out + &MultiPoly::term(n, e, GaussRat::one());
            }
            out.check_degree()?;
            Ok(out)
        }
        BasisKind::VandermondePower(m) => vandermonde(n, n).pow(*m),
    }
}

/// `m_λ` in `n` variables.
pub fn monomial_symmetric(n: usize, lambda: &[u32]) -> Result<MultiPoly> {
    symmetric_basis(n, &BasisKind::Monomial(Partition::with_len(lambda.to_vec(), n)?))
}

/// A polynomial known to be invariant under all permutations of its variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricPoly(MultiPoly);

impl SymmetricPoly {
    pub fn new(p: MultiPoly) -> Result<Self> {
        if !p.is_symmetric() {
            return Err(Error::NonSymmetric);
        }
        Ok(SymmetricPoly(p))
    }

    /// `Σ c_λ m_λ`.
    pub fn from_monomial_basis(n: usize, coeffs: &BTreeMap<Partition, GaussRat>) -> Result<Self> {
        let mut p = MultiPoly::zero(n);
        for (lambda, c) in coeffs {
            p = &p + &symmetric_basis(n, &BasisKind::Monomial(lambda.clone()))?.scale(c);
        }
        Ok(SymmetricPoly(p))
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.0
    }

    pub fn into_poly(self) -> MultiPoly {
        self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    /// Coefficients in the monomial symmetric basis: the coefficient of `m_λ` is that of `x^λ`.
    pub fn to_monomial_basis(&self) -> BTreeMap<Partition, GaussRat> {
        self.0
            .terms()
            .filter(|(m, _)| m.0.windows(2).all(|w| w[0] >= w[1]))
            .map(|(m, c)| (Partition::new(m.0.clone()).expect("sorted exponents"), c.clone()))
            .collect()
    }
}

/// `m[2] + 1/2*m[1,1]`, leading partitions (reverse lex) first.
impl fmt::Display for SymmetricPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = self.to_monomial_basis();
        if basis.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = basis
            .iter()
            .rev()
            .map(|(lambda, c)| {
                let parts: Vec<String> = lambda.trimmed().iter().map(u32::to_string).collect();
                let m = format!("m[{}]", parts.join(","));
                if c.is_one() {
                    m
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl From<SymmetricPoly> for MultiPoly {
    fn from(s: SymmetricPoly) -> Self {
        s.0
    }
}
