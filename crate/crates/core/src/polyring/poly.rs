//! Sparse multivariate polynomials with exact Gaussian-rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::coeff::GaussRat;
use crate::{Error, Result, C64};

/// Total-degree bound enforced by the checked operations.
pub const DEGREE_GUARD: u32 = 64;

/// Exponent vector ordered graded-lexicographically (total degree first, then `x1`, `x2`, …).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, GaussRat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussRat::one())
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, e, GaussRat::one())
    }

    pub fn term(nvars: usize, exps: Vec<u32>, c: GaussRat) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(exps), c);
        p
    }

    /// `x_i − x_j`.
    pub fn difference(nvars: usize, i: usize, j: usize) -> Self {
        &Self::var(nvars, i) - &Self::var(nvars, j)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> GaussRat {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn check_degree(&self) -> Result<()> {
        match self.degree() {
            Some(d) if d > DEGREE_GUARD => Err(Error::DegreeGuard(d)),
            _ => Ok(()),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Product with a degree-guard check.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.degree().unwrap_or(0) + other.degree().unwrap_or(0);
        if d > DEGREE_GUARD {
            return Err(Error::DegreeGuard(d));
        }
        Ok(self * other)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }

    /// `∂p/∂x_i`.
    pub fn derive(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * &GaussRat::from_int(e as i64));
        }
        out
    }

    /// Euler operator `x_i ∂p/∂x_i`.
    pub fn euler(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[i] != 0 {
                out.add_term(m.clone(), c * &GaussRat::from_int(m.0[i] as i64));
            }
        }
        out
    }

    /// Relabels variables: `x_k` becomes `x_{σ(k)}`.
    pub fn act_permutation(&self, sigma: &[usize]) -> Self {
        assert_eq!(sigma.len(), self.nvars, "permutation length");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; self.nvars];
            for (k, &e) in m.0.iter().enumerate() {
                exps[sigma[k]] = e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Exchange of `x_i` and `x_j`.
    pub fn swap(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps.swap(i, j);
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Symmetric in the first `n` variables.
    pub fn is_symmetric_in(&self, n: usize) -> bool {
        (0..n.saturating_sub(1)).all(|i| self.swap(i, i + 1) == *self)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_symmetric_in(self.nvars)
    }

    /// Embeds into `nvars` variables, sending `x_k` to `x_{map[k]}`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; nvars];
            for (k, &e) in m.0.iter().enumerate() {
                exps[map[k]] += e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Coefficients of `p` as a polynomial in `x_i`: `p = Σ_a c_a x_i^a` with `c_a` free of `x_i`.
    fn split_by(&self, i: usize) -> Vec<MultiPoly> {
        let mut parts = vec![Self::zero(self.nvars); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let a = std::mem::replace(&mut exps[i], 0) as usize;
            parts[a].add_term(Monomial(exps), c.clone());
        }
        parts
    }

    /// Replaces `x_i` by `q` (which may itself involve `x_i`).
    pub fn substitute(&self, i: usize, q: &MultiPoly) -> Result<Self> {
        let parts = self.split_by(i);
        let mut out = Self::zero(self.nvars);
        for c in parts.iter().rev() {
            out = &out.checked_mul(q)? + c;
        }
        Ok(out)
    }

    /// Exact quotient by `x_i − x_j`; errors when the remainder is nonzero.
    pub fn divide_linear(&self, i: usize, j: usize) -> Result<Self> {
        let not_divisible = || Error::NotDivisible(format!("by x{} - x{}", i + 1, j + 1));
        let parts = self.split_by(i);
        let d = parts.len() - 1;
        if d == 0 {
            return if self.is_zero() { Ok(self.clone()) } else { Err(not_divisible()) };
        }
        // Synthetic division in x_i with root x_j.
        let xj = Self::var(self.nvars, j);
        let mut q = vec![Self::zero(self.nvars); d];
        let mut carry = Self::zero(self.nvars);
        for a in (1..=d).rev() {
            carry = &parts[a] + &(&carry * &xj);
            q[a - 1] = carry.clone();
        }
        if !(&parts[0] + &(&carry * &xj)).is_zero() {
            return Err(not_divisible());
        }
        let mut out = Self::zero(self.nvars);
        for (a, part) in q.into_iter().enumerate() {
            for (m, c) in part.terms {
                let mut exps = m.0;
                exps[i] += a as u32;
                out.add_term(Monomial(exps), c);
            }
        }
        Ok(out)
    }

    /// `(p − σ_ij p)/(x_i − x_j)`, computed term by term.
    pub fn divided_difference(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let (a, b) = (m.0[i], m.0[j]);
            if a == b {
                continue;
            }
            let (hi, lo, c) = if a > b { (a, b, c.clone()) } else { (b, a, -c) };
            // x_i^hi x_j^lo − x_i^lo x_j^hi = (x_i − x_j) x_i^lo x_j^lo Σ_s x_i^(hi−lo−1−s) x_j^s.
            let span = hi - lo;
            for s in 0..span {
                let mut exps = m.0.clone();
                exps[i] = lo + span - 1 - s;
                exps[j] = lo + s;
                out.add_term(Monomial(exps), c.clone());
            }
        }
        out
    }

    /// Evaluates at a complex point (coefficients rounded to `f64`).
    pub fn eval(&self, x: &[C64]) -> C64 {
        let mut sum = C64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_c64();
            for (k, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= x[k].powu(e);
                }
            }
            sum += t;
        }
        sum
    }
}

/// `Δ = Π_{i<j<n}(x_i − x_j)` inside a ring of `nvars ≥ n` variables.
pub fn vandermonde(nvars: usize, n: usize) -> MultiPoly {
    let mut out = MultiPoly::one(nvars);
    for i in 0..n {
        for j in i + 1..n {
            out = &out * &MultiPoly::difference(nvars, i, j);
        }
    }
    out
}

impl MultiPoly {
    /// Exact quotient by `Δ` over the first `n` variables.
    pub fn divide_by_vandermonde(&self, n: usize) -> Result<Self> {
        let mut q = self.clone();
        for i in 0..n {
            for j in i + 1..n {
                q = q.divide_linear(i, j)?;
            }
        }
        Ok(q)
    }
}

impl<'a> Add<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &'a MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "ring mismatch");
        let mut acc: BTreeMap<Monomial, GaussRat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                let entry = acc.entry(Monomial(exps)).or_insert_with(GaussRat::zero);
                *entry += &(ca * cb);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { nvars: self.nvars, terms: acc }
    }
}

macro_rules! owned_poly_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, o: MultiPoly) -> MultiPoly {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, o: &'a MultiPoly) -> MultiPoly {
                (&self).$f(o)
            }
        }
    };
}
owned_poly_binop!(Add, add);
owned_poly_binop!(Sub, sub);
owned_poly_binop!(Mul, mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-GaussRat::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Canonical text: terms in decreasing graded-lex order, e.g. `3/2*x1^2*x2 + -1`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| if e == 1 { format!("x{}", k + 1) } else { format!("x{}^{}", k + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{c}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
