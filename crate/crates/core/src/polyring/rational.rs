//! Rational functions `Q/Δ^d` whose only poles lie on the walls `x_i = x_j`.

use std::fmt;

use super::poly::{vandermonde, MultiPoly};
use crate::Result;

/// `numerator / Δ^denom_power` with `Δ` the Vandermonde of the first `nx` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    pub numerator: MultiPoly,
    pub denom_power: u32,
    nx: usize,
}

impl RationalPoly {
    /// Builds and canonicalizes.
    pub fn new(numerator: MultiPoly, denom_power: u32, nx: usize) -> Self {
        let mut r = RationalPoly { numerator, denom_power, nx };
        r.canonicalize();
        r
    }

    pub fn polynomial(p: MultiPoly, nx: usize) -> Self {
        RationalPoly { numerator: p, denom_power: 0, nx }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn vandermonde(&self) -> MultiPoly {
        vandermonde(self.nvars(), self.nx)
    }

    /// Divides out powers of `Δ` until the numerator is no longer divisible.
    pub fn canonicalize(&mut self) {
        if self.numerator.is_zero() {
            self.denom_power = 0;
            return;
        }
        while self.denom_power > 0 {
            match self.numerator.divide_by_vandermonde(self.nx) {
                Ok(q) => {
                    self.numerator = q;
                    self.denom_power -= 1;
                }
                Err(_) => break,
            }
        }
    }

    /// Numerator rewritten over `Δ^d` for `d ≥ denom_power`.
    pub fn numerator_over(&self, d: u32) -> Result<MultiPoly> {
        let extra = self.vandermonde().pow(d - self.denom_power)?;
        self.numerator.checked_mul(&extra)
    }

    /// Pole order along the wall `x_i = x_j` (negative values are zeros).
    pub fn wall_pole_order(&self, i: usize, j: usize) -> i64 {
        if self.numerator.is_zero() {
            return i64::MIN;
        }
        let mut q = self.numerator.clone();
        let mut mult = 0i64;
        while let Ok(next) = q.divide_linear(i, j) {
            q = next;
            mult += 1;
        }
        self.denom_power as i64 - mult
    }

    pub fn add(&self, other: &RationalPoly) -> Result<RationalPoly> {
        let d = self.denom_power.max(other.denom_power);
        let num = &self.numerator_over(d)? + &other.numerator_over(d)?;
        Ok(RationalPoly::new(num, d, self.nx))
    }

    pub fn sub(&self, other: &RationalPoly) -> Result<RationalPoly> {
        let d = self.denom_power.max(other.denom_power);
        let num = &self.numerator_over(d)? - &other.numerator_over(d)?;
        Ok(RationalPoly::new(num, d, self.nx))
    }

    pub fn mul(&self, other: &RationalPoly) -> Result<RationalPoly> {
        let num = self.numerator.checked_mul(&other.numerator)?;
        Ok(RationalPoly::new(num, self.denom_power + other.denom_power, self.nx))
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_power == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / D^{}", self.numerator, self.denom_power)
        }
    }
}
