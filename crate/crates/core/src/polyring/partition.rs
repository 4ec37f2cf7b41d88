//! Partitions with at most N parts and the dominance order.

use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// Weakly decreasing exponents `λ₁ ≥ … ≥ λ_N ≥ 0`, always stored with exactly N entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Pads (or validates) to exactly `n` parts.
    pub fn with_len(mut parts: Vec<u32>, n: usize) -> Result<Self> {
        if parts.len() > n {
            if parts[n..].iter().any(|&p| p != 0) {
                return Err(Error::InvalidPartition(parts));
            }
            parts.truncate(n);
        }
        parts.resize(n, 0);
        Self::new(parts)
    }

    pub fn zero(n: usize) -> Self {
        Partition(vec![0; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Nonzero parts only.
    pub fn trimmed(&self) -> &[u32] {
        let k = self.0.iter().position(|&p| p == 0).unwrap_or(self.0.len());
        &self.0[..k]
    }

    pub fn dominated_by(&self, other: &Partition) -> Result<bool> {
        dominance_leq(&self.0, &other.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.trimmed().iter().map(u32::to_string).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// `μ ≤ λ` in dominance order: every partial sum of `μ` is at most that of `λ`.
pub fn dominance_leq(mu: &[u32], lambda: &[u32]) -> Result<bool> {
    let mu = Partition::new(mu.to_vec())?;
    let lambda = Partition::new(lambda.to_vec())?;
    if mu.weight() != lambda.weight() {
        return Err(Error::WeightMismatch(mu.weight(), lambda.weight()));
    }
    let n = mu.len().max(lambda.len());
    let (mut a, mut b) = (0u32, 0u32);
    for k in 0..n {
        a += mu.0.get(k).copied().unwrap_or(0);
        b += lambda.0.get(k).copied().unwrap_or(0);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All partitions of `weight` with at most `n` parts, padded to length `n`, in decreasing
/// lexicographic order (a linear extension of dominance).
pub fn partitions(weight: u32, n: usize) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if slots == 0 {
            if rest == 0 {
                out.push(Partition(cur.clone()));
            }
            return;
        }
        for p in (0..=max.min(rest)).rev() {
            if p as u64 * slots as u64 >= rest as u64 {
                cur.push(p);
                rec(rest - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(weight, weight, n, &mut Vec::new(), &mut out);
    out
}
