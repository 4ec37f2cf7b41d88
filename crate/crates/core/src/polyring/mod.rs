//! Exact sparse polynomial algebra over Gaussian rationals.

mod coeff;
mod partition;
mod poly;
mod rational;
mod symmetric;

pub use coeff::{rat, GaussRat, Rat};
pub use partition::{dominance_leq, partitions, Partition};
pub use poly::{vandermonde, Monomial, MultiPoly, DEGREE_GUARD};
pub use rational::RationalPoly;
pub use symmetric::{distinct_permutations, monomial_symmetric, symmetric_basis, BasisKind, SymmetricPoly};
