use thiserror::Error;

/// Errors raised by the numerical and symbolic routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model specification: {0}")]
    InvalidSpec(String),
    #[error("invalid phase state: {0}")]
    InvalidState(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("evaluation at {at} is within the pole guard of a singularity")]
    Pole { at: f64 },
    #[error("argument {re}{im:+}i is within the pole guard of a lattice point")]
    LatticePoint { re: f64, im: f64 },
    #[error("Gamma function pole at {0}")]
    GammaPole(f64),
    #[error("particles {i} and {j} collide (separation {gap:e})")]
    Collision { i: usize, j: usize, gap: f64 },
    #[error("step size collapsed to {h:e} at t = {t} (near-collision beyond resolution)")]
    StepCollapse { t: f64, h: f64 },
    #[error("finite-difference stencil leaves the configuration space")]
    StencilLeavesCone,
    #[error("degenerate spectrum: eigenvalues within {gap:e}")]
    DegenerateSpectrum { gap: f64 },
    #[error("eigenvector {index} cannot be normalised (|e-component| = {value:e})")]
    ZeroComponent { index: usize, value: f64 },
    #[error("exponential overflow: beta*sum|p| = {0} exceeds 700")]
    Overflow(f64),
    #[error("square-root branch error: radicand {0} is not positive")]
    Branch(f64),
    #[error("negative radicand {0} in elliptic profile (check a_c, b_c)")]
    NegativeRadicand(f64),
    #[error("argument within the branch-cut guard of a square-root factor")]
    BranchCut,
    #[error("evaluation point within the wall guard")]
    WallProximity,
    #[error("total degree {0} exceeds the degree guard")]
    DegreeGuard(u32),
    #[error("input polynomial is not symmetric")]
    NonSymmetric,
    #[error("partition weights differ: {0} vs {1}")]
    WeightMismatch(u32, u32),
    #[error("not a partition: {0:?}")]
    InvalidPartition(Vec<u32>),
    #[error("triangular solve pivot vanished at {0} (resonant coupling)")]
    PivotVanished(String),
    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("operation not supported for this potential kind: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
