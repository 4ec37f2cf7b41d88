use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use cms_core::polyring::{Partition, Rat};
use cms_core::{ModelSpec, PhaseState, PotentialKind};

use crate::CliError;

/// Elliptic profile coefficients for relativistic kind IV runs.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticProfile {
    pub a_c: f64,
    pub b_c: f64,
}

/// Contents of a `--config` file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSpec,
    /// Initial state; drawn from `--seed` when absent.
    #[serde(default)]
    pub state: Option<PhaseState>,
    #[serde(default)]
    pub elliptic: Option<EllipticProfile>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg.model.validate().map_err(|e| CliError::Config(e.to_string()))?;
        if let Some(s) = &cfg.state {
            s.validate(&cfg.model).map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(cfg)
    }

    /// The configured state, or a seeded random point of the configuration cone.
    pub fn initial_state(&self, seed: u64) -> Result<PhaseState, CliError> {
        if let Some(s) = &self.state {
            return Ok(s.clone());
        }
        random_state(&self.model, seed)
    }
}

/// Decreasing positions with gaps in `[1, 1.5]` (shrunk to fit a period for kind III/IV) and
/// momenta uniform in `[-1, 1]`.
pub fn random_state(spec: &ModelSpec, seed: u64) -> Result<PhaseState, CliError> {
    let n = spec.n;
    let mut hi: f64 = 1.5;
    if matches!(spec.kind, PotentialKind::Trigonometric | PotentialKind::Elliptic) {
        if let Some(period) = spec.real_period() {
            hi = hi.min(period / (n as f64 + 1.0));
        }
    }
    let lo = (2.0 * hi / 3.0).min(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Vec::with_capacity(n);
    let mut cur: f64 = rng.gen_range(-0.5..0.5) * lo;
    for _ in 0..n {
        x.push(cur);
        cur -= rng.gen_range(lo..hi);
    }
    let p = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let state = PhaseState::new(x, p);
    state.validate(spec).map_err(|e| CliError::Config(format!("cannot draw a random state: {e}")))?;
    Ok(state)
}

/// Parses `p/q`, an integer, or a terminating decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rat, String> {
    use num_bigint::BigInt;
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if q == BigInt::from(0) {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let num: BigInt = digits.parse().map_err(|_| format!("bad decimal {s:?}"))?;
        let den = BigInt::from(10).pow(frac.len() as u32);
        return Ok(Rat::new(num, den));
    }
    s.parse::<BigInt>().map(Rat::from_integer).map_err(|_| format!("bad rational {s:?}"))
}

pub fn parse_partition(parts: &[u32], n: usize) -> Result<Partition, CliError> {
    Partition::with_len(parts.to_vec(), n).map_err(|e| CliError::Config(e.to_string()))
}
