//! Reproducible streams of sidigraphs: seeded random graphs and exhaustive
//! enumeration of small orders.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Arc, Sign, SignedDigraph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorpusError {
    #[error("vertex range [{min}, {max}] is empty or starts below 1")]
    BadRange { min: usize, max: usize },
    #[error("arc density {0} is outside (0, 1]")]
    BadDensity(f64),
    #[error("negative fraction {0} is outside [0, 1]")]
    BadNegativeFraction(f64),
}

/// Each ordered pair `(i, j)`, `i != j`, visited row-major, receives an arc
/// with probability `arc_density`; the arc is negative with probability
/// `negative_fraction`. The vertex count is uniform on `[n_min, n_max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub seed: u64,
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub arc_density: f64,
    pub negative_fraction: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { seed: 42, count: 1000, n_min: 2, n_max: 8, arc_density: 0.3, negative_fraction: 0.5 }
    }
}

impl CorpusConfig {
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.n_min < 1 || self.n_min > self.n_max {
            return Err(CorpusError::BadRange { min: self.n_min, max: self.n_max });
        }
        if !(self.arc_density > 0.0 && self.arc_density <= 1.0) {
            return Err(CorpusError::BadDensity(self.arc_density));
        }
        if !(0.0..=1.0).contains(&self.negative_fraction) {
            return Err(CorpusError::BadNegativeFraction(self.negative_fraction));
        }
        Ok(())
    }

    /// The graph stream; identical configs give identical streams.
    pub fn graphs(&self) -> Result<RandomSidigraphs, CorpusError> {
        self.validate()?;
        Ok(RandomSidigraphs { config: self.clone(), rng: ChaCha8Rng::seed_from_u64(self.seed), emitted: 0 })
    }
}

pub struct RandomSidigraphs {
    config: CorpusConfig,
    rng: ChaCha8Rng,
    emitted: usize,
}

/// One random sidigraph on `n` vertices under the corpus model.
pub fn random_sidigraph<R: Rng>(rng: &mut R, n: usize, arc_density: f64, negative_fraction: f64) -> SignedDigraph {
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(arc_density) {
                let sign = if rng.gen_bool(negative_fraction) { Sign::Negative } else { Sign::Positive };
                arcs.push(Arc::new(i, j, sign));
            }
        }
    }
    SignedDigraph::from_arcs(n, arcs).expect("generated arcs are valid")
}

impl Iterator for RandomSidigraphs {
    type Item = SignedDigraph;

    fn next(&mut self) -> Option<SignedDigraph> {
        if self.emitted == self.config.count {
            return None;
        }
        self.emitted += 1;
        let c = &self.config;
        let n = self.rng.gen_range(c.n_min..=c.n_max);
        Some(random_sidigraph(&mut self.rng, n, c.arc_density, c.negative_fraction))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.config.count - self.emitted;
        (left, Some(left))
    }
}

/// Every sidigraph on `n` vertices: each ordered pair is absent, positive
/// or negative, giving `3^(n(n-1))` graphs.
pub fn exhaustive(n: usize) -> impl Iterator<Item = SignedDigraph> {
    assert!(n >= 1, "sidigraphs have at least one vertex");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let total = 3u64.checked_pow(pairs.len() as u32).expect("exhaustive enumeration is limited to small orders");
    (0..total).map(move |code| {
        let mut c = code;
        let mut arcs = Vec::new();
        for &(i, j) in &pairs {
            match c % 3 {
                1 => arcs.push(Arc::new(i, j, Sign::Positive)),
                2 => arcs.push(Arc::new(i, j, Sign::Negative)),
                _ => {}
            }
            c /= 3;
        }
        SignedDigraph::from_arcs(n, arcs).expect("enumerated arcs are valid")
    })
}
