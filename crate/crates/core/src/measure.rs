use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used to accept a distribution as summing to one.
pub const DISTRIBUTION_TOLERANCE: f64 = 1e-9;

/// Outcome probabilities of measuring the search register, indexed by label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchDistribution {
    num_bits: usize,
    probabilities: Vec<f64>,
}

impl SearchDistribution {
    pub fn from_probabilities(probabilities: Vec<f64>) -> Result<Self> {
        let len = probabilities.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::MalformedDistribution(format!("{len} outcomes is not a power of two ≥ 2")));
        }
        if let Some(p) = probabilities.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::MalformedDistribution(format!("invalid probability {p}")));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > DISTRIBUTION_TOLERANCE {
            return Err(Error::MalformedDistribution(format!("probabilities sum to {total}")));
        }
        Ok(Self {
            num_bits: len.trailing_zeros() as usize,
            probabilities,
        })
    }

    pub(crate) fn from_probabilities_unchecked(num_bits: usize, probabilities: Vec<f64>) -> Self {
        Self { num_bits, probabilities }
    }

    /// All mass on `label`.
    pub fn point_mass(num_bits: usize, label: u64) -> Self {
        let mut probabilities = vec![0.0; 1 << num_bits];
        probabilities[label as usize] = 1.0;
        Self { num_bits, probabilities }
    }

    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, label: u64) -> f64 {
        self.probabilities.get(label as usize).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Most likely label, smallest label on ties. The flag is set when another
    /// label is within `1e-12` of the maximum.
    pub fn argmax(&self) -> (u64, bool) {
        let (best, &p_best) = self
            .probabilities
            .iter()
            .enumerate()
            .fold((0, &f64::NEG_INFINITY), |acc, (i, p)| if *p > *acc.1 { (i, p) } else { acc });
        let degenerate = self
            .probabilities
            .iter()
            .enumerate()
            .any(|(i, p)| i != best && (p_best - p).abs() <= 1e-12);
        (best as u64, degenerate)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.sampler().sample(rng) as u64
    }

    /// Fraction of `trials` draws that land on `label`.
    pub fn sampled_frequency<R: Rng + ?Sized>(&self, label: u64, trials: u64, rng: &mut R) -> f64 {
        if trials == 0 {
            return 0.0;
        }
        let sampler = self.sampler();
        let hits = (0..trials).filter(|_| sampler.sample(rng) as u64 == label).count();
        hits as f64 / trials as f64
    }

    fn sampler(&self) -> WeightedIndex<f64> {
        WeightedIndex::new(&self.probabilities).expect("probabilities are non-negative with positive total")
    }
}
