//! Dense state vector over `n` search qubits plus one ancilla.
//!
//! Layout: qubit 0 is the most significant bit of the search label and the
//! ancilla is the last qubit, so `|x⟩⊗|b⟩` lives at index `2x + b`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagonal::DiagonalPhaseOperator;
use crate::error::{Error, Result};
use crate::gate::SingleQubitGate;
use crate::measure::SearchDistribution;
use crate::scalar::{one, zero, Amplitude, Real};

/// Default upper bound on the number of search qubits (`2^25` amplitudes).
pub const DEFAULT_MAX_SEARCH_QUBITS: usize = 24;

/// Label convention written into every state dump.
pub const LABELS_CONVENTION: &str = "msb-first, ancilla-last";

/// Position of a qubit in the register: `0..n` are search qubits (0 is the
/// most significant), `n` is the ancilla.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitIndex(pub usize);

impl QubitIndex {
    pub fn search(position: usize) -> Self {
        Self(position)
    }

    pub fn ancilla(num_search_qubits: usize) -> Self {
        Self(num_search_qubits)
    }
}

/// How [`StateVector::compare`] treats an overall phase difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseMode {
    Exact,
    /// Aligns `b` to `a` by the unit phase of `⟨b|a⟩` before comparing.
    UpToGlobalPhase,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    num_search_qubits: usize,
    amplitudes: Vec<Amplitude<T>>,
}

pub fn check_capacity(num_search_qubits: usize, max: usize) -> Result<()> {
    if num_search_qubits == 0 || num_search_qubits > max {
        return Err(Error::Capacity {
            requested: num_search_qubits,
            max,
        });
    }
    Ok(())
}

impl<T: Real> StateVector<T> {
    /// `|0…0⟩ ⊗ |0⟩` with the default capacity cap.
    pub fn zero_state(num_search_qubits: usize) -> Result<Self> {
        Self::zero_state_with_capacity(num_search_qubits, DEFAULT_MAX_SEARCH_QUBITS)
    }

    pub fn zero_state_with_capacity(num_search_qubits: usize, max_search_qubits: usize) -> Result<Self> {
        check_capacity(num_search_qubits, max_search_qubits)?;
        let mut amplitudes = vec![zero(); 2 << num_search_qubits];
        amplitudes[0] = one();
        Ok(Self {
            num_search_qubits,
            amplitudes,
        })
    }

    /// Wraps explicit amplitudes. Rejects wrong lengths, non-finite entries and
    /// states whose squared norm is off by more than `sqrt(epsilon)`.
    pub fn from_amplitudes(num_search_qubits: usize, amplitudes: Vec<Amplitude<T>>) -> Result<Self> {
        if num_search_qubits == 0 {
            return Err(Error::Capacity {
                requested: 0,
                max: DEFAULT_MAX_SEARCH_QUBITS,
            });
        }
        let expected = 2usize << num_search_qubits;
        if amplitudes.len() != expected {
            return Err(Error::Shape {
                expected,
                found: amplitudes.len(),
            });
        }
        if let Some(index) = amplitudes.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let state = Self {
            num_search_qubits,
            amplitudes,
        };
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - T::one()).abs() > T::epsilon().sqrt() {
            return Err(Error::NotNormalized {
                norm_sqr: norm_sqr.to_f64_lossy(),
            });
        }
        Ok(state)
    }

    pub(crate) fn from_amplitudes_unchecked(num_search_qubits: usize, amplitudes: Vec<Amplitude<T>>) -> Self {
        debug_assert_eq!(amplitudes.len(), 2 << num_search_qubits);
        Self {
            num_search_qubits,
            amplitudes,
        }
    }

    pub fn num_search_qubits(&self) -> usize {
        self.num_search_qubits
    }

    /// Search qubits plus the ancilla.
    pub fn num_qubits(&self) -> usize {
        self.num_search_qubits + 1
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &[Amplitude<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, label: usize) -> Amplitude<T> {
        self.amplitudes[label]
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Amplitude<T>] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Amplitude<T>> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// Multiplies every amplitude by `factor` (a global phase when `|factor| = 1`).
    pub fn scale(&mut self, factor: Amplitude<T>) {
        self.amplitudes.iter_mut().for_each(|a| *a *= factor);
    }

    /// Applies `I ⊗ … ⊗ gate ⊗ … ⊗ I` with `gate` on `target`.
    pub fn apply_single(&mut self, gate: &SingleQubitGate<T>, target: QubitIndex) -> Result<()> {
        if target.0 > self.num_search_qubits {
            return Err(Error::QubitIndex {
                index: target.0,
                num_qubits: self.num_qubits(),
            });
        }
        let stride = 1usize << (self.num_search_qubits - target.0);
        for block in self.amplitudes.chunks_exact_mut(2 * stride) {
            let (low, high) = block.split_at_mut(stride);
            for (a0, a1) in low.iter_mut().zip(high.iter_mut()) {
                (*a0, *a1) = gate.apply(*a0, *a1);
            }
        }
        Ok(())
    }

    /// Applies `gate` to every search qubit, leaving the ancilla alone.
    pub fn apply_to_search_qubits(&mut self, gate: &SingleQubitGate<T>) {
        for position in 0..self.num_search_qubits {
            self.apply_single(gate, QubitIndex::search(position))
                .expect("search positions are always in range");
        }
    }

    /// Multiplies the amplitude at `2x + b` by `op.phase(x)`.
    pub fn apply_diagonal(&mut self, op: &DiagonalPhaseOperator<T>) -> Result<()> {
        if op.num_bits() != self.num_search_qubits {
            return Err(Error::Shape {
                expected: 1 << self.num_search_qubits,
                found: op.phases().len(),
            });
        }
        for (pair, phase) in self.amplitudes.chunks_exact_mut(2).zip(op.phases()) {
            pair[0] *= phase;
            pair[1] *= phase;
        }
        Ok(())
    }

    /// Marginal distribution of the search register: `P(x) = Σ_b |ψ(2x+b)|²`.
    pub fn search_distribution(&self) -> SearchDistribution {
        let probabilities = self
            .amplitudes
            .chunks_exact(2)
            .map(|pair| (pair[0].norm_sqr() + pair[1].norm_sqr()).to_f64_lossy())
            .collect();
        SearchDistribution::from_probabilities_unchecked(self.num_search_qubits, probabilities)
    }

    /// Draws one search-register outcome using a ChaCha8 stream seeded by `seed`.
    pub fn sample_measurement(&self, seed: u64) -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng)
    }

    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.search_distribution().sample_with(rng)
    }

    /// Largest elementwise `|a_i - b_i|`, after phase alignment in
    /// [`PhaseMode::UpToGlobalPhase`].
    pub fn compare(&self, other: &Self, mode: PhaseMode) -> Result<T> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::Shape {
                expected: self.amplitudes.len(),
                found: other.amplitudes.len(),
            });
        }
        let align = match mode {
            PhaseMode::Exact => one(),
            PhaseMode::UpToGlobalPhase => {
                let overlap = other
                    .amplitudes
                    .iter()
                    .zip(&self.amplitudes)
                    .fold(zero::<T>(), |acc, (b, a)| acc + b.conj() * a);
                let modulus = overlap.norm();
                if modulus > T::zero() {
                    overlap / modulus
                } else {
                    one()
                }
            }
        };
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b * align).norm())
            .fold(T::zero(), T::max))
    }

    pub fn to_dump(&self) -> StateDump {
        StateDump {
            metadata: DumpMetadata {
                n: self.num_search_qubits,
                labels_convention: LABELS_CONVENTION.to_owned(),
            },
            amplitudes: self
                .amplitudes
                .iter()
                .map(|a| [a.re.to_f64_lossy(), a.im.to_f64_lossy()])
                .collect(),
        }
    }

    pub fn from_dump(dump: &StateDump) -> Result<Self> {
        if dump.metadata.labels_convention != LABELS_CONVENTION {
            return Err(Error::Parse(format!(
                "unsupported labels convention {:?}",
                dump.metadata.labels_convention
            )));
        }
        let amplitudes = dump
            .amplitudes
            .iter()
            .map(|[re, im]| Amplitude::new(T::from_f64_lossy(*re), T::from_f64_lossy(*im)))
            .collect();
        Self::from_amplitudes(dump.metadata.n, amplitudes)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DumpMetadata {
    pub n: usize,
    #[serde(rename = "labels-convention")]
    pub labels_convention: String,
}

/// JSON form of a state: `[re, im]` pairs indexed by basis label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDump {
    pub metadata: DumpMetadata,
    pub amplitudes: Vec<[f64; 2]>,
}
