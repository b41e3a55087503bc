use crate::error::{Error, Result};
use crate::scalar::{Amplitude, Real};

/// A diagonal operator on the search register, stored as its `2^n` diagonal
/// entries. Entries are unit-modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalPhaseOperator<T: Real> {
    num_bits: usize,
    phases: Vec<Amplitude<T>>,
}

impl<T: Real> DiagonalPhaseOperator<T> {
    /// Builds an operator from explicit phases; the length must be a power of two
    /// and every entry must have modulus 1 within `sqrt(epsilon)`.
    pub fn from_phases(phases: Vec<Amplitude<T>>) -> Result<Self> {
        let len = phases.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::ListLength { len });
        }
        let slack = T::epsilon().sqrt();
        if let Some(index) = phases.iter().position(|p| (p.norm() - T::one()).abs() > slack) {
            return Err(Error::NotNormalized {
                norm_sqr: phases[index].norm_sqr().to_f64_lossy(),
            });
        }
        Ok(Self {
            num_bits: len.trailing_zeros() as usize,
            phases,
        })
    }

    pub(crate) fn from_phases_unchecked(num_bits: usize, phases: Vec<Amplitude<T>>) -> Self {
        debug_assert_eq!(phases.len(), 1 << num_bits);
        Self { num_bits, phases }
    }

    pub fn identity(num_bits: usize) -> Self {
        Self::from_phases_unchecked(num_bits, vec![crate::scalar::one(); 1 << num_bits])
    }

    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    pub fn phases(&self) -> &[Amplitude<T>] {
        &self.phases
    }

    pub fn phase(&self, label: usize) -> Amplitude<T> {
        self.phases[label]
    }

    /// Largest `| |d_x| - 1 |` over the diagonal.
    pub fn unitarity_deviation(&self) -> T {
        self.phases
            .iter()
            .map(|p| (p.norm_sqr() - T::one()).abs())
            .fold(T::zero(), T::max)
    }

    pub fn max_deviation(&self, other: &Self) -> Result<T> {
        if self.phases.len() != other.phases.len() {
            return Err(Error::Shape {
                expected: self.phases.len(),
                found: other.phases.len(),
            });
        }
        Ok(self
            .phases
            .iter()
            .zip(&other.phases)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }
}
