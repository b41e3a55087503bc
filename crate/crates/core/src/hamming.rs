//! The Hamming-distance phase operator `U_c^{|x_s⟩}`.
//!
//! `U_c^{|x_s⟩}|x⟩ = φ(D(x, x_s))|x⟩` where `D` is the Hamming distance and
//! `φ(0) = 1`, and for `D ≥ 1`: `φ = 1, i, -1, -i` as `D ≡ 1, 2, 3, 0 (mod 4)`.

use std::fmt;

use crate::diagonal::DiagonalPhaseOperator;
use crate::error::Result;
use crate::oracle::check_label;
use crate::scalar::{c, Amplitude, Real};

/// An exact power of `i`: `i^k` for `k` in `0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuarterTurn(u8);

impl QuarterTurn {
    pub const ONE: Self = Self(0);
    pub const I: Self = Self(1);
    pub const MINUS_ONE: Self = Self(2);
    pub const MINUS_I: Self = Self(3);

    pub fn from_power(k: u32) -> Self {
        Self((k % 4) as u8)
    }

    pub fn power(self) -> u32 {
        u32::from(self.0)
    }

    pub fn to_complex<T: Real>(self) -> Amplitude<T> {
        let (o, z) = (T::one(), T::zero());
        match self.0 {
            0 => c(o, z),
            1 => c(z, o),
            2 => c(-o, z),
            _ => c(z, -o),
        }
    }
}

impl fmt::Display for QuarterTurn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

/// Phase applied to a basis state at Hamming distance `distance` from the target.
pub fn phase_for_distance(distance: u32) -> QuarterTurn {
    match distance {
        0 => QuarterTurn::ONE,
        d => QuarterTurn::from_power(d + 3),
    }
}

fn hamming(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}

/// `U_c^{|x_s⟩}` straight from the distance rule.
pub fn build_uc_direct<T: Real>(target: u64, num_bits: usize) -> Result<DiagonalPhaseOperator<T>> {
    check_label(target, num_bits)?;
    let phases = (0..1u64 << num_bits)
        .map(|x| phase_for_distance(hamming(x, target)).to_complex())
        .collect();
    Ok(DiagonalPhaseOperator::from_phases_unchecked(num_bits, phases))
}

/// `U_c^{|x_s⟩} = X^{¬x_s} U_c^{|1…1⟩} X^{¬x_s}`: builds the all-ones operator
/// and conjugates by `X` on every bit where `x_s` is 0.
///
/// Conjugating a diagonal by a bit-flip pattern permutes its entries:
/// `(X^m D X^m)[x] = D[x ⊕ m]`.
pub fn build_uc_conjugated<T: Real>(target: u64, num_bits: usize) -> Result<DiagonalPhaseOperator<T>> {
    check_label(target, num_bits)?;
    let all_ones = (1u64 << num_bits) - 1;
    // Distance to |1…1⟩ is the number of zero bits.
    let base: Vec<QuarterTurn> = (0..=all_ones)
        .map(|y| phase_for_distance(num_bits as u32 - y.count_ones()))
        .collect();
    let flips = !target & all_ones;
    let phases = (0..=all_ones)
        .map(|x| base[(x ^ flips) as usize].to_complex())
        .collect();
    Ok(DiagonalPhaseOperator::from_phases_unchecked(num_bits, phases))
}

/// Row `x_s`, column `x`: the phase `U_c^{|x_s⟩}` puts on `|x⟩`.
pub fn phase_table(num_bits: usize) -> Vec<Vec<QuarterTurn>> {
    let size = 1u64 << num_bits;
    (0..size)
        .map(|row| (0..size).map(|col| phase_for_distance(hamming(row, col))).collect())
        .collect()
}

/// [`phase_table`] as CSV with binary row/column labels.
pub fn phase_table_csv(num_bits: usize) -> String {
    let label = |x: usize| format!("{x:0width$b}", width = num_bits);
    let table = phase_table(num_bits);
    let mut out = String::from("x_s");
    for col in 0..table.len() {
        out.push(',');
        out.push_str(&label(col));
    }
    out.push('\n');
    for (row, phases) in table.iter().enumerate() {
        out.push_str(&label(row));
        for p in phases {
            out.push(',');
            out.push_str(&p.to_string());
        }
        out.push('\n');
    }
    out
}
