//! 2x2 unitaries acting on a single qubit.

use std::fmt;
use std::ops::Mul;

use crate::scalar::{c, imag_unit, one, zero, Amplitude, Real};

/// The named gates used by the search pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    /// Hadamard.
    H,
    /// Bit flip.
    X,
    /// Phase flip on |1⟩.
    Z,
    /// `(1/√2)[[i, 1], [1, i]]`: a square root of NOT up to a global phase.
    Hi,
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::Hi => "H_i",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateName {
    Named(GateKind),
    Identity,
    Custom(String),
}

impl fmt::Display for GateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateName::Named(kind) => kind.fmt(f),
            GateName::Identity => f.write_str("I"),
            GateName::Custom(name) => f.write_str(name),
        }
    }
}

/// A 2x2 matrix `entries[row][col]`, acting on `(a0, a1)` column vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleQubitGate<T: Real> {
    pub name: GateName,
    pub entries: [[Amplitude<T>; 2]; 2],
}

impl<T: Real> SingleQubitGate<T> {
    pub fn new(kind: GateKind) -> Self {
        let z = zero::<T>();
        let o = one::<T>();
        let i = imag_unit::<T>();
        let s = T::FRAC_1_SQRT_2();
        let entries = match kind {
            GateKind::H => [[c(s, T::zero()), c(s, T::zero())], [c(s, T::zero()), c(-s, T::zero())]],
            GateKind::X => [[z, o], [o, z]],
            GateKind::Z => [[o, z], [z, -o]],
            GateKind::Hi => [[i * s, o * s], [o * s, i * s]],
        };
        Self {
            name: GateName::Named(kind),
            entries,
        }
    }

    pub fn identity() -> Self {
        Self {
            name: GateName::Identity,
            entries: [[one(), zero()], [zero(), one()]],
        }
    }

    /// Wraps an arbitrary matrix. Unitarity is not enforced here; see
    /// [`SingleQubitGate::unitarity_deviation`].
    pub fn custom(name: impl Into<String>, entries: [[Amplitude<T>; 2]; 2]) -> Self {
        Self {
            name: GateName::Custom(name.into()),
            entries,
        }
    }

    #[inline]
    pub fn apply(&self, a0: Amplitude<T>, a1: Amplitude<T>) -> (Amplitude<T>, Amplitude<T>) {
        let m = &self.entries;
        (m[0][0] * a0 + m[0][1] * a1, m[1][0] * a0 + m[1][1] * a1)
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.entries;
        Self::custom(
            format!("{}†", self.name),
            [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]],
        )
    }

    pub fn scaled(&self, factor: Amplitude<T>) -> Self {
        let m = &self.entries;
        Self::custom(
            format!("{}·{}", factor, self.name),
            [[m[0][0] * factor, m[0][1] * factor], [m[1][0] * factor, m[1][1] * factor]],
        )
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_deviation(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for r in 0..2 {
            for k in 0..2 {
                worst = worst.max((self.entries[r][k] - other.entries[r][k]).norm());
            }
        }
        worst
    }

    /// Largest elementwise deviation of `G†G` from the identity.
    pub fn unitarity_deviation(&self) -> T {
        (&self.adjoint() * self).max_deviation(&Self::identity())
    }
}

impl<T: Real> Mul for &SingleQubitGate<T> {
    type Output = SingleQubitGate<T>;

    fn mul(self, rhs: Self) -> SingleQubitGate<T> {
        let a = &self.entries;
        let b = &rhs.entries;
        let mut out = [[zero::<T>(); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (k, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][k] + a[r][1] * b[1][k];
            }
        }
        SingleQubitGate::custom(format!("{}{}", self.name, rhs.name), out)
    }
}

/// Returns the exact matrix of a named gate.
pub fn make_gate<T: Real>(kind: GateKind) -> SingleQubitGate<T> {
    SingleQubitGate::new(kind)
}
