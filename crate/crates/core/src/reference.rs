//! Brute-force dense-matrix model of the search pipeline.
//!
//! Every factor is an explicit `2^(n+1) × 2^(n+1)` matrix whose entries are
//! computed from first principles (Kronecker products of literal 2x2 matrices,
//! the permutation matrix of `U_f`, the spectral form of `exp(iαU_f)`, and a
//! bit-by-bit Hamming count). Nothing here calls the state-vector kernels, so
//! it serves as an independent cross-check for them.

use num_complex::Complex64;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

fn literal_h() -> [[C; 2]; 2] {
    let s = 1.0 / 2f64.sqrt();
    [[C::new(s, 0.0), C::new(s, 0.0)], [C::new(s, 0.0), C::new(-s, 0.0)]]
}

fn literal_hi() -> [[C; 2]; 2] {
    let s = 1.0 / 2f64.sqrt();
    [[C::new(0.0, s), C::new(s, 0.0)], [C::new(s, 0.0), C::new(0.0, s)]]
}

fn literal_z() -> [[C; 2]; 2] {
    [[ONE, ZERO], [ZERO, -ONE]]
}

fn literal_i() -> [[C; 2]; 2] {
    [[ONE, ZERO], [ZERO, ONE]]
}

/// A square operator defined entry by entry.
#[derive(Debug, Clone)]
pub enum DenseFactor {
    /// `high ⊗ low`, each an explicit Kronecker product of 2x2 matrices.
    Kron { high: DenseMatrix, low: DenseMatrix, low_bits: usize },
    /// `exp(iα U_f) = e^{iα} P₊ + e^{−iα} P₋` with `P± = (I ± U_f)/2`.
    ExpUf { num_bits: usize, marked: Option<u64>, plus: C, minus: C },
    /// `diag(d) ⊗ I` on the search register.
    DiagonalOnSearch(Vec<C>),
}

fn kron_all(gates: &[[[C; 2]; 2]]) -> DenseMatrix {
    let mut acc = DenseMatrix::identity(1);
    for g in gates {
        let dim = acc.dim * 2;
        let mut data = vec![ZERO; dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                data[r * dim + k] = acc.get(r >> 1, k >> 1) * g[r & 1][k & 1];
            }
        }
        acc = DenseMatrix { dim, data };
    }
    acc
}

impl DenseFactor {
    /// `g_0 ⊗ g_1 ⊗ … ⊗ g_n`, qubit 0 leftmost.
    pub fn kron(gates: &[[[C; 2]; 2]]) -> Self {
        let split = gates.len() / 2;
        DenseFactor::Kron {
            high: kron_all(&gates[..split]),
            low: kron_all(&gates[split..]),
            low_bits: gates.len() - split,
        }
    }

    pub fn exp_uf(num_bits: usize, marked: Option<u64>, alpha: f64) -> Self {
        DenseFactor::ExpUf {
            num_bits,
            marked,
            plus: C::from_polar(1.0, alpha),
            minus: C::from_polar(1.0, -alpha),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            DenseFactor::Kron { high, low, .. } => high.dim * low.dim,
            DenseFactor::ExpUf { num_bits, .. } => 2 << num_bits,
            DenseFactor::DiagonalOnSearch(d) => 2 * d.len(),
        }
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> C {
        match self {
            DenseFactor::Kron { high, low, low_bits } => {
                let mask = (1 << low_bits) - 1;
                high.get(row >> low_bits, col >> low_bits) * low.get(row & mask, col & mask)
            }
            DenseFactor::ExpUf { marked, plus, minus, .. } => {
                let uf = permutation_entry(*marked, row, col);
                let id = if row == col { ONE } else { ZERO };
                plus * (id + uf) * 0.5 + minus * (id - uf) * 0.5
            }
            DenseFactor::DiagonalOnSearch(d) => {
                if row == col {
                    d[row >> 1]
                } else {
                    ZERO
                }
            }
        }
    }

    /// `M v` evaluating every entry of `M`.
    pub fn apply(&self, v: &[C]) -> Vec<C> {
        let dim = self.dim();
        assert_eq!(v.len(), dim);
        (0..dim)
            .map(|r| (0..dim).fold(ZERO, |acc, k| acc + self.entry(r, k) * v[k]))
            .collect()
    }

    pub fn to_matrix(&self) -> DenseMatrix {
        let dim = self.dim();
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for k in 0..dim {
                data.push(self.entry(r, k));
            }
        }
        DenseMatrix { dim, data }
    }
}

/// Matrix element `⟨row|U_f|col⟩` where `U_f|x,y⟩ = |x, y ⊕ f(x)⟩`.
fn permutation_entry(marked: Option<u64>, row: usize, col: usize) -> C {
    let x = (col >> 1) as u64;
    let image = if marked == Some(x) { col ^ 1 } else { col };
    if image == row {
        ONE
    } else {
        ZERO
    }
}

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    pub dim: usize,
    pub data: Vec<C>,
}

impl DenseMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![ZERO; dim * dim];
        (0..dim).for_each(|i| data[i * dim + i] = ONE);
        Self { dim, data }
    }

    pub fn get(&self, row: usize, col: usize) -> C {
        self.data[row * self.dim + col]
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let dim = self.dim;
        let mut data = vec![ZERO; dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..dim {
                    data[r * dim + c] += a * rhs.get(k, c);
                }
            }
        }
        Self { dim, data }
    }

    pub fn adjoint(&self) -> Self {
        let dim = self.dim;
        let mut data = vec![ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                data[c * dim + r] = self.get(r, c).conj();
            }
        }
        Self { dim, data }
    }

    pub fn apply(&self, v: &[C]) -> Vec<C> {
        (0..self.dim)
            .map(|r| (0..self.dim).fold(ZERO, |acc, k| acc + self.get(r, k) * v[k]))
            .collect()
    }

    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest elementwise deviation of `M†M` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        self.adjoint().matmul(self).max_deviation(&Self::identity(self.dim))
    }
}

/// Phase from the distance rule written as the residue classes `4k−3, 4k−2, 4k−1, 4k`.
fn distance_phase(distance: u32) -> C {
    if distance == 0 || (distance + 3).is_multiple_of(4) {
        ONE
    } else if (distance + 2).is_multiple_of(4) {
        C::new(0.0, 1.0)
    } else if (distance + 1).is_multiple_of(4) {
        -ONE
    } else {
        C::new(0.0, -1.0)
    }
}

fn bitwise_distance(a: u64, b: u64, num_bits: usize) -> u32 {
    (0..num_bits).filter(|&j| (a >> j) & 1 != (b >> j) & 1).count() as u32
}

/// The six factors in application order: `H^{⊗n}⊗I`, `exp(iπ/4 U_f)`,
/// `I^{⊗n}⊗Z`, `exp(iπ/4 U_f)`, `U_c⊗I`, `H_i^{⊗n}⊗I`.
pub fn pipeline_factors(num_bits: usize, target: u64, marked: Option<u64>) -> Vec<DenseFactor> {
    let alpha = std::f64::consts::FRAC_PI_4;
    let on_search = |g: [[C; 2]; 2]| {
        let mut gates = vec![g; num_bits];
        gates.push(literal_i());
        DenseFactor::kron(&gates)
    };
    let mut z_on_ancilla = vec![literal_i(); num_bits];
    z_on_ancilla.push(literal_z());
    let diagonal = (0..1u64 << num_bits)
        .map(|x| distance_phase(bitwise_distance(x, target, num_bits)))
        .collect();
    vec![
        on_search(literal_h()),
        DenseFactor::exp_uf(num_bits, marked, alpha),
        DenseFactor::kron(&z_on_ancilla),
        DenseFactor::exp_uf(num_bits, marked, alpha),
        DenseFactor::DiagonalOnSearch(diagonal),
        on_search(literal_hi()),
    ]
}

/// The whole pipeline as a single matrix product. Practical for `n ≤ 5`.
pub fn pipeline_operator(num_bits: usize, target: u64, marked: Option<u64>) -> DenseMatrix {
    pipeline_factors(num_bits, target, marked)
        .iter()
        .fold(DenseMatrix::identity(2 << num_bits), |acc, f| f.to_matrix().matmul(&acc))
}

/// Final state from `|0⟩^{⊗n+1}` via dense matrix-vector products.
pub fn pipeline_state(num_bits: usize, target: u64, marked: Option<u64>) -> Vec<C> {
    let mut v = vec![ZERO; 2 << num_bits];
    v[0] = ONE;
    for factor in pipeline_factors(num_bits, target, marked) {
        v = factor.apply(&v);
    }
    v
}

/// Probability that measuring the search register yields `target`.
pub fn pipeline_p_yes(num_bits: usize, target: u64, marked: Option<u64>) -> f64 {
    let v = pipeline_state(num_bits, target, marked);
    let t = 2 * target as usize;
    v[t].norm_sqr() + v[t + 1].norm_sqr()
}

/// `exp(iα U_f)` as a dense matrix.
pub fn exp_uf_matrix(num_bits: usize, marked: Option<u64>, alpha: f64) -> DenseMatrix {
    DenseFactor::exp_uf(num_bits, marked, alpha).to_matrix()
}

/// `I ⊗ … ⊗ g ⊗ … ⊗ I` on `num_qubits` qubits with `g` at `target`.
pub fn embed_single(gate: [[C; 2]; 2], target: usize, num_qubits: usize) -> DenseMatrix {
    let mut gates = vec![literal_i(); num_qubits];
    gates[target] = gate;
    DenseFactor::kron(&gates).to_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_are_unitary() {
        for n in 1..=3 {
            for marked in [None, Some(0)] {
                for f in pipeline_factors(n, 1 % (1 << n), marked) {
                    assert!(f.to_matrix().unitarity_deviation() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn n1_absent_by_hand() {
        // Four amplitudes |x b⟩ = |00⟩,|01⟩,|10⟩,|11⟩, x_s = 1, f ≡ 0.
        let s = 1.0 / 2f64.sqrt();
        let psi1 = [C::new(s, 0.0), ZERO, C::new(s, 0.0), ZERO];
        // exp(iπ/4 U_f) twice with Z inert: global phase i.
        let psi4: Vec<C> = psi1.iter().map(|a| a * C::new(0.0, 1.0)).collect();
        // U_c^{|1⟩} = diag(1, 1).
        let psi5 = psi4;
        // H_i on the search qubit: |0⟩ → (i|0⟩+|1⟩)/√2, |1⟩ → (|0⟩+i|1⟩)/√2.
        let a0 = (C::new(0.0, 1.0) * psi5[0] + psi5[2]) * s;
        let a1 = (psi5[0] + C::new(0.0, 1.0) * psi5[2]) * s;
        assert!((a1.norm_sqr() - 0.5).abs() < 1e-15);
        assert!((a0.norm_sqr() - 0.5).abs() < 1e-15);
        assert!((pipeline_p_yes(1, 1, None) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn lazy_and_materialized_agree() {
        let v: Vec<C> = (0..16).map(|k| C::new(k as f64, 1.0 - k as f64)).collect();
        for f in pipeline_factors(3, 5, Some(5)) {
            let lazy = f.apply(&v);
            let full = f.to_matrix().apply(&v);
            for (a, b) in lazy.iter().zip(&full) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }
}
