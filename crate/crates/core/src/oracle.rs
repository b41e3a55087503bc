//! Membership oracle built from a list and a target item, and its actions on
//! the register: the XOR oracle `U_f`, its exponential `exp(iαU_f)`, and the
//! phase-marking oracle `e^{iαf(x)}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{c, cis, Real};
use crate::state::StateVector;

/// How duplicate occurrences of the target are treated when building an oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    /// More than one occurrence of the target is an error.
    #[default]
    Strict,
    /// Any number of occurrences marks the target label.
    Lenient,
}

/// A list of `2^n` items, each an `n`-bit value, and the item being searched for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchList {
    num_bits: usize,
    items: Vec<u64>,
    target: u64,
}

impl SearchList {
    pub fn new(items: Vec<u64>, target: u64) -> Result<Self> {
        let len = items.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::ListLength { len });
        }
        let num_bits = len.trailing_zeros() as usize;
        check_label(target, num_bits)?;
        for item in &items {
            check_label(*item, num_bits)?;
        }
        Ok(Self { num_bits, items, target })
    }

    /// `[0, 1, …, 2^n − 1]`: every label occurs once, so the target is present.
    pub fn synthetic_present(num_bits: usize, target: u64) -> Result<Self> {
        Self::new((0..1u64 << num_bits).collect(), target)
    }

    /// The identity list with the target replaced by its bit-0 neighbour.
    pub fn synthetic_absent(num_bits: usize, target: u64) -> Result<Self> {
        check_label(target, num_bits)?;
        let items = (0..1u64 << num_bits).map(|x| if x == target { x ^ 1 } else { x }).collect();
        Self::new(items, target)
    }

    /// Parses one item per line, either as a binary string of width `n` (or
    /// with a `0b` prefix) or as a decimal. `n` follows from the line count.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str, target: &str) -> Result<Self> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let len = lines.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::ListLength { len });
        }
        let num_bits = len.trailing_zeros() as usize;
        let items = lines
            .iter()
            .map(|l| parse_item(l, num_bits))
            .collect::<Result<Vec<_>>>()?;
        Self::new(items, parse_item(target.trim(), num_bits)?)
    }

    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    pub fn items(&self) -> &[u64] {
        &self.items
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn occurrences(&self) -> usize {
        self.items.iter().filter(|&&x| x == self.target).count()
    }
}

/// Parses an `n`-bit item: `0b…` or exactly `n` binary digits as binary,
/// anything else as decimal.
pub fn parse_item(token: &str, num_bits: usize) -> Result<u64> {
    let value = if let Some(bits) = token.strip_prefix("0b") {
        u64::from_str_radix(bits, 2)
    } else if token.len() == num_bits && token.bytes().all(|b| b == b'0' || b == b'1') {
        u64::from_str_radix(token, 2)
    } else {
        token.parse::<u64>()
    }
    .map_err(|e| Error::Parse(format!("item {token:?}: {e}")))?;
    check_label(value, num_bits)?;
    Ok(value)
}

pub(crate) fn check_label(label: u64, num_bits: usize) -> Result<()> {
    if num_bits >= 64 || label >> num_bits == 0 {
        Ok(())
    } else {
        Err(Error::LabelOutOfRange { label, num_bits })
    }
}

/// Where an oracle came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    List { len: usize, target: u64, occurrences: usize },
    /// Marks an arbitrary label (or nothing) directly.
    Direct,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::List { len, target, occurrences } => {
                write!(f, "list of {len} items, target {target} found {occurrences} time(s)")
            }
            Provenance::Direct => f.write_str("direct"),
        }
    }
}

/// The predicate `f` over `n`-bit labels, true on at most one label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanOracle {
    num_bits: usize,
    marked: Option<u64>,
    provenance: Provenance,
}

impl BooleanOracle {
    /// An oracle marking `marked` (or nothing) without reference to a list.
    pub fn direct(num_bits: usize, marked: Option<u64>) -> Result<Self> {
        if let Some(label) = marked {
            check_label(label, num_bits)?;
        }
        Ok(Self {
            num_bits,
            marked,
            provenance: Provenance::Direct,
        })
    }

    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    pub fn marked(&self) -> Option<u64> {
        self.marked
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn evaluate(&self, label: u64) -> bool {
        self.marked == Some(label)
    }

    fn check_state<T: Real>(&self, state: &StateVector<T>) -> Result<()> {
        if state.num_search_qubits() != self.num_bits {
            return Err(Error::Shape {
                expected: 1 << self.num_bits,
                found: 1 << state.num_search_qubits(),
            });
        }
        Ok(())
    }
}

/// Builds `f` for a list under the self-indexing model: the target's own label
/// is marked when the target occurs in the list.
pub fn make_membership_oracle(list: &SearchList, strictness: Strictness) -> Result<BooleanOracle> {
    let occurrences = list.occurrences();
    if strictness == Strictness::Strict && occurrences > 1 {
        return Err(Error::MultiMatch { count: occurrences });
    }
    Ok(BooleanOracle {
        num_bits: list.num_bits(),
        marked: (occurrences > 0).then_some(list.target()),
        provenance: Provenance::List {
            len: list.items().len(),
            target: list.target(),
            occurrences,
        },
    })
}

/// `U_f|x, y⟩ = |x, y ⊕ f(x)⟩`.
pub fn apply_uf<T: Real>(oracle: &BooleanOracle, state: &mut StateVector<T>) -> Result<()> {
    oracle.check_state(state)?;
    if let Some(x) = oracle.marked {
        let amps = state.amplitudes_mut();
        amps.swap(2 * x as usize, 2 * x as usize + 1);
    }
    Ok(())
}

/// `exp(iαU_f) = cos α · I + i sin α · U_f`, valid because `U_f² = I`.
pub fn apply_exp_uf<T: Real>(alpha: T, oracle: &BooleanOracle, state: &mut StateVector<T>) -> Result<()> {
    oracle.check_state(state)?;
    let (sin, cos) = alpha.sin_cos();
    let along = c(cos, T::zero());
    let across = c(T::zero(), sin);
    // Unmarked labels see U_f as the identity, i.e. a phase e^{iα}.
    let unmarked = cis(alpha);
    let marked = oracle.marked.map(|x| x as usize);
    for (x, pair) in state.amplitudes_mut().chunks_exact_mut(2).enumerate() {
        if Some(x) == marked {
            let (a0, a1) = (pair[0], pair[1]);
            pair[0] = along * a0 + across * a1;
            pair[1] = along * a1 + across * a0;
        } else {
            pair[0] *= unmarked;
            pair[1] *= unmarked;
        }
    }
    Ok(())
}

/// `|x⟩ → e^{iα f(x)}|x⟩` on the search register, both ancilla branches.
pub fn apply_phase_marking<T: Real>(alpha: T, oracle: &BooleanOracle, state: &mut StateVector<T>) -> Result<()> {
    oracle.check_state(state)?;
    if let Some(x) = oracle.marked {
        let phase = cis(alpha);
        let amps = state.amplitudes_mut();
        amps[2 * x as usize] *= phase;
        amps[2 * x as usize + 1] *= phase;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{make_gate, GateKind};
    use crate::scalar::{imag_unit, one, zero, Amplitude};
    use crate::state::{PhaseMode, QubitIndex};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

    const TOL: f64 = 1e-12;
    type S = StateVector<f64>;

    fn random_state(n: usize, seed: u64) -> S {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amps: Vec<Amplitude<f64>> = (0..(2 << n))
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        S::from_amplitudes(n, amps).unwrap()
    }

    fn basis(n: usize, label: usize) -> S {
        let mut amps = vec![zero(); 2 << n];
        amps[label] = one();
        S::from_amplitudes(n, amps).unwrap()
    }

    type Matrix = Vec<Vec<Amplitude<f64>>>;

    fn dense_uf(n: usize, marked: Option<usize>) -> Matrix {
        let dim = 2 << n;
        let mut m = vec![vec![zero(); dim]; dim];
        for (col, row) in (0..dim).map(|col| {
            let x = col >> 1;
            let row = if Some(x) == marked { col ^ 1 } else { col };
            (col, row)
        }) {
            m[row][col] = one();
        }
        m
    }

    fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
        let dim = a.len();
        let mut out = vec![vec![zero(); dim]; dim];
        for i in 0..dim {
            for k in 0..dim {
                if a[i][k] == zero() {
                    continue;
                }
                for j in 0..dim {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    /// exp(M) by Taylor series to convergence; no use of M² = I.
    fn dense_expm(m: &Matrix) -> Matrix {
        let dim = m.len();
        let mut term: Matrix = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { one() } else { zero() }).collect())
            .collect();
        let mut sum = term.clone();
        for k in 1..60 {
            term = matmul(&term, m);
            for row in term.iter_mut() {
                for v in row.iter_mut() {
                    *v /= k as f64;
                }
            }
            for (srow, trow) in sum.iter_mut().zip(&term) {
                for (s, t) in srow.iter_mut().zip(trow) {
                    *s += t;
                }
            }
        }
        sum
    }

    #[test]
    fn membership_oracles() {
        let list = SearchList::new(vec![3, 1, 5, 0, 2, 2, 7, 6], 5).unwrap();
        assert_eq!(make_membership_oracle(&list, Strictness::Strict).unwrap().marked(), Some(5));

        let list = SearchList::new(vec![3, 1, 4, 0, 2, 2, 7, 6], 5).unwrap();
        assert_eq!(make_membership_oracle(&list, Strictness::Strict).unwrap().marked(), None);

        let list = SearchList::new(vec![5, 1, 4, 0, 2, 5, 7, 6], 5).unwrap();
        assert_eq!(
            make_membership_oracle(&list, Strictness::Strict).unwrap_err(),
            Error::MultiMatch { count: 2 }
        );
        assert_eq!(make_membership_oracle(&list, Strictness::Lenient).unwrap().marked(), Some(5));
    }

    #[test]
    fn list_validation_and_parsing() {
        assert_eq!(SearchList::new(vec![0, 1, 2], 0).unwrap_err(), Error::ListLength { len: 3 });
        assert!(matches!(SearchList::new(vec![0, 4], 0), Err(Error::LabelOutOfRange { .. })));

        let list = SearchList::parse("# demo\n000\n001\n010\n7\n\n100\n0b101\n6\n111\n", "101").unwrap();
        assert_eq!(list.num_bits(), 3);
        assert_eq!(list.items(), &[0, 1, 2, 7, 4, 5, 6, 7]);
        assert_eq!(list.target(), 5);
        assert!(SearchList::parse("0\n1\n", "2").is_err());
        assert!(SearchList::parse("0\nzz\n", "1").is_err());
    }

    #[test]
    fn synthetic_lists() {
        for n in 1..=4 {
            for xs in 0..1u64 << n {
                let present = SearchList::synthetic_present(n, xs).unwrap();
                assert_eq!(present.occurrences(), 1);
                let absent = SearchList::synthetic_absent(n, xs).unwrap();
                assert_eq!(absent.occurrences(), 0);
                assert_eq!(make_membership_oracle(&absent, Strictness::Strict).unwrap().marked(), None);
            }
        }
    }

    #[test]
    fn uf_marks_by_entanglement() {
        let oracle = BooleanOracle::direct(3, Some(5)).unwrap();
        let mut s = basis(3, 10);
        apply_uf(&oracle, &mut s).unwrap();
        assert_eq!(s, basis(3, 11));
    }

    #[test]
    fn uf_is_an_involution_and_a_permutation() {
        let oracle = BooleanOracle::direct(3, Some(2)).unwrap();
        let s = random_state(3, 1);
        let mut t = s.clone();
        apply_uf(&oracle, &mut t).unwrap();
        let mut before: Vec<f64> = s.amplitudes().iter().map(|a| a.norm()).collect();
        let mut after: Vec<f64> = t.amplitudes().iter().map(|a| a.norm()).collect();
        before.sort_by(f64::total_cmp);
        after.sort_by(f64::total_cmp);
        assert_eq!(before, after);
        apply_uf(&oracle, &mut t).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn absent_oracle_is_identity() {
        let oracle = BooleanOracle::direct(3, None).unwrap();
        let s = random_state(3, 2);
        let mut t = s.clone();
        apply_uf(&oracle, &mut t).unwrap();
        assert_eq!(s, t);
        apply_phase_marking(1.3, &oracle, &mut t).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn dimension_mismatch() {
        let oracle = BooleanOracle::direct(2, Some(1)).unwrap();
        let mut s = S::zero_state(3).unwrap();
        assert!(matches!(apply_uf(&oracle, &mut s), Err(Error::Shape { .. })));
        assert!(matches!(apply_exp_uf(0.1, &oracle, &mut s), Err(Error::Shape { .. })));
        assert!(matches!(apply_phase_marking(0.1, &oracle, &mut s), Err(Error::Shape { .. })));
    }

    #[test]
    fn exp_uf_special_angles() {
        let oracle = BooleanOracle::direct(3, Some(6)).unwrap();
        let s = random_state(3, 3);

        let mut t = s.clone();
        apply_exp_uf(0.0, &oracle, &mut t).unwrap();
        assert!(t.compare(&s, PhaseMode::Exact).unwrap() < TOL);

        let mut twice = s.clone();
        apply_exp_uf(FRAC_PI_4, &oracle, &mut twice).unwrap();
        apply_exp_uf(FRAC_PI_4, &oracle, &mut twice).unwrap();
        let mut i_uf = s.clone();
        apply_uf(&oracle, &mut i_uf).unwrap();
        i_uf.scale(imag_unit());
        assert!(twice.compare(&i_uf, PhaseMode::Exact).unwrap() < TOL);
    }

    #[test]
    fn exp_uf_on_uniform_superposition() {
        let n = 2;
        let xs = 3usize;
        let oracle = BooleanOracle::direct(n, Some(xs as u64)).unwrap();
        let mut s = S::zero_state(n).unwrap();
        s.apply_to_search_qubits(&make_gate(GateKind::H));
        apply_exp_uf(FRAC_PI_4, &oracle, &mut s).unwrap();
        let k = 1.0 / (8f64).sqrt();
        for x in 0..4 {
            if x == xs {
                assert!((s.amplitude(2 * x) - c(k, 0.0)).norm() < TOL);
                assert!((s.amplitude(2 * x + 1) - c(0.0, k)).norm() < TOL);
            } else {
                assert!((s.amplitude(2 * x) - c(k, k)).norm() < TOL);
                assert!(s.amplitude(2 * x + 1).norm() < TOL);
            }
        }
    }

    #[test]
    fn exp_uf_matches_dense_taylor_series() {
        for n in 1..=3usize {
            for marked in [None, Some(0), Some((1 << n) - 1)] {
                let oracle = BooleanOracle::direct(n, marked.map(|m| m as u64)).unwrap();
                let uf = dense_uf(n, marked);
                for alpha in [FRAC_PI_8, FRAC_PI_4, FRAC_PI_2, 1.0] {
                    let generator: Matrix = uf
                        .iter()
                        .map(|row| row.iter().map(|v| v * c(0.0, alpha)).collect())
                        .collect();
                    let expm = dense_expm(&generator);
                    let s = random_state(n, 40 + n as u64);
                    let expected: Vec<_> = expm
                        .iter()
                        .map(|row| row.iter().zip(s.amplitudes()).map(|(m, a)| m * a).sum::<Amplitude<f64>>())
                        .collect();
                    let mut t = s.clone();
                    apply_exp_uf(alpha, &oracle, &mut t).unwrap();
                    let worst = t
                        .amplitudes()
                        .iter()
                        .zip(&expected)
                        .map(|(a, b)| (a - b).norm())
                        .fold(0.0, f64::max);
                    assert!(worst < TOL, "n={n} marked={marked:?} alpha={alpha}: {worst}");
                }
            }
        }
    }

    #[test]
    fn conjugated_z_flips_marked_subspace_sign() {
        // U_f (I⊗Z) U_f acts as a sign flip on the f(x)=1 ⊕ ancilla=1 subspace:
        // ancilla-0 and ancilla-1 branches of an entangled state get opposite signs.
        let n = 2;
        let oracle = BooleanOracle::direct(n, Some(1)).unwrap();
        let s = random_state(n, 8);
        let mut t = s.clone();
        apply_uf(&oracle, &mut t).unwrap();
        t.apply_single(&make_gate(GateKind::Z), QubitIndex::ancilla(n)).unwrap();
        apply_uf(&oracle, &mut t).unwrap();
        for label in 0..(2 << n) {
            let x = label >> 1;
            let b = label & 1;
            let flipped = (b ^ usize::from(x == 1)) == 1;
            let expected = if flipped { -s.amplitude(label) } else { s.amplitude(label) };
            assert!((t.amplitude(label) - expected).norm() < TOL);
        }
    }

    #[test]
    fn phase_marking() {
        let oracle = BooleanOracle::direct(3, Some(4)).unwrap();
        let mut s = basis(3, 8);
        apply_phase_marking(PI, &oracle, &mut s).unwrap();
        assert!((s.amplitude(8) + one()).norm() < TOL);

        let r = random_state(3, 4);
        let mut t = r.clone();
        apply_phase_marking(2.0 * PI, &oracle, &mut t).unwrap();
        assert!(t.compare(&r, PhaseMode::Exact).unwrap() < TOL);
    }

    proptest::proptest! {
        #[test]
        fn exp_uf_is_additive(seed in proptest::prelude::any::<u64>(), n in 1usize..5, a in -3.0f64..3.0, b in -3.0f64..3.0) {
            let marked = seed % (1 << n);
            let oracle = BooleanOracle::direct(n, Some(marked)).unwrap();
            let s = random_state(n, seed);
            let mut split = s.clone();
            apply_exp_uf(a, &oracle, &mut split).unwrap();
            apply_exp_uf(b, &oracle, &mut split).unwrap();
            let mut joint = s.clone();
            apply_exp_uf(a + b, &oracle, &mut joint).unwrap();
            proptest::prop_assert!(split.compare(&joint, PhaseMode::Exact).unwrap() < TOL);
            proptest::prop_assert!((split.norm_sqr() - 1.0).abs() < TOL);
        }
    }
}
