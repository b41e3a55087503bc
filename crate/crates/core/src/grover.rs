//! Plain Grover search on the search register alone (no ancilla): sign
//! oracle on the marked label, then inversion about the mean.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::check_label;
use crate::scalar::{c, Amplitude, Real};
use crate::state::{check_capacity, DEFAULT_MAX_SEARCH_QUBITS};

/// State of an `n`-qubit search register.
#[derive(Debug, Clone, PartialEq)]
pub struct GroverState<T: Real> {
    num_bits: usize,
    amplitudes: Vec<Amplitude<T>>,
}

impl<T: Real> GroverState<T> {
    /// `W|0⟩`: the uniform superposition.
    pub fn uniform(num_bits: usize) -> Result<Self> {
        check_capacity(num_bits, DEFAULT_MAX_SEARCH_QUBITS)?;
        let size = 1usize << num_bits;
        let amp = T::one() / T::from_usize(size).expect("register size fits in T").sqrt();
        Ok(Self {
            num_bits,
            amplitudes: vec![c(amp, T::zero()); size],
        })
    }

    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    pub fn amplitudes(&self) -> &[Amplitude<T>] {
        &self.amplitudes
    }

    pub fn probability(&self, label: u64) -> T {
        self.amplitudes[label as usize].norm_sqr()
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// One Grover iteration: flip the sign of `marked`, then `a ↦ 2⟨a⟩ − a`.
    pub fn grover_iterate(&mut self, marked: u64) -> Result<()> {
        check_label(marked, self.num_bits)?;
        self.amplitudes[marked as usize] = -self.amplitudes[marked as usize];
        let size = T::from_usize(self.amplitudes.len()).expect("register size fits in T");
        let sum = self
            .amplitudes
            .iter()
            .fold(c(T::zero(), T::zero()), |acc: Amplitude<T>, a| acc + a);
        let twice_mean = sum * ((T::one() + T::one()) / size);
        self.amplitudes.iter_mut().for_each(|a| *a = twice_mean - *a);
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroverRun {
    pub n: usize,
    pub marked: u64,
    pub iterations: u64,
    pub success_probability: f64,
}

/// `⌊π/4 · √(2^n)⌋`.
pub fn default_iterations(num_bits: usize) -> u64 {
    (std::f64::consts::FRAC_PI_4 * ((1u64 << num_bits) as f64).sqrt()).floor() as u64
}

/// `sin²((2k+1)θ)` with `sin θ = 2^{−n/2}`.
pub fn closed_form_success(num_bits: usize, iterations: u64) -> f64 {
    let theta = (1.0 / ((1u64 << num_bits) as f64).sqrt()).asin();
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

pub fn run_grover<T: Real>(num_bits: usize, marked: u64, iterations: Option<u64>) -> Result<GroverRun> {
    let mut state = GroverState::<T>::uniform(num_bits)?;
    if marked >> num_bits != 0 {
        return Err(Error::LabelOutOfRange { label: marked, num_bits });
    }
    let iterations = iterations.unwrap_or_else(|| default_iterations(num_bits));
    for _ in 0..iterations {
        state.grover_iterate(marked)?;
    }
    Ok(GroverRun {
        n: num_bits,
        marked,
        iterations,
        success_probability: state.probability(marked).to_f64_lossy(),
    })
}

/// One row of the Grover vs one-shot comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub n: usize,
    pub k: u64,
    pub grover_p_success: f64,
    pub oneshot_present_p: f64,
    pub oneshot_absent_false_yes_p: f64,
}

/// Grover success after `k` iterations beside the one-shot pipeline's
/// single-call probabilities (target `0`). With `all_k`, every `k` up to
/// `2⌈π/4·√(2^n)⌉` is listed; otherwise only the default count.
pub fn compare_with_oneshot(n_range: std::ops::RangeInclusive<usize>, all_k: bool) -> Result<Vec<ComparisonRow>> {
    use crate::algorithm::{run_pipeline, PipelineOptions};
    use crate::oracle::BooleanOracle;

    let mut rows = Vec::new();
    for n in n_range {
        let present = run_pipeline::<f64>(n, &BooleanOracle::direct(n, Some(0))?, 0, PipelineOptions::default())?;
        let absent = run_pipeline::<f64>(n, &BooleanOracle::direct(n, None)?, 0, PipelineOptions::default())?;
        let ks: Vec<u64> = if all_k {
            let k_max = 2 * (std::f64::consts::FRAC_PI_4 * ((1u64 << n) as f64).sqrt()).ceil() as u64;
            (0..=k_max).collect()
        } else {
            vec![default_iterations(n)]
        };
        for k in ks {
            rows.push(ComparisonRow {
                n,
                k,
                grover_p_success: run_grover::<f64>(n, 0, Some(k))?.success_probability,
                oneshot_present_p: present.outcome.p_yes(0),
                oneshot_absent_false_yes_p: absent.outcome.p_yes(0),
            });
        }
    }
    Ok(rows)
}

pub fn comparison_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from("n,k,grover_p_success,oneshot_present_p,oneshot_absent_false_yes_p\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n, r.k, r.grover_p_success, r.oneshot_present_p, r.oneshot_absent_false_yes_p
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_qubits_one_iteration_is_exact() {
        for marked in 0..4 {
            let run = run_grover::<f64>(2, marked, Some(1)).unwrap();
            assert!((run.success_probability - 1.0).abs() < 1e-9);
        }
        assert_eq!(run_grover::<f64>(2, 0, None).unwrap().iterations, 1);
    }

    #[test]
    fn zero_iterations_is_uniform() {
        for n in 1..=6 {
            let run = run_grover::<f64>(n, 0, Some(0)).unwrap();
            assert!((run.success_probability - 1.0 / (1u64 << n) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn four_qubits_three_iterations() {
        let run = run_grover::<f64>(4, 11, None).unwrap();
        assert_eq!(run.iterations, 3);
        assert!((run.success_probability - 0.961_318_969_726_562_5).abs() < 1e-9);
        assert!((closed_form_success(4, 3) - 0.961_318_969_726_562_5).abs() < 1e-12);
    }

    #[test]
    fn matches_closed_form() {
        for n in 1..=10usize {
            let k_max = 2 * (std::f64::consts::FRAC_PI_4 * ((1u64 << n) as f64).sqrt()).ceil() as u64;
            let marked = (1u64 << n) / 3;
            let mut state = GroverState::<f64>::uniform(n).unwrap();
            for k in 0..=k_max {
                let p = state.probability(marked);
                assert!((p - closed_form_success(n, k)).abs() < 1e-9, "n={n} k={k}");
                assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
                let other = state.amplitudes()[if marked == 0 { 1 } else { 0 }];
                for (x, a) in state.amplitudes().iter().enumerate() {
                    if x as u64 != marked {
                        assert!((a - other).norm() < 1e-12);
                    }
                }
                state.grover_iterate(marked).unwrap();
            }
        }
    }

    #[test]
    fn comparison_rows() {
        let rows = compare_with_oneshot(1..=3, false).unwrap();
        assert_eq!(rows.len(), 3);
        assert!((rows[0].oneshot_absent_false_yes_p - 0.5).abs() < 1e-9);
        assert!(rows.iter().all(|r| (r.oneshot_present_p - 1.0).abs() < 1e-9));
        assert_eq!(rows[1].k, 1);
        assert!((rows[1].grover_p_success - 1.0).abs() < 1e-9);
        let csv = comparison_csv(&rows);
        assert!(csv.starts_with("n,k,grover_p_success,oneshot_present_p,oneshot_absent_false_yes_p\n"));
        assert_eq!(csv.lines().count(), 4);
        assert_eq!(compare_with_oneshot(2..=2, true).unwrap().len(), 5);
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(run_grover::<f64>(3, 8, None).is_err());
        assert!(run_grover::<f64>(0, 0, None).is_err());
    }
}
