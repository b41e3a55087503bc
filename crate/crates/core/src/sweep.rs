//! Probability sweeps over register sizes and scenarios.
//!
//! Each cell runs the pipeline once, reads the exact probability of a YES
//! answer from the final distribution, estimates it again from seeded samples,
//! and (for small enough registers) recomputes it with the dense-matrix model
//! in [`crate::reference`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algorithm::{run_pipeline, PipelineOptions, Scenario, ScenarioKind};
use crate::error::Result;
use crate::reference;
use crate::state::{check_capacity, DEFAULT_MAX_SEARCH_QUBITS};

/// The claim the sweep measures against: a YES/NO answer with certainty.
pub const CERTAINTY_CLAIM: &str = "one-shot YES/NO answer with certainty (P(YES)=1 if present, 0 if absent)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub n_range: RangeInclusive<usize>,
    pub scenarios: Vec<ScenarioKind>,
    pub trials: u64,
    pub seed: u64,
    /// Every target is tried for `n` up to this size.
    pub exhaustive_up_to: usize,
    /// Distinct targets drawn per `n` above `exhaustive_up_to`.
    pub sampled_targets: usize,
    /// Largest `n` cross-checked against the dense-matrix model.
    pub dense_check_max_n: usize,
    pub max_search_qubits: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_range: 1..=10,
            scenarios: vec![ScenarioKind::Present, ScenarioKind::Absent],
            trials: 1000,
            seed: 0,
            exhaustive_up_to: 4,
            sampled_targets: 32,
            dense_check_max_n: 10,
            max_search_qubits: DEFAULT_MAX_SEARCH_QUBITS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellRecord {
    pub n: usize,
    pub scenario: ScenarioKind,
    pub x_s: u64,
    pub marked: Option<u64>,
    pub p_yes_exact: f64,
    pub p_yes_sampled: f64,
    pub trials: u64,
    pub seed: u64,
    pub p_yes_dense: Option<f64>,
    /// What the certainty claim predicts for this cell, if anything.
    pub claimed_p_yes: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub n: usize,
    pub scenario: ScenarioKind,
    pub cells: usize,
    pub min_p_yes: f64,
    pub max_p_yes: f64,
    pub claimed_p_yes: Option<f64>,
    pub max_claim_deviation: Option<f64>,
    pub max_dense_deviation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub claim: &'static str,
    pub config: SweepConfig,
    pub summary: Vec<SummaryRow>,
    pub cells: Vec<CellRecord>,
}

/// SplitMix64 finalizer, used to derive independent per-cell seeds.
pub fn mix_seed(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn cell_seed(seed: u64, n: usize, kind: ScenarioKind, target: u64) -> u64 {
    mix_seed(mix_seed(mix_seed(seed ^ n as u64) ^ kind as u64) ^ target)
}

/// Targets examined for an `n`-bit register, ascending.
pub fn targets_for(config: &SweepConfig, n: usize) -> Vec<u64> {
    let size = 1usize << n;
    if n <= config.exhaustive_up_to || size <= config.sampled_targets {
        return (0..size as u64).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(config.seed ^ ((n as u64) << 32)));
    let mut picked: Vec<u64> = sample(&mut rng, size, config.sampled_targets)
        .into_iter()
        .map(|x| x as u64)
        .collect();
    picked.sort_unstable();
    picked
}

fn scenario_for(kind: ScenarioKind, n: usize, target: u64, seed: u64) -> Scenario {
    match kind {
        ScenarioKind::Present => Scenario::Present { target },
        ScenarioKind::Absent => Scenario::Absent { target },
        ScenarioKind::Displaced => {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed));
            // Uniform over the 2^n − 1 labels other than the target.
            let offset = rng.gen_range(1..1u64 << n);
            Scenario::Displaced {
                target,
                marked: target ^ offset,
            }
        }
    }
}

fn claimed(kind: ScenarioKind) -> Option<f64> {
    match kind {
        ScenarioKind::Present => Some(1.0),
        ScenarioKind::Absent => Some(0.0),
        ScenarioKind::Displaced => None,
    }
}

pub fn run_cell(config: &SweepConfig, n: usize, kind: ScenarioKind, target: u64) -> Result<CellRecord> {
    let seed = cell_seed(config.seed, n, kind, target);
    let scenario = scenario_for(kind, n, target, seed);
    let oracle = scenario.oracle(n)?;
    let options = PipelineOptions {
        max_search_qubits: config.max_search_qubits,
        ..Default::default()
    };
    let run = run_pipeline::<f64>(n, &oracle, target, options)?;
    let distribution = &run.outcome.distribution;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p_yes_sampled = distribution.sampled_frequency(target, config.trials, &mut rng);
    let p_yes_dense = (n <= config.dense_check_max_n).then(|| reference::pipeline_p_yes(n, target, scenario.marked()));
    Ok(CellRecord {
        n,
        scenario: kind,
        x_s: target,
        marked: scenario.marked(),
        p_yes_exact: distribution.probability(target),
        p_yes_sampled,
        trials: config.trials,
        seed,
        p_yes_dense,
        claimed_p_yes: claimed(kind),
    })
}

/// Runs every `(n, scenario, x_s)` cell in parallel; output order is fixed.
pub fn sweep(config: &SweepConfig) -> Result<EvaluationReport> {
    for n in [*config.n_range.start(), *config.n_range.end()] {
        check_capacity(n, config.max_search_qubits)?;
    }
    let jobs: Vec<(usize, ScenarioKind, u64)> = config
        .n_range
        .clone()
        .flat_map(|n| {
            config
                .scenarios
                .iter()
                .flat_map(move |&kind| targets_for(config, n).into_iter().map(move |t| (n, kind, t)))
        })
        .collect();
    let cells = jobs
        .par_iter()
        .map(|&(n, kind, t)| run_cell(config, n, kind, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(EvaluationReport {
        claim: CERTAINTY_CLAIM,
        config: config.clone(),
        summary: summarize(&cells),
        cells,
    })
}

pub fn summarize(cells: &[CellRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(usize, ScenarioKind), Vec<&CellRecord>> = BTreeMap::new();
    for cell in cells {
        groups.entry((cell.n, cell.scenario)).or_default().push(cell);
    }
    groups
        .into_iter()
        .map(|((n, scenario), group)| {
            let ps = group.iter().map(|c| c.p_yes_exact);
            let claimed_p_yes = claimed(scenario);
            let dense: Vec<f64> = group
                .iter()
                .filter_map(|c| c.p_yes_dense.map(|d| (d - c.p_yes_exact).abs()))
                .collect();
            SummaryRow {
                n,
                scenario,
                cells: group.len(),
                min_p_yes: ps.clone().fold(f64::INFINITY, f64::min),
                max_p_yes: ps.clone().fold(f64::NEG_INFINITY, f64::max),
                claimed_p_yes,
                max_claim_deviation: claimed_p_yes.map(|claim| ps.map(|p| (p - claim).abs()).fold(0.0, f64::max)),
                max_dense_deviation: (!dense.is_empty()).then(|| dense.into_iter().fold(0.0, f64::max)),
            }
        })
        .collect()
}

fn opt<T: ToString>(value: Option<T>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

impl EvaluationReport {
    pub fn cells_csv(&self) -> String {
        let mut out =
            String::from("n,scenario,x_s,marked,p_yes_exact,p_yes_sampled,trials,seed,p_yes_dense,claimed_p_yes\n");
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                c.n,
                c.scenario,
                c.x_s,
                opt(c.marked),
                c.p_yes_exact,
                c.p_yes_sampled,
                c.trials,
                c.seed,
                opt(c.p_yes_dense),
                opt(c.claimed_p_yes),
            );
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from(
            "n,scenario,cells,min_p_yes,max_p_yes,claimed_p_yes,max_claim_deviation,max_dense_deviation\n",
        );
        for r in &self.summary {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.n,
                r.scenario,
                r.cells,
                r.min_p_yes,
                r.max_p_yes,
                opt(r.claimed_p_yes),
                opt(r.max_claim_deviation),
                opt(r.max_dense_deviation),
            );
        }
        out
    }

    /// Fixed-width table of the summary rows for terminals.
    pub fn summary_table(&self) -> String {
        let mut out = format!("claim: {}\n", self.claim);
        let _ = writeln!(
            out,
            "{:>3} {:<10} {:>5} {:>14} {:>14} {:>8} {:>12}",
            "n", "scenario", "cells", "min P(YES)", "max P(YES)", "claimed", "|Δ dense|"
        );
        for r in &self.summary {
            let _ = writeln!(
                out,
                "{:>3} {:<10} {:>5} {:>14.10} {:>14.10} {:>8} {:>12}",
                r.n,
                r.scenario.to_string(),
                r.cells,
                r.min_p_yes,
                r.max_p_yes,
                opt(r.claimed_p_yes),
                r.max_dense_deviation.map(|d| format!("{d:.2e}")).unwrap_or_else(|| "-".into()),
            );
        }
        out
    }
}
