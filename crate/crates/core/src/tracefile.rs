//! JSON document for a traced pipeline run: every checkpoint dump plus,
//! when the target is present, its deviation from the closed form.

use serde::{Deserialize, Serialize};

use crate::algorithm::{expected_state, run_pipeline, Answer, Checkpoint, PipelineOptions, Scenario, ScenarioKind};
use crate::error::Result;
use crate::oracle::BooleanOracle;
use crate::state::{PhaseMode, StateDump, StateVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointEntry {
    pub label: Checkpoint,
    pub step: String,
    pub state: StateDump,
    /// Exact-phase deviation from the closed form (present case only).
    pub deviation: Option<f64>,
    /// Same, after aligning global phases.
    pub deviation_up_to_phase: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceFile {
    pub n: usize,
    pub x_s: u64,
    pub scenario: ScenarioKind,
    pub marked: Option<u64>,
    pub oracle: String,
    pub checkpoints: Vec<CheckpointEntry>,
    pub max_deviation: Option<f64>,
    /// `P(x)` for every search label.
    pub distribution: Vec<f64>,
    pub measured_label: u64,
    pub answer: Answer,
    pub degenerate_argmax: bool,
    pub global_phase_observed: Option<[f64; 2]>,
}

pub fn build_trace_file(n: usize, oracle: &BooleanOracle, target: u64, max_search_qubits: usize) -> Result<TraceFile> {
    let options = PipelineOptions {
        capture_trace: true,
        max_search_qubits,
        ..Default::default()
    };
    let run = run_pipeline::<f64>(n, oracle, target, options)?;
    let trace = run.trace.expect("trace requested");
    let scenario = Scenario::classify(target, oracle.marked());

    let mut checkpoints = Vec::with_capacity(7);
    for cp in Checkpoint::ALL {
        let state = trace.state(cp);
        let (deviation, deviation_up_to_phase) = match expected_state::<f64>(cp, &scenario, n) {
            Ok(want) => (
                Some(state.compare(&want, PhaseMode::Exact)?),
                Some(state.compare(&want, PhaseMode::UpToGlobalPhase)?),
            ),
            Err(_) => (None, None),
        };
        checkpoints.push(CheckpointEntry {
            label: cp,
            step: cp.step().to_owned(),
            state: state.to_dump(),
            deviation,
            deviation_up_to_phase,
        });
    }
    let max_deviation = checkpoints
        .iter()
        .map(|c| c.deviation)
        .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)));

    Ok(TraceFile {
        n,
        x_s: target,
        scenario: scenario.kind(),
        marked: oracle.marked(),
        oracle: oracle.provenance().to_string(),
        checkpoints,
        max_deviation,
        distribution: run.outcome.distribution.probabilities().to_vec(),
        measured_label: run.outcome.measured_label,
        answer: run.outcome.answer,
        degenerate_argmax: run.outcome.degenerate_argmax,
        global_phase_observed: run.outcome.global_phase_observed,
    })
}

impl TraceFile {
    pub fn states(&self) -> Result<Vec<StateVector<f64>>> {
        self.checkpoints.iter().map(|c| StateVector::from_dump(&c.state)).collect()
    }
}
