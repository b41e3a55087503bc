//! State-vector simulation of a one-shot unstructured-search circuit built
//! from a Hamming-distance phase operator, with a Grover baseline, a
//! dense-matrix reference model and a probability sweep harness.
//!
//! Kernels are generic over the scalar type ([`Real`]: `f32` or `f64`); the
//! `*64` / `*32` aliases below pick one.

pub mod algorithm;
pub mod diagonal;
pub mod error;
pub mod gate;
pub mod grover;
pub mod hamming;
pub mod measure;
pub mod oracle;
pub mod reference;
pub mod scalar;
pub mod state;
pub mod sweep;
pub mod tracefile;
pub mod verify;

pub use algorithm::{
    decide, expected_state, run_pipeline, run_pipeline_with_gates, Answer, Checkpoint, DecisionMode,
    DecisionOutcome, GateSet, PipelineOptions, PipelineRun, Scenario, ScenarioKind, TraceRecord,
};
pub use diagonal::DiagonalPhaseOperator;
pub use error::{Error, Result};
pub use gate::{make_gate, GateKind, SingleQubitGate};
pub use grover::{run_grover, GroverRun, GroverState};
pub use hamming::{build_uc_conjugated, build_uc_direct, phase_for_distance, QuarterTurn};
pub use measure::SearchDistribution;
pub use oracle::{
    apply_exp_uf, apply_phase_marking, apply_uf, make_membership_oracle, BooleanOracle, SearchList, Strictness,
};
pub use scalar::{Amplitude, Real};
pub use state::{PhaseMode, QubitIndex, StateDump, StateVector, DEFAULT_MAX_SEARCH_QUBITS};
pub use sweep::{sweep, EvaluationReport, SweepConfig};
pub use tracefile::{build_trace_file, TraceFile};

pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type Gate64 = SingleQubitGate<f64>;
pub type Gate32 = SingleQubitGate<f32>;
pub type DiagonalPhaseOperator64 = DiagonalPhaseOperator<f64>;
pub type DiagonalPhaseOperator32 = DiagonalPhaseOperator<f32>;
pub type TraceRecord64 = TraceRecord<f64>;
pub type TraceRecord32 = TraceRecord<f32>;
pub type GroverState64 = GroverState<f64>;
pub type GroverState32 = GroverState<f32>;
