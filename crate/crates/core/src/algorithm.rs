//! The one-shot search pipeline:
//!
//! ```text
//! (H_i^{⊗n} ⊗ I)(U_c^{|x_s⟩} ⊗ I) e^{iπ/4 U_f} (I^{⊗n} ⊗ Z) e^{iπ/4 U_f} (H^{⊗n} ⊗ I) |0⟩^{⊗n+1}
//! ```
//!
//! followed by a measurement of the search register. Reading `x_s` means YES.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::{make_gate, GateKind, SingleQubitGate};
use crate::hamming::build_uc_direct;
use crate::measure::{SearchDistribution, DISTRIBUTION_TOLERANCE};
use crate::oracle::{apply_exp_uf, check_label, BooleanOracle};
use crate::scalar::{c, imag_unit, zero, Amplitude, Real};
use crate::state::{QubitIndex, StateVector, DEFAULT_MAX_SEARCH_QUBITS};

/// Checkpoints of the pipeline, `ψ0` (initial register) to `ψ6` (before measurement).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Checkpoint {
    #[serde(rename = "psi0")]
    Psi0,
    #[serde(rename = "psi1")]
    Psi1,
    #[serde(rename = "psi2")]
    Psi2,
    #[serde(rename = "psi3")]
    Psi3,
    #[serde(rename = "psi4")]
    Psi4,
    #[serde(rename = "psi5")]
    Psi5,
    #[serde(rename = "psi6")]
    Psi6,
}

impl Checkpoint {
    pub const ALL: [Checkpoint; 7] = [
        Checkpoint::Psi0,
        Checkpoint::Psi1,
        Checkpoint::Psi2,
        Checkpoint::Psi3,
        Checkpoint::Psi4,
        Checkpoint::Psi5,
        Checkpoint::Psi6,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The operation that produced this checkpoint.
    pub fn step(self) -> &'static str {
        match self {
            Checkpoint::Psi0 => "prepare |0⟩^(n+1)",
            Checkpoint::Psi1 => "H on search qubits",
            Checkpoint::Psi2 => "exp(iπ/4 U_f)",
            Checkpoint::Psi3 => "Z on ancilla",
            Checkpoint::Psi4 => "exp(iπ/4 U_f)",
            Checkpoint::Psi5 => "U_c on search qubits",
            Checkpoint::Psi6 => "H_i on search qubits",
        }
    }
}

impl fmt::Display for Checkpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "psi{}", self.index())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    Present,
    Absent,
    /// The oracle marks a label other than the searched item's.
    Displaced,
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioKind::Present => "present",
            ScenarioKind::Absent => "absent",
            ScenarioKind::Displaced => "displaced",
        })
    }
}

impl std::str::FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "present" => Ok(ScenarioKind::Present),
            "absent" => Ok(ScenarioKind::Absent),
            "displaced" => Ok(ScenarioKind::Displaced),
            other => Err(Error::Parse(format!("unknown scenario {other:?}"))),
        }
    }
}

/// Relationship between the searched item and what the oracle marks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    Present { target: u64 },
    Absent { target: u64 },
    Displaced { target: u64, marked: u64 },
}

impl Scenario {
    pub fn classify(target: u64, marked: Option<u64>) -> Self {
        match marked {
            Some(m) if m == target => Scenario::Present { target },
            Some(marked) => Scenario::Displaced { target, marked },
            None => Scenario::Absent { target },
        }
    }

    pub fn kind(&self) -> ScenarioKind {
        match self {
            Scenario::Present { .. } => ScenarioKind::Present,
            Scenario::Absent { .. } => ScenarioKind::Absent,
            Scenario::Displaced { .. } => ScenarioKind::Displaced,
        }
    }

    pub fn target(&self) -> u64 {
        match *self {
            Scenario::Present { target } | Scenario::Absent { target } | Scenario::Displaced { target, .. } => {
                target
            }
        }
    }

    pub fn marked(&self) -> Option<u64> {
        match *self {
            Scenario::Present { target } => Some(target),
            Scenario::Absent { .. } => None,
            Scenario::Displaced { marked, .. } => Some(marked),
        }
    }

    pub fn oracle(&self, num_bits: usize) -> Result<BooleanOracle> {
        BooleanOracle::direct(num_bits, self.marked())
    }
}

/// Gates used by the pipeline. Overridable so fault-injected builds can be
/// run through the same code path.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSet<T: Real> {
    pub h: SingleQubitGate<T>,
    pub z: SingleQubitGate<T>,
    pub hi: SingleQubitGate<T>,
}

impl<T: Real> Default for GateSet<T> {
    fn default() -> Self {
        Self {
            h: make_gate(GateKind::H),
            z: make_gate(GateKind::Z),
            hi: make_gate(GateKind::Hi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecisionMode {
    /// Argmax of the exact distribution, smallest label on ties.
    #[default]
    Deterministic,
    /// One seeded draw from the distribution.
    Sampled { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Answer {
    Yes,
    No,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionOutcome {
    pub measured_label: u64,
    pub answer: Answer,
    pub distribution: SearchDistribution,
    /// Another label ties the maximum (deterministic mode only).
    pub degenerate_argmax: bool,
    /// Unit phase of the final amplitude at `|x_s⟩⊗|0⟩`, when that amplitude is nonzero.
    pub global_phase_observed: Option<[f64; 2]>,
}

impl DecisionOutcome {
    pub fn p_yes(&self, target: u64) -> f64 {
        self.distribution.probability(target)
    }
}

/// Reports YES iff the measured label is `target`.
pub fn decide(distribution: &SearchDistribution, target: u64, mode: DecisionMode) -> Result<DecisionOutcome> {
    decide_within(distribution, target, mode, DISTRIBUTION_TOLERANCE)
}

fn decide_within(
    distribution: &SearchDistribution,
    target: u64,
    mode: DecisionMode,
    tolerance: f64,
) -> Result<DecisionOutcome> {
    let total = distribution.total();
    if (total - 1.0).abs() > tolerance {
        return Err(Error::MalformedDistribution(format!("probabilities sum to {total}")));
    }
    check_label(target, distribution.num_bits())?;
    let (measured_label, degenerate_argmax) = match mode {
        DecisionMode::Deterministic => distribution.argmax(),
        DecisionMode::Sampled { seed } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (distribution.sample_with(&mut rng), false)
        }
    };
    Ok(DecisionOutcome {
        measured_label,
        answer: if measured_label == target { Answer::Yes } else { Answer::No },
        distribution: distribution.clone(),
        degenerate_argmax,
        global_phase_observed: None,
    })
}

/// Snapshots `ψ0 … ψ6` of one pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord<T: Real> {
    pub num_search_qubits: usize,
    pub scenario: Scenario,
    checkpoints: Vec<StateVector<T>>,
}

impl<T: Real> TraceRecord<T> {
    pub fn checkpoints(&self) -> &[StateVector<T>] {
        &self.checkpoints
    }

    pub fn state(&self, checkpoint: Checkpoint) -> &StateVector<T> {
        &self.checkpoints[checkpoint.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineOptions {
    pub capture_trace: bool,
    pub decision: DecisionMode,
    pub max_search_qubits: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            capture_trace: false,
            decision: DecisionMode::Deterministic,
            max_search_qubits: DEFAULT_MAX_SEARCH_QUBITS,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineRun<T: Real> {
    pub trace: Option<TraceRecord<T>>,
    pub final_state: StateVector<T>,
    pub outcome: DecisionOutcome,
}

/// Runs the search for `target` against `oracle` with the standard gates.
pub fn run_pipeline<T: Real>(
    num_search_qubits: usize,
    oracle: &BooleanOracle,
    target: u64,
    options: PipelineOptions,
) -> Result<PipelineRun<T>> {
    run_pipeline_with_gates(num_search_qubits, oracle, target, options, &GateSet::default())
}

pub fn run_pipeline_with_gates<T: Real>(
    num_search_qubits: usize,
    oracle: &BooleanOracle,
    target: u64,
    options: PipelineOptions,
    gates: &GateSet<T>,
) -> Result<PipelineRun<T>> {
    let n = num_search_qubits;
    let mut state = StateVector::<T>::zero_state_with_capacity(n, options.max_search_qubits)?;
    check_label(target, n)?;
    if oracle.num_bits() != n {
        return Err(Error::Shape {
            expected: 1 << n,
            found: 1 << oracle.num_bits(),
        });
    }
    let uc = build_uc_direct::<T>(target, n)?;
    let quarter = T::FRAC_PI_4();

    let mut checkpoints = Vec::with_capacity(if options.capture_trace { 7 } else { 0 });
    let mut snapshot = |s: &StateVector<T>| {
        if options.capture_trace {
            checkpoints.push(s.clone());
        }
    };

    snapshot(&state);
    state.apply_to_search_qubits(&gates.h);
    snapshot(&state);
    apply_exp_uf(quarter, oracle, &mut state)?;
    snapshot(&state);
    state.apply_single(&gates.z, QubitIndex::ancilla(n))?;
    snapshot(&state);
    apply_exp_uf(quarter, oracle, &mut state)?;
    snapshot(&state);
    state.apply_diagonal(&uc)?;
    snapshot(&state);
    state.apply_to_search_qubits(&gates.hi);
    snapshot(&state);

    // Single precision cannot hold the sum to 1e-9.
    let tolerance = DISTRIBUTION_TOLERANCE.max(1e3 * T::epsilon().to_f64_lossy());
    let mut outcome = decide_within(&state.search_distribution(), target, options.decision, tolerance)?;
    let amp = state.amplitude(2 * target as usize);
    if amp.norm() > T::epsilon() {
        let unit = amp / amp.norm();
        outcome.global_phase_observed = Some([unit.re.to_f64_lossy(), unit.im.to_f64_lossy()]);
    }

    let trace = options.capture_trace.then(|| TraceRecord {
        num_search_qubits: n,
        scenario: Scenario::classify(target, oracle.marked()),
        checkpoints,
    });
    Ok(PipelineRun {
        trace,
        final_state: state,
        outcome,
    })
}

/// Closed-form state at `checkpoint` when the target is present.
///
/// With `N = 2^n` and `D(x)` the Hamming distance to `x_s`:
/// - `ψ1 = N^{-1/2} Σ_x |x,0⟩`
/// - `ψ2 = (1+i)(2N)^{-1/2} Σ_{x≠x_s} |x,0⟩ + (2N)^{-1/2} |x_s⟩(|0⟩ + i|1⟩)`
/// - `ψ3` as `ψ2` with `|0⟩ − i|1⟩` on the target
/// - `ψ4 = i N^{-1/2} Σ_{x≠x_s} |x,0⟩ + N^{-1/2} |x_s,0⟩`
/// - `ψ5 = N^{-1/2} Σ_x i^{D(x)} |x,0⟩`
/// - `ψ6 = i^n |x_s,0⟩`
pub fn expected_state<T: Real>(checkpoint: Checkpoint, scenario: &Scenario, num_search_qubits: usize) -> Result<StateVector<T>> {
    let Scenario::Present { target } = *scenario else {
        return Err(Error::UnsupportedScenario(scenario.kind().to_string()));
    };
    let n = num_search_qubits;
    crate::state::check_capacity(n, DEFAULT_MAX_SEARCH_QUBITS)?;
    check_label(target, n)?;

    let size = 1usize << n;
    let xs = target as usize;
    let inv_sqrt_n = T::one() / T::from_usize(size).expect("register size fits in T").sqrt();
    let inv_sqrt_2n = inv_sqrt_n * T::FRAC_1_SQRT_2();
    let o = T::one();
    let z = T::zero();
    let i = imag_unit::<T>();

    let mut amps = vec![zero::<T>(); 2 * size];
    match checkpoint {
        Checkpoint::Psi0 => amps[0] = c(o, z),
        Checkpoint::Psi1 => (0..size).for_each(|x| amps[2 * x] = c(inv_sqrt_n, z)),
        Checkpoint::Psi2 | Checkpoint::Psi3 => {
            (0..size).for_each(|x| amps[2 * x] = c(inv_sqrt_2n, inv_sqrt_2n));
            let sign = if checkpoint == Checkpoint::Psi2 { o } else { -o };
            amps[2 * xs] = c(inv_sqrt_2n, z);
            amps[2 * xs + 1] = c(z, sign * inv_sqrt_2n);
        }
        Checkpoint::Psi4 => {
            (0..size).for_each(|x| amps[2 * x] = c(z, inv_sqrt_n));
            amps[2 * xs] = c(inv_sqrt_n, z);
        }
        Checkpoint::Psi5 => {
            for x in 0..size {
                amps[2 * x] = i.powu((x ^ xs).count_ones()) * inv_sqrt_n;
            }
        }
        Checkpoint::Psi6 => amps[2 * xs] = i.powu(n as u32),
    }
    Ok(StateVector::from_amplitudes_unchecked(n, amps))
}

/// `e^{iθ}` factor relating absent-case checkpoints `ψ1…ψ4` to `ψ1`.
pub fn absent_global_phase<T: Real>(checkpoint: Checkpoint) -> Option<Amplitude<T>> {
    let quarter = T::FRAC_PI_4();
    match checkpoint {
        Checkpoint::Psi1 => Some(crate::scalar::one()),
        Checkpoint::Psi2 | Checkpoint::Psi3 => Some(crate::scalar::cis(quarter)),
        Checkpoint::Psi4 => Some(crate::scalar::cis(quarter + quarter)),
        _ => None,
    }
}
