//! Self-check suite: operator laws, construction equivalences, trace
//! equalities and dense-matrix cross-checks, run against a configurable gate
//! set and tolerances.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algorithm::{
    absent_global_phase, expected_state, run_pipeline_with_gates, Checkpoint, GateSet, PipelineOptions, Scenario,
};
use crate::error::Result;
use crate::gate::{make_gate, GateKind, SingleQubitGate};
use crate::grover::{closed_form_success, run_grover, GroverState};
use crate::hamming::{build_uc_conjugated, build_uc_direct};
use crate::oracle::{apply_exp_uf, BooleanOracle};
use crate::reference::{self, DenseMatrix};
use crate::scalar::{imag_unit, zero};
use crate::state::{PhaseMode, QubitIndex, StateVector};
use crate::sweep::{mix_seed, targets_for, SweepConfig};

/// Default tolerance for algebraic identities.
pub const ALGEBRAIC_TOLERANCE: f64 = 1e-12;
/// Default tolerance for end-to-end probability claims.
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ToleranceClass {
    Algebraic,
    Probability,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub algebraic_tolerance: f64,
    pub probability_tolerance: f64,
    pub gates: GateSet<f64>,
    /// Largest register used for trace and certainty checks.
    pub max_n: usize,
    /// Largest register cross-checked against dense matrix-vector products.
    pub max_dense_n: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            algebraic_tolerance: ALGEBRAIC_TOLERANCE,
            probability_tolerance: PROBABILITY_TOLERANCE,
            gates: GateSet::default(),
            max_n: 10,
            max_dense_n: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Fails only because the tolerance was tightened below its default.
    ToleranceInduced,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::ToleranceInduced => "FAIL (tolerance-induced)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub class: ToleranceClass,
    pub deviation: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.status != CheckStatus::Pass)
    }

    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let pad = width - c.name.chars().count();
            out.push_str(&format!(
                "{}{}  {:>10.3e} <= {:<8.1e} {}\n",
                c.name,
                " ".repeat(pad),
                c.deviation,
                c.tolerance,
                c.status
            ));
        }
        out
    }
}

struct Runner<'a> {
    config: &'a VerifyConfig,
    checks: Vec<CheckResult>,
}

impl Runner<'_> {
    fn record(&mut self, name: impl Into<String>, class: ToleranceClass, deviation: Result<f64>) {
        let (tolerance, default) = match class {
            ToleranceClass::Algebraic => (self.config.algebraic_tolerance, ALGEBRAIC_TOLERANCE),
            ToleranceClass::Probability => (self.config.probability_tolerance, PROBABILITY_TOLERANCE),
        };
        // Errors surface as an infinite deviation so they can never pass.
        let deviation = deviation.unwrap_or(f64::INFINITY);
        let status = if deviation.is_finite() && deviation <= tolerance {
            CheckStatus::Pass
        } else if deviation.is_finite() && deviation <= default {
            CheckStatus::ToleranceInduced
        } else {
            CheckStatus::Fail
        };
        self.checks.push(CheckResult {
            name: name.into(),
            class,
            deviation,
            tolerance,
            status,
        });
    }
}

fn to_dense(gate: &SingleQubitGate<f64>) -> [[Complex64; 2]; 2] {
    gate.entries
}

fn random_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector<f64> {
    let mut amps: Vec<Complex64> = (0..(2usize << n))
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    StateVector::from_amplitudes(n, amps).expect("normalized by construction")
}

fn basis(n: usize, label: usize) -> StateVector<f64> {
    let mut amps = vec![zero(); 2 << n];
    amps[label] = Complex64::new(1.0, 0.0);
    StateVector::from_amplitudes(n, amps).expect("basis state")
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Kernel `exp(iαU_f)` as a dense matrix, column by column.
fn kernel_exp_uf(n: usize, oracle: &BooleanOracle, alpha: f64) -> Result<DenseMatrix> {
    let dim = 2 << n;
    let mut data = vec![zero(); dim * dim];
    for col in 0..dim {
        let mut s = basis(n, col);
        apply_exp_uf(alpha, oracle, &mut s)?;
        for (row, a) in s.amplitudes().iter().enumerate() {
            data[row * dim + col] = *a;
        }
    }
    Ok(DenseMatrix { dim, data })
}

pub fn run_verify(config: &VerifyConfig) -> VerifyReport {
    let mut r = Runner {
        config,
        checks: Vec::new(),
    };
    let gates = &config.gates;
    let x = make_gate::<f64>(GateKind::X);
    let id = SingleQubitGate::<f64>::identity();
    let alg = ToleranceClass::Algebraic;
    let prob = ToleranceClass::Probability;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);

    // Single-qubit operator laws.
    for (name, g) in [("H", &gates.h), ("X", &x), ("Z", &gates.z), ("H_i", &gates.hi)] {
        r.record(format!("unitary {name}"), alg, Ok(g.unitarity_deviation()));
    }
    for (name, g) in [("H", &gates.h), ("X", &x), ("Z", &gates.z)] {
        r.record(format!("{name}^2 = I"), alg, Ok((g * g).max_deviation(&id)));
    }
    r.record(
        "H_i^2 = iX",
        alg,
        Ok((&gates.hi * &gates.hi).max_deviation(&x.scaled(imag_unit()))),
    );

    // exp(iαU_f): unitarity, agreement with the spectral form, additivity.
    let angles = [FRAC_PI_8, FRAC_PI_4, FRAC_PI_2, 1.0];
    let (mut unitarity, mut spectral) = (Ok(0.0), Ok(0.0));
    for n in 1..=3usize {
        for marked in [None, Some(0), Some((1u64 << n) - 1)] {
            for alpha in angles {
                let oracle = BooleanOracle::direct(n, marked).expect("label in range");
                let dense = kernel_exp_uf(n, &oracle, alpha);
                unitarity = unitarity.and_then(|w: f64| dense.as_ref().map(|m| w.max(m.unitarity_deviation())).map_err(Clone::clone));
                spectral = spectral.and_then(|w: f64| {
                    dense
                        .as_ref()
                        .map(|m| w.max(m.max_deviation(&reference::exp_uf_matrix(n, marked, alpha))))
                        .map_err(Clone::clone)
                });
            }
        }
    }
    r.record("unitary exp(iαU_f), n<=3", alg, unitarity);
    r.record("exp(iαU_f) = cos α I + i sin α U_f (dense), n<=3", alg, spectral);

    let additivity = (|| {
        let mut worst: f64 = 0.0;
        for n in 1..=4usize {
            for _ in 0..8 {
                let oracle = BooleanOracle::direct(n, Some(rng.gen_range(0..1u64 << n)))?;
                let (a, b) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
                let s = random_state(n, &mut rng);
                let mut split = s.clone();
                apply_exp_uf(a, &oracle, &mut split)?;
                apply_exp_uf(b, &oracle, &mut split)?;
                let mut joint = s;
                apply_exp_uf(a + b, &oracle, &mut joint)?;
                worst = worst.max(split.compare(&joint, PhaseMode::Exact)?);
            }
        }
        Ok(worst)
    })();
    r.record("exp(iαU_f) exp(iβU_f) = exp(i(α+β)U_f), n<=4", alg, additivity);

    // U_c constructions.
    let uc = (|| {
        let (mut unit, mut equiv): (f64, f64) = (0.0, 0.0);
        for n in 1..=6usize {
            for xs in 0..1u64 << n {
                let direct = build_uc_direct::<f64>(xs, n)?;
                let conj = build_uc_conjugated::<f64>(xs, n)?;
                unit = unit.max(direct.unitarity_deviation()).max(conj.unitarity_deviation());
                equiv = equiv.max(direct.max_deviation(&conj)?);
            }
        }
        Ok((unit, equiv))
    })();
    r.record("unitary U_c, n<=6", alg, uc.clone().map(|(u, _)| u));
    r.record("U_c direct = X-conjugated, n<=6 exhaustive", alg, uc.map(|(_, e)| e));

    // Kernel single-qubit application against dense Kronecker products.
    let kron = (|| {
        let mut worst: f64 = 0.0;
        for n in 1..=3usize {
            let s = random_state(n, &mut rng);
            for g in [&gates.h, &x, &gates.z, &gates.hi] {
                for q in 0..=n {
                    let mut t = s.clone();
                    t.apply_single(g, QubitIndex(q))?;
                    let dense = reference::embed_single(to_dense(g), q, n + 1).apply(s.amplitudes());
                    worst = worst.max(max_diff(t.amplitudes(), &dense));
                }
            }
        }
        Ok(worst)
    })();
    r.record("apply_single = dense Kronecker product, n<=3", alg, kron);

    // Present-case trace against closed forms.
    let sweep_cfg = SweepConfig::default();
    let traces = (|| {
        let (mut dev, mut norm): (f64, f64) = (0.0, 0.0);
        for n in 1..=config.max_n.min(8) {
            for xs in targets_for(&sweep_cfg, n) {
                let scenario = Scenario::Present { target: xs };
                let options = PipelineOptions {
                    capture_trace: true,
                    ..Default::default()
                };
                let run = run_pipeline_with_gates(n, &scenario.oracle(n)?, xs, options, gates)?;
                let trace = run.trace.expect("trace requested");
                for cp in Checkpoint::ALL {
                    let want = expected_state::<f64>(cp, &scenario, n)?;
                    dev = dev.max(trace.state(cp).compare(&want, PhaseMode::Exact)?);
                    norm = norm.max((trace.state(cp).norm_sqr() - 1.0).abs());
                }
            }
        }
        Ok((dev, norm))
    })();
    r.record("present trace = closed forms psi0..psi6, n<=8", alg, traces.clone().map(|t| t.0));
    r.record("checkpoint norms = 1, n<=8", alg, traces.map(|t| t.1));

    let certainty = (|| {
        let mut worst: f64 = 0.0;
        for n in 1..=config.max_n {
            for xs in targets_for(&sweep_cfg, n) {
                let oracle = BooleanOracle::direct(n, Some(xs))?;
                let run = run_pipeline_with_gates(n, &oracle, xs, PipelineOptions::default(), gates)?;
                let miss = if run.outcome.measured_label == xs { 0.0 } else { 1.0 };
                worst = worst.max((1.0 - run.outcome.p_yes(xs)).abs()).max(miss);
            }
        }
        Ok(worst)
    })();
    r.record(format!("present P(x_s) = 1 and YES, n<={}", config.max_n), prob, certainty);

    // Whole pipeline against the dense operator product.
    let dense_pipeline = (|| {
        let mut worst: f64 = 0.0;
        for n in 1..=3usize {
            for xs in 0..1u64 << n {
                for marked in [Some(xs), None] {
                    let op = reference::pipeline_operator(n, xs, marked);
                    let mut zero_state = vec![zero(); 2 << n];
                    zero_state[0] = Complex64::new(1.0, 0.0);
                    let dense = op.apply(&zero_state);
                    let oracle = BooleanOracle::direct(n, marked)?;
                    let run = run_pipeline_with_gates(n, &oracle, xs, PipelineOptions::default(), gates)?;
                    worst = worst.max(max_diff(run.final_state.amplitudes(), &dense));
                }
            }
        }
        Ok(worst)
    })();
    r.record("pipeline = dense operator product, n<=3", alg, dense_pipeline);

    // Absent case.
    let absent_n1 = (|| {
        let oracle = BooleanOracle::direct(1, None)?;
        let run = run_pipeline_with_gates(1, &oracle, 1, PipelineOptions::default(), gates)?;
        Ok((run.outcome.p_yes(1) - 0.5).abs())
    })();
    r.record("absent n=1 P(false YES) = 0.5", prob, absent_n1);

    let absent_dense = (|| {
        let mut worst: f64 = 0.0;
        for n in 1..=config.max_dense_n {
            let targets = targets_for(&sweep_cfg, n);
            let picks = [targets[0], targets[targets.len() / 2], targets[targets.len() - 1]];
            for xs in picks {
                let oracle = BooleanOracle::direct(n, None)?;
                let run = run_pipeline_with_gates(n, &oracle, xs, PipelineOptions::default(), gates)?;
                worst = worst.max((run.outcome.p_yes(xs) - reference::pipeline_p_yes(n, xs, None)).abs());
            }
        }
        Ok(worst)
    })();
    r.record(
        format!("absent P(false YES) = dense model, n<={}", config.max_dense_n),
        prob,
        absent_dense,
    );

    let absent_phases = (|| {
        let mut worst: f64 = 0.0;
        for n in 1..=6usize {
            let xs = mix_seed(n as u64) % (1 << n);
            let options = PipelineOptions {
                capture_trace: true,
                ..Default::default()
            };
            let run = run_pipeline_with_gates(n, &BooleanOracle::direct(n, None)?, xs, options, gates)?;
            let trace = run.trace.expect("trace requested");
            for cp in [Checkpoint::Psi2, Checkpoint::Psi3, Checkpoint::Psi4] {
                let mut want = trace.state(Checkpoint::Psi1).clone();
                want.scale(absent_global_phase(cp).expect("phase defined for psi1..psi4"));
                worst = worst.max(trace.state(cp).compare(&want, PhaseMode::Exact)?);
            }
        }
        Ok(worst)
    })();
    r.record("absent psi2..psi4 = phased psi1", alg, absent_phases);

    // Grover baseline.
    let grover = (|| {
        let mut worst: f64 = 0.0;
        for n in 1..=config.max_n {
            let k_max = 2 * (FRAC_PI_4 * ((1u64 << n) as f64).sqrt()).ceil() as u64;
            let marked = mix_seed(n as u64 + 100) % (1 << n);
            let mut state = GroverState::<f64>::uniform(n)?;
            for k in 0..=k_max {
                worst = worst.max((state.probability(marked) - closed_form_success(n, k)).abs());
                state.grover_iterate(marked)?;
            }
        }
        Ok(worst)
    })();
    r.record(format!("Grover P = sin^2((2k+1)θ), n<={}", config.max_n), prob, grover);
    r.record(
        "Grover n=2 k=1 P = 1",
        prob,
        run_grover::<f64>(2, 3, Some(1)).map(|g| (g.success_probability - 1.0).abs()),
    );

    VerifyReport { checks: r.checks }
}
