use thiserror::Error;

/// Errors raised by the simulator and its harnesses.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("register of {requested} search qubits outside supported range 1..={max}")]
    Capacity { requested: usize, max: usize },

    #[error("qubit index {index} out of range for a register with {num_qubits} qubits")]
    QubitIndex { index: usize, num_qubits: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("label {label} does not fit in {num_bits} bits")]
    LabelOutOfRange { label: u64, num_bits: usize },

    #[error("target item occurs {count} times in the list; at most one match is allowed")]
    MultiMatch { count: usize },

    #[error("list has {len} items; expected a power of two")]
    ListLength { len: usize },

    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("state contains a non-finite amplitude at index {index}")]
    NonFinite { index: usize },

    #[error("no analytic form for the {0} scenario")]
    UnsupportedScenario(String),

    #[error("malformed distribution: {0}")]
    MalformedDistribution(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
