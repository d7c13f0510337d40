use thiserror::Error;

/// Errors produced anywhere in the workflow.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed FCIDUMP header: {0}")]
    Header(String),

    #[error("FCIDUMP line {line}: {msg}")]
    Record { line: usize, msg: String },

    #[error("FCIDUMP line {line}: index {index} out of range for NORB={norb}")]
    IndexOutOfRange { line: usize, index: usize, norb: usize },

    #[error("conflicting duplicate integral {indices}: {first} vs {second}")]
    ConflictingDuplicate { indices: String, first: f64, second: f64 },

    #[error("FCIDUMP line {0}: complex integrals are not supported")]
    ComplexIntegral(usize),

    #[error("invalid integral table: {0}")]
    InvalidTable(String),

    #[error("invalid active space: {0}")]
    ActiveSpace(String),

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("invalid placement: {0}")]
    Placement(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("{0} qubits exceeds the statevector cap of {cap}", cap = crate::simulator::MAX_QUBITS)]
    QubitCap(usize),

    #[error("operator is not hermitian: {0}")]
    NonHermitian(String),

    #[error("register width mismatch: expected {expected} qubits, got {got}")]
    Width { expected: usize, got: usize },

    #[error("determinant {bits} is outside the sector (N={n_electrons}, 2Sz={ms2})")]
    OutsideSector { bits: String, n_electrons: usize, ms2: i32 },

    #[error("requested {requested} roots from a dimension-{dim} problem")]
    TooManyRoots { requested: usize, dim: usize },

    #[error("eigensolver did not converge after {iterations} iterations (residuals {residuals:?})")]
    NotConverged { iterations: usize, residuals: Vec<f64> },

    #[error("sector basis of {size} determinants exceeds the limit of {limit}")]
    BasisTooLarge { size: usize, limit: usize },

    #[error("non-finite energy in layer {0}")]
    NonFinite(String),

    #[error("reference label {0:?} not found")]
    MissingReference(String),

    #[error("config: {0}")]
    Config(String),

    #[error("stage {stage} failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
