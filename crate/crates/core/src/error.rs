use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("qubit index {index} out of range for width {width}")]
    QubitOutOfRange { index: usize, width: usize },
    #[error("CNOT control and target are both qubit {0}")]
    CnotSameQubit(usize),
    #[error("gate {0} is not Clifford")]
    NonClifford(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("circuit has {n} qubits, above the dense-simulation cap of {cap}")]
    WidthCap { n: usize, cap: usize },
    #[error("marker list has {found} entries but the sequence has {expected} columns")]
    Markers { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
