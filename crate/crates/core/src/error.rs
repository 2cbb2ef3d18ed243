use core::fmt;

/// Hard cap on simulated qubits (2^24 amplitudes, about 268 MB).
pub const MAX_QUBITS: usize = 24;

/// Largest subsystem a reduced density matrix may keep.
pub const MAX_KEPT_QUBITS: usize = 12;

/// Why a gate was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateError {
    /// A qubit index is `>= n_qubits` of the target state.
    OutOfRange { qubit: usize, n_qubits: usize },
    /// The same qubit appears twice in one gate.
    Collision { qubit: usize },
    /// A user-supplied matrix failed the unitarity check.
    NotUnitary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Requested more than [`MAX_QUBITS`] qubits (or zero where at least one is required).
    Capacity { requested: usize, max: usize },
    InvalidGate(GateError),
    /// A gate inside a sequence failed; `index` is its position in the sequence.
    InvalidGateAt { index: usize, error: GateError },
    /// Empty, duplicated, oversized or out-of-range qubit subset.
    InvalidSubset,
    DimensionMismatch { expected: usize, found: usize },
    /// Amplitude vector length is not a power of two or the state is not normalized.
    InvalidState,
    /// Message length below the minimum of three qubits.
    InvalidLayout { k: usize },
    /// Erasure flag references a block or position outside the layout.
    InvalidFlags { block: usize, position: usize },
    /// Two erasures were reported in the same block.
    DuplicateBlock { block: usize },
    /// More erasures than the code's budget `t`.
    BudgetExceeded { erasures: usize, budget: usize },
}

impl From<GateError> for Error {
    fn from(e: GateError) -> Self {
        Error::InvalidGate(e)
    }
}

impl fmt::Display for GateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateError::OutOfRange { qubit, n_qubits } => {
                write!(f, "qubit {qubit} out of range for a {n_qubits}-qubit state")
            }
            GateError::Collision { qubit } => write!(f, "qubit {qubit} used twice in one gate"),
            GateError::NotUnitary => f.write_str("gate matrix is not unitary"),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Capacity { requested, max } => {
                write!(f, "capacity exceeded: {requested} qubits requested, limit is 1..={max}")
            }
            Error::InvalidGate(e) => write!(f, "invalid gate: {e}"),
            Error::InvalidGateAt { index, error } => write!(f, "invalid gate #{index}: {error}"),
            Error::InvalidSubset => f.write_str("invalid qubit subset"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected} qubits, found {found}")
            }
            Error::InvalidState => f.write_str("amplitudes do not form a normalized state"),
            Error::InvalidLayout { k } => write!(f, "message length k={k} is below 3"),
            Error::InvalidFlags { block, position } => {
                write!(f, "erasure flag {block}:{position} is outside the code layout")
            }
            Error::DuplicateBlock { block } => {
                write!(f, "more than one erasure flagged in block {block}")
            }
            Error::BudgetExceeded { erasures, budget } => {
                write!(f, "{erasures} erasures exceed the correctable budget of {budget}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
