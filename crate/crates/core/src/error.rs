//! Error types shared across the simulator.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or running a simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("basis index {index} out of range for dimension {dim}")]
    BasisIndexOutOfRange { index: usize, dim: usize },

    #[error("gate names qubit {qubit} more than once")]
    DuplicateQubit { qubit: usize },

    #[error("controlled-phase pair ({k}, {j}) must satisfy k < j")]
    PhasePairOrder { k: usize, j: usize },

    #[error("permutation table of length {len} is not a bijection")]
    NotABijection { len: usize },

    #[error("permutation table length {len} is not a power of two")]
    TableNotPowerOfTwo { len: usize },

    #[error("requested {requested} qubits exceeds the maximum of {max}")]
    CapacityExceeded { requested: usize, max: usize },

    #[error("state norm {norm} drifted more than 1e-6 from 1")]
    NormCorrupted { norm: f64 },

    #[error("input length {actual} does not match expected length {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("wire {wire} is not defined yet (wires available: {available})")]
    UndefinedWire { wire: usize, available: usize },

    #[error("reversible circuit needs {needed} wires, exceeding the cap of {cap}")]
    WireBudgetExceeded { needed: usize, cap: usize },

    #[error("variable {var} outside the range 1..={m}")]
    VariableOutOfRange { var: usize, m: usize },

    #[error("assignment space 2^{m} exceeds the search cap 2^{cap}")]
    SearchSpaceExceeded { m: usize, cap: usize },

    #[error("cannot factor {m}: {reason}")]
    RejectedModulus { m: u64, reason: ModulusRejection },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("gate `{gate}` is not a reversible (involution) gate")]
    NotReversible { gate: String },
}

/// Why a modulus was rejected by the factoring pipeline's parameter check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusRejection {
    Even,
    TooSmall,
    Prime,
    PrimePower { base: u64, exponent: u32 },
}

impl std::fmt::Display for ModulusRejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModulusRejection::Even => write!(f, "it is even"),
            ModulusRejection::TooSmall => write!(
                f,
                "it is smaller than the least odd composite non-prime-power"
            ),
            ModulusRejection::Prime => write!(f, "it is prime"),
            ModulusRejection::PrimePower { base, exponent } => {
                write!(f, "it is the prime power {base}^{exponent}")
            }
        }
    }
}
