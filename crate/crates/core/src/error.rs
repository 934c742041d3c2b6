use thiserror::Error;

/// Everything that can go wrong between building a state and reporting a measure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error(
        "Jacobi diagonalization did not converge after {sweeps} sweeps (off-diagonal mass {off:e})"
    )]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("occupation list has {got} entries but the layout has {expected} modes")]
    LengthMismatch { expected: usize, got: usize },

    #[error("occupation values must be 0 or 1, got {0}")]
    BadOccupation(u8),

    #[error("a W state needs at least two qubits, got {0}")]
    BadArity(usize),

    #[error("layout has {0} modes; the engine supports at most {max}", max = crate::fock::MAX_MODES)]
    TooManyModes(usize),

    #[error("duplicate mode {0} in layout")]
    DuplicateMode(String),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("trace is {0}, expected 1")]
    BadTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("partial trace must keep at least one mode")]
    EmptyKeepSet,

    #[error("mode position {position} out of range for a {modes}-mode layout")]
    BadPosition { position: usize, modes: usize },

    #[error("invalid partition: {0}")]
    BadPartition(String),

    #[error("invalid physical input: {0}")]
    BadPhysicalInput(String),

    #[error("acceleration parameter r = {0} outside [0, pi/4]")]
    DomainError(f64),

    #[error("unknown observer or mode `{0}`")]
    UnknownObserver(String),

    #[error("observer `{0}` has already been mapped to Rindler modes")]
    AlreadyTransformed(String),

    #[error("expected a {expected}-mode state, got {got} modes")]
    WrongArity { expected: usize, got: usize },

    #[error("incomplete input: {0}")]
    IncompleteInput(String),

    #[error("residual tangle of mode {mode} is {value:e}, below the clipping tolerance")]
    NegativeResidual { mode: usize, value: f64 },

    #[error("unknown oracle `{0}`")]
    UnknownOracle(String),

    #[error("config error ({location}): {message}")]
    Config { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn config(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            location: location.into(),
            message: message.into(),
        }
    }
}
