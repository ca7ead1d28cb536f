use thiserror::Error;

/// Errors raised by the library. Variants that describe a failed numerical
/// precondition carry the size of the violation so callers can report it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported group descriptor `{0}`")]
    UnsupportedGroup(String),

    #[error("{what} out of supported range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("group mismatch: `{left}` vs `{right}`")]
    GroupMismatch { left: String, right: String },

    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("malformed input: {0}")]
    Schema(String),

    #[error("non-finite value at position {0}")]
    NotFinite(usize),

    #[error("Gram matrix is not Hermitian positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    SingularGram { min_eigenvalue: f64 },

    #[error("group `{0}` has no catalog of irreducible representations")]
    NonCatalog(String),

    #[error("incomplete irrep list: sum of squared dimensions is {got}, group order is {order}")]
    IncompleteIrreps { got: usize, order: usize },

    #[error("unknown irrep label `{0}`")]
    UnknownIrrep(String),

    #[error("element is not Hermitian (max deviation {max_deviation:e})")]
    NotHermitian { max_deviation: f64 },

    #[error("state violates: {}", format_violations(.0))]
    InvalidState(Vec<StateViolation>),

    #[error("state is not pure (idempotency residual {residual:e})")]
    NotPure { residual: f64 },

    #[error("{0} is not an eigenvalue")]
    NotInSpectrum(f64),

    #[error("group `{0}` is not abelian")]
    NonAbelian(String),

    #[error("group `{0}` is not given as a product of cyclic groups")]
    NotCyclicProduct(String),

    #[error("empty character subset")]
    EmptySubset,

    #[error("eigenvalue solver did not converge on a block of size {0}")]
    EigenSolver(usize),

    #[error("invalid spin `{0}`")]
    InvalidSpin(String),

    #[error("magnetic index {tm}/2 out of range for j = {tj}/2")]
    InvalidProjection { tj: u32, tm: i32 },

    #[error("operator provenance `{0}` cannot be conjugated by this rule")]
    UnsupportedProvenance(String),
}

/// One failed condition of a density state.
#[derive(Debug, Clone, PartialEq)]
pub enum StateViolation {
    NotHermitian { max_deviation: f64 },
    TraceNotOne { trace: f64 },
    NotPositive { min_eigenvalue: f64 },
}

impl StateViolation {
    pub fn magnitude(&self) -> f64 {
        match *self {
            StateViolation::NotHermitian { max_deviation } => max_deviation,
            StateViolation::TraceNotOne { trace } => (trace - 1.0).abs(),
            StateViolation::NotPositive { min_eigenvalue } => -min_eigenvalue,
        }
    }
}

impl std::fmt::Display for StateViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateViolation::NotHermitian { max_deviation } => {
                write!(f, "hermiticity (max deviation {max_deviation:e})")
            }
            StateViolation::TraceNotOne { trace } => write!(f, "normalization (trace {trace})"),
            StateViolation::NotPositive { min_eigenvalue } => {
                write!(f, "positivity (smallest block eigenvalue {min_eigenvalue:e})")
            }
        }
    }
}

fn format_violations(v: &[StateViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl Error {
    /// Size of the numerical violation behind the error, when there is one.
    pub fn max_violation(&self) -> Option<f64> {
        match self {
            Error::NotHermitian { max_deviation } => Some(*max_deviation),
            Error::NotPure { residual } => Some(*residual),
            Error::SingularGram { min_eigenvalue } => Some(-min_eigenvalue),
            Error::InvalidState(v) => v.iter().map(StateViolation::magnitude).reduce(f64::max),
            _ => None,
        }
    }

    /// True for errors that describe a mathematical precondition failure
    /// rather than malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian { .. }
                | Error::InvalidState(_)
                | Error::NotPure { .. }
                | Error::NotInSpectrum(_)
                | Error::SingularGram { .. }
                | Error::NonAbelian(_)
                | Error::EigenSolver(_)
                | Error::UnsupportedProvenance(_)
                | Error::IncompleteIrreps { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
