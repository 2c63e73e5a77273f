use thiserror::Error;

/// Errors for grid construction, state validation, and the numerical guards.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("operands live on different grids")]
    GridMismatch,

    #[error("wavefunction is not normalized: |∫|ψ|² dx − 1| = {0:.3e}")]
    NotNormalized(f64),

    #[error(
        "probability mass {0:.3e} in the outer 5% of the x-domain; \
         the periodic transform would wrap it around"
    )]
    EdgeMass(f64),

    #[error("kernel is not Hermitian: max|ρ − ρ†| = {0:.3e}")]
    NonHermitian(f64),

    #[error("operator has eigenvalue {0:.3e} below -1e-8 and is not a quantum state")]
    NotAState(f64),

    #[error(
        "field does not decay at the domain boundary (outer amplitude is {ratio:.3e} of the \
         maximum); the smoothing integral is suspect — run a divergence probe"
    )]
    DivergenceSuspected { ratio: f64 },

    #[error("wehrl entropy is defined for Husimi functions only; min value {0:.3e} is genuinely negative")]
    NegativeHusimi(f64),

    #[error("operation expects {expected}, got a {got} field")]
    WrongFieldKind {
        expected: &'static str,
        got: &'static str,
    },

    #[error("unknown claim id {0:?} (expected one of C1..C6)")]
    UnknownClaim(String),

    #[error("scenario: {0}")]
    Scenario(String),

    #[error("field export: {0}")]
    Export(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to: numerical guards exit
    /// with 2, everything else is a validation failure (1).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DivergenceSuspected { .. } => 2,
            _ => 1,
        }
    }
}
