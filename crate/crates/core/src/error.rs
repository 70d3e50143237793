//! Error and warning types shared across the crate.

use crate::sweeps::TuneResult;

/// Crate-wide error type.
///
/// Exit-code mapping for the CLI: config/validation errors exit 2,
/// numerical failures (including the stability gate) exit 3, I/O exits 4.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("config parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },

    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// The linearized model has an eigenvalue with non-negative real part.
    /// Spectral quantities are undefined there and are never computed.
    #[error("unstable working point: an eigenvalue of the drift matrix has non-negative real part; no spectra computed")]
    UnstableSystem,

    #[error("singular resolvent at omega = {omega:e} rad/s")]
    SingularMatrix { omega: f64 },

    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),

    /// Commutator denominator below 1e-300; indicates a modeling bug,
    /// not physics.
    #[error("degenerate commutator denominator D = {0:e}")]
    DegenerateDenominator(f64),

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("no cavity resonance inside the search window")]
    NoResonanceInWindow,

    /// The wavelength window cannot balance the couplings; the best
    /// candidate found is carried so callers can still report it.
    #[error("coupling balance unreachable in window (best residual {:e})", .0.residual_imbalance)]
    TargetUnreachable(Box<TuneResult>),

    #[error("quadrature did not converge: {0}")]
    QuadratureNotConverged(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::InvalidParams(_) | Error::ParseError { .. } | Error::UnknownKey(_) => 2,
            Error::Io(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Non-fatal conditions reported alongside results.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// |L - n·λ/2|/L exceeded the reporting tolerance.
    ResonanceMismatch {
        fractional_error: f64,
        mode_index: u64,
    },
    /// A config value looks dimensionally suspicious (wrong unit scale).
    UnitSanity(String),
    /// A key appeared more than once in the config file; last wins.
    DuplicateKey { key: String, line: usize },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::ResonanceMismatch { fractional_error, mode_index } => write!(
                f,
                "cavity length is off the n = {mode_index} resonance by a fractional {fractional_error:.3e}; \
                 derived quantities use the configured length as-is"
            ),
            Warning::UnitSanity(msg) => write!(f, "unit sanity: {msg}"),
            Warning::DuplicateKey { key, line } => {
                write!(f, "duplicate key `{key}` at line {line}; last occurrence wins")
            }
        }
    }
}
