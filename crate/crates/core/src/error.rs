use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into two groups, see [`Error::kind`]: malformed or
/// invalid input data, and mathematical preconditions that valid data
/// can still violate (a non-unit, a level on the action spectrum, ...).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("series is zero modulo its cutoff and has no inverse")]
    NotAUnit,
    #[error("series has a term with nonpositive exponent {exponent}")]
    NotPositivelySupported { exponent: String },
    #[error("logarithm needs a series of the form 1 + (positive terms): {reason}")]
    BadLeadingTerm { reason: String },

    #[error("action must be positive, got {action} ({what})")]
    NonPositiveAction { what: String, action: String },
    #[error("duplicate label '{0}'")]
    DuplicateLabel(String),
    #[error("unknown label '{0}'")]
    UnknownLabel(String),
    #[error("orbit '{label}' has parity pair (1,0), which has no 3-dimensional type")]
    NotThreeDimensional { label: String },
    #[error("return map trace {trace} has |trace| = 2 (degenerate orbit)")]
    DegenerateOrbit { trace: String },

    #[error("differential does not square to zero: <d^2 {from}, {to}> = {value}")]
    NotSquareZero {
        from: String,
        to: String,
        value: String,
    },
    #[error("differential entry <d {from}, {to}> does not strictly lower the filtration ({from_level} <= {to_level})")]
    FiltrationViolation {
        from: String,
        to: String,
        from_level: String,
        to_level: String,
    },
    #[error("differential entry <d {from}, {to}> joins generators of equal parity")]
    GradingViolation { from: String, to: String },
    #[error("bar [{birth}, {death}) is empty")]
    EmptyBar { birth: String, death: String },

    #[error("series coefficient at t^{exponent} is {coefficient}, not an integer")]
    NonIntegerCoefficients {
        exponent: String,
        coefficient: String,
    },
    #[error("series has a term at nonpositive exponent {exponent}")]
    NonPositiveSupport { exponent: String },

    #[error("level {at} is a multiple of the action {action}")]
    OnSpectrum { at: String, action: String },
    #[error("normal vector ({v1}, {v2}) is not primitive")]
    NotCoprime { v1: String, v2: String },
    #[error("moment profile point needs positive coordinates, got ({w1}, {w2})")]
    NonPositiveProfile { w1: String, w2: String },
    #[error("Morse data on the sphere needs #min - #saddle + #max = 2 with at least one min and max: {reason}")]
    BadMorseCounts { reason: String },
}

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input could not be parsed or violates a data invariant.
    Validation,
    /// The input is well formed but an operation's precondition fails.
    Precondition,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            Parse { .. }
            | NonPositiveAction { .. }
            | DuplicateLabel(_)
            | UnknownLabel(_)
            | NotSquareZero { .. }
            | FiltrationViolation { .. }
            | GradingViolation { .. }
            | EmptyBar { .. }
            | NotCoprime { .. }
            | NonPositiveProfile { .. }
            | BadMorseCounts { .. } => ErrorKind::Validation,
            NotAUnit
            | NotPositivelySupported { .. }
            | BadLeadingTerm { .. }
            | NotThreeDimensional { .. }
            | DegenerateOrbit { .. }
            | NonIntegerCoefficients { .. }
            | NonPositiveSupport { .. }
            | OnSpectrum { .. } => ErrorKind::Precondition,
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
