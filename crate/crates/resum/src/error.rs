//! Error type shared by every module of the crate.

use std::fmt;

/// Errors reported by series construction, transforms, root finding, oracles
/// and the CLI layer.
#[derive(Debug, Clone)]
pub enum Error {
    /// An argument left the mathematical domain of an operation
    /// (e.g. `gamma` at a nonpositive integer, evaluation at `x <= 0`).
    Domain {
        /// Operation that rejected the argument.
        context: &'static str,
        /// Human-readable description of the offending value.
        detail: String,
    },
    /// An iterative computation did not reach the requested tolerance.
    NonConvergence {
        /// Operation that failed to converge.
        context: &'static str,
        /// Best error estimate achieved before giving up.
        achieved: String,
    },
    /// A series term `sigma^xi` with non-integer `xi >= 1` cannot be
    /// transformed: the image power would be `<= -1`, outside the
    /// Laplace-representable range.
    UntransformableExponent {
        /// The offending exponent, as `num/den`.
        xi: String,
    },
    /// A stationary point was requested but the derivative has no root
    /// in the searched interval (even truncation orders, typically).
    NoStationaryPoint,
    /// Root refinement exhausted its iteration budget inside a bracket.
    RootRefinement {
        /// Bracket endpoints at the time of failure.
        bracket: (String, String),
    },
    /// A coefficient cache file could not be parsed.
    CacheParse {
        /// 1-based line number of the first malformed line.
        line: usize,
        /// The malformed line content.
        content: String,
    },
    /// Invalid run configuration (CLI exit code 2).
    Config {
        /// What was wrong.
        message: String,
    },
    /// Underlying I/O failure.
    Io {
        /// Rendered `std::io::Error`.
        message: String,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { context, detail } => {
                write!(f, "domain error in {context}: {detail}")
            }
            Error::NonConvergence { context, achieved } => {
                write!(f, "{context} did not converge (achieved {achieved})")
            }
            Error::UntransformableExponent { xi } => {
                write!(
                    f,
                    "series exponent {xi} >= 1 is not an integer: its transform \
                     x^(-{xi}) is not Laplace-representable"
                )
            }
            Error::NoStationaryPoint => {
                write!(f, "the series derivative has no root in the searched interval")
            }
            Error::RootRefinement { bracket } => {
                write!(
                    f,
                    "root refinement exceeded its iteration budget in [{}, {}]",
                    bracket.0, bracket.1
                )
            }
            Error::CacheParse { line, content } => {
                write!(f, "cache parse error at line {line}: {content:?}")
            }
            Error::Config { message } => write!(f, "invalid configuration: {message}"),
            Error::Io { message } => write!(f, "i/o error: {message}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io { message: e.to_string() }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
