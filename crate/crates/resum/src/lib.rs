//! High-precision resummation of divergent perturbation series.
//!
//! The crate turns a factorially divergent weak-coupling expansion into a
//! convergent strong-coupling one by a cut-off Laplace transform: the series
//! is mapped term by term onto inverse powers of the transform variable,
//! truncated at a stationary point of the transformed partial sum, and the
//! discarded tail is restored through incomplete-gamma corrections.
//!
//! Modules build on each other in dependency order:
//!
//! * [`precision`]: arbitrary-precision context and the gamma family
//! * [`series`]: the two divergent model series with exact coefficients
//! * [`transform`]: the term-wise transform into the conjugate variable
//! * [`engine`]: stationary points, resummation, and scan diagnostics
//! * [`oracles`]: independent exact values for cross-checking
//! * [`delta`]: the averaging-kernel picture of the same transform
//! * [`report`]: table assembly and CSV/JSON rendering
//! * [`cli`]: command implementations behind the `resum` binary
//! * [`error`]: shared error type

pub mod cli;
pub mod delta;
pub mod engine;
pub mod error;
pub mod oracles;
pub mod precision;
pub mod report;
pub mod series;
pub mod transform;
