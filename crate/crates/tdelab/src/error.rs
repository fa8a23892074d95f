//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by model evaluation, estimation, analysis, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A model produced a non-finite value.
    #[error("model evaluation produced a non-finite {what}")]
    NonFinite { what: &'static str },

    /// A matrix that must be inverted is singular or too badly conditioned.
    #[error("{what} is ill-conditioned (condition number {cond:.3e} exceeds {limit:.1e})")]
    IllConditioned {
        what: &'static str,
        cond: f64,
        limit: f64,
    },

    /// Vector/matrix dimensions do not agree.
    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    /// A requested time does not lie on the sample grid.
    #[error("time {t} s is not on the sample grid (dt = {dt} s)")]
    OffGrid { t: f64, dt: f64 },

    /// Model constructed with non-physical parameters.
    #[error("non-physical parameter: {0}")]
    NonPhysical(String),

    /// Gain or margin violates its definiteness/ordering requirement.
    #[error("invalid gain: {0}")]
    InvalidGain(String),

    /// beta must satisfy 0 < beta < lambda_min(K).
    #[error("invalid margin beta = {beta}: must lie in (0, {lambda_min_k})")]
    InvalidMargin { beta: f64, lambda_min_k: f64 },

    /// Input mapping G(x) lost column rank; pseudo-inverse undefined.
    #[error("input map is rank-deficient at the evaluated state")]
    RankDeficient,

    /// Not enough samples for the requested numerical operation.
    #[error("{what} needs at least {needed} samples, got {got}")]
    TooFewSamples {
        what: &'static str,
        needed: usize,
        got: usize,
    },

    /// Scenario failed validation; message names the offending field.
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    /// Scenario file could not be parsed.
    #[error("scenario parse error: {0}")]
    ScenarioParse(String),

    /// Requested suite or scenario name does not exist.
    #[error("unknown {kind}: {name}")]
    UnknownName { kind: &'static str, name: String },

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
