use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("x = {x} lies outside the half-line support of the trial function")]
    Domain { x: f64 },

    #[error("quadrature did not reach tolerance {requested:e}: estimated error {achieved:e}")]
    Quadrature { requested: f64, achieved: f64 },

    #[error("dG/da vanishes at a = {a}: parametric point is degenerate")]
    DegeneratePoint { a: f64 },

    #[error("{operation}: no convergence ({detail})")]
    NonConvergence { operation: &'static str, detail: String },

    #[error("no bound state with index {n} at v0 = {v0}")]
    NoBoundState { n: usize, v0: f64 },

    #[error("no threshold: {0}")]
    NoThreshold(String),

    #[error("discretization inadequate: {0}")]
    Discretization(String),

    #[error("series composition requires an inner series with zero constant term (got {c0})")]
    CompositionDomain { c0: f64 },

    #[error("series reversion requires c0 = 0 and c1 != 0 (got c0 = {c0}, c1 = {c1})")]
    ReversionDomain { c0: f64, c1: f64 },

    #[error("series with zero constant term has no reciprocal")]
    NotInvertible,

    #[error("invalid order {order}: {reason}")]
    InvalidOrder { order: usize, reason: String },

    #[error("no sign change of W_exp - W_harm in [{lo}, {hi}]")]
    NoCrossing { lo: f64, hi: f64 },

    #[error("ill-conditioned fit: condition number {0:e}")]
    IllConditionedFit(f64),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
