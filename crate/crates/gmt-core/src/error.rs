//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by complex construction, solvers, and file parsing.
#[derive(Debug, Error)]
pub enum Error {
    /// A complex violates a structural invariant (bad indices, duplicate
    /// simplices, broken incidence).
    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    /// A chain references simplices that do not exist or has the wrong
    /// dimension for the requested operation.
    #[error("invalid chain: {0}")]
    InvalidChain(String),

    /// A triangle is too close to collinear to carry reliable measures.
    #[error("degenerate triangle {index}: {reason}")]
    DegenerateTriangle { index: usize, reason: String },

    /// Integer chain arithmetic overflowed.
    #[error("chain coefficient overflow")]
    Overflow,

    /// An argument is outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The LP solver reached a state that is impossible for a well-posed
    /// flat norm instance (infeasibility, unboundedness, residual failure).
    #[error("solver integrity failure: {0}")]
    SolverIntegrity(String),

    /// No parameter satisfies the requested equation (best-fit circle).
    #[error("no solution: {0}")]
    NoSolution(String),

    /// The direct search could not find any feasible point in the first
    /// poll frame around an infeasible start.
    #[error("infeasible start: no feasible point in the initial poll frame")]
    InfeasibleStart,

    /// A text input failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
