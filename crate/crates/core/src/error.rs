use thiserror::Error;

/// Sub-step of a multi-step iteration, used to locate singular Jacobians.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// Factorization of T'(x_n).
    Base,
    /// Factorization of T'(y_n).
    Predictor,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Stage::Base => f.write_str("T'(x_n)"),
            Stage::Predictor => f.write_str("T'(y_n)"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid continuity constants: {0}")]
    InvalidConstants(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("argument {value} lies outside the valid interval of {what}")]
    Domain { what: String, value: f64 },

    #[error("no sign change of gap function {index} found on (0, {upper}]")]
    NoRoot { index: usize, upper: f64 },

    #[error("singular Jacobian while factorizing {stage}")]
    SingularJacobian { stage: Stage },

    #[error("iteration did not converge within {iterations} iterations")]
    MaxIterations { iterations: usize },

    #[error("only {usable} usable errors, at least 3 are required")]
    InsufficientData { usable: usize },

    #[error("starting point at distance {distance} is outside the convergence ball of radius {radius}")]
    BallViolation { distance: f64, radius: f64 },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("{expressions} expressions for {variables} variables")]
    Arity { expressions: usize, variables: usize },

    #[error("{function} is undefined at {value}")]
    EvalDomain { function: String, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("problem has no known root")]
    MissingRoot,

    #[error("problem file: {0}")]
    ProblemFile(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
