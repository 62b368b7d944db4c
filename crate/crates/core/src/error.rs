//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced while validating inputs or running the test pipelines.
#[derive(Debug, Clone, Error)]
pub enum GofError {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// All nonzero counts are equal, so the order statistics degenerate
    /// and no correction parameters can be derived.
    #[error("nonzero counts are uniform (all equal to n/(R-c)); correction not applicable")]
    UniformNonzero,

    /// The admissible interval for the parameter `a` is empty.
    #[error(
        "empty admissible interval for a: n={n}, R={r}, c={c}, b={b}, \
         a_min={a_min}, a_max={a_max}"
    )]
    EmptyInterval {
        n: u64,
        r: usize,
        c: usize,
        b: f64,
        a_min: f64,
        a_max: f64,
    },

    /// The mixing weight h must lie strictly inside (0, 1).
    #[error("invalid h = {0}; must lie in (0, 1)")]
    InvalidH(f64),

    /// Every observed count is zero.
    #[error("all counts are zero")]
    AllZero,

    /// Fewer than two rows or columns remain after removing empty lines.
    #[error("degenerate table after preprocessing: {rows} rows x {cols} columns remain")]
    DegenerateTable { rows: usize, cols: usize },

    /// Direct and closed-form evaluations of a corrected statistic disagree.
    #[error("{name}: direct evaluation {direct} and closed form {closed} disagree")]
    Mismatch {
        name: &'static str,
        direct: f64,
        closed: f64,
    },

    /// A corrected-estimator component fell outside (0, 1); indicates a bug
    /// in the bound computation rather than bad user input.
    #[error("corrected estimator component {value} at cell {index} outside (0, 1)")]
    EstimatorOutOfRange { index: usize, value: f64 },

    /// Instance too large for exhaustive enumeration.
    #[error("instance exceeds enumeration bounds (n <= 8, R <= 4)")]
    SizeError,
}

pub type Result<T> = std::result::Result<T, GofError>;
