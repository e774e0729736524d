use thiserror::Error;

/// Errors raised by the toolkit. Failed inequality checks are verdicts, not errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{a} and {b} are not coprime (gcd = {gcd})")]
    Coprimality { a: i64, b: i64, gcd: i64 },

    #[error("invalid input: {0}")]
    Domain(String),

    #[error("unsupported surgery slope {m}/{n}: only slopes 1/n with n >= 1 are supported")]
    UnsupportedSlope { m: i64, n: u64 },

    #[error("doubling depth {depth} is below the required minimum {min}")]
    Depth { depth: u32, min: u32 },

    #[error("shape error: {0}")]
    Shape(String),

    #[error(
        "evaluation paths disagree for {sphere}: trigonometric {float_value}, exact {exact_value}"
    )]
    EvaluationDisagreement {
        sphere: String,
        float_value: f64,
        exact_value: String,
    },

    #[error("all coefficients of the combination are zero")]
    ZeroCombination,

    #[error("invalid family: {0}")]
    InvalidFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
