use crate::exact::{OperatorError, SolveError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ring mismatch: (g={}, d={}) vs (g={}, d={})", .left.0, .left.1, .right.0, .right.1)]
    RingMismatch { left: (u32, u32), right: (u32, u32) },
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: u32, right: u32 },
    #[error("genus {g} is below the minimum {min} for {what}")]
    GenusTooSmall { g: u32, min: u32, what: &'static str },
    #[error("genus {g} is above the supported maximum {max}")]
    GenusTooLarge { g: u32, max: u32 },
    #[error("{what} = {value} is outside {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("the maps j*, j_* need d >= 1")]
    ZeroPower,
    #[error("no class w in span(η, φ*θ) with ι(w) = -w at genus {g}")]
    NoEigenvector { g: u32 },
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    /// An identity that must hold by construction failed. Never expected;
    /// it would mean a sign or normalization bug.
    #[error("consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
