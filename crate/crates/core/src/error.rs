//! Crate-wide error type.

use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("requested word of {requested} letters exceeds the cap of {cap}")]
    WordCapExceeded { requested: u128, cap: usize },

    #[error("search depth {depth} gives a word of {have} letters; need at least {need} (twice the factor length)")]
    SearchDepthTooSmall { depth: usize, have: u128, need: u128 },

    #[error("field `cells`: must be nonempty")]
    EmptyCells,

    #[error("field `cells[{index}].width`: must be positive, got {width}")]
    NonpositiveCellWidth { index: usize, width: f64 },

    #[error("field `length`: {length} does not match the cell-width sum {sum} (relative tolerance 1e-12)")]
    LengthMismatch { length: f64, sum: f64 },

    #[error("field `length`: must be positive, got {length}")]
    NonpositiveLength { length: f64 },

    #[error("field `samples`: must be nonempty")]
    EmptySamples,

    #[error("field `label`: expected `{expected}`, got `{got}`")]
    WrongLabel { expected: &'static str, got: String },

    #[error("no potential piece assigned to letter `{0}`")]
    MissingPiece(Letter),

    #[error("step width must be positive, got {0}")]
    NonpositiveStep(f64),

    #[error("energy must be positive, got {0}")]
    NonpositiveEnergy(f64),

    #[error("invalid energy window: lo {lo} must be below hi {hi} and samples {samples} must be at least 2")]
    InvalidWindow { lo: f64, hi: f64, samples: usize },

    #[error("tolerance must be positive, got {0}")]
    NonpositiveTolerance(f64),

    #[error("coupling values must be nonnegative, got {0}")]
    NegativeLambda(f64),

    #[error("approximant level must be between 1 and {max}, got {level}")]
    InvalidLevel { level: usize, max: usize },

    #[error("interval set must be nonempty")]
    EmptyIntervals,

    #[error("scale must be positive, got {0}")]
    NonpositiveScale(f64),

    #[error("invalid scale range [{eps_min}, {eps_max}] for an interval set of diameter {diameter}")]
    InvalidScaleRange {
        eps_min: f64,
        eps_max: f64,
        diameter: f64,
    },

    #[error("regression needs at least 3 scales, got {0}")]
    DegenerateRegression(usize),

    #[error("window [{lo}, {hi}] has no matching profile samples")]
    MismatchedWindow { lo: f64, hi: f64 },

    #[error("piece file: {0}")]
    PieceFile(String),
}
