use thiserror::Error;

/// Errors raised by the rational-matrix, state-space and realization layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("denominator polynomial is identically zero")]
    ZeroDenominator,

    #[error("complex poles are not supported (entries {entries:?})")]
    ComplexPolesUnsupported { entries: Vec<(usize, usize)> },

    #[error("repeated pole at {pole} (entry ({row}, {col})); only simple poles are supported")]
    RepeatedPole { pole: f64, row: usize, col: usize },

    #[error("entry ({row}, {col}) is improper (numerator degree exceeds denominator degree)")]
    ImproperMatrix { row: usize, col: usize },

    #[error("evaluation point {point} is a pole of entry ({row}, {col})")]
    EvaluationAtPole {
        point: String,
        row: usize,
        col: usize,
    },

    #[error("rational matrix is singular (determinant is identically zero)")]
    SingularRationalMatrix,

    #[error("I - Q is singular; the transfer function is undefined")]
    SingularIminusQ,

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("output matrix C is rank deficient (rank {rank} < {rows} rows)")]
    RankDeficientC { rank: usize, rows: usize },

    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("feedthrough D must be zero for this operation")]
    NonzeroFeedthrough,

    #[error(
        "residue at pole {pole} has rank {rank} > 1; rank-one residues are assumed \
         (relaxations of this assumption exist but are not implemented)"
    )]
    ResidueRankExceedsOne { pole: f64, rank: usize },

    #[error(
        "conflicting R* assignment at diagonal position {position}: {first} vs {second}; \
         use the support-disjoint edge rule"
    )]
    ConflictingAssignment {
        position: usize,
        first: f64,
        second: f64,
    },

    #[error("pole at zero without a shift; N(s) = (sI - R)/s cannot be evaluated there")]
    PoleAtZeroWithoutShift,

    #[error("invalid shift {0}: it coincides with a pole")]
    InvalidShift(f64),

    #[error("invalid dynamical structure function: {0}")]
    InvalidDsf(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for violations of the modelling assumptions (simple real poles,
    /// rank-one residues), as opposed to malformed input.
    pub fn is_assumption_violation(&self) -> bool {
        matches!(
            self,
            Error::ComplexPolesUnsupported { .. }
                | Error::RepeatedPole { .. }
                | Error::ResidueRankExceedsOne { .. }
                | Error::ImproperMatrix { .. }
                | Error::ConflictingAssignment { .. }
                | Error::PoleAtZeroWithoutShift
                | Error::SingularIminusQ
                | Error::SingularRationalMatrix
        )
    }
}
