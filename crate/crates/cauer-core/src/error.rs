//! Error type shared by every module of the crate.

use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong while building networks or evaluating them.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constructor was handed a non-positive or non-finite value.
    InvalidParameter { name: &'static str, value: f64 },
    /// A depth / node-count argument was below the required minimum.
    DepthTooSmall { depth: usize, min: usize },
    /// Two sequences that must have equal length do not.
    LengthMismatch { left: usize, right: usize },
    /// A continued fraction was built from an empty term sequence.
    EmptyTerms,
    /// A continued-fraction term is NaN or infinite.
    NonFiniteTerm { index: usize },
    /// An intermediate denominator `1 + v` underflowed the configured floor.
    /// `level` is the 1-based bracket position being folded in.
    DivisionNearZero { level: usize },
    /// The ladder recursion hit a vanishing denominator at the given stage.
    PoleEncountered { stage: usize },
    /// Element values do not form a geometric sequence within tolerance.
    NonGeometricLadder {
        index: usize,
        ratio: f64,
        first_ratio: f64,
    },
    /// A pivot of the tridiagonal elimination vanished at this row.
    SingularAtFrequency { pivot_index: usize },
    /// sigma * rho = 1: the fractional-exponent denominator vanishes.
    DegenerateScaling,
    /// The requested fit band holds fewer samples than required.
    BandTooNarrow { samples: usize, required: usize },
    /// A sample inside the fit band is non-finite or non-positive in magnitude.
    NonFiniteSamples,
    /// No frequency interval satisfies the regime condition.
    NoValidBand,
    /// Depth doubling hit the cap without meeting the relative tolerance.
    NotConverged { depth: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
            Error::DepthTooSmall { depth, min } => {
                write!(f, "depth {depth} is below the minimum of {min}")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "sequence lengths differ: {left} vs {right}")
            }
            Error::EmptyTerms => write!(f, "continued fraction needs at least one term"),
            Error::NonFiniteTerm { index } => {
                write!(f, "continued-fraction term {index} is not finite")
            }
            Error::DivisionNearZero { level } => {
                write!(f, "denominator below floor at bracket level {level}")
            }
            Error::PoleEncountered { stage } => {
                write!(f, "transfer recursion denominator vanished at stage {stage}")
            }
            Error::NonGeometricLadder {
                index,
                ratio,
                first_ratio,
            } => write!(
                f,
                "element ratio {ratio} at index {index} deviates from leading ratio {first_ratio}"
            ),
            Error::SingularAtFrequency { pivot_index } => {
                write!(f, "tridiagonal system singular at pivot {pivot_index}")
            }
            Error::DegenerateScaling => {
                write!(f, "sigma * rho = 1: exponent denominator vanishes")
            }
            Error::BandTooNarrow { samples, required } => {
                write!(f, "band holds {samples} samples, {required} required")
            }
            Error::NonFiniteSamples => write!(f, "band contains non-finite samples"),
            Error::NoValidBand => write!(f, "regime condition holds at no frequency"),
            Error::NotConverged { depth } => {
                write!(f, "truncation not converged at depth {depth}")
            }
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// Stable machine-readable name of the variant, used by error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::DepthTooSmall { .. } => "DepthTooSmall",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::EmptyTerms => "EmptyTerms",
            Error::NonFiniteTerm { .. } => "NonFiniteTerm",
            Error::DivisionNearZero { .. } => "DivisionNearZero",
            Error::PoleEncountered { .. } => "PoleEncountered",
            Error::NonGeometricLadder { .. } => "NonGeometricLadder",
            Error::SingularAtFrequency { .. } => "SingularAtFrequency",
            Error::DegenerateScaling => "DegenerateScaling",
            Error::BandTooNarrow { .. } => "BandTooNarrow",
            Error::NonFiniteSamples => "NonFiniteSamples",
            Error::NoValidBand => "NoValidBand",
            Error::NotConverged { .. } => "NotConverged",
        }
    }
}
