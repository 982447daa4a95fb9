use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by frame, set, bpa and combination operations. Messages name
/// the violated invariant so the CLI can surface them directly.
#[derive(Debug, Error)]
pub enum Error {
    #[error("frame must contain at least one label")]
    EmptyFrame,
    #[error("frame labels must be pairwise distinct: `{0}` repeats")]
    DuplicateLabel(String),
    #[error("label `{0}` is not an element of the frame")]
    UnknownLabel(String),
    #[error("operands must share one frame")]
    FrameMismatch,
    #[error("membership grades must lie in [0,1]: got {0}")]
    GradeOutOfRange(f64),
    #[error("membership vector length {got} does not match frame size {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("alpha must lie in (0,1]: got {0}")]
    AlphaOutOfRange(f64),
    #[error("focal element must be normal (peak membership 1): peak is {0}")]
    SubnormalFocal(f64),
    #[error("set has no member with nonzero grade")]
    EmptySet,
    #[error("operation requires a crisp set (grades 0 or 1 only)")]
    NotCrisp,
    #[error("consonant focals must form a strictly nested chain")]
    NotConsonant,
    #[error("masses must be strictly positive and sum to 1: {0}")]
    BadMass(String),
    #[error("probabilities must be nonnegative and sum to 1: {0}")]
    BadProbability(String),
    #[error("granule of `{label}` is subnormal (peak {peak}); normalize the relation or discount explicitly")]
    SubnormalGranule { label: String, peak: f64 },
    #[error("all probability mass falls on empty granules; no bpa can be induced")]
    TotalIncompatibility,
    #[error("evidence is in total conflict (conflict mass {0})")]
    TotalConflict(f64),
    #[error("set peak is zero; the whole mass belongs to the empty set")]
    EmptyIntersection,
    #[error("enumeration size {0} exceeds the oracle guard of 10^6 allocations")]
    TooLarge(u128),
    #[error("source labels may not contain the product separator `\u{2297}`: `{0}`")]
    ReservedSeparator(String),
    #[error("tolerance must be a finite value in (0, 0.5): got {0}")]
    BadEpsilon(f64),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
