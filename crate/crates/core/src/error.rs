use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LambertError {
    #[error("exponent must lie in [1, \u{221e}): got {0}")]
    InvalidExponent(f64),
    #[error("point space must contain at least one point")]
    EmptySpace,
    #[error("mass at position {index} must be positive and finite: got {mass}")]
    BadMass { index: usize, mass: f64 },
    #[error("duplicate point identifier {0}")]
    DuplicatePoint(u64),
    #[error("value at position {index} is not finite")]
    NonFiniteValue { index: usize },
    #[error("length mismatch: expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("partition block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("point {point} appears in more than one block")]
    OverlappingBlocks { point: u64 },
    #[error("point {point} is not covered by any block")]
    UncoveredPoint { point: u64 },
    #[error("block {block} references unknown point identifier {point}")]
    UnknownPoint { point: u64, block: usize },
    #[error("atom index {index} out of range 1..={count}")]
    AtomIndexOutOfRange { index: usize, count: usize },
    #[error("keep count {keep} exceeds atom count {count}")]
    KeepOutOfRange { keep: usize, count: usize },
    #[error("aggregate |{symbol}|^{exponent} overflowed on atom {atom}")]
    AggregateOverflow {
        symbol: char,
        exponent: f64,
        atom: usize,
    },
    #[error("operation requires {required}: got p = {p}, q = {q}")]
    WrongRegime {
        required: &'static str,
        p: f64,
        q: f64,
    },
    #[error("operation requires a complete atom profile")]
    ProfileNotComplete,
    #[error("invalid atom statistic: {0}")]
    BadAtomStat(String),
    #[error("invalid tail certificate: {0}")]
    BadCertificate(String),
    #[error("region sample {index} has non-positive or non-finite data")]
    BadRegionSample { index: usize },
    #[error("instance requires at least {minimum} points: got {got}")]
    TooFewPoints { minimum: usize, got: usize },
    #[error("cannot place {blocks} non-empty blocks on {points} points")]
    TooManyBlocks { blocks: usize, points: usize },
}
