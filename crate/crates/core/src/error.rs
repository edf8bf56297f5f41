use thiserror::Error;

use crate::section::Section;

/// Errors raised by S-ring construction and analysis.
///
/// Variants documented as theory violations cannot occur for correct
/// inputs; they exist so an inconsistency surfaces as a value instead of
/// a wrong answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{d} does not divide {n}")]
    NotADivisor { d: u32, n: u32 },

    #[error("group order must be positive")]
    ZeroOrder,

    #[error("not a partition of Z_{n}: {reason}")]
    NotAPartition { n: u32, reason: String },

    #[error("{{0}} is not a class (class containing 0 is {class:?})")]
    MissingIdentityClass { class: Vec<u32> },

    #[error("class {class:?} is not inverse-closed: its negation {negation:?} is not a class")]
    NotInverseClosed { class: Vec<u32>, negation: Vec<u32> },

    #[error(
        "product of classes {x:?} and {y:?} is not constant on class {z:?}: \
         coefficient {c1} at {z1} but {c2} at {z2}"
    )]
    NotMultiplicativelyClosed {
        x: Vec<u32>,
        y: Vec<u32>,
        z: Vec<u32>,
        z1: u32,
        c1: u32,
        z2: u32,
        c2: u32,
    },

    #[error("({l},{u}) is not a section of the S-ring over Z_{n}")]
    NotASection { n: u32, l: u32, u: u32 },

    #[error("orders {a} and {b} are not coprime")]
    NotCoprime { a: u32, b: u32 },

    #[error("sections {0} and {1} are not projectively equivalent")]
    NotEquivalent(Section, Section),

    #[error("S-rings have different group orders {0} and {1}")]
    OrderMismatch(u32, u32),

    #[error("S-ring is not quasidense")]
    NotQuasidense,

    #[error("singular class condition violated: {0}")]
    SingularConditionViolated(String),

    #[error("no unit induces the restricted similarity on section {0}")]
    NoInducingUnit(Section),

    #[error("similarity reconstruction failed: {0}")]
    ReconstructionFailed(String),

    #[error("dual partition is not an S-ring: {0}")]
    DualNotAnSRing(String),

    #[error("intersection is not an S-ring: {0}")]
    IntersectionNotAnSRing(String),

    #[error("coset closure is not a coset S-ring")]
    CosetClosureNotCoset,

    #[error("{what}: n = {n} exceeds the configured bound {bound}")]
    LimitExceeded {
        what: &'static str,
        n: u32,
        bound: u32,
    },

    #[error("invalid similarity: {0}")]
    InvalidSimilarity(String),

    #[error("invalid multiplier: {0}")]
    InvalidMultiplier(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
