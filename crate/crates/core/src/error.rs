use thiserror::Error;

use crate::proximity::Subset;

/// Errors raised when an input cannot be interpreted at all.
///
/// Failing an axiom is never an error; it is reported as a verdict inside an
/// [`AxiomReport`](crate::AxiomReport).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier must have between 1 and {max} elements, got {got}")]
    CarrierSize { got: usize, max: usize },

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("subset mask {mask} has bits outside a carrier of size {size}")]
    SubsetOutOfRange { mask: u32, size: usize },

    #[error("element index {index} out of range for a carrier of size {size}")]
    ElementOutOfRange { index: usize, size: usize },

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("not a pseudometric: {0}")]
    NotPseudometric(String),

    #[error("non-rectangle subset: mask {0}")]
    NonRectangle(Subset),

    #[error("subspace must be nonempty")]
    EmptySubspace,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal: conjugating by element {conjugator} moves it")]
    NotNormal { conjugator: usize },

    #[error("not a group homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("map is not surjective: element {0} has no preimage")]
    NotSurjective(usize),

    #[error("input is not a verified proximal structure: {0}")]
    Unverified(String),

    #[error("{side} map #{index} is not descriptively proximally continuous")]
    NotDpcont { side: &'static str, index: usize },

    #[error("enumeration at n = {n} exceeds the cap n <= {max} ({bound})")]
    EnumerationTooLarge { n: usize, max: usize, bound: String },

    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid probe table: {0}")]
    InvalidProbes(String),

    #[error("malformed counterexample: {0}")]
    MalformedInstance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
