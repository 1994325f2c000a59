use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range for {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("element {s} has no inverse")]
    NotRegular { s: String },
    #[error("idempotents {e} and {f} do not commute")]
    IdempotentsDontCommute { e: String, f: String },
    #[error("declared zero {z} is not a zero: {detail}")]
    BadZero { z: String, detail: String },
    #[error("sigma quotient is not a group: {0}")]
    NotAGroupQuotient(String),
    #[error("E-unitary characterizations disagree: {0}")]
    CharacterizationMismatch(String),
    #[error("elements are not pairwise compatible: {0}")]
    NotCompatible(String),
    #[error("{what} has size {size}, above the limit {limit}")]
    TooLarge { what: String, size: u128, limit: u128 },
    #[error("subsemigroup does not contain every idempotent")]
    NotFull,
    #[error("not a subsemigroup: {0}")]
    NotSubsemigroup(String),
    #[error("elements belong to different rings")]
    AtomMismatch,
    #[error("element is not in the domain ideal of the isomorphism")]
    OutOfDomain,
    #[error("invalid atom: {0}")]
    InvalidAtom(String),
    #[error("invalid isomorphism: {0}")]
    InvalidIso(String),
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("not a subring: {0}")]
    NotSubring(String),
    #[error("compatibility characterisations disagree for {0}")]
    CompatibilityMismatch(String),
    #[error("homomorphism fails at ({s}, {t})")]
    HomFail { s: String, t: String },
    #[error("idempotent ideals do not cover the ring")]
    CoverFail,
    #[error("ideal of {s} is not the unital ideal of its support: {detail}")]
    NonUnitalIdeal { s: String, detail: String },
    #[error("idempotent {e} does not act as the identity")]
    IdempotentNotIdentity { e: String },
    #[error("semigroup is not E-unitary")]
    NotEUnitary,
    #[error("action is not injective: {a} and {b} act identically")]
    NotInjective { a: String, b: String },
    #[error("extension is not Galois")]
    NotGalois,
    #[error("tensor product of order {order} exceeds the limit {limit}")]
    TensorTooLarge { order: String, limit: String },
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("equivalent criteria disagree: {0}")]
    EquivalenceViolation(String),
    #[error("precondition failed: {0}")]
    PreconditionFail(String),
    #[error("semigroup has no zero")]
    NoZero,
    #[error("{s} and {t} are not strongly compatible")]
    NotStronglyCompatible { s: String, t: String },
    #[error("semigroup is not primitive: {0}")]
    NotPrimitive(String),
    #[error("axiom {tag} fails: {detail}")]
    AxiomFail { tag: String, detail: String },
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("{line}:{col}: expected {expected}")]
    Parse { line: usize, col: usize, expected: String },
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn too_large(what: &str, size: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::TooLarge {
            what: what.to_string(),
            size: size.into(),
            limit: limit.into(),
        }
    }
}
