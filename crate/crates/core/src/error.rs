use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcsError {
    #[error("incompatible systems: modulus {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("type `{0}` has no intervals")]
    EmptyType(String),
    #[error("type `{0}` must start with interval 0")]
    NonZeroFirstInterval(String),
    #[error("type `{name}`: interval {interval} out of range for modulus {modulus}")]
    IntervalOutOfRange {
        name: String,
        interval: u32,
        modulus: u32,
    },
    #[error("type `{0}`: intervals must be strictly increasing")]
    IntervalsNotIncreasing(String),
    #[error("type registry is empty")]
    EmptyRegistry,
    #[error("type `{0}` declared twice")]
    DuplicateType(String),
    #[error("unknown chord type `{0}`")]
    UnknownType(String),
    #[error("ambiguous registry: `{first}` and `{second}` are transpositionally equivalent")]
    AmbiguousRegistry { first: String, second: String },
}

/// Failures when building groups, actions and extensions. Each variant names
/// the axiom that does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("table is not square or has out-of-range entries")]
    MalformedTable,
    #[error("group axiom `{axiom}` fails: {detail}")]
    GroupAxiom { axiom: &'static str, detail: String },
    #[error("action axiom `{axiom}` fails: {detail}")]
    ActionAxiom { axiom: &'static str, detail: String },
    #[error("cocycle axiom `{axiom}` fails: {detail}")]
    CocycleAxiom { axiom: &'static str, detail: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

impl AlgebraError {
    pub fn axiom(&self) -> &'static str {
        match self {
            AlgebraError::MalformedTable => "closure",
            AlgebraError::GroupAxiom { axiom, .. }
            | AlgebraError::ActionAxiom { axiom, .. }
            | AlgebraError::CocycleAxiom { axiom, .. } => axiom,
            AlgebraError::Shape(_) => "shape",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("chord type `{0}` is not registered with this action")]
    UnregisteredType(String),
    #[error("root {root} is outside the root space of size {size}")]
    RootOutOfRange { root: u32, size: usize },
    #[error("bijection invalid: {0}")]
    InvalidBijection(String),
    #[error("partial transformation undefined for this type: {morphism} cannot act on {chord}")]
    PartialUndefined { morphism: String, chord: String },
    #[error("no morphism relates {from} and {to}")]
    Unrelated { from: String, to: String },
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("cannot compose {left} after {right}: codomain of the right factor is `{right_cod}`, domain of the left factor is `{left_dom}`")]
    NotComposable {
        left: String,
        right: String,
        left_dom: String,
        right_cod: String,
    },
    #[error("object `{0}` is not in the groupoid")]
    UnknownObject(String),
    #[error("no formal inversion from `{from}` to `{to}`")]
    MissingMorphism { from: String, to: String },
    #[error("formal inversion groupoid is not closed: {0}")]
    NotAGroupoid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenInvError {
    #[error("types `{0}` and `{1}` have different cardinalities")]
    CardinalityMismatch(String, String),
    #[error("pairing is not a bijection on {0} positions")]
    BadPairing(usize),
    #[error("partial transformation undefined: {op} does not act on {chord}")]
    WrongType { op: String, chord: String },
    #[error("{0} is not an inversion: the formal inversion is an identity")]
    IdentityMorphism(String),
    #[error("{0} does not act as an inversion on roots")]
    NotInverting(String),
    #[error("image of {chord} under {op} is not a chord of type `{target}`")]
    NotAChord {
        op: String,
        chord: String,
        target: String,
    },
    #[error(transparent)]
    Action(#[from] ActionError),
}
