use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureExceedsCap { cap: usize },
    #[error("subgroup lattice too large ({0} subgroups)")]
    SubgroupLatticeTooLarge(usize),
    #[error("domain size mismatch: expected {expected}, got {got}")]
    DomainMismatch { expected: usize, got: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("family is not equivariant: sigma(Lambda_{delta}) is not contained in Lambda_sigma(delta)")]
    NotEquivariant { delta: usize },
    #[error("family index is not injective: points {0} and {1} map to the same member")]
    NotInjective(usize, usize),
    #[error("primitive action is not transitive")]
    PrimitiveNotTransitive,
    #[error("action is not transitive")]
    NotTransitive,
    #[error("group is not {0}-transitive")]
    NotKTransitive(usize),
    #[error("embedding is not faithful")]
    EmbeddingNotFaithful,
    #[error("embedding degree {got} is not minimal (minimal degree is {minimal})")]
    EmbeddingNotMinimal { got: usize, minimal: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("box of {count} polynomials exceeds the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },
    #[error("polynomial is not separable")]
    NotSeparable,
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("no collision-free primitive-element weights after {0} attempts")]
    WeightCollision(usize),
    #[error("precision limit reached ({0} bits)")]
    PrecisionExhausted(u32),
    #[error("actions do not match: {0}")]
    MismatchedAction(String),
    #[error("instance generation failed: {0}")]
    GenerationFailed(String),
    #[error("not enough data points for a fit (need at least 3 with positive counts)")]
    InsufficientData,
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
