use thiserror::Error;

/// Crate-wide error type.
///
/// Variants mirror the contract of the operation that raises them; all of
/// them indicate misuse of a documented precondition or genuinely
/// inconsistent input, never an internal failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate ground: {0}")]
    DegenerateGround(String),

    #[error("label {label} is not an element of the ground")]
    LabelOutsideGround { label: u32 },

    #[error("degenerate subset: {0}")]
    DegenerateSubset(String),

    #[error("requested {requested} minimal elements from a set of {available}")]
    TooManyMinElements { requested: u32, available: u32 },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("parameters out of range: {0}")]
    ParameterRange(String),

    #[error("sets {{{a}}} and {{{b}}} are not weakly separated")]
    NotWeaklySeparated { a: String, b: String },

    #[error("collection is not maximal: {0}")]
    NotMaximal(String),

    #[error("flip is not applicable: {0}")]
    FlipNotApplicable(String),

    #[error("blade on {set} is frozen; its subdivision is trivial")]
    FrozenBlade { set: String },

    #[error("ground has {size} elements; basis transforms need at least 4")]
    GroundTooSmall { size: u32 },

    #[error("level has size {got}, expected {expected}")]
    LevelArity { got: u32, expected: u32 },

    #[error("vector is not a positive tropical Plücker vector: {0}")]
    NotPositive(String),

    #[error("extension stalled with {unknown} entries undetermined")]
    ExtensionStalled { unknown: usize },

    #[error("contradictory octahedron at level {{{level}}}, quadruple ({quad})")]
    Contradiction { level: String, quad: String },

    #[error("empty fiber over {target}")]
    EmptyFiber { target: String },

    #[error("malformed plabic structure: {0}")]
    BadStructure(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
