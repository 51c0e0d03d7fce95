use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("modulus exponent must be even, got {0}")]
    OddModulusExponent(u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("face is unbounded")]
    UnboundedFace,
    #[error("face is not a face of this polyhedron")]
    ForeignFace,
    #[error("polynomial is flat (zero)")]
    Flat,
    #[error("direction has no finite component")]
    AllInfiniteDirection,
    #[error("curve is identically zero")]
    ZeroCurve,
    #[error("curve component {0} does not vanish at the origin")]
    CurveNotAtOrigin(usize),
    #[error("invalid monomial curve: {0}")]
    InvalidMonomialCurve(String),
    #[error("polynomial is not real-valued")]
    NotReal,
    #[error("polynomial is not holomorphic")]
    NotHolomorphic,
    #[error("defining function has no nonzero linear part")]
    DegenerateLinearPart,
    #[error("defining function is not a model hypersurface: {0}")]
    NotModel(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("a nondegenerate verdict is required")]
    VerdictRequired,
    #[error("no qualifying witness for a coordinate improvement")]
    NoQualifyingWitness,
    #[error("invalid json: {0}")]
    Json(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
