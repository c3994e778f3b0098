use crate::presentation::ComponentId;

/// Errors raised by presentation construction, moves, linear algebra and
/// the 2-bridge arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("linking matrix is {rows}x{cols} but there are {components} components")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        components: usize,
    },
    #[error("linking matrix is not symmetric at ({0}, {1})")]
    AsymmetricMatrix(usize, usize),
    #[error("linking matrix has nonzero diagonal entry at {0}; framings belong in the slope")]
    NonzeroDiagonal(usize),
    #[error("0/0 is not a slope")]
    InvalidSlope,
    #[error("duplicate component id {0}")]
    DuplicateId(ComponentId),
    #[error("invalid knot tag: {0}")]
    InvalidKnotTag(String),

    #[error("component {0} has a non-integral slope")]
    NonIntegral(ComponentId),
    #[error("component {0} has the meridional slope 1/0")]
    Meridional(ComponentId),
    #[error("component {0} is not tagged as an unknot")]
    NotUnknot(ComponentId),
    #[error("component {0} is not framed +1 or -1")]
    FramingNotUnit(ComponentId),
    #[error("no component with id {0}")]
    UnknownId(ComponentId),
    #[error("a component cannot slide over itself ({0})")]
    SameComponent(ComponentId),
    #[error("component {0} does not have the meridional slope 1/0")]
    NotMeridional(ComponentId),
    #[error("component {0} already has an integral slope")]
    AlreadyIntegral(ComponentId),
    #[error("retype requires a non-empty justification")]
    EmptyJustification,
    #[error("sign must be +1 or -1, got {0}")]
    InvalidSign(i64),

    #[error("matrix is {rows}x{cols}, not square")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NonSymmetric,

    #[error("S(p, q) needs odd p >= 3, got p = {0}")]
    EvenP(i64),
    #[error("gcd({p}, {q}) != 1")]
    NotCoprime { p: i64, q: i64 },
    #[error("q = {q} is 0 modulo p = {p}")]
    DegenerateQ { p: i64, q: i64 },
    #[error("denominator must be at least 1")]
    ZeroDenominator,

    #[error("invalid family parameters n = {n}, k = {k} (need n >= 2, k >= 0)")]
    InvalidParams { n: i64, k: i64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
