use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("part sizes must be positive (got s={s}, t={t})")]
    EmptyPart { s: usize, t: usize },

    #[error("rank must satisfy 1 <= r < n (got r={r}, n={n})")]
    BadRank { r: usize, n: usize },

    #[error("edge ({left},{right}) does not belong to K_{{{s},{t}}}")]
    EdgeOutOfRange {
        left: usize,
        right: usize,
        s: usize,
        t: usize,
    },

    #[error("edges ({0},{1}) and ({2},{3}) share a vertex")]
    SharedVertex(usize, usize, usize, usize),

    #[error("not a spanning thrackle: {0}")]
    NotSpanningThrackle(String),

    #[error("invalid breakpoints: {0}")]
    BadBreakpoints(String),

    #[error("bit string must have {zeros} zeros and {ones} ones: {found:?}")]
    BadBitString {
        zeros: usize,
        ones: usize,
        found: String,
    },

    #[error("input too large: {0}")]
    SizeGuard(String),

    #[error("malformed walk: {0}")]
    BadWalk(String),

    #[error("binomial terms must differ")]
    DegenerateBinomial,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("point is not in the affine span: {0}")]
    OutsideSpan(String),

    #[error("invalid matroid: {0}")]
    BadMatroid(String),

    #[error("{0:?} is not a basis")]
    NotABasis(Vec<usize>),
}

pub type Result<T> = std::result::Result<T, Error>;
