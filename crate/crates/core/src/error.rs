use thiserror::Error;

/// Errors raised by the algebraic operations.
///
/// Basis and variable indices in messages are 1-based, matching the
/// printed notation `e1, e2, ...` and `x1, x2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCount(usize, usize),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("variable index {index} out of range 1..={nvars}")]
    VariableIndex { index: usize, nvars: usize },
    #[error("basis index {index} out of range 1..={rank}")]
    BasisIndex { index: usize, rank: usize },
    #[error("rank {0} is too large (at most {max} supported)", max = crate::exterior::MAX_RANK)]
    RankTooLarge(usize),
    #[error("bivector is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("structure functions are only stored for i < j, got ({0}, {1})")]
    BracketIndexOrder(usize, usize),
    #[error("multivector is not homogeneous of degree {0}")]
    Inhomogeneous(usize),
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("homology needs a ground-field algebra (m = 0), found m = {0}")]
    NotGroundField(usize),
    #[error("generator is not exact: D(D({input})) = {square}")]
    NotExact { input: String, square: String },
    #[error("boundary composition d_{0} d_{1} is nonzero")]
    BoundarySquare(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
