use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("variable mismatch: {left:?} vs {right:?}")]
    VariableMismatch { left: String, right: String },
    #[error("expected a series in one variable, got {0} variables")]
    NotUnivariate(usize),
    #[error("inner series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("bound too small: need at least {need}, got {got}")]
    BoundTooSmall { need: i64, got: i64 },
    #[error("unsupported Eisenstein weight {0}")]
    UnsupportedWeight(u32),
    #[error("integrality failure in {what} at q^{exponent}")]
    IntegralityFailure { what: String, exponent: i64 },
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("residual coefficient {name} does not vanish (first nonzero at q^{exponent})")]
    ResidualCoefficient { name: String, exponent: i64 },
    #[error("leading coefficient vanishes at the requested truncation")]
    ZeroLeadingCoefficient,
    #[error("class is not Weyl invariant: fails generator {0}")]
    NotWeylInvariant(String),
    #[error("class is not in the span of Pontryagin monomials (first failure in x-degree {degree})")]
    NotInSpan { degree: u32 },
    #[error("rank deficiency at degree {degree}: rank {rank} < {columns} columns")]
    RankDeficient { degree: i64, rank: usize, columns: usize },
    #[error("inconsistent partition data: {0}")]
    InconsistentPartition(String),
    #[error("Im(tau) must be positive, got {0}")]
    NotUpperHalfPlane(f64),
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
