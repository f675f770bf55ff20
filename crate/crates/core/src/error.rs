use thiserror::Error;

use crate::linear::Scalar;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("elements belong to algebras of different dimensions ({0} vs {1})")]
    MismatchedAlgebras(usize, usize),
    #[error("invalid structure-constant table: {0}")]
    InvalidTable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("algebra is not graded: {0} violation(s)")]
    Ungraded(usize),
    #[error("algebra is not supercommutative: {0} defective pair(s)")]
    NotSupercommutative(usize),
    #[error("algebra has a nonzero odd part")]
    NotEven,
    #[error("input algebra is not associative at basis triple {0:?}")]
    NotAssociative((usize, usize, usize)),
    #[error("matrix does not have determinant one")]
    NotSymplectic,
    #[error("vector is not isotropic")]
    NotIsotropic,
    #[error("map does not preserve the bilinear form")]
    NotOrthogonal,
    #[error("{0} has no rational square root")]
    NonSquareScalar(Scalar),
    #[error("reflection-degenerate: both v1-v2 and v1+v2 are isotropic")]
    ReflectionDegenerate,
    #[error("vectors have different norms ({0} vs {1})")]
    UnequalNorms(String, String),
    #[error("subspace is not invariant under the map: {0}")]
    NotInvariant(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io error on {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
