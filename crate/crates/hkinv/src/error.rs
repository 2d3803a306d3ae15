//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by the exact kernel, structure validation, and classification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inversion of the zero scalar.
    #[error("division by zero in Q(i,\u{221a}2)")]
    DivisionByZero,
    /// Incompatible dimensions in a matrix operation.
    #[error("dimension mismatch: {0}")]
    DimensionError(String),
    /// A matrix does not have the shape an operation requires.
    #[error("shape error: {0}")]
    ShapeError(String),
    /// A scalar or matrix string failed to parse.
    #[error("parse error: {0}")]
    ParseError(String),
    /// A matrix expected to be invertible is singular.
    #[error("singular matrix")]
    SingularMatrix,
    /// A structure triple is not block-diagonal where a block operation needs it.
    #[error("structure error: {0}")]
    StructureError(String),
    /// A triple fails the quaternionic relations; carries the first violated pair.
    #[error("invalid structure: quaternionic relation violated at ({0},{1})")]
    InvalidStructure(usize, usize),
    /// A conjugator is not orthogonal.
    #[error("invalid conjugator: matrix is not orthogonal")]
    InvalidConjugator,
    /// A matrix does not satisfy the infinitesimal invariance equation.
    #[error("matrix is not a solution of the invariance equation")]
    NotInvariance,
    /// A finite map does not preserve the quaternionic structure.
    #[error("matrix is not quaternionic for this structure: nonzero residual")]
    NotQuaternionic,
    /// A basis is not closed under the commutator.
    #[error("not a subalgebra: bracket [b{0},b{1}] leaves the span")]
    NotASubalgebra(usize, usize),
    /// A claimed basis is linearly dependent.
    #[error("basis is linearly dependent")]
    DependentBasis,
    /// A predicate needs rational data but met irrational entries.
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    /// A claimed subspace is not contained in the ambient span.
    #[error("not a subspace: element {0} leaves the ambient span")]
    NotASubspace(usize),
    /// A Cartan candidate is not abelian.
    #[error("not a Cartan subalgebra: [h{0},h{1}] \u{2260} 0")]
    NotCartan(usize, usize),
    /// The adjoint action is not diagonalizable over the expected eigenvalues.
    #[error("root decomposition failure: {0}")]
    DecompositionFailure(String),
    /// A root space has dimension greater than one.
    #[error("root space for {0:?} is not 1-dimensional")]
    NotSemisimpleDecomposition(Vec<i64>),
    /// The Cartan matrix matches no supported type.
    #[error("unrecognized Cartan type: {0}")]
    UnrecognizedType(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
