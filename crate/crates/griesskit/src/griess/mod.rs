//! Small commutative nonassociative algebras generated by a pair of axial
//! idempotents, with an invariant bilinear form.
//!
//! The algebras handled here are spanned by idempotents `x` with `x*x = 2x`
//! and `<x,x> = 1/4` whose adjoint action is semisimple with eigenvalues
//! among `{2, 0, 1/2, 1/16}`, together with the symmetrized products
//! `alpha(x,y) = xy - (1/16)(x+y)` needed to close the span. Each supported
//! pair class ships as a case file with its seed products; building a case
//! derives the full product table, the Gram matrix, and the involutions
//! attached to each idempotent, and verifies the defining identities.

pub mod build;
pub mod conformal;
pub mod definition;

use thiserror::Error;

use crate::exactnum::ExactError;
use definition::BasisLabel;

/// Errors from case-table construction and algebra operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GriessError {
    #[error("element has {got} coordinates but the case table has {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("case table has no automorphism named {0}")]
    UnknownAutomorphism(String),
    #[error("label {0} is not part of this case's basis")]
    LabelNotInBasis(BasisLabel),
    #[error("parse error in case file line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("no case file is bundled for class {0}")]
    UnsupportedClass(String),
    #[error("failed to read case file {path}: {reason}")]
    CaseFileRead { path: String, reason: String },
    #[error("case file disagrees with the pair catalog: {0}")]
    CatalogMismatch(String),
    #[error("closure left the product {0}*{1} undetermined")]
    MissingProduct(BasisLabel, BasisLabel),
    #[error("closure produced conflicting values for {0}*{1}")]
    ClosureInconsistent(BasisLabel, BasisLabel),
    #[error(
        "spanning form has rank {rank} and kernel dimension {nullity}; \
         expected corank exactly 1"
    )]
    SpanningRelationMissing { rank: usize, nullity: usize },
    #[error("automorphism {name} failed verification: {reason}")]
    AutomorphismMismatch { name: String, reason: String },
    #[error("bilinear form check failed: {0}")]
    FormViolation(String),
    #[error("product table check failed: {0}")]
    ProductViolation(String),
    #[error("conformal search failed: {0}")]
    ConformalSearch(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
