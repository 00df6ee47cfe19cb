//! Finite-dimensional Euclidean Jordan algebras.
//!
//! Algebras are direct sums of real symmetric, complex and quaternionic
//! Hermitian matrices, spin factors and the Albert algebra. On top of the
//! Jordan product this crate provides the quadratic representation, a
//! spectral calculus, Peirce corners with the standard corner and filter
//! maps, the polar decomposition of `Q_q Q_p`, pure-map normal forms and
//! diamond adjoints.

pub mod algebra;
pub mod effectus;
pub mod error;
pub mod linop;
pub mod maps;
mod precise;
pub mod random;
pub mod scalar;
pub mod spectral;

pub use algebra::{Algebra, AlgebraDescriptor, Element, ElementDescriptor, FactorSpec, HermitianMatrix};
pub use error::{EjaError, Result};
pub use maps::{Certificate, MapDescriptor, PositiveMap};
pub use linop::{mult_operator, quadratic_rep, LinOp};
pub use scalar::{DivisionAlgebra, Scalar};
pub use spectral::{SpectralDecomposition, SpectralFn};
