//! Exact Hopf-cyclic cohomology: presented Hopf algebras over cyclotomic
//! fields, cyclic modules, and their cohomology.

pub mod algebra;
pub mod catalog;
pub mod charmap;
pub mod cyclic;
pub mod error;
pub mod expr;
pub mod finite;
pub mod homology;
pub mod h1;
pub mod hopf;
pub mod lie;
pub mod modular;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod schema;

pub use algebra::{Algebra, AlgebraExt, Element, Gen, Tensor, Word};
pub use error::{Error, Result};
pub use hopf::{Character, GroupLike, Hopf, HopfExt, ModularPair};
pub use linalg::SparseMatrix;
pub use report::Report;
pub use scalar::Scalar;
