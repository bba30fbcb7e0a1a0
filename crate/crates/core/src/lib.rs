//! Exact symbolic engine for differential ℤ×ℤ₂-graded supercommutative algebras.
//!
//! Elements live in free supercommutative polynomial algebras over ℚ whose
//! generators carry an integer weight and a parity. On top of that arithmetic
//! the crate provides derivations and differentials, cohomology per weight,
//! the algebra of differential forms with its Cartan calculus, polynomial
//! forms on simplices (Whitney forms and the Dupont contraction), and a small
//! toolkit for the projective model structure on finite cochain complexes.

pub mod algebra;
pub mod cli;
pub mod dg;
pub mod document;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod model;
pub mod random;
pub mod scalar;
pub mod simplicial;

pub use algebra::{AlgebraMap, Element, Generator, GeneratorTable, Monomial, Parity};
pub use dg::{Derivation, DgAlgebra};
pub use error::{Error, Result};
pub use scalar::Scalar;

/// Version string embedded in every CLI report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
