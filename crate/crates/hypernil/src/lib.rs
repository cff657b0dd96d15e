//! hypernil: exact-arithmetic toolkit for rational nilpotent Lie algebras
//! carrying left-invariant complex and hypercomplex structures.
//!
//! Everything is computed over Q or a simple algebraic extension Q(alpha),
//! with no floating point: the rational/irrational distinctions the theory
//! rests on survive every operation. The crate provides
//!
//! - [`field`]: scalars in Q(alpha) with exact inverses,
//! - [`linalg`]: echelon forms, kernels, subspace lattice operations and
//!   rationalization over the working field,
//! - [`lie`]: nilpotent Lie algebras from rational structure constants,
//!   central series, commutators,
//! - [`structures`]: complex structure operators, integrability and
//!   abelianness tests, quaternionic triples, twistor-sphere points,
//! - [`saturation`]: minimal rational invariant-subspace closures,
//! - [`albanese`]: Albanese / H-Albanese quotient data and principal toric
//!   towers,
//! - [`twistor`]: genericity scans over rational sphere points with
//!   machine-checkable exceptionality certificates,
//! - [`problem`]: the JSON problem-file format used by the CLI.

pub mod albanese;
pub mod catalog;
pub mod error;
pub mod field;
pub mod lie;
pub mod linalg;
pub mod problem;
pub mod saturation;
pub mod structures;
pub mod twistor;

#[cfg(test)]
pub(crate) mod test_fixtures;

pub use error::{Error, Result};
pub use field::{FieldElement, NumberFieldDescriptor, Rational};
pub use lie::{LieAlgebra, SeriesReport};
pub use linalg::{Matrix, Subspace};
pub use structures::{ComplexStructure, HypercomplexTriple, SpherePoint};
