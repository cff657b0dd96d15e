//! Shared constructors for unit tests.

use std::sync::Arc;

use crate::catalog;
use crate::field::{FieldElement, NumberFieldDescriptor, Rational};
use crate::lie::{BracketMap, LieAlgebra};
use crate::linalg::Subspace;
use crate::structures::{ComplexStructure, HypercomplexTriple};

pub use crate::catalog::standard_quaternion_triple;

pub fn qq() -> Arc<NumberFieldDescriptor> {
    NumberFieldDescriptor::rationals()
}

/// Q(sqrt 2): minimal polynomial x^2 - 2.
pub fn sqrt2() -> Arc<NumberFieldDescriptor> {
    NumberFieldDescriptor::new(vec![
        Rational::from_int(-2),
        Rational::zero(),
        Rational::one(),
    ])
    .unwrap()
}

pub fn basis_vec(
    index: usize,
    dim: usize,
    field: &Arc<NumberFieldDescriptor>,
) -> Vec<FieldElement> {
    let mut v = vec![FieldElement::zero(field); dim];
    v[index] = FieldElement::one(field);
    v
}

pub fn span_of(indices: &[usize], dim: usize, field: &Arc<NumberFieldDescriptor>) -> Subspace {
    let vectors = indices.iter().map(|&i| basis_vec(i, dim, field)).collect();
    Subspace::from_spanning(vectors, dim, field).unwrap()
}

pub fn abelian_algebra(dim: usize) -> LieAlgebra {
    LieAlgebra::new(dim, vec![], BracketMap::new(), qq()).unwrap()
}

pub fn kodaira_algebra() -> LieAlgebra {
    catalog::kodaira().algebra
}

pub fn kodaira() -> (LieAlgebra, ComplexStructure) {
    let e = catalog::kodaira();
    (e.algebra, e.complex.unwrap())
}

pub fn heisenberg3_algebra() -> LieAlgebra {
    catalog::heisenberg3().algebra
}

pub fn free_nilpotent_2_3_padded() -> LieAlgebra {
    catalog::free23r6().algebra
}

pub fn iwasawa6() -> (LieAlgebra, ComplexStructure) {
    let e = catalog::iwasawa6();
    (e.algebra, e.complex.unwrap())
}

pub fn h5r6() -> (LieAlgebra, ComplexStructure) {
    let e = catalog::h5r6();
    (e.algebra, e.complex.unwrap())
}

pub fn example8() -> (LieAlgebra, HypercomplexTriple) {
    let e = catalog::example8();
    (e.algebra, e.hypercomplex.unwrap())
}
