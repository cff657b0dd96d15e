//! Built-in example algebras and structures.
//!
//! These are the entries shipped as JSON under `catalog/` in the repository
//! root; the constructors here are the source of truth and the files are
//! checked against them in the test suite.

use crate::field::NumberFieldDescriptor;
use crate::field::Rational;
use crate::lie::{BracketMap, LieAlgebra};
use crate::linalg::Matrix;
use crate::structures::{ComplexStructure, HypercomplexTriple};

/// One named example: an algebra, optionally with a complex structure or a
/// hypercomplex triple.
pub struct CatalogEntry {
    pub name: &'static str,
    pub notes: &'static str,
    pub algebra: LieAlgebra,
    pub complex: Option<ComplexStructure>,
    pub hypercomplex: Option<HypercomplexTriple>,
}

impl CatalogEntry {
    pub fn to_problem(self) -> crate::problem::ProblemFile {
        crate::problem::ProblemFile {
            name: self.name.to_string(),
            notes: self.notes.to_string(),
            field: self.algebra.field().clone(),
            algebra: self.algebra,
            complex: self.complex,
            hypercomplex: self.hypercomplex,
        }
    }
}

fn brackets(entries: &[(usize, usize, &[(usize, i64)])]) -> BracketMap {
    let mut map = BracketMap::new();
    for &(i, j, coeffs) in entries {
        map.insert(
            (i, j),
            coeffs
                .iter()
                .map(|&(k, c)| (k, Rational::from_int(c)))
                .collect(),
        );
    }
    map
}

fn algebra(dim: usize, names: &[&str], entries: &[(usize, usize, &[(usize, i64)])]) -> LieAlgebra {
    LieAlgebra::new(
        dim,
        names.iter().map(|s| s.to_string()).collect(),
        brackets(entries),
        NumberFieldDescriptor::rationals(),
    )
    .expect("catalog algebras are valid")
}

/// Block-diagonal rotation pairing coordinates (0,1), (2,3), ...:
/// e_{2m} -> e_{2m+1}, e_{2m+1} -> -e_{2m}.
fn pairing_structure(dim: usize, label: &str) -> ComplexStructure {
    assert!(dim % 2 == 0);
    let q = NumberFieldDescriptor::rationals();
    let mut rows = vec![vec![0i64; dim]; dim];
    for m in 0..dim / 2 {
        rows[2 * m][2 * m + 1] = -1;
        rows[2 * m + 1][2 * m] = 1;
    }
    let rows: Vec<Vec<i64>> = rows;
    ComplexStructure::new(label, Matrix::from_int_rows(&rows, &q)).expect("square by construction")
}

/// Left multiplication by i, j, k on blocks^th copies of the quaternions,
/// as 4x4 blocks in the basis (1, i, j, k).
pub fn standard_quaternion_triple(blocks: usize) -> HypercomplexTriple {
    let q = NumberFieldDescriptor::rationals();
    let dim = 4 * blocks;
    let li: [[i64; 4]; 4] = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];
    let lj: [[i64; 4]; 4] = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]];
    let lk: [[i64; 4]; 4] = [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]];
    let block_diag = |block: &[[i64; 4]; 4]| {
        let mut rows = vec![vec![0i64; dim]; dim];
        for b in 0..blocks {
            for r in 0..4 {
                for c in 0..4 {
                    rows[4 * b + r][4 * b + c] = block[r][c];
                }
            }
        }
        Matrix::from_int_rows(&rows, &q)
    };
    HypercomplexTriple::new(
        ComplexStructure::new("I", block_diag(&li)).unwrap(),
        ComplexStructure::new("J", block_diag(&lj)).unwrap(),
        ComplexStructure::new("K", block_diag(&lk)).unwrap(),
    )
    .expect("blocks share dimension and field")
}

/// The Kodaira-surface algebra: [x, y] = z on <x, y, z, t> with
/// I(x) = y, I(z) = t. The complex structure is abelian.
pub fn kodaira() -> CatalogEntry {
    CatalogEntry {
        name: "kodaira",
        notes: "Four-dimensional two-step algebra [x,y] = z carrying the abelian \
                complex structure I(x) = y, I(z) = t; fibers over an elliptic curve.",
        algebra: algebra(4, &["x", "y", "z", "t"], &[(0, 1, &[(2, 1)])]),
        complex: Some(pairing_structure(4, "I")),
        hypercomplex: None,
    }
}

/// Abelian R^4 with the pairing complex structure.
pub fn abelian4() -> CatalogEntry {
    CatalogEntry {
        name: "abelian4",
        notes: "Abelian four-dimensional algebra: a complex torus.",
        algebra: algebra(4, &["e1", "e2", "e3", "e4"], &[]),
        complex: Some(pairing_structure(4, "I")),
        hypercomplex: None,
    }
}

/// Abelian R^4 identified with the quaternions, standard left action.
pub fn abelian4h() -> CatalogEntry {
    CatalogEntry {
        name: "abelian4h",
        notes: "Abelian algebra on the quaternions with left multiplication by \
                i, j, k: a hypercomplex torus of quaternionic dimension one.",
        algebra: algebra(4, &["e1", "e2", "e3", "e4"], &[]),
        complex: None,
        hypercomplex: Some(standard_quaternion_triple(1)),
    }
}

/// Abelian R^8 = H + H with the standard left action.
pub fn abelian8() -> CatalogEntry {
    CatalogEntry {
        name: "abelian8",
        notes: "Abelian eight-dimensional algebra with blockwise quaternionic \
                action: a hypercomplex torus of quaternionic dimension two.",
        algebra: algebra(8, &["e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"], &[]),
        complex: None,
        hypercomplex: Some(standard_quaternion_triple(2)),
    }
}

/// Eight-dimensional two-step algebra modelled on H + Im H + R: the bracket
/// of v, w in the first quaternion block is Im(conj(v) w) placed in the
/// second block, and I, J, K act by left multiplication blockwise. The
/// hypercomplex structure is abelian while the algebra is not.
pub fn example8() -> CatalogEntry {
    CatalogEntry {
        name: "example8",
        notes: "Quaternionic Heisenberg-type algebra padded to dimension 8: \
                [v,w] = Im(conj(v) w) in the central block, with blockwise left \
                multiplication by i, j, k. Abelian hypercomplex structure on a \
                nonabelian algebra.",
        algebra: algebra(
            8,
            &["x1", "x2", "x3", "x4", "z1", "z2", "z3", "z4"],
            &[
                (0, 1, &[(5, 1)]),
                (0, 2, &[(6, 1)]),
                (0, 3, &[(7, 1)]),
                (1, 2, &[(7, -1)]),
                (1, 3, &[(6, 1)]),
                (2, 3, &[(5, -1)]),
            ],
        ),
        complex: None,
        hypercomplex: Some(standard_quaternion_triple(2)),
    }
}

/// The three-dimensional Heisenberg algebra.
pub fn heisenberg3() -> CatalogEntry {
    CatalogEntry {
        name: "heisenberg3",
        notes: "Three-dimensional Heisenberg algebra [e1,e2] = e3; odd dimension, \
                so no complex structure.",
        algebra: algebra(3, &["e1", "e2", "e3"], &[(0, 1, &[(2, 1)])]),
        complex: None,
        hypercomplex: None,
    }
}

/// The five-dimensional Heisenberg algebra.
pub fn heisenberg5() -> CatalogEntry {
    CatalogEntry {
        name: "heisenberg5",
        notes: "Five-dimensional Heisenberg algebra [e1,e2] = [e3,e4] = e5.",
        algebra: algebra(
            5,
            &["e1", "e2", "e3", "e4", "e5"],
            &[(0, 1, &[(4, 1)]), (2, 3, &[(4, 1)])],
        ),
        complex: None,
        hypercomplex: None,
    }
}

/// Heisenberg_5 + R with an abelian complex structure.
pub fn h5r6() -> CatalogEntry {
    CatalogEntry {
        name: "h5r6",
        notes: "Six-dimensional algebra heisenberg5 + R with the abelian complex \
                structure pairing (e1,e2), (e3,e4), (e5,e6).",
        algebra: algebra(
            6,
            &["e1", "e2", "e3", "e4", "e5", "e6"],
            &[(0, 1, &[(4, 1)]), (2, 3, &[(4, 1)])],
        ),
        complex: Some(pairing_structure(6, "I")),
        hypercomplex: None,
    }
}

/// The real algebra of the complex Heisenberg group (Iwasawa manifold).
pub fn iwasawa6() -> CatalogEntry {
    CatalogEntry {
        name: "iwasawa6",
        notes: "Realification of the complex Heisenberg algebra with its \
                bi-invariant complex structure: integrable but not abelian.",
        algebra: algebra(
            6,
            &["e1", "e2", "e3", "e4", "e5", "e6"],
            &[
                (0, 2, &[(4, 1)]),
                (0, 3, &[(5, 1)]),
                (1, 2, &[(5, 1)]),
                (1, 3, &[(4, -1)]),
            ],
        ),
        complex: Some(pairing_structure(6, "I")),
        hypercomplex: None,
    }
}

/// Free three-step nilpotent algebra on two generators.
pub fn free23_5() -> CatalogEntry {
    CatalogEntry {
        name: "free23_5",
        notes: "Free three-step nilpotent algebra on two generators: \
                e3 = [e1,e2], e4 = [e1,e3], e5 = [e2,e3].",
        algebra: algebra(
            5,
            &["e1", "e2", "e3", "e4", "e5"],
            &[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)]), (1, 2, &[(4, 1)])],
        ),
        complex: None,
        hypercomplex: None,
    }
}

/// Free three-step nilpotent algebra on two generators plus a central line.
pub fn free23r6() -> CatalogEntry {
    CatalogEntry {
        name: "free23r6",
        notes: "Six-dimensional three-step algebra: the free rank-two three-step \
                algebra plus a central direction.",
        algebra: algebra(
            6,
            &["e1", "e2", "e3", "e4", "e5", "e6"],
            &[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)]), (1, 2, &[(4, 1)])],
        ),
        complex: None,
        hypercomplex: None,
    }
}

/// Four-dimensional filiform algebra (three steps).
pub fn filiform4() -> CatalogEntry {
    CatalogEntry {
        name: "filiform4",
        notes: "Filiform algebra [e1,e2] = e3, [e1,e3] = e4; three-step, \
                admits no complex structure.",
        algebra: algebra(
            4,
            &["e1", "e2", "e3", "e4"],
            &[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)])],
        ),
        complex: None,
        hypercomplex: None,
    }
}

/// Five-dimensional filiform algebra (four steps).
pub fn filiform5() -> CatalogEntry {
    CatalogEntry {
        name: "filiform5",
        notes: "Filiform algebra [e1,e2] = e3, [e1,e3] = e4, [e1,e4] = e5; \
                four-step.",
        algebra: algebra(
            5,
            &["e1", "e2", "e3", "e4", "e5"],
            &[(0, 1, &[(2, 1)]), (0, 2, &[(3, 1)]), (0, 3, &[(4, 1)])],
        ),
        complex: None,
        hypercomplex: None,
    }
}

/// Every catalog entry, in a fixed order.
pub fn all() -> Vec<CatalogEntry> {
    vec![
        kodaira(),
        abelian4(),
        abelian4h(),
        abelian8(),
        example8(),
        heisenberg3(),
        heisenberg5(),
        h5r6(),
        iwasawa6(),
        free23_5(),
        free23r6(),
        filiform4(),
        filiform5(),
    ]
}

pub fn by_name(name: &str) -> Option<CatalogEntry> {
    all().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries_are_valid_and_cover_dims_3_to_8() {
        let entries = all();
        assert!(entries.len() >= 10);
        let dims: Vec<usize> = entries.iter().map(|e| e.algebra.dim()).collect();
        assert_eq!(dims.iter().min(), Some(&3));
        assert_eq!(dims.iter().max(), Some(&8));
        for e in &entries {
            assert!(e.algebra.jacobi_check(), "{} fails Jacobi", e.name);
            assert!(e.algebra.steps() >= 1 || e.algebra.dim() == 0);
        }
    }

    #[test]
    fn step_counts() {
        assert_eq!(kodaira().algebra.steps(), 2);
        assert_eq!(abelian8().algebra.steps(), 1);
        assert_eq!(example8().algebra.steps(), 2);
        assert_eq!(free23_5().algebra.steps(), 3);
        assert_eq!(free23r6().algebra.steps(), 3);
        assert_eq!(filiform4().algebra.steps(), 3);
        assert_eq!(filiform5().algebra.steps(), 4);
    }
}
