//! Shared helpers for the integration suites: bounded subspace enumeration
//! (the brute-force minimality oracle) and seeded random generators.
//!
//! The oracle is deliberately independent of the saturation code path: it
//! enumerates *all* RREF bases with entries in {0, ±1/2, ±1, ±3/2, ±2} and
//! intersects the rational L-invariant ones containing the seed.

use std::sync::OnceLock;

use hypernil::field::{FieldElement, NumberFieldDescriptor, Rational};
use hypernil::linalg::{apply, inverse, Matrix, Subspace};
use hypernil::structures::ComplexStructure;
use rand::rngs::StdRng;
use rand::Rng;

use std::sync::Arc;

pub fn qq() -> Arc<NumberFieldDescriptor> {
    NumberFieldDescriptor::rationals()
}

/// The coefficient alphabet of the oracle: |value| <= 2, denominator <= 2.
pub fn bounded_values() -> Vec<Rational> {
    let mut out = Vec::new();
    for num in -4i64..=4 {
        let r = Rational::new(num, 2).unwrap();
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

fn entry_within_bounds(r: &Rational) -> bool {
    bounded_values().contains(r)
}

/// True when every basis entry of the subspace lies in the oracle alphabet,
/// so the subspace itself is one of the enumerated candidates.
pub fn within_oracle_bounds(s: &Subspace) -> bool {
    s.basis_vectors()
        .iter()
        .flatten()
        .all(|e| e.is_rational() && entry_within_bounds(e.rational_part()))
}

/// All subspaces of Q^n whose RREF basis has entries in the bounded
/// alphabet. Cached per dimension; n <= 4 stays tractable.
pub fn enumerate_bounded_subspaces(n: usize) -> &'static [Subspace] {
    static CACHE: OnceLock<Vec<Vec<Subspace>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..=4).map(build_bounded_subspaces).collect());
    &cache[n]
}

fn build_bounded_subspaces(n: usize) -> Vec<Subspace> {
    let field = qq();
    let values = bounded_values();
    let mut out = vec![Subspace::zero(n, &field)];
    // iterate over pivot-column subsets
    for mask in 1u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        // free slots: row r, column j > pivots[r], j not a pivot
        let mut free = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            for j in (p + 1)..n {
                if !pivots.contains(&j) {
                    free.push((r, j));
                }
            }
        }
        let mut assignment = vec![0usize; free.len()];
        loop {
            let mut rows = vec![vec![FieldElement::zero(&field); n]; pivots.len()];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = FieldElement::one(&field);
            }
            for (slot, &(r, j)) in free.iter().enumerate() {
                rows[r][j] = FieldElement::from_rational(values[assignment[slot]].clone(), &field);
            }
            let s = Subspace::from_spanning(rows, n, &field).unwrap();
            debug_assert_eq!(s.dim(), pivots.len());
            out.push(s);
            // odometer over assignments
            let mut k = 0;
            loop {
                if k == assignment.len() {
                    break;
                }
                assignment[k] += 1;
                if assignment[k] < values.len() {
                    break;
                }
                assignment[k] = 0;
                k += 1;
            }
            if assignment.iter().all(|&a| a == 0) {
                break;
            }
        }
    }
    out
}

/// Intersection of every enumerated rational L-invariant subspace that
/// contains `w`: the independent minimality oracle.
pub fn brute_force_minimal_invariant(w: &Subspace, l: &ComplexStructure) -> Subspace {
    let n = w.ambient_dim();
    let mut result = Subspace::full(n, w.field());
    for candidate in enumerate_bounded_subspaces(n) {
        if !candidate.contains(w).unwrap() {
            continue;
        }
        let image = apply(l.op(), candidate).unwrap();
        if !candidate.contains(&image).unwrap() {
            continue;
        }
        result = result.intersect(candidate).unwrap();
    }
    result
}

/// A random rational complex structure: the block rotation conjugated by a
/// random invertible integer matrix.
pub fn random_rational_structure(rng: &mut StdRng, n: usize) -> ComplexStructure {
    assert!(n % 2 == 0);
    let field = qq();
    let mut rotation_rows = vec![vec![0i64; n]; n];
    for m in 0..n / 2 {
        rotation_rows[2 * m][2 * m + 1] = -1;
        rotation_rows[2 * m + 1][2 * m] = 1;
    }
    let rotation = Matrix::from_int_rows(&rotation_rows, &field);
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        let p = Matrix::from_int_rows(&rows, &field);
        if let Some(p_inv) = inverse(&p) {
            let op = p.mul(&rotation).unwrap().mul(&p_inv).unwrap();
            let l = ComplexStructure::new("L", op).unwrap();
            assert!(hypernil::structures::check_almost_complex(&l));
            return l;
        }
    }
}

/// A random subspace spanned by up to `n` small integer vectors.
pub fn random_subspace(rng: &mut StdRng, n: usize) -> Subspace {
    let field = qq();
    let count = rng.gen_range(0..=n);
    let vectors: Vec<Vec<FieldElement>> = (0..count)
        .map(|_| {
            (0..n)
                .map(|_| FieldElement::from_int(rng.gen_range(-2..=2), &field))
                .collect()
        })
        .collect();
    Subspace::from_spanning(vectors, n, &field).unwrap()
}

/// A random vector with small integer entries.
pub fn random_vector(rng: &mut StdRng, n: usize) -> Vec<FieldElement> {
    let field = qq();
    (0..n)
        .map(|_| FieldElement::from_int(rng.gen_range(-2..=2), &field))
        .collect()
}
