//! Albanese and H-Albanese quotient data, quotient algebras by invariant
//! central ideals, and the iterated principal toric tower obtained by
//! successively quotienting by centers.
//!
//! Quotients use a deterministic complement basis: the standard basis
//! vectors at the non-pivot columns of the ideal's RREF basis.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::lie::{BracketMap, LieAlgebra};
use crate::linalg::{Matrix, Subspace};
use crate::saturation::{rational_invariant_closure, rational_invariant_closure_h};
use crate::structures::{
    check_abelian, check_abelian_hypercomplex, check_almost_complex, check_integrable,
    check_quaternionic, ComplexStructure, HypercomplexTriple,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AlbaneseMode {
    L,
    H,
}

/// Albanese quotient data: the kernel subspace `[g,g]_(Q,L)` (or its
/// quaternionic analogue), the torus dimensions, and the structure
/// operator(s) descended to the complement basis of the quotient.
#[derive(Debug, Clone, Serialize)]
pub struct AlbaneseReport {
    pub mode: AlbaneseMode,
    pub kernel: Subspace,
    pub torus_real_dim: usize,
    /// Complex dimension in mode L, quaternionic dimension in mode H.
    pub torus_dim: usize,
    pub induced: Vec<ComplexStructure>,
    /// Indices of the standard basis vectors spanning the chosen complement.
    pub complement: Vec<usize>,
    pub closure_iterations: usize,
}

/// Standard basis indices completing the ideal's RREF pivots to a basis.
pub fn complement_indices(ideal: &Subspace) -> Vec<usize> {
    let pivots = ideal.pivots();
    (0..ideal.ambient_dim())
        .filter(|i| !pivots.contains(i))
        .collect()
}

/// The operator induced on g/ideal in the complement basis. Requires the
/// ideal to be invariant under `op`.
pub fn quotient_operator(ideal: &Subspace, op: &Matrix) -> Result<Matrix> {
    if op.cols() != ideal.ambient_dim() {
        return Err(Error::AmbientMismatch {
            expected: ideal.ambient_dim(),
            got: op.cols(),
        });
    }
    let image = crate::linalg::apply(op, ideal)?;
    if !ideal.contains(&image)? {
        return Err(Error::NotInvariant);
    }
    let complement = complement_indices(ideal);
    let field = ideal.field();
    let n = ideal.ambient_dim();
    let mut rows = vec![Vec::with_capacity(complement.len()); complement.len()];
    for &c in &complement {
        let mut e_c = vec![FieldElement::zero(field); n];
        e_c[c] = FieldElement::one(field);
        let reduced = ideal.reduce(&op.mul_vec(&e_c)?)?;
        for (r, &idx) in complement.iter().enumerate() {
            rows[r].push(reduced[idx].clone());
        }
    }
    Matrix::from_rows(rows, complement.len(), field)
}

/// Quotient of g by a rational, L-invariant central-or-larger ideal, with
/// the induced complex structure. Both outputs are revalidated.
pub fn quotient_structure(
    g: &LieAlgebra,
    ideal: &Subspace,
    l: &ComplexStructure,
) -> Result<(LieAlgebra, ComplexStructure)> {
    let quotient_op = prepare_quotient(g, ideal, &[l])?.pop().unwrap();
    let algebra = quotient_algebra(g, ideal)?;
    let structure = ComplexStructure::new(l.label(), quotient_op)?;
    assert!(
        check_almost_complex(&structure),
        "induced operator on the quotient must square to -Id"
    );
    Ok((algebra, structure))
}

/// Quotient of g by a rational, H-invariant ideal, carrying the triple.
pub fn quotient_hypercomplex(
    g: &LieAlgebra,
    ideal: &Subspace,
    h: &HypercomplexTriple,
) -> Result<(LieAlgebra, HypercomplexTriple)> {
    let ops = prepare_quotient(g, ideal, &[h.i(), h.j(), h.k()])?;
    let algebra = quotient_algebra(g, ideal)?;
    let mut built = Vec::new();
    for (op, label) in ops.into_iter().zip(["I", "J", "K"]) {
        let s = ComplexStructure::new(label, op)?;
        assert!(
            check_almost_complex(&s),
            "induced {label} must square to -Id"
        );
        built.push(s);
    }
    let k = built.pop().unwrap();
    let j = built.pop().unwrap();
    let i = built.pop().unwrap();
    let triple = HypercomplexTriple::new(i, j, k)?;
    assert!(
        check_quaternionic(&triple),
        "quaternionic relations must descend to the quotient"
    );
    Ok((algebra, triple))
}

/// Shared validation: rationality, ideal property, invariance; returns the
/// induced operators.
fn prepare_quotient(
    g: &LieAlgebra,
    ideal: &Subspace,
    ops: &[&ComplexStructure],
) -> Result<Vec<Matrix>> {
    if ideal.ambient_dim() != g.dim() {
        return Err(Error::AmbientMismatch {
            expected: g.dim(),
            got: ideal.ambient_dim(),
        });
    }
    if !ideal.is_rational() {
        return Err(Error::NotRational);
    }
    let bracket = g.bracket_subspaces(&g.full_space(), ideal)?;
    if !ideal.contains(&bracket)? {
        return Err(Error::NotAnIdeal);
    }
    ops.iter()
        .map(|l| quotient_operator(ideal, l.op()))
        .collect()
}

/// The quotient Lie algebra in the complement basis; fully revalidated
/// (Jacobi, nilpotency) at construction.
fn quotient_algebra(g: &LieAlgebra, ideal: &Subspace) -> Result<LieAlgebra> {
    let complement = complement_indices(ideal);
    let m = complement.len();
    let field = g.field();
    let names = complement
        .iter()
        .map(|&c| g.names()[c].clone())
        .collect::<Vec<_>>();
    let mut brackets = BracketMap::new();
    for a in 0..m {
        for b in (a + 1)..m {
            let mut e_a = vec![FieldElement::zero(field); g.dim()];
            e_a[complement[a]] = FieldElement::one(field);
            let mut e_b = vec![FieldElement::zero(field); g.dim()];
            e_b[complement[b]] = FieldElement::one(field);
            let reduced = ideal.reduce(&g.bracket_vectors(&e_a, &e_b)?)?;
            let coeffs: Vec<(usize, crate::field::Rational)> = complement
                .iter()
                .enumerate()
                .filter(|(_, &idx)| !reduced[idx].is_zero())
                .map(|(pos, &idx)| {
                    assert!(
                        reduced[idx].is_rational(),
                        "quotient structure constants stay rational"
                    );
                    (pos, reduced[idx].rational_part().clone())
                })
                .collect();
            if !coeffs.is_empty() {
                brackets.insert((a, b), coeffs);
            }
        }
    }
    LieAlgebra::new(m, names, brackets, field.clone())
}

/// Albanese data of (g, L): kernel `[g,g]_(Q,L)`, torus dimensions, and the
/// complex structure descended to g/kernel.
pub fn albanese(g: &LieAlgebra, l: &ComplexStructure) -> Result<AlbaneseReport> {
    if !check_integrable(g, l)? {
        return Err(Error::NotIntegrable(l.label().to_string()));
    }
    let closure = rational_invariant_closure(&g.commutator(), l)?;
    let kernel = closure.result;
    let torus_real_dim = g.dim() - kernel.dim();
    if torus_real_dim % 2 != 0 {
        return Err(Error::QuotientNotEven);
    }
    let induced_op = quotient_operator(&kernel, l.op())?;
    let induced = ComplexStructure::new(l.label(), induced_op)?;
    assert!(
        check_almost_complex(&induced),
        "descended structure must square to -Id"
    );
    Ok(AlbaneseReport {
        mode: AlbaneseMode::L,
        complement: complement_indices(&kernel),
        kernel,
        torus_real_dim,
        torus_dim: torus_real_dim / 2,
        induced: vec![induced],
        closure_iterations: closure.iterations,
    })
}

/// H-Albanese data of (g, (I,J,K)): kernel `[g,g]_(Q,H)` and the triple
/// descended to the quotient, which again satisfies the quaternionic
/// relations.
pub fn h_albanese(g: &LieAlgebra, h: &HypercomplexTriple) -> Result<AlbaneseReport> {
    if !check_quaternionic(h) {
        return Err(Error::NotQuaternionic);
    }
    for s in h.structures() {
        if !check_integrable(g, s)? {
            return Err(Error::NotIntegrable(s.label().to_string()));
        }
    }
    let closure = rational_invariant_closure_h(&g.commutator(), h)?;
    let kernel = closure.result;
    let torus_real_dim = g.dim() - kernel.dim();
    if torus_real_dim % 4 != 0 {
        return Err(Error::QuotientNotEven);
    }
    let mut induced = Vec::new();
    for s in h.structures() {
        let op = quotient_operator(&kernel, s.op())?;
        let built = ComplexStructure::new(s.label(), op)?;
        assert!(check_almost_complex(&built));
        induced.push(built);
    }
    let triple =
        HypercomplexTriple::new(induced[0].clone(), induced[1].clone(), induced[2].clone())?;
    assert!(
        check_quaternionic(&triple),
        "quaternionic relations must hold on the quotient"
    );
    Ok(AlbaneseReport {
        mode: AlbaneseMode::H,
        complement: complement_indices(&kernel),
        kernel,
        torus_real_dim,
        torus_dim: torus_real_dim / 4,
        induced,
        closure_iterations: closure.iterations,
    })
}

/// One stage of a toric tower: dimensions before the quotient, the center
/// quotiented out (the fiber), and whether the structure descended intact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TowerLevel {
    pub algebra_dim: usize,
    pub center_dim: usize,
    pub fiber_dim: usize,
    pub structures_preserved: bool,
}

/// The iterated principal toric tower g -> g/z -> ... -> 0.
#[derive(Debug, Clone, Serialize)]
pub struct TowerReport {
    pub mode: AlbaneseMode,
    pub levels: Vec<TowerLevel>,
}

impl TowerReport {
    pub fn level_dims(&self) -> Vec<(usize, usize, usize)> {
        self.levels
            .iter()
            .map(|l| (l.algebra_dim, l.center_dim, l.fiber_dim))
            .collect()
    }

    pub fn all_levels_preserved(&self) -> bool {
        self.levels.iter().all(|l| l.structures_preserved)
    }
}

/// Iterated quotient by full centers for an abelian complex structure.
/// Each center is rational automatically and L-invariant because L is
/// abelian; the quotient structure is revalidated at every level.
pub fn toric_tower(g: &LieAlgebra, l: &ComplexStructure) -> Result<TowerReport> {
    if !check_abelian(g, l)? {
        return Err(Error::NotAbelian(l.label().to_string()));
    }
    let mut levels = Vec::new();
    let mut cur_g = g.clone();
    let mut cur_l = l.clone();
    while cur_g.dim() > 0 {
        let center = cur_g.center();
        assert!(
            center.is_rational(),
            "centers of rational algebras are rational"
        );
        let image = cur_l.apply_subspace(&center)?;
        if !center.contains(&image)? {
            return Err(Error::CenterNotInvariant);
        }
        let (next_g, next_l) = quotient_structure(&cur_g, &center, &cur_l)?;
        let preserved = check_abelian(&next_g, &next_l)? && check_integrable(&next_g, &next_l)?;
        levels.push(TowerLevel {
            algebra_dim: cur_g.dim(),
            center_dim: center.dim(),
            fiber_dim: center.dim(),
            structures_preserved: preserved,
        });
        cur_g = next_g;
        cur_l = next_l;
    }
    Ok(TowerReport {
        mode: AlbaneseMode::L,
        levels,
    })
}

/// Iterated quotient by full centers for an abelian hypercomplex triple.
pub fn toric_tower_h(g: &LieAlgebra, h: &HypercomplexTriple) -> Result<TowerReport> {
    if !check_abelian_hypercomplex(g, h)? {
        return Err(Error::NotAbelian("I".to_string()));
    }
    let mut levels = Vec::new();
    let mut cur_g = g.clone();
    let mut cur_h = h.clone();
    while cur_g.dim() > 0 {
        let center = cur_g.center();
        assert!(
            center.is_rational(),
            "centers of rational algebras are rational"
        );
        for s in cur_h.structures() {
            let image = s.apply_subspace(&center)?;
            if !center.contains(&image)? {
                return Err(Error::CenterNotInvariant);
            }
        }
        let (next_g, next_h) = quotient_hypercomplex(&cur_g, &center, &cur_h)?;
        let mut preserved = check_quaternionic(&next_h);
        for s in next_h.structures() {
            preserved = preserved && check_integrable(&next_g, s)?;
        }
        preserved = preserved && check_abelian(&next_g, next_h.i())?;
        levels.push(TowerLevel {
            algebra_dim: cur_g.dim(),
            center_dim: center.dim(),
            fiber_dim: center.dim(),
            structures_preserved: preserved,
        });
        cur_g = next_g;
        cur_h = next_h;
    }
    Ok(TowerReport {
        mode: AlbaneseMode::H,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::test_fixtures::*;

    #[test]
    fn kodaira_albanese_is_an_elliptic_curve_base() {
        let (g, i) = kodaira();
        let report = albanese(&g, &i).unwrap();
        assert_eq!(report.kernel, span_of(&[2, 3], 4, g.field()));
        assert_eq!(report.torus_real_dim, 2);
        assert_eq!(report.torus_dim, 1);
        assert_eq!(report.complement, vec![0, 1]);
        // induced structure is the plane rotation
        let expected = Matrix::from_int_rows(&[vec![0, -1], vec![1, 0]], g.field());
        assert_eq!(report.induced[0].op(), &expected);
    }

    #[test]
    fn albanese_quotient_is_an_abelian_algebra() {
        // the torus property via the independent quotient route
        for (g, l) in [kodaira(), h5r6(), iwasawa6()] {
            let report = albanese(&g, &l).unwrap();
            let (quot, structure) = quotient_structure(&g, &report.kernel, &l).unwrap();
            assert!(quot.is_abelian_algebra());
            assert_eq!(structure.op(), report.induced[0].op());
        }
        let (g8, h8) = example8();
        let report = h_albanese(&g8, &h8).unwrap();
        let (quot, triple) = quotient_hypercomplex(&g8, &report.kernel, &h8).unwrap();
        assert!(quot.is_abelian_algebra());
        assert!(check_quaternionic(&triple));
        for (a, b) in triple.structures().iter().zip(&report.induced) {
            assert_eq!(a.op(), b.op());
        }
    }

    #[test]
    fn abelian_albanese_is_the_torus_itself() {
        let e = catalog::abelian4();
        let report = albanese(&e.algebra, e.complex.as_ref().unwrap()).unwrap();
        assert!(report.kernel.is_zero());
        assert_eq!(report.torus_dim, 2);
    }

    #[test]
    fn h_albanese_dimensions() {
        let e = catalog::abelian8();
        let report = h_albanese(&e.algebra, e.hypercomplex.as_ref().unwrap()).unwrap();
        assert!(report.kernel.is_zero());
        assert_eq!(report.torus_dim, 2);

        let (g8, h8) = example8();
        let report = h_albanese(&g8, &h8).unwrap();
        assert_eq!(report.kernel.dim(), 4);
        assert_eq!(report.torus_real_dim, 4);
        assert_eq!(report.torus_dim, 1);
        let triple = HypercomplexTriple::new(
            report.induced[0].clone(),
            report.induced[1].clone(),
            report.induced[2].clone(),
        )
        .unwrap();
        assert!(check_quaternionic(&triple));
    }

    #[test]
    fn albanese_kernel_sits_inside_penultimate_center() {
        for (g, l) in [kodaira(), h5r6()] {
            let report = albanese(&g, &l).unwrap();
            let upper = g.upper_central_series();
            let penultimate = &upper.terms[upper.steps - 1];
            assert!(penultimate.contains(&report.kernel).unwrap());
        }
    }

    #[test]
    fn albanese_requires_integrability() {
        let g = kodaira_algebra();
        let q = qq();
        let swap = Matrix::from_int_rows(
            &[
                vec![0, 0, -1, 0],
                vec![0, 0, 0, -1],
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
            ],
            &q,
        );
        let l = ComplexStructure::new("swap", swap).unwrap();
        assert!(matches!(albanese(&g, &l), Err(Error::NotIntegrable(_))));
    }

    #[test]
    fn quotient_structure_trivial_cases() {
        let (g, i) = kodaira();
        let zero = g.zero_subspace();
        let (same_g, same_i) = quotient_structure(&g, &zero, &i).unwrap();
        assert_eq!(same_g.dim(), 4);
        assert_eq!(same_i.op(), i.op());
        assert_eq!(same_g.commutator().dim(), 1);

        let full = g.full_space();
        let (zero_g, _) = quotient_structure(&g, &full, &i).unwrap();
        assert_eq!(zero_g.dim(), 0);
    }

    #[test]
    fn kodaira_quotient_by_center_is_rotation_plane() {
        let (g, i) = kodaira();
        let center = g.center(); // span{z, t}
        let (quot, structure) = quotient_structure(&g, &center, &i).unwrap();
        assert_eq!(quot.dim(), 2);
        assert!(quot.is_abelian_algebra());
        let expected = Matrix::from_int_rows(&[vec![0, -1], vec![1, 0]], g.field());
        assert_eq!(structure.op(), &expected);
        assert_eq!(quot.names(), &["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn quotient_rejects_bad_ideals() {
        let (g, i) = kodaira();
        // span{z} is an ideal but not I-invariant
        let comm = g.commutator();
        assert!(matches!(
            quotient_structure(&g, &comm, &i),
            Err(Error::NotInvariant)
        ));
        // span{x} is I-compatible with nothing: not an ideal
        let x_line = span_of(&[0], 4, g.field());
        assert!(matches!(
            quotient_structure(&g, &x_line, &i),
            Err(Error::NotAnIdeal)
        ));
    }

    #[test]
    fn albanese_commutes_with_quotient_by_subideal() {
        // quotient by the full kernel: the Albanese of the quotient has the
        // same torus dimension and trivial kernel
        let (g, i) = kodaira();
        let report = albanese(&g, &i).unwrap();
        let (quot, structure) = quotient_structure(&g, &report.kernel, &i).unwrap();
        let quot_report = albanese(&quot, &structure).unwrap();
        assert!(quot_report.kernel.is_zero());
        assert_eq!(quot_report.torus_dim, report.torus_dim);
    }

    #[test]
    fn kodaira_tower_levels() {
        let (g, i) = kodaira();
        let tower = toric_tower(&g, &i).unwrap();
        assert_eq!(tower.level_dims(), vec![(4, 2, 2), (2, 2, 2)]);
        assert!(tower.all_levels_preserved());
        assert_eq!(tower.levels.len(), g.steps());
    }

    #[test]
    fn abelian_tower_is_single_level() {
        let e = catalog::abelian4();
        let tower = toric_tower(&e.algebra, e.complex.as_ref().unwrap()).unwrap();
        assert_eq!(tower.level_dims(), vec![(4, 4, 4)]);
    }

    #[test]
    fn example8_tower_preserves_triple() {
        let (g8, h8) = example8();
        let tower = toric_tower_h(&g8, &h8).unwrap();
        assert_eq!(tower.level_dims(), vec![(8, 4, 4), (4, 4, 4)]);
        assert!(tower.all_levels_preserved());
        assert_eq!(tower.levels.len(), g8.steps());
    }

    #[test]
    fn h5r6_tower() {
        let (g, i) = h5r6();
        let tower = toric_tower(&g, &i).unwrap();
        assert_eq!(tower.level_dims(), vec![(6, 2, 2), (4, 4, 4)]);
        assert!(tower.all_levels_preserved());
    }

    #[test]
    fn non_abelian_structure_is_refused() {
        let (g, i) = iwasawa6();
        assert!(matches!(toric_tower(&g, &i), Err(Error::NotAbelian(_))));
    }
}
