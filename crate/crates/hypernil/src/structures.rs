//! Complex and hypercomplex structure operators on a Lie algebra:
//! almost-complex and integrability checks, abelianness, quaternionic
//! relations, and the twistor-sphere points parametrizing induced
//! structures.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberFieldDescriptor, Rational};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Subspace};

/// A labelled operator candidate for a complex structure. The almost-complex
/// identity op^2 = -Id is a checkable property, not a construction-time
/// invariant, so that failing candidates can be inspected.
#[derive(Clone, PartialEq)]
pub struct ComplexStructure {
    op: Matrix,
    label: String,
}

impl ComplexStructure {
    pub fn new(label: impl Into<String>, op: Matrix) -> Result<Self> {
        if !op.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "complex structure must be square, got {}x{}",
                op.rows(),
                op.cols()
            )));
        }
        Ok(ComplexStructure {
            op,
            label: label.into(),
        })
    }

    pub fn op(&self) -> &Matrix {
        &self.op
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.op.rows()
    }

    pub fn field(&self) -> &Arc<NumberFieldDescriptor> {
        self.op.field()
    }

    pub fn neg(&self) -> ComplexStructure {
        ComplexStructure {
            op: self.op.neg(),
            label: format!("-{}", self.label),
        }
    }

    pub fn apply_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.op.mul_vec(v)
    }

    pub fn apply_subspace(&self, w: &Subspace) -> Result<Subspace> {
        crate::linalg::apply(&self.op, w)
    }
}

impl std::fmt::Debug for ComplexStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ComplexStructure({}, dim {})", self.label, self.dim())
    }
}

impl Serialize for ComplexStructure {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("ComplexStructure", 2)?;
        s.serialize_field("label", &self.label)?;
        s.serialize_field("matrix", &self.op)?;
        s.end()
    }
}

/// op^2 = -Id, exactly.
pub fn check_almost_complex(l: &ComplexStructure) -> bool {
    let n = l.dim();
    let square = l.op.mul(&l.op).expect("square matrix");
    square == Matrix::identity(n, l.field()).neg()
}

fn require_almost_complex(l: &ComplexStructure) -> Result<()> {
    if check_almost_complex(l) {
        Ok(())
    } else {
        Err(Error::NotAlmostComplex(l.label.clone()))
    }
}

fn require_compatible(g: &LieAlgebra, l: &ComplexStructure) -> Result<()> {
    if l.dim() != g.dim() {
        return Err(Error::AmbientMismatch {
            expected: g.dim(),
            got: l.dim(),
        });
    }
    if l.field() != g.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// First basis pair on which the Nijenhuis expression
/// N(x, y) = [x, y] + L[Lx, y] + L[x, Ly] - [Lx, Ly] does not vanish.
pub fn nijenhuis_witness(g: &LieAlgebra, l: &ComplexStructure) -> Result<Option<(usize, usize)>> {
    require_compatible(g, l)?;
    require_almost_complex(l)?;
    let n = g.dim();
    let field = g.field();
    let basis: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            let mut v = vec![FieldElement::zero(field); n];
            v[i] = FieldElement::one(field);
            v
        })
        .collect();
    let images: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|v| l.apply_vec(v))
        .collect::<Result<_>>()?;
    for i in 0..n {
        for j in (i + 1)..n {
            let term1 = g.bracket_vectors(&basis[i], &basis[j])?;
            let term2 = l.apply_vec(&g.bracket_vectors(&images[i], &basis[j])?)?;
            let term3 = l.apply_vec(&g.bracket_vectors(&basis[i], &images[j])?)?;
            let term4 = g.bracket_vectors(&images[i], &images[j])?;
            let mut nonzero = false;
            for k in 0..n {
                let s = term1[k].add(&term2[k])?.add(&term3[k])?.sub(&term4[k])?;
                if !s.is_zero() {
                    nonzero = true;
                    break;
                }
            }
            if nonzero {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Integrability: the Nijenhuis expression vanishes on all basis pairs.
///
/// Over Q the equivalent (1,0)-subalgebra condition is evaluated as well,
/// over the complexified field Q(i), and the two verdicts are required to
/// agree. For working fields of degree > 1 only the Nijenhuis path runs.
pub fn check_integrable(g: &LieAlgebra, l: &ComplexStructure) -> Result<bool> {
    let by_nijenhuis = nijenhuis_witness(g, l)?.is_none();
    if g.field().is_rationals() {
        let by_eigenspace = holomorphic_subalgebra_check(g, l)?;
        assert_eq!(
            by_nijenhuis, by_eigenspace,
            "Nijenhuis and (1,0)-subalgebra checks disagree for '{}'",
            l.label
        );
    }
    Ok(by_nijenhuis)
}

/// The +i eigenspace route: spans g^{1,0} by the vectors e_j - i L(e_j)
/// over Q(i) and checks it is closed under the (complexified) bracket.
fn holomorphic_subalgebra_check(g: &LieAlgebra, l: &ComplexStructure) -> Result<bool> {
    let qi = NumberFieldDescriptor::new(vec![Rational::one(), Rational::zero(), Rational::one()])
        .expect("x^2 + 1 is irreducible over Q");
    let n = g.dim();
    let g_c = g.clone_over_field(&qi);
    let imag = FieldElement::generator(&qi);
    let mut spanning = Vec::new();
    for j in 0..n {
        let mut e_j = vec![FieldElement::zero(g.field()); n];
        e_j[j] = FieldElement::one(g.field());
        let l_ej = l.apply_vec(&e_j)?;
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            // e_j[k] - i * (L e_j)[k], lifted to Q(i)
            let re = FieldElement::from_rational(e_j[k].rational_part().clone(), &qi);
            let im = FieldElement::from_rational(l_ej[k].rational_part().clone(), &qi);
            v.push(re.sub(&im.mul(&imag)?)?);
        }
        spanning.push(v);
    }
    let holomorphic = Subspace::from_spanning(spanning, n, &qi)?;
    assert_eq!(
        holomorphic.dim() * 2,
        n,
        "g^(1,0) has complex dimension n/2"
    );
    let basis = holomorphic.basis_vectors();
    for (a, u) in basis.iter().enumerate() {
        for w in basis.iter().skip(a + 1) {
            let bracket = g_c.bracket_vectors(u, w)?;
            if !holomorphic.contains_vector(&bracket)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// First basis pair violating the abelian identity [x, y] = [Lx, Ly].
pub fn abelian_witness(g: &LieAlgebra, l: &ComplexStructure) -> Result<Option<(usize, usize)>> {
    require_compatible(g, l)?;
    require_almost_complex(l)?;
    let direct = abelian_witness_direct(g, l)?;
    let skew = abelian_witness_skew(g, l)?;
    assert_eq!(
        direct.is_none(),
        skew.is_none(),
        "the two abelianness identities must agree for '{}'",
        l.label
    );
    Ok(direct)
}

/// [e_i, e_j] = [L e_i, L e_j] on all basis pairs.
fn abelian_witness_direct(g: &LieAlgebra, l: &ComplexStructure) -> Result<Option<(usize, usize)>> {
    let n = g.dim();
    let field = g.field();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut e_i = vec![FieldElement::zero(field); n];
            e_i[i] = FieldElement::one(field);
            let mut e_j = vec![FieldElement::zero(field); n];
            e_j[j] = FieldElement::one(field);
            let plain = g.bracket_vectors(&e_i, &e_j)?;
            let rotated = g.bracket_vectors(&l.apply_vec(&e_i)?, &l.apply_vec(&e_j)?)?;
            if plain != rotated {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Equivalent form [Lx, y] = -[x, Ly] on all basis pairs.
fn abelian_witness_skew(g: &LieAlgebra, l: &ComplexStructure) -> Result<Option<(usize, usize)>> {
    let n = g.dim();
    let field = g.field();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut e_i = vec![FieldElement::zero(field); n];
            e_i[i] = FieldElement::one(field);
            let mut e_j = vec![FieldElement::zero(field); n];
            e_j[j] = FieldElement::one(field);
            let left = g.bracket_vectors(&l.apply_vec(&e_i)?, &e_j)?;
            let right = g.bracket_vectors(&e_i, &l.apply_vec(&e_j)?)?;
            let agree = left
                .iter()
                .zip(&right)
                .all(|(a, b)| a.add(b).map(|s| s.is_zero()).unwrap_or(false));
            if !agree {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Abelian complex structure: [x, y] = [Lx, Ly] for all x, y.
pub fn check_abelian(g: &LieAlgebra, l: &ComplexStructure) -> Result<bool> {
    Ok(abelian_witness(g, l)?.is_none())
}

/// A candidate hypercomplex triple. Quaternionic relations are a checkable
/// property so that near-misses (sign errors etc.) can be diagnosed.
#[derive(Clone, Debug)]
pub struct HypercomplexTriple {
    i: ComplexStructure,
    j: ComplexStructure,
    k: ComplexStructure,
}

impl HypercomplexTriple {
    pub fn new(i: ComplexStructure, j: ComplexStructure, k: ComplexStructure) -> Result<Self> {
        if i.dim() != j.dim() || j.dim() != k.dim() {
            return Err(Error::ShapeMismatch(
                "hypercomplex triple needs equal dimensions".into(),
            ));
        }
        if i.field() != j.field() || j.field() != k.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(HypercomplexTriple { i, j, k })
    }

    pub fn i(&self) -> &ComplexStructure {
        &self.i
    }

    pub fn j(&self) -> &ComplexStructure {
        &self.j
    }

    pub fn k(&self) -> &ComplexStructure {
        &self.k
    }

    pub fn structures(&self) -> [&ComplexStructure; 3] {
        [&self.i, &self.j, &self.k]
    }

    pub fn by_label(&self, label: &str) -> Option<&ComplexStructure> {
        self.structures().into_iter().find(|s| s.label() == label)
    }

    pub fn dim(&self) -> usize {
        self.i.dim()
    }

    pub fn field(&self) -> &Arc<NumberFieldDescriptor> {
        self.i.field()
    }
}

impl Serialize for HypercomplexTriple {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("HypercomplexTriple", 3)?;
        s.serialize_field("I", &self.i)?;
        s.serialize_field("J", &self.j)?;
        s.serialize_field("K", &self.k)?;
        s.end()
    }
}

/// Quaternionic relations: I^2 = J^2 = K^2 = -Id, IJ = K, JI = -K.
pub fn check_quaternionic(h: &HypercomplexTriple) -> bool {
    if !h.structures().iter().all(|s| check_almost_complex(s)) {
        return false;
    }
    let ij = h.i.op().mul(h.j.op()).expect("same dimensions");
    let ji = h.j.op().mul(h.i.op()).expect("same dimensions");
    ij == *h.k.op() && ji == h.k.op().neg()
}

fn require_quaternionic(h: &HypercomplexTriple) -> Result<()> {
    if check_quaternionic(h) {
        Ok(())
    } else {
        Err(Error::NotQuaternionic)
    }
}

/// All three structures integrable and the quaternionic relations hold.
pub fn check_hypercomplex(g: &LieAlgebra, h: &HypercomplexTriple) -> Result<bool> {
    if !check_quaternionic(h) {
        return Ok(false);
    }
    for s in h.structures() {
        if !check_integrable(g, s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An exact rational point on the unit two-sphere, naming the induced
/// structure a I + b J + c K.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct SpherePoint {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl SpherePoint {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let norm = a.mul(&a).add(&b.mul(&b)).add(&c.mul(&c));
        if !norm.is_one() {
            return Err(Error::NotOnSphere {
                a: a.to_string(),
                b: b.to_string(),
                c: c.to_string(),
            });
        }
        Ok(SpherePoint { a, b, c })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(
            Rational::from_int(a),
            Rational::from_int(b),
            Rational::from_int(c),
        )
    }

    pub fn antipode(&self) -> SpherePoint {
        SpherePoint {
            a: self.a.neg(),
            b: self.b.neg(),
            c: self.c.neg(),
        }
    }

    /// The six unit points on the coordinate axes.
    pub fn axis_points() -> Vec<SpherePoint> {
        [
            (1, 0, 0),
            (-1, 0, 0),
            (0, 1, 0),
            (0, -1, 0),
            (0, 0, 1),
            (0, 0, -1),
        ]
        .into_iter()
        .map(|(a, b, c)| SpherePoint::from_ints(a, b, c).expect("axis points are unit"))
        .collect()
    }
}

impl std::fmt::Debug for SpherePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl std::fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// The induced structure L = a I + b J + c K. The quaternionic relations
/// plus a^2 + b^2 + c^2 = 1 force L^2 = -Id, which is re-asserted.
pub fn induced_structure(h: &HypercomplexTriple, p: &SpherePoint) -> Result<ComplexStructure> {
    require_quaternionic(h)?;
    let field = h.field();
    let scale =
        |op: &Matrix, q: &Rational| op.scale(&FieldElement::from_rational(q.clone(), field));
    let op = scale(h.i.op(), &p.a)
        .add(&scale(h.j.op(), &p.b))?
        .add(&scale(h.k.op(), &p.c))?;
    let label = format!("{}I+{}J+{}K", p.a, p.b, p.c);
    let l = ComplexStructure::new(label, op)?;
    assert!(
        check_almost_complex(&l),
        "induced structure at {p} must square to -Id"
    );
    Ok(l)
}

/// Sphere points used for the fixed abelianness cross-check: the six axis
/// points plus two Pythagorean points off the axes.
pub fn fixed_sample_points() -> Vec<SpherePoint> {
    let mut pts = SpherePoint::axis_points();
    let r = |n: i64, d: i64| Rational::new(n, d).unwrap();
    pts.push(SpherePoint::new(r(3, 5), r(4, 5), Rational::zero()).unwrap());
    pts.push(SpherePoint::new(Rational::zero(), r(3, 5), r(4, 5)).unwrap());
    pts
}

/// True iff I is abelian. Also cross-checks the Dotti-Fino fact that J, K
/// and every induced structure are then abelian too, on the eight fixed
/// sample points.
pub fn check_abelian_hypercomplex(g: &LieAlgebra, h: &HypercomplexTriple) -> Result<bool> {
    require_quaternionic(h)?;
    let abelian_i = check_abelian(g, h.i())?;
    if abelian_i {
        for s in [h.j(), h.k()] {
            assert!(
                check_abelian(g, s)?,
                "'{}' must be abelian when I is",
                s.label()
            );
        }
        for p in fixed_sample_points() {
            let l = induced_structure(h, &p)?;
            assert!(
                check_abelian(g, &l)?,
                "induced structure at {p} must be abelian when I is"
            );
        }
    }
    Ok(abelian_i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_fixtures::*;

    #[test]
    fn kodaira_structure_is_almost_complex_integrable_abelian() {
        let (g, i) = kodaira();
        assert!(check_almost_complex(&i));
        assert!(check_integrable(&g, &i).unwrap());
        assert!(check_abelian(&g, &i).unwrap());
        // [Ix, Iy] = [y, -x] = [x, y] = z by hand
        assert!(check_abelian(&g, &i.neg()).unwrap());
    }

    #[test]
    fn identity_is_not_almost_complex() {
        let q = qq();
        let id = ComplexStructure::new("Id", Matrix::identity(2, &q)).unwrap();
        assert!(!check_almost_complex(&id));
        let g = abelian_algebra(2);
        assert!(matches!(
            check_integrable(&g, &id),
            Err(Error::NotAlmostComplex(_))
        ));
    }

    #[test]
    fn block_rotation_is_almost_complex() {
        let q = qq();
        let rot = Matrix::from_int_rows(
            &[
                vec![0, -1, 0, 0],
                vec![1, 0, 0, 0],
                vec![0, 0, 0, -1],
                vec![0, 0, 1, 0],
            ],
            &q,
        );
        let l = ComplexStructure::new("R", rot).unwrap();
        assert!(check_almost_complex(&l));
    }

    #[test]
    fn any_structure_on_abelian_algebra_is_integrable_and_abelian() {
        let g = abelian_algebra(4);
        let (_, i) = kodaira();
        assert!(check_integrable(&g, &i).unwrap());
        assert!(check_abelian(&g, &i).unwrap());
    }

    #[test]
    fn swap_structure_on_kodaira_bracket_fails_nijenhuis() {
        // dim 4 algebra [x, y] = z with L exchanging (x, z) and (y, t):
        // N(x, y) = [x,y] + L[Lx,y] + L[x,Ly] - [Lx,Ly]
        //         = z + L[z,y] + L[x,t] - [z,t] = z, nonzero.
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
        assert!(check_almost_complex(&l));
        assert_eq!(nijenhuis_witness(&g, &l).unwrap(), Some((0, 1)));
        assert!(!check_integrable(&g, &l).unwrap());
        assert!(!check_abelian(&g, &l).unwrap());
    }

    #[test]
    fn quaternion_left_multiplication_satisfies_relations() {
        let h = standard_quaternion_triple(1);
        assert!(check_quaternionic(&h));
        let h8 = standard_quaternion_triple(2);
        assert!(check_quaternionic(&h8));
        // sign flip breaks IJ = K
        let flipped = HypercomplexTriple::new(h.i().clone(), h.j().clone(), h.k().neg()).unwrap();
        assert!(!check_quaternionic(&flipped));
    }

    #[test]
    fn induced_structures_square_to_minus_id() {
        let h = standard_quaternion_triple(1);
        let i = induced_structure(&h, &SpherePoint::from_ints(1, 0, 0).unwrap()).unwrap();
        assert_eq!(i.op(), h.i().op());
        let minus_k = induced_structure(&h, &SpherePoint::from_ints(0, 0, -1).unwrap()).unwrap();
        assert_eq!(minus_k.op(), &h.k().op().neg());
        let r = |n: i64, d: i64| Rational::new(n, d).unwrap();
        let p = SpherePoint::new(r(3, 5), r(4, 5), Rational::zero()).unwrap();
        let mixed = induced_structure(&h, &p).unwrap();
        assert!(check_almost_complex(&mixed));
        assert!(matches!(
            SpherePoint::from_ints(1, 1, 0),
            Err(Error::NotOnSphere { .. })
        ));
    }

    #[test]
    fn abelian_hypercomplex_catalog_cases() {
        // flat H with the standard action
        let g4 = abelian_algebra(4);
        let h4 = standard_quaternion_triple(1);
        assert!(check_abelian_hypercomplex(&g4, &h4).unwrap());

        // the 8-dimensional nonabelian algebra with abelian triple
        let (g8, h8) = example8();
        assert!(check_quaternionic(&h8));
        assert!(check_hypercomplex(&g8, &h8).unwrap());
        assert!(check_abelian_hypercomplex(&g8, &h8).unwrap());
    }

    #[test]
    fn kodaira_blockwise_quaternions_fail() {
        // dim 4 is too small for a hypercomplex Kodaira: the blockwise
        // quaternion action is quaternionic as a triple but J is not
        // integrable for the Kodaira bracket.
        let g = kodaira_algebra();
        let h = standard_quaternion_triple(1);
        assert!(check_quaternionic(&h));
        assert!(!check_hypercomplex(&g, &h).unwrap());
        assert!(!check_abelian(&g, h.j()).unwrap());
    }

    #[test]
    fn iwasawa_structure_integrable_not_abelian() {
        let (g, i) = iwasawa6();
        assert!(check_integrable(&g, &i).unwrap());
        assert!(!check_abelian(&g, &i).unwrap());
        assert_eq!(abelian_witness(&g, &i).unwrap(), Some((0, 2)));
    }

    #[test]
    fn abelianness_is_invariant_under_negation() {
        for (g, l) in [kodaira(), h5r6(), iwasawa6()] {
            assert_eq!(
                check_abelian(&g, &l).unwrap(),
                check_abelian(&g, &l.neg()).unwrap()
            );
        }
    }

    #[test]
    fn abelian_implies_integrable_across_catalog() {
        for (g, l) in [kodaira(), h5r6()] {
            assert!(check_abelian(&g, &l).unwrap());
            assert!(check_integrable(&g, &l).unwrap());
        }
    }
}
