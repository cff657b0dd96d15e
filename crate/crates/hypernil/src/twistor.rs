//! Twistor-sphere experiments: rational sphere sampling, per-structure
//! Albanese kernels W_{Q,L} across a grid, and certificates for the
//! exceptional points where W_{Q,L} is strictly smaller than W_{Q,H}.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, Rational};
use crate::lie::LieAlgebra;
use crate::linalg::Subspace;
use crate::saturation::{rational_invariant_closure, rational_invariant_closure_h};
use crate::structures::{check_quaternionic, induced_structure, HypercomplexTriple, SpherePoint};

/// A sample location: the sphere point, plus the (u, v) parameter when the
/// point came from the rational parametrization.
#[derive(Debug, Clone, Serialize)]
pub struct GridPoint {
    pub param: Option<(Rational, Rational)>,
    pub point: SpherePoint,
}

/// Stereographic-style rational parametrization of the unit sphere:
/// (a, b, c) = (2u/s, 2v/s, (u^2 + v^2 - 1)/s) with s = 1 + u^2 + v^2.
/// Every rational (u, v) lands exactly on the sphere.
pub fn sphere_point(u: &Rational, v: &Rational) -> SpherePoint {
    let one = Rational::one();
    let uu = u.mul(u);
    let vv = v.mul(v);
    let s = one.add(&uu).add(&vv);
    let two = Rational::from_int(2);
    let a = two.mul(u).div(&s).expect("s >= 1");
    let b = two.mul(v).div(&s).expect("s >= 1");
    let c = uu.add(&vv).sub(&one).div(&s).expect("s >= 1");
    SpherePoint::new(a, b, c).expect("parametrized points are exactly unit")
}

/// Square grid {(i/n, j/n) : -n <= i, j <= n} followed by the six axis
/// points. The default n = 3 gives 49 + 6 = 55 samples.
pub fn grid(n: i64) -> Vec<GridPoint> {
    assert!(n >= 1, "grid needs n >= 1");
    let mut points = Vec::new();
    for i in -n..=n {
        for j in -n..=n {
            let u = Rational::new(i, n).expect("n >= 1");
            let v = Rational::new(j, n).expect("n >= 1");
            points.push(GridPoint {
                point: sphere_point(&u, &v),
                param: Some((u, v)),
            });
        }
    }
    for point in SpherePoint::axis_points() {
        points.push(GridPoint { param: None, point });
    }
    points
}

pub fn default_grid() -> Vec<GridPoint> {
    grid(3)
}

/// One scan sample: the kernel dimension of W_{Q,L} at this point and
/// whether it reached the quaternionic closure.
#[derive(Debug, Clone, Serialize)]
pub struct ScanSample {
    pub grid_point: GridPoint,
    pub kernel_dim: usize,
    pub kernel_equals_h_closure: bool,
}

/// Result of scanning a grid of induced structures.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub samples: Vec<ScanSample>,
    pub h_closure_dim: usize,
    pub exceptional: Vec<SpherePoint>,
}

/// For every grid point p computes W_{Q, L_p} with L_p = aI + bJ + cK and
/// compares it against W_{Q,H}. `w` defaults to the commutator [g, g].
pub fn scan(
    g: &LieAlgebra,
    h: &HypercomplexTriple,
    w: Option<&Subspace>,
    grid: &[GridPoint],
) -> Result<ScanReport> {
    if !check_quaternionic(h) {
        return Err(Error::NotQuaternionic);
    }
    let commutator;
    let w = match w {
        Some(w) => w,
        None => {
            commutator = g.commutator();
            &commutator
        }
    };
    let h_closure = rational_invariant_closure_h(w, h)?.result;
    let mut samples = Vec::with_capacity(grid.len());
    let mut exceptional = Vec::new();
    for gp in grid {
        let l = induced_structure(h, &gp.point)?;
        let closure = rational_invariant_closure(w, &l)?.result;
        // closure postconditions, re-checked in scan context
        assert!(closure.is_rational());
        assert!(closure.contains(&w.rationalize())?);
        assert!(closure.contains(&l.apply_subspace(&closure)?)?);
        assert!(
            h_closure.contains(&closure)?,
            "W_(Q,L) must sit inside W_(Q,H)"
        );
        let equal = closure == h_closure;
        if !equal {
            exceptional.push(gp.point.clone());
        }
        samples.push(ScanSample {
            grid_point: gp.clone(),
            kernel_dim: closure.dim(),
            kernel_equals_h_closure: equal,
        });
    }
    Ok(ScanReport {
        samples,
        h_closure_dim: h_closure.dim(),
        exceptional,
    })
}

/// A machine-checkable proof that W_{Q,L} at `point` fails to be
/// H-invariant: a vector of the closure and one of I, J, K mapping it
/// outside.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessCertificate {
    pub point: SpherePoint,
    pub l_closure: Subspace,
    pub h_closure_dim: usize,
    pub vector: Vec<FieldElement>,
    pub operator_label: String,
}

impl WitnessCertificate {
    /// Re-verifies the certificate from its own data: the vector lies in
    /// the stored closure but its image under the named operator does not.
    pub fn verify(&self, h: &HypercomplexTriple) -> Result<bool> {
        let q = h
            .by_label(&self.operator_label)
            .ok_or_else(|| Error::MissingStructure(self.operator_label.clone()))?;
        let inside = self.l_closure.contains_vector(&self.vector)?;
        let image = q.op().mul_vec(&self.vector)?;
        let escapes = !self.l_closure.contains_vector(&image)?;
        Ok(inside && escapes)
    }
}

/// Builds the certificate for an exceptional point, or reports
/// NotExceptional when the closures in fact coincide.
pub fn exceptional_witness(
    g: &LieAlgebra,
    h: &HypercomplexTriple,
    w: Option<&Subspace>,
    point: &SpherePoint,
) -> Result<WitnessCertificate> {
    if !check_quaternionic(h) {
        return Err(Error::NotQuaternionic);
    }
    let commutator;
    let w = match w {
        Some(w) => w,
        None => {
            commutator = g.commutator();
            &commutator
        }
    };
    let l = induced_structure(h, point)?;
    let l_closure = rational_invariant_closure(w, &l)?.result;
    let h_closure = rational_invariant_closure_h(w, h)?.result;
    if l_closure == h_closure {
        return Err(Error::NotExceptional);
    }
    for q in h.structures() {
        for x in l_closure.basis_vectors() {
            let image = q.op().mul_vec(&x)?;
            if !l_closure.contains_vector(&image)? {
                return Ok(WitnessCertificate {
                    point: point.clone(),
                    l_closure,
                    h_closure_dim: h_closure.dim(),
                    vector: x,
                    operator_label: q.label().to_string(),
                });
            }
        }
    }
    unreachable!(
        "a strictly smaller rational L-invariant closure cannot be invariant \
         under all of I, J, K"
    );
}
