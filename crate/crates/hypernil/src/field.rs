//! Exact scalar arithmetic over Q and over simple algebraic extensions Q(alpha).
//!
//! An extension is described by a monic integer-coefficient minimal polynomial;
//! elements are coefficient vectors in the power basis {1, alpha, ..., alpha^(d-1)}
//! and all products are reduced modulo the minimal polynomial. No floating point
//! is used anywhere: rationality questions downstream are exact.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in canonical form:
/// positive denominator, gcd(|num|, den) = 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num/den`, rejecting a zero denominator.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn add(&self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }

    pub fn sub(&self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }

    pub fn mul(&self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }

    pub fn div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn neg(&self) -> Rational {
        Rational(-&self.0)
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `"p"` or `"p/q"` with arbitrary-precision integers.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed rational '{s}'"));
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num_str.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den_str.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in rational '{s}'")));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Description of the working field: Q itself (degree 1) or Q(alpha) with
/// alpha a root of the given monic irreducible polynomial.
///
/// The polynomial is stored lowest degree first, so `["-2","0","1"]` is
/// x^2 - 2. Irreducibility is fully verified up to degree 4; higher degrees
/// are accepted with `irreducibility_verified = false`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberFieldDescriptor {
    minpoly: Vec<Rational>,
    degree: usize,
    irreducibility_verified: bool,
}

impl NumberFieldDescriptor {
    /// The canonical descriptor for Q: minimal polynomial x (alpha = 0, degree 1).
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberFieldDescriptor {
            minpoly: vec![Rational::zero(), Rational::one()],
            degree: 1,
            irreducibility_verified: true,
        })
    }

    /// Builds a descriptor from a monic minimal polynomial, lowest degree first.
    pub fn new(minpoly: Vec<Rational>) -> Result<Arc<Self>> {
        if minpoly.len() < 2 || !minpoly.last().unwrap().is_one() {
            return Err(Error::BadMinimalPolynomial);
        }
        let degree = minpoly.len() - 1;
        let verified = degree <= 4;
        if verified {
            if let Some(factor) = find_rational_factor(&minpoly) {
                return Err(Error::ReducibleMinimalPolynomial(poly_to_string(&factor)));
            }
        }
        Ok(Arc::new(NumberFieldDescriptor {
            minpoly,
            degree,
            irreducibility_verified: verified,
        }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    pub fn irreducibility_verified(&self) -> bool {
        self.irreducibility_verified
    }

    pub fn is_rationals(&self) -> bool {
        self.degree == 1
    }
}

fn poly_to_string(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// An element c0 + c1*alpha + ... + c_{d-1}*alpha^{d-1} of the working field.
/// The coefficient vector always has length exactly `d`.
#[derive(Clone)]
pub struct FieldElement {
    coeffs: Vec<Rational>,
    field: Arc<NumberFieldDescriptor>,
}

impl FieldElement {
    pub fn zero(field: &Arc<NumberFieldDescriptor>) -> Self {
        FieldElement {
            coeffs: vec![Rational::zero(); field.degree()],
            field: Arc::clone(field),
        }
    }

    pub fn one(field: &Arc<NumberFieldDescriptor>) -> Self {
        let mut coeffs = vec![Rational::zero(); field.degree()];
        coeffs[0] = Rational::one();
        FieldElement {
            coeffs,
            field: Arc::clone(field),
        }
    }

    /// The generator alpha. For degree 1 this is the rational root of the
    /// minimal polynomial (zero for the canonical Q descriptor).
    pub fn generator(field: &Arc<NumberFieldDescriptor>) -> Self {
        if field.degree() == 1 {
            // x + c = 0, so alpha = -c.
            return FieldElement {
                coeffs: vec![field.minpoly()[0].neg()],
                field: Arc::clone(field),
            };
        }
        let mut coeffs = vec![Rational::zero(); field.degree()];
        coeffs[1] = Rational::one();
        FieldElement {
            coeffs,
            field: Arc::clone(field),
        }
    }

    pub fn from_rational(r: Rational, field: &Arc<NumberFieldDescriptor>) -> Self {
        let mut coeffs = vec![Rational::zero(); field.degree()];
        coeffs[0] = r;
        FieldElement {
            coeffs,
            field: Arc::clone(field),
        }
    }

    pub fn from_int(n: i64, field: &Arc<NumberFieldDescriptor>) -> Self {
        Self::from_rational(Rational::from_int(n), field)
    }

    /// Builds an element from coefficients, zero-padding up to the field degree.
    pub fn from_coeffs(coeffs: Vec<Rational>, field: &Arc<NumberFieldDescriptor>) -> Result<Self> {
        if coeffs.len() > field.degree() {
            return Err(Error::Parse(format!(
                "field element has {} coefficients but the field has degree {}",
                coeffs.len(),
                field.degree()
            )));
        }
        let mut coeffs = coeffs;
        coeffs.resize(field.degree(), Rational::zero());
        Ok(FieldElement {
            coeffs,
            field: Arc::clone(field),
        })
    }

    pub fn field(&self) -> &Arc<NumberFieldDescriptor> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// True when the element lies in Q, i.e. has no alpha-component.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The coordinates of the element in the Q-basis {1, alpha, ..., alpha^{d-1}}.
    pub fn rational_components(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The rational part `c0`; exact embedding inverse when `is_rational()`.
    pub fn rational_part(&self) -> &Rational {
        &self.coeffs[0]
    }

    fn check_same_field(&self, rhs: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.field, &rhs.field) || self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(FieldElement {
            coeffs,
            field: Arc::clone(&self.field),
        })
    }

    pub fn sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(FieldElement {
            coeffs,
            field: Arc::clone(&self.field),
        })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            coeffs: self.coeffs.iter().map(Rational::neg).collect(),
            field: Arc::clone(&self.field),
        }
    }

    pub fn mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(rhs)?;
        let product = poly_mul(&self.coeffs, &rhs.coeffs);
        let reduced = poly_rem(&product, self.field.minpoly());
        let mut coeffs = reduced;
        coeffs.resize(self.field.degree(), Rational::zero());
        Ok(FieldElement {
            coeffs,
            field: Arc::clone(&self.field),
        })
    }

    pub fn scale(&self, r: &Rational) -> FieldElement {
        FieldElement {
            coeffs: self.coeffs.iter().map(|c| c.mul(r)).collect(),
            field: Arc::clone(&self.field),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// polynomials. With an irreducible minimal polynomial every nonzero
    /// element is invertible.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree() == 1 {
            let mut coeffs = vec![Rational::zero(); 1];
            coeffs[0] = Rational::one().div(&self.coeffs[0])?;
            return Ok(FieldElement {
                coeffs,
                field: Arc::clone(&self.field),
            });
        }
        let (g, s, _t) = poly_ext_gcd(&self.coeffs, self.field.minpoly());
        // g = s*self + t*minpoly; irreducibility forces deg g = 0.
        assert_eq!(
            poly_degree(&g),
            Some(0),
            "gcd(element, minpoly) not constant: minpoly must be irreducible"
        );
        let scale = Rational::one().div(&g[0])?;
        let inv_poly: Vec<Rational> = s.iter().map(|c| c.mul(&scale)).collect();
        let reduced = poly_rem(&inv_poly, self.field.minpoly());
        let mut coeffs = reduced;
        coeffs.resize(self.field.degree(), Rational::zero());
        Ok(FieldElement {
            coeffs,
            field: Arc::clone(&self.field),
        })
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.mul(&rhs.inv()?)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match k {
                0 => c.to_string(),
                1 => format!("{c}*a"),
                _ => format!("{c}*a^{k}"),
            };
            parts.push(term);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.field.is_rationals() {
            // Degree-1 elements print as a bare rational string.
            serializer.serialize_str(&self.coeffs[0].to_string())
        } else {
            self.coeffs.serialize(serializer)
        }
    }
}

// ---------------------------------------------------------------------------
// Polynomial helpers over Q (dense, lowest degree first).
// ---------------------------------------------------------------------------

pub(crate) fn poly_degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().map(Rational::is_zero).unwrap_or(false) {
        p.pop();
    }
    p
}

pub(crate) fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![Rational::zero()];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

/// Remainder of a modulo b (b nonzero), lowest degree first.
pub(crate) fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    poly_divmod(a, b).1
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead_inv = Rational::one()
        .div(&b[db])
        .expect("nonzero leading coefficient");
    let mut rem = poly_trim(a.to_vec());
    let da = match poly_degree(&rem) {
        Some(d) => d,
        None => return (vec![Rational::zero()], rem),
    };
    if da < db {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); da - db + 1];
    loop {
        let dr = match poly_degree(&rem) {
            Some(d) if d >= db => d,
            _ => break,
        };
        let factor = rem[dr].mul(&lead_inv);
        quot[dr - db] = factor.clone();
        for k in 0..=db {
            let delta = b[k].mul(&factor);
            rem[dr - db + k] = rem[dr - db + k].sub(&delta);
        }
    }
    (poly_trim(quot), poly_trim(rem))
}

/// Extended gcd: returns (g, s, t) with g = s*a + t*b.
fn poly_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut s0 = vec![Rational::one()];
    let mut s1 = vec![Rational::zero()];
    let mut t0 = vec![Rational::zero()];
    let mut t1 = vec![Rational::one()];
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let qs = poly_mul(&q, &s1);
        let qt = poly_mul(&q, &t1);
        let s_new = poly_sub(&s0, &qs);
        let t_new = poly_sub(&t0, &qt);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s_new);
        t0 = std::mem::replace(&mut t1, t_new);
    }
    (r0, s0, t0)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        *slot = x.sub(&y);
    }
    poly_trim(out)
}

// ---------------------------------------------------------------------------
// Irreducibility over Q, complete for degree <= 4.
// ---------------------------------------------------------------------------

/// Searches a nontrivial monic rational factor of `p` (degree <= 4).
/// Returns None when `p` is irreducible over Q.
fn find_rational_factor(p: &[Rational]) -> Option<Vec<Rational>> {
    let deg = poly_degree(p)?;
    if deg <= 1 {
        return None;
    }
    // A rational root r gives the linear factor x - r.
    if let Some(r) = rational_root(p) {
        return Some(vec![r.neg(), Rational::one()]);
    }
    if deg <= 3 {
        return None; // degree 2 or 3 with no root is irreducible
    }
    quadratic_factor_of_quartic(p)
}

/// Clears denominators and divides by the content, producing a primitive
/// integer polynomial with the same roots.
fn primitive_integer_poly(p: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut gcd = BigInt::zero();
    for c in &ints {
        gcd = num_integer::gcd(gcd, c.clone());
    }
    if gcd.is_zero() || gcd.is_one() {
        return ints;
    }
    ints.iter().map(|c| c / &gcd).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // Trial division; minimal polynomials have human-scale coefficients.
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += BigInt::one();
    }
    out.sort();
    out
}

/// Rational root test on the primitive integer form of `p`.
fn rational_root(p: &[Rational]) -> Option<Rational> {
    let ints = primitive_integer_poly(p);
    let deg = ints.iter().rposition(|c| !c.is_zero())?;
    if ints[0].is_zero() {
        return Some(Rational::zero());
    }
    let lead = ints[deg].clone();
    for num in divisors(&ints[0]) {
        for den in divisors(&lead) {
            for sign in [1i64, -1] {
                let cand = Rational::from(BigRational::new(&num * BigInt::from(sign), den.clone()));
                if poly_eval(p, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn poly_eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Searches an integer quadratic factor (e0 + e1 x + e2 x^2) of a primitive
/// integer quartic. Enumerates divisor pairs of the outer coefficients and
/// solves the middle coefficient exactly.
fn quadratic_factor_of_quartic(p: &[Rational]) -> Option<Vec<Rational>> {
    let a = primitive_integer_poly(p);
    debug_assert_eq!(a.iter().rposition(|c| !c.is_zero()), Some(4));
    let (a0, a1, a2, a3, a4) = (&a[0], &a[1], &a[2], &a[3], &a[4]);
    if a0.is_zero() {
        unreachable!("zero constant term implies a rational root, handled earlier");
    }
    let signed = |d: &BigInt| vec![d.clone(), -d.clone()];
    for e2 in divisors(a4) {
        // Leading signs can be absorbed into the cofactor.
        let f2 = a4 / &e2;
        for e0d in divisors(a0) {
            for e0 in signed(&e0d) {
                if (a0 % &e0).is_zero() {
                    let f0 = a0 / &e0;
                    // x^3:  e2*f1 + e1*f2 = a3
                    // x^2:  e0*f2 + e1*f1 + e2*f0 = a2
                    // x^1:  e0*f1 + e1*f0 = a1
                    // Substitute f1 = (a3 - e1*f2)/e2 into the x^2 equation:
                    //   f2*e1^2 - a3*e1 + e2*(a2 - e0*f2 - e2*f0) = 0.
                    let qa = f2.clone();
                    let qb = -a3;
                    let qc = &e2 * (a2 - &e0 * &f2 - &e2 * &f0);
                    for e1 in integer_quadratic_roots(&qa, &qb, &qc) {
                        let f1_num = a3 - &e1 * &f2;
                        if !(&f1_num % &e2).is_zero() {
                            continue;
                        }
                        let f1 = f1_num / &e2;
                        if &e0 * &f1 + &e1 * &f0 == *a1 {
                            let to_monic = |c: &BigInt, lead: &BigInt| {
                                Rational::from(BigRational::new(c.clone(), lead.clone()))
                            };
                            return Some(vec![
                                to_monic(&e0, &e2),
                                to_monic(&e1, &e2),
                                Rational::one(),
                            ]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Integer roots of qa*x^2 + qb*x + qc (qa != 0).
fn integer_quadratic_roots(qa: &BigInt, qb: &BigInt, qc: &BigInt) -> Vec<BigInt> {
    let disc = qb * qb - BigInt::from(4) * qa * qc;
    if disc.sign() == num_bigint::Sign::Minus {
        return Vec::new();
    }
    let root = disc.sqrt();
    if &root * &root != disc {
        return Vec::new();
    }
    let two_a = BigInt::from(2) * qa;
    let mut out = Vec::new();
    for num in [-qb + &root, -qb - &root] {
        if (&num % &two_a).is_zero() {
            let x = num / &two_a;
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}
