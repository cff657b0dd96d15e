//! Exact linear algebra over the working field: reduced row-echelon forms,
//! kernels, subspace sums and intersections, and rationalization.
//!
//! Subspaces are kept in RREF at all times, which makes equality structural
//! and every result deterministic: pivots are chosen leftmost-first, first
//! qualifying row.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberFieldDescriptor, Rational};

/// Dense row-major matrix over the working field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
    field: Arc<NumberFieldDescriptor>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: &Arc<NumberFieldDescriptor>) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![FieldElement::zero(field); rows * cols],
            field: Arc::clone(field),
        }
    }

    pub fn identity(n: usize, field: &Arc<NumberFieldDescriptor>) -> Self {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            *m.get_mut(i, i) = FieldElement::one(field);
        }
        m
    }

    /// Builds a matrix from rows of field elements. All entries must belong
    /// to `field`; rows must have equal length.
    pub fn from_rows(
        rows: Vec<Vec<FieldElement>>,
        cols: usize,
        field: &Arc<NumberFieldDescriptor>,
    ) -> Result<Self> {
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a {}-column matrix",
                    row.len(),
                    cols
                )));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch);
                }
                entries.push(e);
            }
        }
        Ok(Matrix {
            rows: n_rows,
            cols,
            entries,
            field: Arc::clone(field),
        })
    }

    /// Builds a matrix with rational entries embedded into the working field.
    pub fn from_rational_rows(
        rows: &[Vec<Rational>],
        cols: usize,
        field: &Arc<NumberFieldDescriptor>,
    ) -> Result<Self> {
        let lifted = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|q| FieldElement::from_rational(q.clone(), field))
                    .collect()
            })
            .collect();
        Matrix::from_rows(lifted, cols, field)
    }

    /// Builds a matrix from integer rows; convenient for fixtures.
    pub fn from_int_rows(rows: &[Vec<i64>], field: &Arc<NumberFieldDescriptor>) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let lifted: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&n| Rational::from_int(n)).collect())
            .collect();
        Matrix::from_rational_rows(&lifted, cols, field).expect("integer rows are well formed")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn field(&self) -> &Arc<NumberFieldDescriptor> {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut FieldElement {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch("matrix addition".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            field: Arc::clone(&self.field),
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(FieldElement::neg).collect(),
            field: Arc::clone(&self.field),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|e| e.mul(c).expect("uniform field"))
                .collect(),
            field: Arc::clone(&self.field),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zero(self.rows, rhs.cols, &self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = a.mul(rhs.get(k, j)).expect("uniform field");
                    let cur = out.get(i, j).add(&term).expect("uniform field");
                    *out.get_mut(i, j) = cur;
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::AmbientMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = vec![FieldElement::zero(&self.field); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() || v[j].is_zero() {
                    continue;
                }
                out[i] = out[i]
                    .add(&a.mul(&v[j]).expect("uniform field"))
                    .expect("uniform field");
            }
        }
        Ok(out)
    }

    /// True when every entry lies in Q.
    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(FieldElement::is_rational)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_vectors().serialize(serializer)
    }
}

/// Reduced row-echelon form. Row space is preserved; pivots are 1 with
/// zeros above and below; pivot columns strictly increase.
pub fn rref(m: &Matrix) -> Matrix {
    let mut a = m.clone();
    let mut pivot_row = 0;
    for col in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        // first qualifying row at or below pivot_row
        let found = (pivot_row..a.rows).find(|&r| !a.get(r, col).is_zero());
        let r = match found {
            Some(r) => r,
            None => continue,
        };
        if r != pivot_row {
            for j in 0..a.cols {
                let idx_a = r * a.cols + j;
                let idx_b = pivot_row * a.cols + j;
                a.entries.swap(idx_a, idx_b);
            }
        }
        let inv = a.get(pivot_row, col).inv().expect("nonzero pivot");
        for j in col..a.cols {
            let scaled = a.get(pivot_row, j).mul(&inv).expect("uniform field");
            *a.get_mut(pivot_row, j) = scaled;
        }
        for r2 in 0..a.rows {
            if r2 == pivot_row || a.get(r2, col).is_zero() {
                continue;
            }
            let factor = a.get(r2, col).clone();
            for j in col..a.cols {
                let delta = a.get(pivot_row, j).mul(&factor).expect("uniform field");
                let new = a.get(r2, j).sub(&delta).expect("uniform field");
                *a.get_mut(r2, j) = new;
            }
        }
        pivot_row += 1;
    }
    a
}

fn pivot_columns(rref_m: &Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    for i in 0..rref_m.rows() {
        if let Some(j) = (0..rref_m.cols()).find(|&j| !rref_m.get(i, j).is_zero()) {
            pivots.push(j);
        }
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    pivot_columns(&rref(m)).len()
}

/// A linear subspace of K^n held as an RREF basis (rows are basis vectors,
/// no zero rows). The zero subspace has an empty basis and counts as
/// rational.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    is_rational: bool,
}

impl Subspace {
    pub fn zero(ambient_dim: usize, field: &Arc<NumberFieldDescriptor>) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zero(0, ambient_dim, field),
            is_rational: true,
        }
    }

    pub fn full(ambient_dim: usize, field: &Arc<NumberFieldDescriptor>) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim, field),
            is_rational: true,
        }
    }

    /// Span of the given vectors: RREF the spanning matrix and drop zero rows.
    pub fn from_spanning(
        vectors: Vec<Vec<FieldElement>>,
        ambient_dim: usize,
        field: &Arc<NumberFieldDescriptor>,
    ) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(Error::AmbientMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
        }
        let m = Matrix::from_rows(vectors, ambient_dim, field)?;
        Ok(Self::from_matrix_span(&m))
    }

    pub fn from_matrix_span(m: &Matrix) -> Self {
        let reduced = rref(m);
        let nonzero: Vec<Vec<FieldElement>> = (0..reduced.rows())
            .filter(|&i| reduced.row(i).iter().any(|e| !e.is_zero()))
            .map(|i| reduced.row(i).to_vec())
            .collect();
        let basis = Matrix::from_rows(nonzero, m.cols(), m.field())
            .expect("rows from a well-formed matrix");
        let is_rational = basis.is_rational();
        Subspace {
            ambient_dim: m.cols(),
            basis,
            is_rational,
        }
    }

    /// Span of a single standard basis vector.
    pub fn coordinate_line(
        index: usize,
        ambient_dim: usize,
        field: &Arc<NumberFieldDescriptor>,
    ) -> Self {
        let mut v = vec![FieldElement::zero(field); ambient_dim];
        v[index] = FieldElement::one(field);
        Subspace::from_spanning(vec![v], ambient_dim, field).expect("well-formed line")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn is_rational(&self) -> bool {
        self.is_rational
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<FieldElement>> {
        self.basis.row_vectors()
    }

    pub fn field(&self) -> &Arc<NumberFieldDescriptor> {
        self.basis.field()
    }

    pub fn pivots(&self) -> Vec<usize> {
        pivot_columns(&self.basis)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Canonical representative of `v` modulo this subspace: subtracts the
    /// pivot components against the RREF basis. The result is zero exactly
    /// when `v` lies in the subspace.
    pub fn reduce(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.ambient_dim {
            return Err(Error::AmbientMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        let mut out = v.to_vec();
        for (row_idx, pivot) in self.pivots().into_iter().enumerate() {
            let c = out[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ambient_dim {
                let delta = self.basis.get(row_idx, j).mul(&c).expect("uniform field");
                out[j] = out[j].sub(&delta).expect("uniform field");
            }
        }
        Ok(out)
    }

    pub fn contains_vector(&self, v: &[FieldElement]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(FieldElement::is_zero))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for v in other.basis_vectors() {
            if !self.contains_vector(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sum of subspaces: RREF of the stacked bases.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vectors = self.basis_vectors();
        vectors.extend(other.basis_vectors());
        Subspace::from_spanning(vectors, self.ambient_dim, self.field())
    }

    /// Intersection via the Zassenhaus block construction: RREF of
    /// [A | A; B | 0]; rows whose left block vanishes carry the
    /// intersection in their right block.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        let field = self.field();
        let mut rows = Vec::new();
        for v in self.basis_vectors() {
            let mut row = v.clone();
            row.extend(v);
            rows.push(row);
        }
        for v in other.basis_vectors() {
            let mut row = v;
            row.extend(vec![FieldElement::zero(field); n]);
            rows.push(row);
        }
        let block = Matrix::from_rows(rows, 2 * n, field)?;
        let reduced = rref(&block);
        let mut intersection_rows = Vec::new();
        for i in 0..reduced.rows() {
            let left_zero = (0..n).all(|j| reduced.get(i, j).is_zero());
            let right_nonzero = (n..2 * n).any(|j| !reduced.get(i, j).is_zero());
            if left_zero && right_nonzero {
                intersection_rows.push(reduced.row(i)[n..].to_vec());
            }
        }
        Subspace::from_spanning(intersection_rows, n, field)
    }

    /// Smallest rational subspace containing this one: split every basis
    /// vector into its alpha-power components and span those over Q.
    pub fn rationalize(&self) -> Subspace {
        if self.is_rational {
            return self.clone();
        }
        let field = self.field();
        let d = field.degree();
        let mut rational_vectors = Vec::new();
        for v in self.basis_vectors() {
            for k in 0..d {
                let component: Vec<FieldElement> = v
                    .iter()
                    .map(|e| FieldElement::from_rational(e.rational_components()[k].clone(), field))
                    .collect();
                if component.iter().any(|e| !e.is_zero()) {
                    rational_vectors.push(component);
                }
            }
        }
        let out = Subspace::from_spanning(rational_vectors, self.ambient_dim, field)
            .expect("components have ambient length");
        debug_assert!(out.is_rational);
        out
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}, rational: {}) {:?}",
            self.dim(),
            self.ambient_dim,
            self.is_rational,
            self.basis
        )
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Subspace", 3)?;
        s.serialize_field("ambient_dim", &self.ambient_dim)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("basis", &self.basis)?;
        s.end()
    }
}

/// Image of a subspace under a linear map: span of {m*v}.
pub fn apply(m: &Matrix, w: &Subspace) -> Result<Subspace> {
    if m.cols() != w.ambient_dim() {
        return Err(Error::AmbientMismatch {
            expected: w.ambient_dim(),
            got: m.cols(),
        });
    }
    let images = w
        .basis_vectors()
        .into_iter()
        .map(|v| m.mul_vec(&v))
        .collect::<Result<Vec<_>>>()?;
    Subspace::from_spanning(images, m.rows(), m.field())
}

/// Inverse of a square matrix via RREF of the augmented block [m | Id];
/// None when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let field = m.field();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = m.row(i).to_vec();
        for j in 0..n {
            row.push(if i == j {
                FieldElement::one(field)
            } else {
                FieldElement::zero(field)
            });
        }
        rows.push(row);
    }
    let augmented = Matrix::from_rows(rows, 2 * n, field).expect("uniform field");
    let reduced = rref(&augmented);
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j {
                FieldElement::one(field)
            } else {
                FieldElement::zero(field)
            };
            if reduced.get(i, j) != &expected {
                return None;
            }
        }
    }
    let inv_rows: Vec<Vec<FieldElement>> = (0..n).map(|i| reduced.row(i)[n..].to_vec()).collect();
    Some(Matrix::from_rows(inv_rows, n, field).expect("uniform field"))
}

/// Kernel of a matrix: {v : m v = 0}, dimension cols - rank.
pub fn kernel(m: &Matrix) -> Subspace {
    let reduced = rref(m);
    let pivots = pivot_columns(&reduced);
    let field = m.field();
    let n = m.cols();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![FieldElement::zero(field); n];
        v[free] = FieldElement::one(field);
        for (row_idx, &p) in pivots.iter().enumerate() {
            v[p] = reduced.get(row_idx, free).neg();
        }
        basis.push(v);
    }
    Subspace::from_spanning(basis, n, field).expect("kernel vectors have ambient length")
}
