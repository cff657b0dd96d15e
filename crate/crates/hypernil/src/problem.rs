//! The JSON problem-file format: a Lie algebra with optional working field
//! and optional complex/hypercomplex structures, parsed, validated and
//! re-serialized canonically.
//!
//! Parsing is shape-level (indices, matrix sizes, rational syntax). The
//! axioms — Jacobi, nilpotency, op^2 = -Id, integrability, quaternionic
//! relations — are evaluated afterwards so a validation report can list
//! every failure with a witness instead of stopping at the first.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberFieldDescriptor, Rational};
use crate::lie::{BracketMap, LieAlgebra};
use crate::linalg::Matrix;
use crate::structures::{
    abelian_witness, check_abelian_hypercomplex, check_almost_complex, check_quaternionic,
    nijenhuis_witness, ComplexStructure, HypercomplexTriple,
};

// --------------------------------------------------------------------------
// Raw serde mirror of the on-disk format.
// --------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawProblem {
    name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    notes: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<RawField>,
    algebra: RawAlgebra,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complex_structure: Option<RawStructure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hypercomplex: Option<RawTriple>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawField {
    minpoly: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawAlgebra {
    dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    names: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    brackets: Vec<RawBracket>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawBracket {
    i: usize,
    j: usize,
    coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawStructure {
    label: String,
    matrix: Vec<Vec<RawEntry>>,
}

/// A matrix entry: a bare rational string over Q, or the coefficient vector
/// of a field element over an extension.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Scalar(String),
    Coeffs(Vec<String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawTriple {
    #[serde(rename = "I")]
    i: RawStructure,
    #[serde(rename = "J")]
    j: RawStructure,
    #[serde(rename = "K")]
    k: RawStructure,
}

// --------------------------------------------------------------------------
// Validated problem.
// --------------------------------------------------------------------------

/// A fully validated problem: the algebra passes Jacobi and nilpotency, all
/// structures are almost complex, and a hypercomplex triple additionally
/// satisfies the quaternionic relations with all three structures
/// integrable.
pub struct ProblemFile {
    pub name: String,
    pub notes: String,
    pub field: Arc<NumberFieldDescriptor>,
    pub algebra: LieAlgebra,
    pub complex: Option<ComplexStructure>,
    pub hypercomplex: Option<HypercomplexTriple>,
}

impl std::fmt::Debug for ProblemFile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ProblemFile({}, dim {}, complex: {}, hypercomplex: {})",
            self.name,
            self.algebra.dim(),
            self.complex.is_some(),
            self.hypercomplex.is_some()
        )
    }
}

/// Shape-checked but not yet axiom-checked problem data.
pub struct UncheckedProblem {
    pub name: String,
    pub notes: String,
    pub field: Arc<NumberFieldDescriptor>,
    pub dim: usize,
    pub names: Vec<String>,
    pub brackets: BracketMap,
    pub complex: Option<ComplexStructure>,
    pub hypercomplex: Option<HypercomplexTriple>,
}

/// One line of a validation report.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    /// First failing basis pair/triple, when there is one.
    pub witness: Option<String>,
    /// Informational checks (abelianness) do not gate validity.
    pub gating: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
    pub ok: bool,
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.parse()
}

fn parse_entry(entry: &RawEntry, field: &Arc<NumberFieldDescriptor>) -> Result<FieldElement> {
    match entry {
        RawEntry::Scalar(s) => Ok(FieldElement::from_rational(parse_rational(s)?, field)),
        RawEntry::Coeffs(coeffs) => {
            let parsed = coeffs
                .iter()
                .map(|c| parse_rational(c))
                .collect::<Result<Vec<_>>>()?;
            FieldElement::from_coeffs(parsed, field)
        }
    }
}

fn parse_structure(
    raw: &RawStructure,
    dim: usize,
    field: &Arc<NumberFieldDescriptor>,
) -> Result<ComplexStructure> {
    if raw.matrix.len() != dim {
        return Err(Error::Parse(format!(
            "structure '{}' has {} rows for a dimension-{} algebra",
            raw.label,
            raw.matrix.len(),
            dim
        )));
    }
    let mut rows = Vec::with_capacity(dim);
    for row in &raw.matrix {
        if row.len() != dim {
            return Err(Error::Parse(format!(
                "structure '{}' has a row of length {}, expected {}",
                raw.label,
                row.len(),
                dim
            )));
        }
        rows.push(
            row.iter()
                .map(|e| parse_entry(e, field))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    ComplexStructure::new(raw.label.clone(), Matrix::from_rows(rows, dim, field)?)
}

impl UncheckedProblem {
    /// Parses JSON into shape-checked data. Rational syntax errors, bad
    /// indices and matrix shape problems are reported here.
    pub fn from_json_str(json: &str) -> Result<Self> {
        let raw: RawProblem =
            serde_json::from_str(json).map_err(|e| Error::Parse(format!("{e}")))?;
        let field = match &raw.field {
            None => NumberFieldDescriptor::rationals(),
            Some(f) => {
                let coeffs = f
                    .minpoly
                    .iter()
                    .map(|c| parse_rational(c))
                    .collect::<Result<Vec<_>>>()?;
                NumberFieldDescriptor::new(coeffs)?
            }
        };
        let dim = raw.algebra.dim;
        let mut brackets = BracketMap::new();
        for b in &raw.algebra.brackets {
            if b.i >= b.j || b.j >= dim {
                return Err(Error::Parse(format!(
                    "bracket ({}, {}) needs i < j < dim = {}",
                    b.i, b.j, dim
                )));
            }
            if brackets.contains_key(&(b.i, b.j)) {
                return Err(Error::Parse(format!(
                    "duplicate bracket entry ({}, {})",
                    b.i, b.j
                )));
            }
            let mut coeffs = Vec::new();
            for (k, c) in &b.coeffs {
                let index: usize = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient index '{k}'")))?;
                if index >= dim {
                    return Err(Error::Parse(format!(
                        "coefficient index {index} out of range for dim {dim}"
                    )));
                }
                let value = parse_rational(c)?;
                if !value.is_zero() {
                    coeffs.push((index, value));
                }
            }
            if !coeffs.is_empty() {
                brackets.insert((b.i, b.j), coeffs);
            }
        }
        let complex = raw
            .complex_structure
            .as_ref()
            .map(|s| parse_structure(s, dim, &field))
            .transpose()?;
        let hypercomplex = match &raw.hypercomplex {
            None => None,
            Some(t) => {
                let i = parse_structure(&t.i, dim, &field)?;
                let j = parse_structure(&t.j, dim, &field)?;
                let k = parse_structure(&t.k, dim, &field)?;
                Some(HypercomplexTriple::new(i, j, k)?)
            }
        };
        Ok(UncheckedProblem {
            name: raw.name,
            notes: raw.notes,
            field,
            dim,
            names: raw.algebra.names,
            brackets,
            complex,
            hypercomplex,
        })
    }

    /// Evaluates every axiom, producing one report line per check. The
    /// abelianness lines are informational: non-abelian structures are
    /// legitimate inputs for most commands.
    pub fn validation_report(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let algebra = LieAlgebra::new(
            self.dim,
            self.names.clone(),
            self.brackets.clone(),
            self.field.clone(),
        );
        let (jacobi, nilpotent) = match &algebra {
            Ok(_) => (AxiomCheck::pass("jacobi"), AxiomCheck::pass("nilpotent")),
            Err(Error::JacobiFailed { i, j, l }) => (
                AxiomCheck::fail("jacobi", format!("basis triple ({i}, {j}, {l})")),
                AxiomCheck::skip("nilpotent"),
            ),
            Err(Error::NotNilpotent(detail)) => (
                AxiomCheck::pass("jacobi"),
                AxiomCheck::fail("nilpotent", detail.clone()),
            ),
            Err(e) => (
                AxiomCheck::fail("jacobi", format!("algebra rejected: {e}")),
                AxiomCheck::skip("nilpotent"),
            ),
        };
        checks.push(jacobi);
        checks.push(nilpotent);

        let algebra = algebra.ok();
        let mut structure_checks = |label: &str, s: &ComplexStructure, gating_abelian: bool| {
            let ac = check_almost_complex(s);
            checks.push(AxiomCheck {
                axiom: format!("almost_complex[{label}]"),
                passed: ac,
                witness: (!ac).then(|| "op^2 != -Id".to_string()),
                gating: true,
            });
            match (&algebra, ac) {
                (Some(g), true) => {
                    let integrable = nijenhuis_witness(g, s).expect("compatible by parse");
                    checks.push(AxiomCheck {
                        axiom: format!("integrable[{label}]"),
                        passed: integrable.is_none(),
                        witness: integrable
                            .map(|(i, j)| format!("Nijenhuis nonzero on basis pair ({i}, {j})")),
                        gating: true,
                    });
                    let abelian = abelian_witness(g, s).expect("compatible by parse");
                    checks.push(AxiomCheck {
                        axiom: format!("abelian[{label}]"),
                        passed: abelian.is_none(),
                        witness: abelian.map(|(i, j)| format!("fails on basis pair ({i}, {j})")),
                        gating: gating_abelian,
                    });
                }
                _ => {
                    checks.push(AxiomCheck::skip(&format!("integrable[{label}]")));
                    checks.push(AxiomCheck::skip(&format!("abelian[{label}]")));
                }
            }
        };

        if let Some(s) = &self.complex {
            structure_checks(s.label(), s, false);
        }
        if let Some(h) = &self.hypercomplex {
            for s in h.structures() {
                structure_checks(s.label(), s, false);
            }
            let quat = check_quaternionic(h);
            checks.push(AxiomCheck {
                axiom: "quaternionic".to_string(),
                passed: quat,
                witness: (!quat).then(|| "IJ != K or JI != -K".to_string()),
                gating: true,
            });
        }

        let ok = checks.iter().all(|c| c.passed || !c.gating);
        ValidationReport { checks, ok }
    }

    /// Promotes to a validated [`ProblemFile`], or reports the failures.
    pub fn validate(self) -> Result<ProblemFile> {
        let report = self.validation_report();
        if !report.ok {
            let failures: Vec<String> = report
                .checks
                .iter()
                .filter(|c| c.gating && !c.passed)
                .map(|c| match &c.witness {
                    Some(w) => format!("{}: {}", c.axiom, w),
                    None => c.axiom.clone(),
                })
                .collect();
            return Err(Error::Validation(failures.join("; ")));
        }
        let algebra = LieAlgebra::new(
            self.dim,
            self.names.clone(),
            self.brackets.clone(),
            self.field.clone(),
        )?;
        Ok(ProblemFile {
            name: self.name,
            notes: self.notes,
            field: self.field,
            algebra,
            complex: self.complex,
            hypercomplex: self.hypercomplex,
        })
    }
}

impl ProblemFile {
    pub fn from_json_str(json: &str) -> Result<Self> {
        UncheckedProblem::from_json_str(json)?.validate()
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    /// The named structure: a label selects among the single structure and
    /// the triple members; without a label the single structure wins, then
    /// the triple's I.
    pub fn complex_for(&self, label: Option<&str>) -> Result<&ComplexStructure> {
        match label {
            Some(l) => {
                if let Some(s) = self.complex.as_ref().filter(|s| s.label() == l) {
                    return Ok(s);
                }
                if let Some(h) = &self.hypercomplex {
                    if let Some(s) = h.by_label(l) {
                        return Ok(s);
                    }
                }
                Err(Error::MissingStructure(format!(
                    "no structure labelled '{l}'"
                )))
            }
            None => self
                .complex
                .as_ref()
                .or_else(|| self.hypercomplex.as_ref().map(|h| h.i()))
                .ok_or_else(|| Error::MissingStructure("file carries no complex structure".into())),
        }
    }

    pub fn triple(&self) -> Result<&HypercomplexTriple> {
        self.hypercomplex
            .as_ref()
            .ok_or_else(|| Error::MissingStructure("file carries no hypercomplex triple".into()))
    }

    /// Abelian in the appropriate sense: the triple when present, else the
    /// single complex structure.
    pub fn is_abelian(&self) -> Result<bool> {
        if let Some(h) = &self.hypercomplex {
            return check_abelian_hypercomplex(&self.algebra, h);
        }
        if let Some(s) = &self.complex {
            return crate::structures::check_abelian(&self.algebra, s);
        }
        Err(Error::MissingStructure(
            "file carries no structure to test for abelianness".into(),
        ))
    }

    fn structure_to_raw(&self, s: &ComplexStructure) -> RawStructure {
        let degree_one = self.field.is_rationals();
        let matrix = s
            .op()
            .row_vectors()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| {
                        if degree_one {
                            RawEntry::Scalar(e.rational_part().to_string())
                        } else {
                            RawEntry::Coeffs(
                                e.rational_components()
                                    .iter()
                                    .map(|c| c.to_string())
                                    .collect(),
                            )
                        }
                    })
                    .collect()
            })
            .collect();
        RawStructure {
            label: s.label().to_string(),
            matrix,
        }
    }

    /// Canonical JSON: stable field order, sorted bracket keys, rationals
    /// in lowest terms. Re-serializing a parsed canonical file is
    /// byte-identical.
    pub fn to_canonical_json(&self) -> String {
        let field = if self.field.is_rationals() {
            None
        } else {
            Some(RawField {
                minpoly: self.field.minpoly().iter().map(|c| c.to_string()).collect(),
            })
        };
        let brackets = self
            .algebra
            .brackets()
            .iter()
            .map(|(&(i, j), coeffs)| RawBracket {
                i,
                j,
                coeffs: coeffs
                    .iter()
                    .map(|(k, c)| (k.to_string(), c.to_string()))
                    .collect(),
            })
            .collect();
        let raw = RawProblem {
            name: self.name.clone(),
            notes: self.notes.clone(),
            field,
            algebra: RawAlgebra {
                dim: self.algebra.dim(),
                names: self.algebra.names().to_vec(),
                brackets,
            },
            complex_structure: self.complex.as_ref().map(|s| self.structure_to_raw(s)),
            hypercomplex: self.hypercomplex.as_ref().map(|h| RawTriple {
                i: self.structure_to_raw(h.i()),
                j: self.structure_to_raw(h.j()),
                k: self.structure_to_raw(h.k()),
            }),
        };
        let mut out = serde_json::to_string_pretty(&raw).expect("serializable");
        out.push('\n');
        out
    }
}

impl AxiomCheck {
    fn pass(axiom: &str) -> Self {
        AxiomCheck {
            axiom: axiom.to_string(),
            passed: true,
            witness: None,
            gating: true,
        }
    }

    fn fail(axiom: &str, witness: String) -> Self {
        AxiomCheck {
            axiom: axiom.to_string(),
            passed: false,
            witness: Some(witness),
            gating: true,
        }
    }

    fn skip(axiom: &str) -> Self {
        AxiomCheck {
            axiom: axiom.to_string(),
            passed: false,
            witness: Some("skipped: algebra invalid".to_string()),
            gating: false,
        }
    }
}
