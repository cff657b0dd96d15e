//! Invariant-subspace closures: the minimal rational L-invariant subspace
//! W_{Q,L} and its quaternionic counterpart W_{Q,H}, plus the dimension
//! counts for parallel 1-forms and closed holomorphic differentials.
//!
//! The closures iterate W -> rationalize(W + images) until the dimension
//! stops growing. Each non-terminal step strictly increases the dimension,
//! so at most ambient_dim iterations can occur; the cap is enforced and can
//! be overridden with HYPERNIL_MAX_ITER for debugging.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::Subspace;
use crate::structures::{
    check_integrable, check_quaternionic, ComplexStructure, HypercomplexTriple,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClosureMode {
    L,
    H,
    Plain,
}

/// Result of a saturation run: the input, its closure, and how many
/// dimension-increasing iterations were needed.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    pub input: Subspace,
    pub result: Subspace,
    pub iterations: usize,
    pub mode: ClosureMode,
}

/// Iteration cap: ambient dimension unless HYPERNIL_MAX_ITER is set.
pub fn iteration_cap(ambient_dim: usize) -> usize {
    cap_from(
        std::env::var("HYPERNIL_MAX_ITER").ok().as_deref(),
        ambient_dim,
    )
}

fn cap_from(var: Option<&str>, ambient_dim: usize) -> usize {
    var.and_then(|v| v.parse().ok()).unwrap_or(ambient_dim)
}

fn check_operator_ambient(w: &Subspace, l: &ComplexStructure) -> Result<()> {
    if l.dim() != w.ambient_dim() {
        return Err(Error::AmbientMismatch {
            expected: w.ambient_dim(),
            got: l.dim(),
        });
    }
    if l.field() != w.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// w + L(w). For an almost complex L this is already L-invariant, which is
/// re-asserted; no rationalization happens here.
pub fn invariant_closure(w: &Subspace, l: &ComplexStructure) -> Result<Subspace> {
    check_operator_ambient(w, l)?;
    let closed = w.sum(&l.apply_subspace(w)?)?;
    let image = l.apply_subspace(&closed)?;
    assert!(
        closed.contains(&image)?,
        "w + Lw must be L-invariant when L^2 = -Id"
    );
    Ok(closed)
}

fn saturate<F>(w: &Subspace, mode: ClosureMode, cap: usize, step_images: F) -> Result<ClosureReport>
where
    F: Fn(&Subspace) -> Result<Vec<Subspace>>,
{
    let mut current = w.rationalize();
    let mut iterations = 0;
    loop {
        let mut next = current.clone();
        for image in step_images(&current)? {
            next = next.sum(&image)?;
        }
        let next = next.rationalize();
        if next == current {
            break;
        }
        debug_assert!(next.dim() > current.dim());
        iterations += 1;
        if iterations > cap {
            return Err(Error::IterationCapExceeded(cap));
        }
        current = next;
    }
    Ok(ClosureReport {
        input: w.clone(),
        result: current,
        iterations,
        mode,
    })
}

/// The minimal rational L-invariant subspace containing w: the fixed point
/// of W -> rationalize(W + L W) started from rationalize(w).
///
/// Each iteration only adds vectors forced by rationality or invariance, so
/// the fixed point is contained in every rational L-invariant superspace.
pub fn rational_invariant_closure(w: &Subspace, l: &ComplexStructure) -> Result<ClosureReport> {
    rational_invariant_closure_capped(w, l, iteration_cap(w.ambient_dim()))
}

/// Same as [`rational_invariant_closure`] with an explicit iteration cap.
pub fn rational_invariant_closure_capped(
    w: &Subspace,
    l: &ComplexStructure,
    cap: usize,
) -> Result<ClosureReport> {
    check_operator_ambient(w, l)?;
    let report = saturate(w, ClosureMode::L, cap, |cur| {
        Ok(vec![l.apply_subspace(cur)?])
    })?;
    let out = &report.result;
    assert!(out.is_rational(), "closure must be rational");
    assert!(
        out.contains(&w.rationalize())?,
        "closure contains its input"
    );
    assert!(
        out.contains(&l.apply_subspace(out)?)?,
        "closure must be L-invariant"
    );
    Ok(report)
}

/// The minimal rational H-invariant subspace containing w: the fixed point
/// of W -> rationalize(W + I W + J W + K W). Invariance under I and J forces
/// K-invariance since K = IJ.
pub fn rational_invariant_closure_h(w: &Subspace, h: &HypercomplexTriple) -> Result<ClosureReport> {
    if !check_quaternionic(h) {
        return Err(Error::NotQuaternionic);
    }
    check_operator_ambient(w, h.i())?;
    let cap = iteration_cap(w.ambient_dim());
    let report = saturate(w, ClosureMode::H, cap, |cur| {
        h.structures()
            .into_iter()
            .map(|s| s.apply_subspace(cur))
            .collect()
    })?;
    let out = &report.result;
    assert!(out.is_rational(), "closure must be rational");
    assert!(
        out.contains(&w.rationalize())?,
        "closure contains its input"
    );
    for s in h.structures() {
        assert!(
            out.contains(&s.apply_subspace(out)?)?,
            "closure must be {}-invariant",
            s.label()
        );
    }
    Ok(report)
}

/// Dimension of the space of left-invariant 1-forms eta with eta, I eta,
/// J eta, K eta all closed: a left-invariant 1-form is closed exactly when
/// it annihilates `[g,g]`, so this is `n - dim([g,g] + I[g,g] + J[g,g] + K[g,g])`.
pub fn parallel_form_space_dim(g: &LieAlgebra, h: &HypercomplexTriple) -> Result<usize> {
    if !check_quaternionic(h) {
        return Err(Error::NotQuaternionic);
    }
    if h.dim() != g.dim() {
        return Err(Error::AmbientMismatch {
            expected: g.dim(),
            got: h.dim(),
        });
    }
    let commutator = g.commutator();
    let mut span = commutator.clone();
    for s in h.structures() {
        span = span.sum(&s.apply_subspace(&commutator)?)?;
    }
    Ok(g.dim() - span.dim())
}

/// Real codimension of `[g,g] + L[g,g]` and the complex dimension of the
/// space of closed holomorphic differentials (half of it).
pub fn closed_holomorphic_differential_dim(
    g: &LieAlgebra,
    l: &ComplexStructure,
) -> Result<(usize, usize)> {
    if !check_integrable(g, l)? {
        return Err(Error::NotIntegrable(l.label().to_string()));
    }
    let commutator = g.commutator();
    let span = commutator.sum(&l.apply_subspace(&commutator)?)?;
    let real_codim = g.dim() - span.dim();
    assert!(
        real_codim % 2 == 0,
        "the span is L-invariant, so codim is even"
    );
    Ok((real_codim, real_codim / 2))
}
