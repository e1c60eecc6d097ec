//! Hilbert series and the global-dimension report.
//!
//! For a Koszul algebra the global dimension equals the top degree of its
//! quadratic dual. Koszulness is only ever checked through a degree bound,
//! so a concluded global dimension is always conditional on Koszulness in
//! higher degrees.

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{AutomatonError, Finiteness, FinitenessKind, NormalWordAutomaton};
use crate::dual::quadratic_dual;
use crate::groebner::{complete, Certificate, GroebnerBasis, GroebnerError};
use crate::homology::{betti_table, koszul_verdict, HomologyError, KoszulVerdict};
use crate::presentation::Presentation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    /// `dim A_j` for `j = 0..=max_deg`.
    pub hilbert: Vec<u64>,
    pub certificate: Certificate,
    pub finiteness: Finiteness,
}

/// Hilbert prefix and finite-dimensionality from the normal-word automaton of
/// a basis completed through `max_deg`.
pub fn hilbert_report(p: &Presentation, max_deg: usize) -> Result<HilbertReport, AnalysisError> {
    let gb = complete(p, max_deg.max(p.max_relation_degree()))?;
    hilbert_from_basis(p, &gb, max_deg)
}

pub fn hilbert_from_basis(p: &Presentation, gb: &GroebnerBasis, max_deg: usize) -> Result<HilbertReport, AnalysisError> {
    let aut = NormalWordAutomaton::new(p.generator_count(), &gb.obstructions(), gb.valid_degree())?;
    Ok(HilbertReport {
        hilbert: aut.hilbert_coefficients(max_deg)?.coefficients,
        certificate: gb.certificate(),
        finiteness: aut.finiteness(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GldimConclusion {
    /// Koszul through the bound and the dual is finite with a certified basis.
    Finite,
    /// Koszul through the bound and the dual is infinite-dimensional.
    Infinite,
    /// Not Koszul through the bound, or the dual basis is not certified.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GldimReport {
    pub degree_bound: usize,
    pub koszul: KoszulVerdict,
    pub dual_hilbert: Vec<u64>,
    pub dual_certificate: Certificate,
    pub dual_top_degree: Option<usize>,
    pub conclusion: GldimConclusion,
    /// Valid only if the algebra is Koszul beyond `degree_bound` as well.
    pub conditional: bool,
    pub gldim: Option<usize>,
    #[serde(rename = "dim_A1")]
    pub dim_a1: usize,
    /// `dim A_1 < gldim`.
    pub conjecture_counterexample: bool,
}

/// Koszulness through `d`, the dual's top degree, the concluded global
/// dimension and its comparison with the number of generators.
pub fn gldim_report(p: &Presentation, d: usize) -> Result<GldimReport, AnalysisError> {
    let bound = d.max(2);
    let b = betti_table(p, bound, bound)?;
    let koszul = koszul_verdict(p, &b, bound)?;
    let dual = quadratic_dual(p)?;
    let dual_gb = complete(&dual, bound)?;
    let dual_hilbert = hilbert_from_basis(&dual, &dual_gb, bound)?;
    let dual_top_degree = dual_hilbert.finiteness.top_degree();
    let certified = dual_gb.is_certified();
    let conclusion = match (koszul.is_koszul(), certified, dual_hilbert.finiteness.kind) {
        (true, true, FinitenessKind::Finite { .. }) => GldimConclusion::Finite,
        (true, true, FinitenessKind::Infinite) => GldimConclusion::Infinite,
        _ => GldimConclusion::Undetermined,
    };
    let gldim = if conclusion == GldimConclusion::Finite { dual_top_degree } else { None };
    let dim_a1 = p.generator_count();
    Ok(GldimReport {
        degree_bound: bound,
        koszul,
        dual_hilbert: dual_hilbert.hilbert,
        dual_certificate: dual_gb.certificate(),
        dual_top_degree: if certified { dual_top_degree } else { None },
        conclusion,
        conditional: true,
        gldim,
        dim_a1,
        conjecture_counterexample: gldim.is_some_and(|g| dim_a1 < g),
    })
}
