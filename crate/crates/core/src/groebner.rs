//! Two-sided Gröbner bases in the free algebra for homogeneous ideals.
//!
//! Completion runs degree by degree. All S-polynomials whose overlap word
//! has degree `d` are formed from the basis of degree `< d`, reduced, and the
//! survivors join the basis, so after step `d` the basis is exact through
//! degree `d`. Overlaps beyond the requested bound are never dropped
//! silently; they demote the certificate.

use serde::Serialize;
use thiserror::Error;

use crate::poly::Polynomial;
use crate::presentation::Presentation;
use crate::scalar::{Field, Scalar};
use crate::word::{overlaps, Overlap, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("truncation degree {requested} is below the relation degree {needed}")]
    TruncationTooSmall { requested: usize, needed: usize },
    #[error("overlap of length {0} is not valid for these leading terms")]
    InvalidOverlap(usize),
    #[error("S-polynomials need nonzero monic inputs")]
    NotMonic,
}

/// One rewriting step `p ← p − c · l · g · r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub coeff: Scalar,
    pub left: Word,
    pub element: usize,
    pub right: Word,
}

/// Position of the leftmost occurrence of any leading word inside `w`,
/// together with the index of the element whose leading word occurs there.
fn find_divisor(w: &Word, leads: &[&Word]) -> Option<(usize, usize)> {
    for start in 0..w.len() {
        for (i, lead) in leads.iter().enumerate() {
            if w.occurs_at(lead, start) {
                return Some((start, i));
            }
        }
    }
    None
}

/// Reduces `p` modulo the monic polynomials `basis` and records the steps.
///
/// The order-maximal reducible term is rewritten first, using the leftmost
/// occurrence of a leading word in it.
pub fn normal_form_traced(p: &Polynomial, basis: &[Polynomial]) -> (Polynomial, Vec<RewriteStep>) {
    let leads: Vec<&Word> = basis.iter().map(|g| g.leading_word().expect("basis elements are nonzero")).collect();
    let mut rest = p.clone();
    let mut out = Polynomial::zero();
    let mut trace = Vec::new();
    while let Some((w, c)) = rest.pop_leading() {
        match find_divisor(&w, &leads) {
            Some((start, i)) => {
                let g = &basis[i];
                let left = w.prefix(start);
                let right = w.suffix_from(start + leads[i].len());
                // the leading term cancels exactly because g is monic
                for (gw, gc) in g.terms().skip(1) {
                    rest.add_term(gw.sandwich(&left, &right), -(&c * gc));
                }
                trace.push(RewriteStep { coeff: c, left, element: i, right });
            }
            None => out.add_term(w, c),
        }
    }
    (out, trace)
}

pub fn normal_form(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    normal_form_traced(p, basis).0
}

/// `g · w[k..] − u[..|u|−k] · h` for the overlap of length `k` of
/// `u = lead(g)` with `w = lead(h)`.
pub fn s_polynomial(g: &Polynomial, h: &Polynomial, overlap: Overlap) -> Result<Polynomial, GroebnerError> {
    let (u, gc) = g.leading().ok_or(GroebnerError::NotMonic)?;
    let (w, hc) = h.leading().ok_or(GroebnerError::NotMonic)?;
    if !gc.is_one() || !hc.is_one() {
        return Err(GroebnerError::NotMonic);
    }
    if !overlap.is_valid(u, w) {
        return Err(GroebnerError::InvalidOverlap(overlap.length));
    }
    let one = gc.clone();
    let right = w.suffix_from(overlap.length);
    let left = u.prefix(u.len() - overlap.length);
    let mut s = Polynomial::zero();
    s.add_scaled_product(&one, &Word::empty(), g, &right);
    s.add_scaled_product(&-&one, &left, h, &Word::empty());
    Ok(s)
}

/// Makes every element monic, removes zeros and reduces each element by the
/// others until nothing changes. The result is sorted by leading word.
pub fn interreduce(elements: &[Polynomial]) -> Vec<Polynomial> {
    let mut gs: Vec<Polynomial> = elements.iter().filter(|g| !g.is_zero()).map(Polynomial::monic).collect();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < gs.len() {
            let others: Vec<Polynomial> = gs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            let r = normal_form(&gs[i], &others);
            if r.is_zero() {
                gs.remove(i);
                changed = true;
                continue;
            }
            let r = r.monic();
            if r != gs[i] {
                gs[i] = r;
                changed = true;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    gs.sort_by(|a, b| a.leading_word().cmp(&b.leading_word()));
    gs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Every S-polynomial of every pair reduces to zero; the basis is exact in all degrees.
    CertifiedComplete,
    /// Exact through the given degree; some overlap lies beyond it.
    CompleteUpToDegree(usize),
}

impl Certificate {
    pub fn label(self) -> &'static str {
        match self {
            Certificate::CertifiedComplete => "certified-complete",
            Certificate::CompleteUpToDegree(_) => "complete-up-to-degree",
        }
    }
}

/// A reduced, monic, degreewise truncated Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    truncation_degree: usize,
    certificate: Certificate,
    field: Field,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn truncation_degree(&self) -> usize {
        self.truncation_degree
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn is_certified(&self) -> bool {
        self.certificate == Certificate::CertifiedComplete
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Highest degree through which normal forms are exact (`None` = all).
    pub fn valid_degree(&self) -> Option<usize> {
        match self.certificate {
            Certificate::CertifiedComplete => None,
            Certificate::CompleteUpToDegree(d) => Some(d),
        }
    }

    pub fn is_valid_through(&self, degree: usize) -> bool {
        self.valid_degree().is_none_or(|d| degree <= d)
    }

    /// Leading words, i.e. the obstructions, in deglex order.
    pub fn obstructions(&self) -> Vec<Word> {
        self.elements.iter().filter_map(|g| g.leading_word().cloned()).collect()
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        normal_form(p, &self.elements)
    }
}

fn pending_overlaps(basis: &[Polynomial]) -> Vec<(Word, usize, usize, Overlap)> {
    let mut out = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        for (j, h) in basis.iter().enumerate() {
            let (u, w) = (g.leading_word().unwrap(), h.leading_word().unwrap());
            for o in overlaps(u, w) {
                out.push((o.word(u, w), i, j, o));
            }
        }
    }
    out
}

/// Truncated Buchberger completion of the relations of `p` through degree
/// `max_deg`.
pub fn complete(p: &Presentation, max_deg: usize) -> Result<GroebnerBasis, GroebnerError> {
    let needed = p.max_relation_degree();
    if max_deg < needed {
        return Err(GroebnerError::TruncationTooSmall { requested: max_deg, needed });
    }
    let mut basis: Vec<Polynomial> = Vec::new();
    for d in 1..=max_deg {
        let mut candidates: Vec<Polynomial> = p.relations().iter().filter(|r| r.degree() == Some(d)).cloned().collect();
        let mut pairs: Vec<_> = pending_overlaps(&basis).into_iter().filter(|(w, ..)| w.degree() == d).collect();
        pairs.sort_by(|a, b| (&a.0, a.1, a.2, a.3).cmp(&(&b.0, b.1, b.2, b.3)));
        for (_, i, j, o) in pairs {
            candidates.push(s_polynomial(&basis[i], &basis[j], o)?);
        }
        let mut grew = false;
        for c in candidates {
            let r = normal_form(&c, &basis);
            if !r.is_zero() {
                basis.push(r.monic());
                grew = true;
            }
        }
        if grew {
            basis = interreduce(&basis);
        }
    }
    let basis = interreduce(&basis);
    let beyond = pending_overlaps(&basis).iter().any(|(w, ..)| w.degree() > max_deg);
    let certificate = if beyond { Certificate::CompleteUpToDegree(max_deg) } else { Certificate::CertifiedComplete };
    Ok(GroebnerBasis { elements: basis, truncation_degree: max_deg, certificate, field: p.field() })
}
