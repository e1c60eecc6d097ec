//! Quadratic dual `A^! = k<X* | R^⊥>`.
//!
//! The pairing between degree-2 words and dual words is
//! `<ab, a*b*> = 1` and zero otherwise, so `R^⊥` is the nullspace of the
//! coefficient matrix of the relations. Dual letters are named `x!` for `x`
//! and keep the same precedence.

use crate::homology::HomologyError;
use crate::linalg::{nullspace, rref};
use crate::poly::Polynomial;
use crate::presentation::Presentation;
use crate::word::{Alphabet, Letter, Word};

/// Degree-2 words, largest first.
fn quadratic_words(n: usize) -> Vec<Word> {
    let mut out: Vec<Word> = (0..n).flat_map(|a| (0..n).map(move |b| Word::from_letters(vec![a as Letter, b as Letter]))).collect();
    out.sort();
    out.reverse();
    out
}

pub fn dual_alphabet(alphabet: &Alphabet) -> Alphabet {
    Alphabet::from_descending(alphabet.descending_names().map(|n| format!("{n}!"))).expect("suffixing keeps names distinct")
}

/// The quadratic dual. Its relations are the reduced row echelon basis of
/// `R^⊥`, so they are monic with distinct leading words, largest first.
pub fn quadratic_dual(p: &Presentation) -> Result<Presentation, HomologyError> {
    if !p.is_quadratic() {
        return Err(HomologyError::NotQuadratic);
    }
    let field = p.field();
    let words = quadratic_words(p.generator_count());
    let rows: Vec<_> =
        p.relations().iter().map(|r| words.iter().map(|w| r.coeff(w).cloned().unwrap_or_else(|| field.zero())).collect()).collect();
    let mut perp = nullspace(&rows, words.len(), field);
    rref(&mut perp);
    let relations = perp.into_iter().map(|v| Polynomial::from_terms(words.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()))).collect();
    Ok(Presentation::new(dual_alphabet(p.alphabet()), field, relations).expect("annihilator relations are homogeneous"))
}
