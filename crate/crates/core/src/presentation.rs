//! Finitely presented graded algebras `k<X | R>`.

use std::fmt;

use thiserror::Error;

use crate::poly::Polynomial;
use crate::scalar::Field;
use crate::word::{Alphabet, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("relation {0} is not homogeneous")]
    NonHomogeneous(usize),
    #[error("relation {0} has degree 0")]
    ConstantRelation(usize),
    #[error("relation {0} has coefficients outside the field {1}")]
    FieldMismatch(usize, Field),
    #[error("precedence must list exactly the letters {0}")]
    PrecedenceMismatch(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    field: Field,
    relations: Vec<Polynomial>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, field: Field, relations: Vec<Polynomial>) -> Result<Self, PresentationError> {
        for (i, r) in relations.iter().enumerate() {
            if r.is_zero() {
                return Err(PresentationError::ZeroRelation(i));
            }
            if !r.is_homogeneous() {
                return Err(PresentationError::NonHomogeneous(i));
            }
            if r.degree() == Some(0) {
                return Err(PresentationError::ConstantRelation(i));
            }
            for (w, c) in r.terms() {
                alphabet.check(w)?;
                if c.field() != field {
                    return Err(PresentationError::FieldMismatch(i, field));
                }
            }
        }
        Ok(Presentation { alphabet, field, relations })
    }

    /// The free algebra on the given letters (largest first).
    pub fn free(names: &[&str], field: Field) -> Result<Self, PresentationError> {
        Presentation::new(Alphabet::from_descending(names.iter().copied())?, field, Vec::new())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.size()
    }

    pub fn max_relation_degree(&self) -> usize {
        self.relations.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn is_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.degree() == Some(2))
    }

    /// The same algebra with a different letter precedence, given largest
    /// first. The names must be a permutation of the current ones.
    pub fn with_precedence(&self, descending: &[&str]) -> Result<Self, PresentationError> {
        let alphabet = Alphabet::from_descending(descending.iter().copied())?;
        let mismatch = || PresentationError::PrecedenceMismatch(self.alphabet.order_label());
        if alphabet.size() != self.alphabet.size() {
            return Err(mismatch());
        }
        let map =
            self.alphabet.letters().map(|a| alphabet.lookup(self.alphabet.name(a)).ok_or_else(mismatch)).collect::<Result<Vec<_>, _>>()?;
        let relations = self
            .relations
            .iter()
            .map(|r| {
                Polynomial::from_terms(
                    r.terms()
                        .map(|(w, c)| (Word::from_letters(w.letters().iter().map(|&a| map[a as usize]).collect::<Vec<_>>()), c.clone())),
                )
            })
            .collect();
        Presentation::new(alphabet, self.field, relations)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars: {}", self.alphabet.order_label())?;
        writeln!(f, "field: {}", self.field)?;
        writeln!(f, "relations:")?;
        for r in &self.relations {
            writeln!(f, "  {}", r.display(&self.alphabet))?;
        }
        Ok(())
    }
}
