//! The Anick resolution `… → kC_n ⊗ A → kC_{n-1} ⊗ A → … → kC_0 ⊗ A → A → k`.
//!
//! An element of `kC_n ⊗ A` is a combination of terms `c ⊗ w` with `c` a
//! level-`n` chain and `w` a normal word. A term is stored as the product
//! word `cw` together with the length of `c`, so terms compare by product
//! word first. Level `-1` stands for `A` itself (every split is `0`).
//!
//! The differential is defined recursively: `d_0(x ⊗ 1) = x` and, for a chain
//! `c = c't` of level `n ≥ 1`, `d_n(c ⊗ 1) = c' ⊗ t - i(d_{n-1}(c' ⊗ 1) · t)`,
//! where the contracting map `i` peels off leading terms one at a time.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::anick::{enumerate_chains, Chain, ChainError, ChainSet, Obstructions};
use crate::automaton::{AutomatonError, NormalWordAutomaton};
use crate::groebner::{complete, GroebnerBasis, GroebnerError};
use crate::poly::Polynomial;
use crate::presentation::Presentation;
use crate::scalar::{Field, Scalar};
use crate::word::{Alphabet, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error("degree {degree} lies beyond the validity degree {valid} of the Gröbner basis")]
    BeyondTruncation { degree: usize, valid: usize },
    #[error("{word:?} is not a level-{level} chain")]
    NotAChain { level: usize, word: Word },
    #[error("no chain splitting for term {word:?} at level {level}")]
    SplittingFailure { level: isize, word: Word },
    #[error("level {level} exceeds the enumerated maximum {max}")]
    LevelOutOfRange { level: usize, max: usize },
}

/// A basis element `c ⊗ w` of a free module, stored as `(cw, |c|)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub product: Word,
    pub split: usize,
}

impl Term {
    pub fn new(chain: &Word, cofactor: &Word) -> Term {
        Term { product: chain.concat(cofactor), split: chain.len() }
    }

    pub fn chain(&self) -> Word {
        self.product.prefix(self.split)
    }

    pub fn cofactor(&self) -> Word {
        self.product.suffix_from(self.split)
    }

    pub fn degree(&self) -> usize {
        self.product.len()
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        format!("{}⊗{}", alphabet.format_word(&self.chain()), alphabet.format_word(&self.cofactor()))
    }
}

/// An element of `kC_level ⊗ A` (`level = -1` is `A`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    level: isize,
    terms: BTreeMap<Term, Scalar>,
}

impl ModuleElement {
    pub fn zero(level: isize) -> Self {
        ModuleElement { level, terms: BTreeMap::new() }
    }

    pub fn generator(level: isize, term: Term, coeff: Scalar) -> Self {
        let mut e = ModuleElement::zero(level);
        e.add_term(term, coeff);
        e
    }

    pub fn level(&self) -> isize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, t: &Term) -> Option<&Scalar> {
        self.terms.get(t)
    }

    pub fn leading(&self) -> Option<(&Term, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, t: Term, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&t);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &ModuleElement) {
        for (t, v) in &other.terms {
            self.add_term(t.clone(), c * v);
        }
    }

    /// Terms whose cofactor is empty, as `(chain, coefficient)`; this is the
    /// image in `k ⊗_A (kC ⊗ A) = kC`.
    pub fn reduced(&self) -> Vec<(Word, Scalar)> {
        self.terms.iter().filter(|(t, _)| t.split == t.product.len()).map(|(t, c)| (t.product.clone(), c.clone())).collect()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> ElementDisplay<'a> {
        ElementDisplay { element: self, alphabet }
    }
}

pub struct ElementDisplay<'a> {
    element: &'a ModuleElement,
    alphabet: &'a Alphabet,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.element.terms().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let body = if self.element.level < 0 { self.alphabet.format_word(&t.product) } else { t.display(self.alphabet) };
            if mag.is_one() {
                f.write_str(&body)?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

/// Matrix of `d_n : kC_n ⊗ A → kC_{n-1} ⊗ A` in one internal degree, with
/// sparse columns indexed by `source`.
#[derive(Clone, Debug)]
pub struct ResolutionSlice {
    /// Source level `n`; the target has level `n - 1` (`A` when `n = 0`).
    pub level: usize,
    pub degree: usize,
    pub source: Vec<Term>,
    pub target: Vec<Term>,
    pub columns: Vec<Vec<(usize, Scalar)>>,
}

impl ResolutionSlice {
    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

/// Whether `lower ∘ upper = 0`, for consecutive slices in the same degree.
pub fn composes_to_zero(lower: &ResolutionSlice, upper: &ResolutionSlice) -> bool {
    assert_eq!(upper.level, lower.level + 1, "slices must be consecutive");
    assert_eq!(upper.target, lower.source, "slice bases must agree");
    upper.columns.iter().all(|col| {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in col {
            for (k, v) in &lower.columns[*i] {
                let entry = acc.entry(*k).or_insert_with(|| c.field().zero());
                *entry = &*entry + &(c * v);
            }
        }
        acc.values().all(Scalar::is_zero)
    })
}

/// Anick resolution of a presentation, built lazily up to a level and an
/// internal degree.
#[derive(Clone, Debug)]
pub struct Resolution {
    alphabet: Alphabet,
    field: Field,
    basis: GroebnerBasis,
    obstructions: Obstructions,
    chains: ChainSet,
    normal_words: Vec<Vec<Word>>,
    differentials: HashMap<(usize, Word), ModuleElement>,
    normal_forms: HashMap<Word, Polynomial>,
}

impl Resolution {
    /// Completes the relations through `deg_max` and enumerates chains of
    /// level `≤ level_max` and degree `≤ deg_max`.
    pub fn new(p: &Presentation, level_max: usize, deg_max: usize) -> Result<Self, ResolutionError> {
        let basis = complete(p, deg_max.max(p.max_relation_degree()))?;
        Resolution::from_basis(p.alphabet().clone(), basis, level_max, deg_max)
    }

    pub fn from_basis(alphabet: Alphabet, basis: GroebnerBasis, level_max: usize, deg_max: usize) -> Result<Self, ResolutionError> {
        if let Some(v) = basis.valid_degree() {
            if deg_max > v {
                return Err(ResolutionError::BeyondTruncation { degree: deg_max, valid: v });
            }
        }
        let obstructions = Obstructions::new(alphabet.size(), basis.obstructions())?;
        let chains = enumerate_chains(&obstructions, level_max, deg_max);
        let automaton = NormalWordAutomaton::new(alphabet.size(), obstructions.words(), Some(deg_max))?;
        let normal_words = (0..=deg_max).map(|d| automaton.words(d)).collect::<Result<Vec<_>, _>>()?;
        Ok(Resolution {
            alphabet,
            field: basis.field(),
            basis,
            obstructions,
            chains,
            normal_words,
            differentials: HashMap::new(),
            normal_forms: HashMap::new(),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn chains(&self) -> &ChainSet {
        &self.chains
    }

    pub fn obstructions(&self) -> &Obstructions {
        &self.obstructions
    }

    pub fn deg_max(&self) -> usize {
        self.chains.deg_max()
    }

    pub fn level_max(&self) -> usize {
        self.chains.level_max()
    }

    /// Normal words of one degree, deglex order.
    pub fn normal_words(&self, degree: usize) -> &[Word] {
        self.normal_words.get(degree).map_or(&[], Vec::as_slice)
    }

    fn normal_form(&mut self, w: &Word) -> Result<Polynomial, ResolutionError> {
        if let Some(v) = self.basis.valid_degree() {
            if w.len() > v {
                return Err(ResolutionError::BeyondTruncation { degree: w.len(), valid: v });
            }
        }
        if let Some(p) = self.normal_forms.get(w) {
            return Ok(p.clone());
        }
        let p = self.basis.reduce(&Polynomial::monomial(w.clone(), self.field.one()));
        self.normal_forms.insert(w.clone(), p.clone());
        Ok(p)
    }

    /// `e · w`, renormalising each cofactor.
    pub fn right_multiply(&mut self, e: &ModuleElement, w: &Word) -> Result<ModuleElement, ResolutionError> {
        if w.is_empty() {
            return Ok(e.clone());
        }
        let mut out = ModuleElement::zero(e.level);
        for (t, c) in &e.terms {
            let chain = t.chain();
            let nf = self.normal_form(&t.cofactor().concat(w))?;
            for (v, mu) in nf.terms() {
                out.add_term(Term::new(&chain, v), c * mu);
            }
        }
        Ok(out)
    }

    /// `d_n(c ⊗ 1)` for a level-`n` chain `c`.
    pub fn differential(&mut self, level: usize, chain: &Word) -> Result<ModuleElement, ResolutionError> {
        if let Some(d) = self.differentials.get(&(level, chain.clone())) {
            return Ok(d.clone());
        }
        let c = self.chain_at(level, chain)?;
        let one = self.field.one();
        let d = if level == 0 {
            ModuleElement::generator(-1, Term { product: chain.clone(), split: 0 }, one)
        } else {
            let (prefix, tail) = c.split()?;
            let lower = self.differential(level - 1, prefix.word())?;
            let pushed = self.right_multiply(&lower, &tail)?;
            let lifted = self.lift(&pushed)?;
            let mut d = ModuleElement::generator(level as isize - 1, Term::new(prefix.word(), &tail), one);
            d.add_scaled(&-self.field.one(), &lifted);
            d
        };
        self.differentials.insert((level, chain.clone()), d.clone());
        Ok(d)
    }

    fn chain_at(&self, level: usize, w: &Word) -> Result<Chain, ResolutionError> {
        if let Some(c) = self.chains.get(level, w) {
            return Ok(c.clone());
        }
        match self.obstructions.as_chain(w) {
            Some(c) if c.level() == level => Ok(c),
            _ => Err(ResolutionError::NotAChain { level, word: w.clone() }),
        }
    }

    /// Applies the differential to an element of `kC_n ⊗ A`, `n ≥ 0`.
    pub fn apply(&mut self, e: &ModuleElement) -> Result<ModuleElement, ResolutionError> {
        let level = usize::try_from(e.level).map_err(|_| ResolutionError::SplittingFailure { level: e.level, word: Word::empty() })?;
        let mut out = ModuleElement::zero(e.level - 1);
        for (t, c) in &e.terms {
            let d = self.differential(level, &t.chain())?;
            let dw = self.right_multiply(&d, &t.cofactor())?;
            out.add_scaled(c, &dw);
        }
        Ok(out)
    }

    /// The contracting map: given a cycle `u` of level `m`, returns `v` of
    /// level `m + 1` with `d(v) = u`.
    pub fn lift(&mut self, u: &ModuleElement) -> Result<ModuleElement, ResolutionError> {
        let m = u.level;
        let k = (m + 1) as usize;
        let mut rest = u.clone();
        let mut out = ModuleElement::zero(m + 1);
        while let Some((term, c)) = rest.leading() {
            let (term, c) = (term.clone(), c.clone());
            let fail = || ResolutionError::SplittingFailure { level: m, word: term.product.clone() };
            let ends = self.obstructions.chain_prefix_ends(&term.product);
            if ends.len() <= k || (m >= 0 && ends[m as usize] != term.split) {
                return Err(fail());
            }
            let chain = term.product.prefix(ends[k]);
            let w = term.product.suffix_from(ends[k]);
            out.add_term(Term::new(&chain, &w), c.clone());
            let d = self.differential(k, &chain)?;
            let dw = self.right_multiply(&d, &w)?;
            match dw.leading() {
                Some((lt, lc)) if *lt == term && lc.is_one() => {}
                _ => return Err(fail()),
            }
            rest.add_scaled(&-c, &dw);
        }
        Ok(out)
    }

    /// Basis of `kC_level ⊗ A` in one degree (`level = -1` gives `A`).
    pub fn module_basis(&self, level: isize, degree: usize) -> Vec<Term> {
        let mut out = Vec::new();
        if level < 0 {
            for w in self.normal_words(degree) {
                out.push(Term { product: w.clone(), split: 0 });
            }
        } else {
            for c in self.chains.level(level as usize) {
                if c.degree() <= degree {
                    for w in self.normal_words(degree - c.degree()) {
                        out.push(Term::new(c.word(), w));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// The matrix of `d_level` in one degree.
    pub fn slice(&mut self, level: usize, degree: usize) -> Result<ResolutionSlice, ResolutionError> {
        if level > self.level_max() {
            return Err(ResolutionError::LevelOutOfRange { level, max: self.level_max() });
        }
        if degree > self.deg_max() {
            return Err(ResolutionError::BeyondTruncation { degree, valid: self.deg_max() });
        }
        let source = self.module_basis(level as isize, degree);
        let target = self.module_basis(level as isize - 1, degree);
        let index: HashMap<&Term, usize> = target.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut columns = Vec::with_capacity(source.len());
        for t in &source {
            let d = self.differential(level, &t.chain())?;
            let dw = self.right_multiply(&d, &t.cofactor())?;
            let mut col = Vec::with_capacity(dw.len());
            for (s, c) in &dw.terms {
                let i = *index
                    .get(s)
                    .ok_or_else(|| ResolutionError::SplittingFailure { level: level as isize - 1, word: s.product.clone() })?;
                col.push((i, c.clone()));
            }
            columns.push(col);
        }
        Ok(ResolutionSlice { level, degree, source, target, columns })
    }
}
