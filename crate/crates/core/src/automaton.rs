//! Deterministic recognizer of words avoiding a set of obstructions, and the
//! Hilbert-function counts read off it.
//!
//! States are the proper prefixes of obstructions, as in an Aho–Corasick
//! matcher with the failure function folded into the transitions. A
//! transition is dead when the word read so far ends with an obstruction.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::word::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("obstructions are not an antichain: {0:?} is a factor of {1:?}")]
    NotAntichain(Word, Word),
    #[error("the empty word cannot be an obstruction")]
    EmptyObstruction,
    #[error("requested degree {requested} exceeds the validity degree {valid}")]
    BeyondValidity { requested: usize, valid: usize },
}

/// Checks that no obstruction is a factor of another.
pub fn check_antichain(obstructions: &[Word]) -> Result<(), AutomatonError> {
    for (i, u) in obstructions.iter().enumerate() {
        if u.is_empty() {
            return Err(AutomatonError::EmptyObstruction);
        }
        for (j, w) in obstructions.iter().enumerate() {
            if i != j && w.contains_factor(u) {
                return Err(AutomatonError::NotAntichain(u.clone(), w.clone()));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct NormalWordAutomaton {
    alphabet_size: usize,
    /// The prefix each state stands for; state 0 is the empty word.
    states: Vec<Word>,
    /// `transitions[s][a]`; `None` means reading `a` completes an obstruction.
    transitions: Vec<Vec<Option<usize>>>,
    /// Counting is exact through this degree; `None` means every degree.
    valid_degree: Option<usize>,
}

impl NormalWordAutomaton {
    /// Builds the recognizer. Pass `valid_degree = None` when the obstruction
    /// set is complete (it comes from a certified basis).
    pub fn new(alphabet_size: usize, obstructions: &[Word], valid_degree: Option<usize>) -> Result<Self, AutomatonError> {
        check_antichain(obstructions)?;
        let mut index: BTreeMap<Word, usize> = BTreeMap::new();
        let mut states = vec![Word::empty()];
        index.insert(Word::empty(), 0);
        for o in obstructions {
            for k in 1..o.len() {
                let p = o.prefix(k);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), states.len());
                    states.push(p);
                }
            }
        }
        // The state after reading some word is its longest suffix that is a
        // proper prefix of an obstruction, so only suffixes of `state · a`
        // need to be inspected.
        let mut transitions = vec![vec![None; alphabet_size]; states.len()];
        for (s, word) in states.iter().enumerate() {
            for a in 0..alphabet_size {
                let next = word.concat(&Word::letter(a as Letter));
                let completes = (0..next.len()).any(|k| {
                    let suffix = next.suffix_from(k);
                    obstructions.contains(&suffix)
                });
                if completes {
                    continue;
                }
                let target = (0..=next.len()).find_map(|k| index.get(&next.suffix_from(k)).copied());
                transitions[s][a] = target;
            }
        }
        Ok(NormalWordAutomaton { alphabet_size, states, transitions, valid_degree })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_word(&self, s: usize) -> &Word {
        &self.states[s]
    }

    pub fn step(&self, state: usize, a: Letter) -> Option<usize> {
        self.transitions[state][a as usize]
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let mut s = 0;
        for &a in w.letters() {
            match self.step(s, a) {
                Some(t) => s = t,
                None => return false,
            }
        }
        true
    }

    pub fn valid_degree(&self) -> Option<usize> {
        self.valid_degree
    }

    fn check_degree(&self, d: usize) -> Result<(), AutomatonError> {
        match self.valid_degree {
            Some(v) if d > v => Err(AutomatonError::BeyondValidity { requested: d, valid: v }),
            _ => Ok(()),
        }
    }

    /// `dim A_j` for `j = 0..=max_deg`, counted along the transitions.
    pub fn hilbert_coefficients(&self, max_deg: usize) -> Result<HilbertPrefix, AutomatonError> {
        self.check_degree(max_deg)?;
        let mut counts = vec![0u64; self.states.len()];
        counts[0] = 1;
        let mut coefficients = vec![1u64];
        for _ in 0..max_deg {
            let mut next = vec![0u64; self.states.len()];
            for (s, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for t in self.transitions[s].iter().flatten() {
                    next[*t] += c;
                }
            }
            coefficients.push(next.iter().sum());
            counts = next;
        }
        Ok(HilbertPrefix { coefficients })
    }

    /// All accepted words of exactly `degree`, in deglex order.
    pub fn words(&self, degree: usize) -> Result<Vec<Word>, AutomatonError> {
        self.check_degree(degree)?;
        let mut layer: Vec<(Vec<Letter>, usize)> = vec![(Vec::new(), 0)];
        for _ in 0..degree {
            let mut next = Vec::new();
            for (w, s) in &layer {
                for a in 0..self.alphabet_size {
                    if let Some(t) = self.transitions[*s][a] {
                        let mut v = w.clone();
                        v.push(a as Letter);
                        next.push((v, t));
                    }
                }
            }
            layer = next;
        }
        let mut out: Vec<Word> = layer.into_iter().map(|(w, _)| Word::from_letters(w)).collect();
        out.sort();
        Ok(out)
    }

    /// Whether only finitely many words are accepted.
    pub fn finiteness(&self) -> Finiteness {
        let conditional = self.valid_degree.is_some();
        // longest path from the start with cycle detection (0 = new, 1 = on stack, 2 = done)
        let n = self.states.len();
        let mut mark = vec![0u8; n];
        let mut longest = vec![0usize; n];
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        mark[0] = 1;
        while let Some(&mut (s, ref mut next_letter)) = stack.last_mut() {
            if *next_letter < self.alphabet_size {
                let a = *next_letter;
                *next_letter += 1;
                if let Some(t) = self.transitions[s][a] {
                    match mark[t] {
                        0 => {
                            mark[t] = 1;
                            stack.push((t, 0));
                        }
                        1 => return Finiteness { kind: FinitenessKind::Infinite, conditional },
                        _ => {}
                    }
                }
            } else {
                stack.pop();
                mark[s] = 2;
                longest[s] = self.transitions[s].iter().flatten().map(|&t| longest[t] + 1).max().unwrap_or(0);
            }
        }
        Finiteness { kind: FinitenessKind::Finite { top_degree: longest[0] }, conditional }
    }

    /// Edges `(from, letter, to)` of the live part.
    pub fn edges(&self) -> Vec<(usize, Letter, usize)> {
        let mut out = Vec::new();
        for (s, row) in self.transitions.iter().enumerate() {
            for (a, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    out.push((s, a as Letter, *t));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertPrefix {
    pub coefficients: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FinitenessKind {
    Finite { top_degree: usize },
    Infinite,
}

/// Finite-dimensionality verdict. `conditional` is set when the obstruction
/// set is only known through a finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Finiteness {
    pub kind: FinitenessKind,
    pub conditional: bool,
}

impl Finiteness {
    pub fn top_degree(&self) -> Option<usize> {
        match self.kind {
            FinitenessKind::Finite { top_degree } => Some(top_degree),
            FinitenessKind::Infinite => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // letters by rank: z = 0, y = 1, x = 2
    const Z: Letter = 0;
    const Y: Letter = 1;
    const X: Letter = 2;

    fn w(letters: &[Letter]) -> Word {
        Word::from_letters(letters.to_vec())
    }

    fn allowed_after(aut: &NormalWordAutomaton, prefix: &[Letter]) -> Vec<Letter> {
        let mut s = 0;
        for &a in prefix {
            s = aut.step(s, a).unwrap();
        }
        (0..3).filter(|&a| aut.step(s, a).is_some()).collect()
    }

    #[test]
    fn quadratic_obstructions_of_a() {
        let obs = [w(&[X, X]), w(&[X, Z]), w(&[Z, Y])];
        let aut = NormalWordAutomaton::new(3, &obs, Some(2)).unwrap();
        assert_eq!(aut.state_count(), 3);
        assert_eq!(allowed_after(&aut, &[X]), vec![Y]);
        assert_eq!(allowed_after(&aut, &[Y]), vec![Z, Y, X]);
        assert_eq!(allowed_after(&aut, &[Z]), vec![Z, X]);
        assert_eq!(aut.hilbert_coefficients(2).unwrap().coefficients, vec![1, 3, 6]);
        assert!(aut.hilbert_coefficients(3).is_err());
    }

    #[test]
    fn no_obstructions_accepts_everything() {
        let aut = NormalWordAutomaton::new(2, &[], None).unwrap();
        assert_eq!(aut.state_count(), 1);
        assert_eq!(aut.hilbert_coefficients(5).unwrap().coefficients, vec![1, 2, 4, 8, 16, 32]);
        assert_eq!(aut.finiteness().kind, FinitenessKind::Infinite);
    }

    #[test]
    fn all_quadratic_words_forbidden() {
        let (x, y) = (1, 0);
        let obs = [w(&[x, x]), w(&[x, y]), w(&[y, x]), w(&[y, y])];
        let aut = NormalWordAutomaton::new(2, &obs, None).unwrap();
        let f = aut.finiteness();
        assert_eq!(f.kind, FinitenessKind::Finite { top_degree: 1 });
        assert!(!f.conditional);
    }

    #[test]
    fn antichain_required() {
        let obs = [w(&[X, X]), w(&[Y, X, X])];
        assert!(matches!(NormalWordAutomaton::new(3, &obs, None), Err(AutomatonError::NotAntichain(..))));
    }

    #[test]
    fn words_listing_matches_counts() {
        let obs = [w(&[X, X]), w(&[X, Y, X]), w(&[X, Z]), w(&[Z, Y])];
        let aut = NormalWordAutomaton::new(3, &obs, Some(4)).unwrap();
        let h = aut.hilbert_coefficients(4).unwrap().coefficients;
        for d in 0..=4 {
            let ws = aut.words(d).unwrap();
            assert_eq!(ws.len() as u64, h[d]);
            assert!(ws.windows(2).all(|p| p[0] < p[1]));
        }
    }
}
