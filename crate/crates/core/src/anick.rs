//! Anick chains of a monomial antichain.
//!
//! Level-0 chains are the letters and level-1 chains the obstructions. A
//! level-`n` chain is a level-`(n-1)` chain `c'` with tail `t'` followed by a
//! new tail `t` such that `t't` contains exactly one obstruction, that
//! obstruction is a suffix of `t't`, and it starts inside `t'`.
//! Decompositions are unique: each tail ends where the earliest obstruction
//! starting in the previous tail ends.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::automaton::{check_antichain, AutomatonError};
use crate::word::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error(transparent)]
    Obstructions(#[from] AutomatonError),
    #[error("obstruction {0:?} has degree 1; eliminate that generator first")]
    LinearObstruction(Word),
    #[error("a level-0 chain has no prefix chain")]
    LevelZero,
}

/// Validated obstruction set shared by chain enumeration and splitting.
#[derive(Clone, Debug)]
pub struct Obstructions {
    words: Vec<Word>,
    alphabet_size: usize,
}

impl Obstructions {
    pub fn new(alphabet_size: usize, words: Vec<Word>) -> Result<Self, ChainError> {
        check_antichain(&words)?;
        if let Some(w) = words.iter().find(|w| w.len() == 1) {
            return Err(ChainError::LinearObstruction(w.clone()));
        }
        Ok(Obstructions { words, alphabet_size })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// Whether `prev · tail` contains exactly one obstruction, as a suffix
    /// starting inside `prev`.
    pub fn extends(&self, prev: &Word, tail: &Word) -> bool {
        if tail.is_empty() {
            return false;
        }
        let w = prev.concat(tail);
        let mut found = 0;
        let mut good_suffix = false;
        for o in &self.words {
            for s in w.occurrences(o) {
                found += 1;
                if s + o.len() == w.len() && s < prev.len() {
                    good_suffix = true;
                }
            }
        }
        found == 1 && good_suffix
    }

    /// Tails that may follow `prev` in a chain.
    pub fn next_tails(&self, prev: &Word) -> Vec<Word> {
        let mut out = Vec::new();
        for s in 0..prev.len() {
            let overlap = &prev.letters()[s..];
            for o in &self.words {
                if o.len() > overlap.len() && o.starts_with(overlap) {
                    let t = o.suffix_from(overlap.len());
                    if self.extends(prev, &t) && !out.contains(&t) {
                        out.push(t);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// The greedy decomposition of `w` into chain tails, as far as it goes.
    /// `ends[j]` is where the level-`j` chain prefix of `w` ends.
    pub fn chain_prefix_ends(&self, w: &Word) -> Vec<usize> {
        let mut ends = Vec::new();
        if w.is_empty() {
            return ends;
        }
        ends.push(1);
        loop {
            let n = ends.len();
            let prev_start = if n == 1 { 0 } else { ends[n - 2] };
            let prev_end = ends[n - 1];
            let mut best: Option<usize> = None;
            for s in prev_start..prev_end {
                for o in &self.words {
                    let e = s + o.len();
                    if e > prev_end && e <= w.len() && w.occurs_at(o, s) && best.is_none_or(|b| e < b) {
                        best = Some(e);
                    }
                }
            }
            let Some(end) = best else { break };
            let clash = (prev_end..end).any(|s| self.words.iter().any(|o| s + o.len() <= end && w.occurs_at(o, s)));
            if clash {
                break;
            }
            ends.push(end);
        }
        ends
    }

    /// The chain structure of `w` if `w` is itself an Anick chain.
    pub fn as_chain(&self, w: &Word) -> Option<Chain> {
        let ends = self.chain_prefix_ends(w);
        match ends.last() {
            Some(&e) if e == w.len() => Some(Chain { word: w.clone(), ends }),
            _ => None,
        }
    }
}

/// An Anick chain together with its tail decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    word: Word,
    /// `ends[j]` is the end of the level-`j` prefix chain; the last entry is `word.len()`.
    ends: Vec<usize>,
}

impl Chain {
    pub fn letter(a: Letter) -> Chain {
        Chain { word: Word::letter(a), ends: vec![1] }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn level(&self) -> usize {
        self.ends.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn ends(&self) -> &[usize] {
        &self.ends
    }

    pub fn tail(&self) -> Word {
        let n = self.level();
        let start = if n == 0 { 0 } else { self.ends[n - 1] };
        self.word.suffix_from(start)
    }

    /// Tails `t_0, t_1, …, t_n` with `t_0` the first letter.
    pub fn tails(&self) -> Vec<Word> {
        let mut start = 0;
        self.ends
            .iter()
            .map(|&e| {
                let t = self.word.slice(start, e);
                start = e;
                t
            })
            .collect()
    }

    /// `(c', t)` with `c = c' t`.
    pub fn split(&self) -> Result<(Chain, Word), ChainError> {
        let n = self.level();
        if n == 0 {
            return Err(ChainError::LevelZero);
        }
        let cut = self.ends[n - 1];
        let prefix = Chain { word: self.word.prefix(cut), ends: self.ends[..n].to_vec() };
        Ok((prefix, self.word.suffix_from(cut)))
    }

    fn extend(&self, tail: &Word) -> Chain {
        let mut ends = self.ends.clone();
        ends.push(self.word.len() + tail.len());
        Chain { word: self.word.concat(tail), ends }
    }
}

/// All chains up to a level and a degree bound.
#[derive(Clone, Debug)]
pub struct ChainSet {
    levels: Vec<Vec<Chain>>,
    level_max: usize,
    deg_max: usize,
    index: HashMap<(usize, Word), usize>,
}

impl ChainSet {
    pub fn level_max(&self) -> usize {
        self.level_max
    }

    pub fn deg_max(&self) -> usize {
        self.deg_max
    }

    /// Chains of one level in deglex order.
    pub fn level(&self, n: usize) -> &[Chain] {
        self.levels.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn of_degree(&self, n: usize, degree: usize) -> impl Iterator<Item = &Chain> {
        self.level(n).iter().filter(move |c| c.degree() == degree)
    }

    pub fn count(&self, n: usize, degree: usize) -> usize {
        self.of_degree(n, degree).count()
    }

    pub fn get(&self, n: usize, w: &Word) -> Option<&Chain> {
        self.index.get(&(n, w.clone())).map(|&i| &self.levels[n][i])
    }
}

/// Enumerates every chain of level `≤ level_max` and degree `≤ deg_max`.
pub fn enumerate_chains(obstructions: &Obstructions, level_max: usize, deg_max: usize) -> ChainSet {
    let mut levels: Vec<Vec<Chain>> = Vec::new();
    let letters: Vec<Chain> =
        if deg_max >= 1 { (0..obstructions.alphabet_size()).map(|a| Chain::letter(a as Letter)).collect() } else { Vec::new() };
    levels.push(letters);
    for _ in 1..=level_max {
        let mut next: BTreeMap<Word, Chain> = BTreeMap::new();
        for c in levels.last().unwrap() {
            let prev = c.tail();
            for t in obstructions.next_tails(&prev) {
                if c.degree() + t.len() <= deg_max {
                    let ext = c.extend(&t);
                    next.insert(ext.word.clone(), ext);
                }
            }
        }
        levels.push(next.into_values().collect());
    }
    for l in &mut levels {
        l.sort_by(|a, b| a.word.cmp(&b.word));
    }
    let mut index = HashMap::new();
    for (n, l) in levels.iter().enumerate() {
        for (i, c) in l.iter().enumerate() {
            index.insert((n, c.word.clone()), i);
        }
    }
    ChainSet { levels, level_max, deg_max, index }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::complete;
    use crate::parse::parse_presentation;
    use crate::word::Alphabet;

    const A: &str = "vars: x > y > z\nrelations:\n x^2 + y*x\n x*z\n z*y\n";

    fn setup(deg: usize) -> (Alphabet, Obstructions) {
        let p = parse_presentation(A).unwrap();
        let g = complete(&p, deg).unwrap();
        (p.alphabet().clone(), Obstructions::new(3, g.obstructions()).unwrap())
    }

    fn names(a: &Alphabet, chains: impl IntoIterator<Item = Chain>) -> Vec<String> {
        chains.into_iter().map(|c| a.format_word(c.word())).collect()
    }

    fn word(a: &Alphabet, s: &str) -> Word {
        Word::from_letters(s.chars().map(|c| a.lookup(&c.to_string()).unwrap()).collect::<Vec<_>>())
    }

    #[test]
    fn level_one_is_the_obstruction_set() {
        let (a, obs) = setup(4);
        let cs = enumerate_chains(&obs, 1, 4);
        let mut got = names(&a, cs.level(1).iter().cloned());
        got.sort();
        let mut want = vec!["x^2", "xyx", "xy^2x", "xz", "zy"];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn level_two_small_degrees() {
        let (a, obs) = setup(5);
        let cs = enumerate_chains(&obs, 2, 5);
        let mut d3 = names(&a, cs.of_degree(2, 3).cloned());
        d3.sort();
        assert_eq!(d3, ["x^2z", "x^3", "xzy"]);
        let mut d5 = names(&a, cs.of_degree(2, 5).cloned());
        d5.sort();
        assert_eq!(d5, ["x^2y^2x", "xy^2x^2", "xy^2xz", "xyxyx"]);
    }

    #[test]
    fn split_examples() {
        let (a, obs) = setup(4);
        let c = obs.as_chain(&word(&a, "xxx")).unwrap();
        assert_eq!(c.level(), 2);
        let (p, t) = c.split().unwrap();
        assert_eq!((a.format_word(p.word()), p.level(), a.format_word(&t)), ("x^2".into(), 1, "x".into()));
        let c = obs.as_chain(&word(&a, "xzy")).unwrap();
        let (p, t) = c.split().unwrap();
        assert_eq!((a.format_word(p.word()), a.format_word(&t)), ("xz".into(), "y".into()));
        let c = obs.as_chain(&word(&a, "xz")).unwrap();
        let (p, t) = c.split().unwrap();
        assert_eq!((a.format_word(p.word()), p.level(), a.format_word(&t)), ("x".into(), 0, "z".into()));
        assert_eq!(Chain::letter(0).split(), Err(ChainError::LevelZero));
    }

    #[test]
    fn prefix_parse_stops_at_clashes() {
        let (a, obs) = setup(4);
        assert_eq!(obs.chain_prefix_ends(&word(&a, "xxzy")), vec![1, 2, 3, 4]);
        // no obstruction starting inside the tail `x` fits in `xxy`
        assert_eq!(obs.chain_prefix_ends(&word(&a, "xxy")), vec![1, 2]);
        assert!(obs.as_chain(&word(&a, "xxy")).is_none());
        assert_eq!(obs.chain_prefix_ends(&word(&a, "xyxz")), vec![1, 3, 4]);
        assert_eq!(obs.chain_prefix_ends(&word(&a, "yx")), vec![1]);
    }

    #[test]
    fn linear_obstructions_rejected() {
        assert!(matches!(Obstructions::new(2, vec![Word::letter(0)]), Err(ChainError::LinearObstruction(_))));
    }
}
