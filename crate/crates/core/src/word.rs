//! Alphabets, words and the degree-lexicographic order.
//!
//! Letters are stored by *rank*: letter `0` is the smallest generator and the
//! largest index is the largest. With that encoding the derived comparison
//! "length first, then letterwise" on [`Word`] is exactly deglex, so ordered
//! containers keyed by words iterate in monomial order.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

pub type Letter = u8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("alphabets are limited to 256 letters")]
    TooManyLetters,
    #[error("letter index {0} is outside an alphabet of {1} letters")]
    ForeignLetter(Letter, usize),
}

/// A word in the free monoid; the empty word is the unit.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(a: Letter) -> Self {
        Word(vec![a])
    }

    pub fn from_letters(letters: impl Into<Vec<Letter>>) -> Self {
        Word(letters.into())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `l · self · r`
    pub fn sandwich(&self, l: &Word, r: &Word) -> Word {
        let mut v = Vec::with_capacity(l.len() + self.len() + r.len());
        v.extend_from_slice(&l.0);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&r.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0, len)
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        self.slice(start, self.len())
    }

    pub fn occurs_at(&self, pattern: &Word, pos: usize) -> bool {
        pos + pattern.len() <= self.len() && self.0[pos..pos + pattern.len()] == pattern.0[..]
    }

    /// Start positions of every occurrence of `pattern` as a factor.
    pub fn occurrences(&self, pattern: &Word) -> Vec<usize> {
        if pattern.is_empty() || pattern.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pattern.len()).filter(|&i| self.occurs_at(pattern, i)).collect()
    }

    pub fn contains_factor(&self, pattern: &Word) -> bool {
        pattern.len() <= self.len() && (pattern.is_empty() || self.0.windows(pattern.len()).any(|w| w == &pattern.0[..]))
    }

    pub fn starts_with(&self, prefix: &[Letter]) -> bool {
        self.0.starts_with(prefix)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// A proper overlap: the last `length` letters of one word equal the first
/// `length` letters of another, with `0 < length < min(|u|, |w|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Overlap {
    pub length: usize,
}

impl Overlap {
    /// The word `u · w[length..]` on which both leading terms sit.
    pub fn word(self, u: &Word, w: &Word) -> Word {
        u.concat(&w.suffix_from(self.length))
    }

    pub fn is_valid(self, u: &Word, w: &Word) -> bool {
        self.length > 0
            && self.length < u.len()
            && self.length < w.len()
            && u.letters()[u.len() - self.length..] == w.letters()[..self.length]
    }
}

/// All proper overlaps of a suffix of `u` with a prefix of `w`, shortest first.
pub fn overlaps(u: &Word, w: &Word) -> Vec<Overlap> {
    let max = u.len().min(w.len());
    (1..max).map(|length| Overlap { length }).filter(|o| o.is_valid(u, w)).collect()
}

/// Generator names together with their precedence.
///
/// `names[i]` is the letter of rank `i`; higher rank means larger in deglex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet from names listed from largest to smallest,
    /// i.e. `["x", "y", "z"]` means `x > y > z`.
    pub fn from_descending<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, WordError> {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        if names.len() > 256 {
            return Err(WordError::TooManyLetters);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(WordError::DuplicateLetter(n.clone()));
            }
        }
        names.reverse();
        Ok(Alphabet { names })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator {
        (0..self.names.len()).map(|i| i as Letter)
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(|i| i as Letter)
    }

    /// Names from largest to smallest.
    pub fn descending_names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().rev().map(String::as_str)
    }

    /// `x > y > z`
    pub fn order_label(&self) -> String {
        self.descending_names().collect::<Vec<_>>().join(" > ")
    }

    pub fn check(&self, w: &Word) -> Result<(), WordError> {
        match w.letters().iter().find(|&&a| a as usize >= self.size()) {
            Some(&a) => Err(WordError::ForeignLetter(a, self.size())),
            None => Ok(()),
        }
    }

    /// Deglex comparison, validating that both words belong to this alphabet.
    pub fn compare(&self, u: &Word, w: &Word) -> Result<Ordering, WordError> {
        self.check(u)?;
        self.check(w)?;
        Ok(u.cmp(w))
    }

    pub fn word(&self, names: &[&str]) -> Option<Word> {
        names.iter().map(|n| self.lookup(n)).collect::<Option<Vec<_>>>().map(Word)
    }

    /// Juxtaposed when every name is a single character, `*`-separated
    /// otherwise; runs of a letter collapse to powers.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let compact = self.names.iter().all(|n| n.chars().count() == 1);
        let mut parts = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let name = self.name(letters[i]);
            parts.push(if j - i == 1 { name.to_string() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join(if compact { "" } else { "*" })
    }
}
