//! Homology of the resolution after tensoring with the ground field.
//!
//! Applying `k ⊗_A -` to the Anick resolution leaves the complex `kC_n` with
//! differential `d̄_n`, which keeps the terms of `d_n` whose cofactor is the
//! empty word. Chains of level `n` contribute to `Tor_{n+1}`; `Tor_0 = k`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::automaton::HilbertPrefix;
use crate::linalg::{rank, SparseVector};
use crate::presentation::Presentation;
use crate::resolution::{Resolution, ResolutionError, ResolutionSlice};
use crate::scalar::Scalar;
use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error("the presentation is not quadratic")]
    NotQuadratic,
    #[error("the Betti table has no reliable entries covering degree {degree}: needs i, j ≤ {degree}")]
    InsufficientCoverage { degree: usize },
}

/// `d̄_level` in one internal degree, between chain bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMatrix {
    pub level: usize,
    pub degree: usize,
    pub source: Vec<Word>,
    pub target: Vec<Word>,
    pub columns: Vec<SparseVector>,
}

impl InducedMatrix {
    pub fn rank(&self) -> usize {
        rank(&self.columns)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Image of one source chain.
    pub fn image(&self, chain: &Word) -> Option<Vec<(Word, Scalar)>> {
        let i = self.source.iter().position(|c| c == chain)?;
        Some(self.columns[i].iter().map(|(k, c)| (self.target[*k].clone(), c.clone())).collect())
    }
}

/// The complex `(kC_•, d̄)`, keyed by `(level, degree)`. Level 0 maps to the
/// augmentation and is always zero, so it is stored with an empty target.
#[derive(Clone, Debug, Default)]
pub struct InducedComplex {
    matrices: BTreeMap<(usize, usize), InducedMatrix>,
}

impl InducedComplex {
    pub fn matrix(&self, level: usize, degree: usize) -> Option<&InducedMatrix> {
        self.matrices.get(&(level, degree))
    }

    pub fn matrices(&self) -> impl Iterator<Item = &InducedMatrix> {
        self.matrices.values()
    }

    /// Reads `d̄` straight off the chain differentials, without building full
    /// slices.
    pub fn from_resolution(res: &mut Resolution, level_max: usize, deg_max: usize) -> Result<Self, ResolutionError> {
        let mut matrices = BTreeMap::new();
        for level in 0..=level_max.min(res.level_max()) {
            for degree in 1..=deg_max.min(res.deg_max()) {
                let source: Vec<Word> = res.chains().of_degree(level, degree).map(|c| c.word().clone()).collect();
                let target: Vec<Word> =
                    if level == 0 { Vec::new() } else { res.chains().of_degree(level - 1, degree).map(|c| c.word().clone()).collect() };
                let index: HashMap<&Word, usize> = target.iter().enumerate().map(|(i, w)| (w, i)).collect();
                let mut columns = Vec::with_capacity(source.len());
                for c in &source {
                    let mut col = Vec::new();
                    if level > 0 {
                        let d = res.differential(level, c)?;
                        for (w, v) in d.reduced() {
                            let i = *index.get(&w).ok_or(ResolutionError::NotAChain { level: level - 1, word: w.clone() })?;
                            col.push((i, v));
                        }
                    }
                    columns.push(col);
                }
                matrices.insert((level, degree), InducedMatrix { level, degree, source, target, columns });
            }
        }
        Ok(InducedComplex { matrices })
    }
}

/// Extracts `d̄` from full resolution slices: rows and columns whose
/// cofactor is the empty word.
pub fn induce(slices: &[ResolutionSlice]) -> InducedComplex {
    let mut matrices = BTreeMap::new();
    for s in slices {
        let keep_source: Vec<usize> = (0..s.source.len()).filter(|&i| s.source[i].cofactor().is_empty()).collect();
        let (target, remap): (Vec<Word>, HashMap<usize, usize>) = if s.level == 0 {
            (Vec::new(), HashMap::new())
        } else {
            let kept: Vec<usize> = (0..s.target.len()).filter(|&i| s.target[i].cofactor().is_empty()).collect();
            let remap = kept.iter().enumerate().map(|(new, &old)| (old, new)).collect();
            (kept.iter().map(|&i| s.target[i].product.clone()).collect(), remap)
        };
        let source = keep_source.iter().map(|&i| s.source[i].product.clone()).collect();
        let columns =
            keep_source.iter().map(|&i| s.columns[i].iter().filter_map(|(k, c)| remap.get(k).map(|&r| (r, c.clone()))).collect()).collect();
        matrices.insert((s.level, s.degree), InducedMatrix { level: s.level, degree: s.degree, source, target, columns });
    }
    InducedComplex { matrices }
}

/// `b[i][j] = dim Tor_{i,j}(k, k)` with a reliability mask.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub i_max: usize,
    pub j_max: usize,
    pub betti: Vec<Vec<u64>>,
    pub reliable: Vec<Vec<bool>>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> Option<u64> {
        self.betti.get(i)?.get(j).copied()
    }

    pub fn is_reliable(&self, i: usize, j: usize) -> bool {
        self.reliable.get(i).and_then(|r| r.get(j)).copied().unwrap_or(false)
    }

    /// `b[i][i]` for `i ≤ min(i_max, j_max)`.
    pub fn diagonal(&self) -> Vec<u64> {
        (0..=self.i_max.min(self.j_max)).map(|i| self.betti[i][i]).collect()
    }

    /// Whether every reliable entry agrees with the other table.
    pub fn agrees_with(&self, other: &BettiTable) -> bool {
        (0..=self.i_max.min(other.i_max)).all(|i| {
            (0..=self.j_max.min(other.j_max))
                .all(|j| !(self.is_reliable(i, j) && other.is_reliable(i, j)) || self.betti[i][j] == other.betti[i][j])
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("i\\j");
        for j in 0..=self.j_max {
            out.push_str(&format!(" {j:>4}"));
        }
        out.push('\n');
        for i in 0..=self.i_max {
            out.push_str(&format!("{i:>3}"));
            for j in 0..=self.j_max {
                let mark = if self.reliable[i][j] { ' ' } else { '?' };
                out.push_str(&format!(" {:>3}{mark}", self.betti[i][j]));
            }
            out.push('\n');
        }
        out
    }
}

/// Betti table of `p` for `i ≤ i_max`, `j ≤ j_max`, completing the Gröbner
/// basis through `j_max`.
pub fn betti_table(p: &Presentation, i_max: usize, j_max: usize) -> Result<BettiTable, HomologyError> {
    let mut res = Resolution::new(p, i_max, j_max)?;
    betti_from_resolution(&mut res, i_max, j_max)
}

/// Betti table from an existing resolution. Entries beyond its degree bound,
/// or needing chains beyond its level bound, are marked unreliable: those
/// past the degree bound are reported as 0, and those one level past the
/// level bound as the upper bound `dim ker`.
pub fn betti_from_resolution(res: &mut Resolution, i_max: usize, j_max: usize) -> Result<BettiTable, HomologyError> {
    let complex = InducedComplex::from_resolution(res, i_max, j_max)?;
    let rank_of = |level: usize, degree: usize| complex.matrix(level, degree).map_or(0, InducedMatrix::rank);
    let mut betti = vec![vec![0u64; j_max + 1]; i_max + 1];
    let mut reliable = vec![vec![false; j_max + 1]; i_max + 1];
    betti[0][0] = 1;
    reliable[0] = vec![true; j_max + 1];
    for i in 1..=i_max {
        let n = i - 1;
        for j in 0..=j_max {
            if j > res.deg_max() || n > res.level_max() {
                continue;
            }
            let dim = res.chains().count(n, j);
            let out = if n == 0 { 0 } else { rank_of(n, j) };
            let incoming = if n < res.level_max() { rank_of(n + 1, j) } else { 0 };
            betti[i][j] = (dim - out - incoming) as u64;
            reliable[i][j] = n < res.level_max();
        }
    }
    Ok(BettiTable { i_max, j_max, betti, reliable })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum KoszulVerdict {
    /// Every off-diagonal entry with `j ≤ degree` vanishes.
    KoszulUpTo { degree: usize },
    /// The first nonzero off-diagonal entry.
    FailsAt { i: usize, j: usize, value: u64 },
}

impl KoszulVerdict {
    pub fn is_koszul(&self) -> bool {
        matches!(self, KoszulVerdict::KoszulUpTo { .. })
    }
}

/// Koszulness through internal degree `d`. Needs a quadratic presentation
/// and reliable entries for all `i, j ≤ d`.
pub fn koszul_verdict(p: &Presentation, b: &BettiTable, d: usize) -> Result<KoszulVerdict, HomologyError> {
    if !p.is_quadratic() {
        return Err(HomologyError::NotQuadratic);
    }
    for j in 0..=d {
        for i in 0..=d {
            if !b.is_reliable(i, j) {
                return Err(HomologyError::InsufficientCoverage { degree: d });
            }
        }
    }
    for j in 0..=d {
        for i in 0..=j {
            if i != j && b.betti[i][j] != 0 {
                return Ok(KoszulVerdict::FailsAt { i, j, value: b.betti[i][j] });
            }
        }
    }
    Ok(KoszulVerdict::KoszulUpTo { degree: d })
}

/// `residual[j] = [t^j] (H(t) · Σ_i (-1)^i b_i(t)) - [j = 0]` over the shared
/// degree range.
pub fn euler_check(b: &BettiTable, h: &HilbertPrefix) -> Vec<i128> {
    let top = b.j_max.min(h.coefficients.len().saturating_sub(1));
    let numerator: Vec<i128> =
        (0..=top).map(|j| (0..=b.i_max).map(|i| if i % 2 == 0 { b.betti[i][j] as i128 } else { -(b.betti[i][j] as i128) }).sum()).collect();
    (0..=top)
        .map(|j| {
            let s: i128 = (0..=j).map(|k| h.coefficients[k] as i128 * numerator[j - k]).sum();
            s - i128::from(j == 0)
        })
        .collect()
}
