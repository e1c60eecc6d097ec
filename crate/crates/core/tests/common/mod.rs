//! Test-side oracles. None of these reuse the engine's chain parser,
//! automaton or elimination code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use anick::parse::parse_presentation;
use anick::presentation::Presentation;
use anick::word::{Alphabet, Letter, Word};

pub const A: &str = "vars: x > y > z\nrelations:\n  x^2 + y*x\n  x*z\n  z*y\n";
/// The two-generator algebra with `x^2 = yx`, ordered so that `yx` leads.
pub const A_PRIME_LT: &str = "vars: x < y\nrelations:\n  x^2 - y*x\n";
/// The same algebra ordered so that `x^2` leads; its basis is infinite.
pub const A_PRIME_GT: &str = "vars: x > y\nrelations:\n  x^2 - y*x\n";

pub fn parse(text: &str) -> Presentation {
    parse_presentation(text).expect("fixture parses")
}

/// Word from single-character letter names.
pub fn word(a: &Alphabet, s: &str) -> Word {
    Word::from_letters(s.chars().map(|c| a.lookup(&c.to_string()).expect("known letter")).collect::<Vec<_>>())
}

pub fn all_words(alphabet_size: usize, degree: usize) -> Vec<Word> {
    let mut out = vec![Vec::<Letter>::new()];
    for _ in 0..degree {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alphabet_size).map(move |a| {
                    let mut v = w.clone();
                    v.push(a as Letter);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Word::from_letters).collect()
}

fn occurrences(w: &[Letter], o: &[Letter]) -> usize {
    if o.len() > w.len() {
        return 0;
    }
    (0..=w.len() - o.len()).filter(|&s| &w[s..s + o.len()] == o).count()
}

pub fn avoids(w: &Word, obstructions: &[Word]) -> bool {
    obstructions.iter().all(|o| occurrences(w.letters(), o.letters()) == 0)
}

/// Every decomposition `w = t_0 t_1 ... t_n` with `t_0` a letter such that
/// each `t_{j-1} t_j` contains exactly one obstruction, as a suffix that
/// starts inside `t_{j-1}`. Returned as lists of cut positions.
pub fn chain_decompositions(w: &Word, obstructions: &[Word]) -> Vec<Vec<usize>> {
    let letters = w.letters();
    let mut out = Vec::new();
    if letters.is_empty() {
        return out;
    }
    fn extend(letters: &[Letter], obs: &[Word], cuts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let end = *cuts.last().unwrap();
        if end == letters.len() {
            out.push(cuts.clone());
            return;
        }
        let prev_start = if cuts.len() >= 2 { cuts[cuts.len() - 2] } else { 0 };
        for next in end + 1..=letters.len() {
            let window = &letters[prev_start..next];
            let mut count = 0;
            let mut suffix_ok = false;
            for o in obs {
                let o = o.letters();
                if o.len() > window.len() {
                    continue;
                }
                for s in 0..=window.len() - o.len() {
                    if &window[s..s + o.len()] == o {
                        count += 1;
                        if s + o.len() == window.len() && s < end - prev_start {
                            suffix_ok = true;
                        }
                    }
                }
            }
            if count == 1 && suffix_ok {
                cuts.push(next);
                extend(letters, obs, cuts, out);
                cuts.pop();
            }
        }
    }
    let mut cuts = vec![0, 1];
    extend(letters, obstructions, &mut cuts, &mut out);
    out
}

/// Level-`n` chains of degree `≤ deg_max` by exhaustive search.
pub fn brute_chains(obstructions: &[Word], alphabet_size: usize, level: usize, deg_max: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for d in 1..=deg_max {
        for w in all_words(alphabet_size, d) {
            if chain_decompositions(&w, obstructions).iter().any(|c| c.len() == level + 2) {
                out.insert(w);
            }
        }
    }
    out
}

/// Number of words of each degree avoiding every obstruction.
pub fn brute_normal_counts(obstructions: &[Word], alphabet_size: usize, deg_max: usize) -> Vec<u64> {
    (0..=deg_max).map(|d| all_words(alphabet_size, d).iter().filter(|w| avoids(w, obstructions)).count() as u64).collect()
}

/// Power series of `1 / den(t)` with `den[0] = 1`, first `n + 1` terms.
pub fn series_inverse(den: &[i64], n: usize) -> Vec<i64> {
    assert_eq!(den[0], 1);
    let mut out = vec![0i64; n + 1];
    out[0] = 1;
    for j in 1..=n {
        out[j] = -(1..=j.min(den.len() - 1)).map(|k| den[k] * out[j - k]).sum::<i64>();
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Rank of integer row vectors by fraction-free elimination.
pub fn integer_rank(rows: impl IntoIterator<Item = BTreeMap<usize, i128>>) -> usize {
    let mut pivots: HashMap<usize, BTreeMap<usize, i128>> = HashMap::new();
    for mut r in rows {
        r.retain(|_, v| *v != 0);
        while let Some((&lead, &b)) = r.iter().next() {
            let Some(p) = pivots.get(&lead) else {
                pivots.insert(lead, r);
                break;
            };
            let a = p[&lead];
            let g = gcd(a, b);
            let (a, b) = (a / g, b / g);
            let mut next: BTreeMap<usize, i128> = r.iter().map(|(&k, &v)| (k, v * a)).collect();
            for (&k, &v) in p {
                *next.entry(k).or_insert(0) -= b * v;
            }
            next.retain(|_, v| *v != 0);
            let c = next.values().fold(0, |acc, &v| gcd(acc, v));
            if c > 1 {
                next.values_mut().for_each(|v| *v /= c);
            }
            r = next;
        }
    }
    pivots.len()
}

/// `dim I_d` for the two-sided ideal of the relations, from the span of all
/// products `u r v` (integer coefficients only).
pub fn ideal_dimension(p: &Presentation, degree: usize) -> usize {
    let n = p.generator_count();
    let index: HashMap<Word, usize> = all_words(n, degree).into_iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut rows = Vec::new();
    for r in p.relations() {
        let e = r.degree().unwrap();
        if e > degree {
            continue;
        }
        for left in 0..=degree - e {
            for u in all_words(n, left) {
                for v in all_words(n, degree - e - left) {
                    let mut row = BTreeMap::new();
                    for (w, c) in r.terms() {
                        let q = c.to_rational();
                        assert!(q.is_integer(), "integer coefficients only");
                        let coeff: i128 = q.to_integer().try_into().unwrap();
                        *row.entry(index[&u.concat(w).concat(&v)]).or_insert(0) += coeff;
                    }
                    rows.push(row);
                }
            }
        }
    }
    integer_rank(rows)
}

/// Drops the `timing_ms` line from a pretty-printed report.
pub fn strip_timing(json: &str) -> String {
    json.lines().filter(|l| !l.trim_start().starts_with("\"timing_ms\"")).collect::<Vec<_>>().join("\n")
}

/// Chain families of the main example and the closed-form differentials
/// written out independently of the engine.
pub mod shapes {
    use std::collections::BTreeMap;

    #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
    pub enum Shape {
        /// `x y^{k_1} x ... x y^{k_n} x`
        U,
        /// `x y^{k_1} x ... x y^{k_{n-1}} x z`
        V,
        /// `x y^{k_1} x ... x y^{k_{n-2}} x z y`
        W,
    }

    pub fn u_word(ks: &[usize]) -> String {
        let mut s = String::from("x");
        for &k in ks {
            s.push_str(&"y".repeat(k));
            s.push('x');
        }
        s
    }

    pub fn shape_word(shape: Shape, ks: &[usize]) -> String {
        match shape {
            Shape::U => u_word(ks),
            Shape::V => u_word(ks) + "z",
            Shape::W => u_word(ks) + "zy",
        }
    }

    /// Length of the exponent tuple of a level-`n` chain.
    pub fn tuple_len(shape: Shape, level: usize) -> Option<usize> {
        match shape {
            Shape::U => Some(level),
            Shape::V => level.checked_sub(1),
            Shape::W => level.checked_sub(2),
        }
    }

    /// Exponent tuples of length `len` with `sum(k_i + 1) <= budget`.
    fn tuples(len: usize, budget: usize) -> Vec<Vec<usize>> {
        if len == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in 0..budget {
            for mut rest in tuples(len - 1, budget - k - 1) {
                rest.insert(0, k);
                out.push(rest);
            }
        }
        out
    }

    /// Every chain of the three families at one level with degree `≤ deg_max`.
    pub fn family(level: usize, deg_max: usize) -> Vec<(Shape, Vec<usize>, String)> {
        let mut out = Vec::new();
        for shape in [Shape::U, Shape::V, Shape::W] {
            let Some(len) = tuple_len(shape, level) else { continue };
            let extra = match shape {
                Shape::U => 1,
                Shape::V => 2,
                Shape::W => 3,
            };
            if deg_max < extra {
                continue;
            }
            for ks in tuples(len, deg_max - extra) {
                let w = shape_word(shape, &ks);
                out.push((shape, ks, w));
            }
        }
        out
    }

    /// Closed-form differential: the term with nontrivial cofactor, and the
    /// alternating sum of merged chains with cofactor 1.
    #[derive(Clone, Debug, PartialEq, Eq)]
    pub struct Formula {
        pub chain: String,
        pub cofactor: String,
        pub corrections: BTreeMap<String, i64>,
    }

    pub fn formula(shape: Shape, ks: &[usize]) -> Formula {
        let len = ks.len();
        let (chain, cofactor) = match shape {
            Shape::U => (u_word(&ks[..len - 1]), format!("{}x", "y".repeat(ks[len - 1]))),
            Shape::V => (u_word(ks), "z".to_string()),
            Shape::W => (u_word(ks) + "z", "y".to_string()),
        };
        let mut corrections = BTreeMap::new();
        for i in 1..len {
            let mut merged = ks[..i - 1].to_vec();
            merged.push(ks[i - 1] + ks[i] + 1);
            merged.extend_from_slice(&ks[i + 1..]);
            let sign = if (len - 1 - i).is_multiple_of(2) { 1 } else { -1 };
            *corrections.entry(shape_word(shape, &merged)).or_insert(0) += sign;
        }
        corrections.retain(|_, v| *v != 0);
        Formula { chain, cofactor, corrections }
    }
}
