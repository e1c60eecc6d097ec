//! The chain-generation graph. Vertices are letters and tails; there is an
//! edge `u → t` when the tail `t` may follow `u` in a chain. Paths of length
//! `n` starting at a letter spell exactly the level-`n` chains.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::anick::Obstructions;
use crate::word::{Alphabet, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainGraph {
    /// Vertex words; the first `alphabet_size` are the letters.
    vertices: Vec<Word>,
    letters: usize,
    edges: Vec<(usize, usize)>,
}

pub fn chain_graph(obstructions: &Obstructions) -> ChainGraph {
    let letters = obstructions.alphabet_size();
    let mut vertices: Vec<Word> = (0..letters).map(|a| Word::letter(a as Letter)).collect();
    let mut index: BTreeMap<Word, usize> = vertices.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut queue: VecDeque<usize> = (0..letters).collect();
    let mut edges = Vec::new();
    while let Some(v) = queue.pop_front() {
        for t in obstructions.next_tails(&vertices[v]) {
            let target = match index.get(&t) {
                Some(&i) => i,
                None => {
                    let i = vertices.len();
                    index.insert(t.clone(), i);
                    vertices.push(t);
                    queue.push_back(i);
                    i
                }
            };
            edges.push((v, target));
        }
    }
    edges.sort();
    ChainGraph { vertices, letters, edges }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl ChainGraph {
    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Paths with `n` edges from a letter whose spelled word has length at
    /// most `deg_max`.
    pub fn count_paths(&self, n: usize, deg_max: usize) -> usize {
        // walks[(vertex, length)] = number of paths ending there
        let mut walks: BTreeMap<(usize, usize), usize> = (0..self.letters).map(|v| ((v, 1), 1)).collect();
        for _ in 0..n {
            let mut next = BTreeMap::new();
            for (&(v, len), &count) in &walks {
                for &(_, t) in self.edges.iter().filter(|(s, _)| *s == v) {
                    let l = len + self.vertices[t].len();
                    if l <= deg_max {
                        *next.entry((t, l)).or_insert(0) += count;
                    }
                }
            }
            walks = next;
        }
        walks.values().sum()
    }

    pub fn summary(&self, alphabet: &Alphabet) -> GraphSummary {
        let name = |i: usize| alphabet.format_word(&self.vertices[i]);
        GraphSummary {
            vertices: (0..self.vertices.len()).map(name).collect(),
            edges: self.edges.iter().map(|&(s, t)| (name(s), name(t))).collect(),
        }
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("digraph chains {\n  rankdir=LR;\n  start [shape=point];\n");
        for (i, w) in self.vertices.iter().enumerate() {
            let shape = if i < self.letters { "box" } else { "ellipse" };
            let _ = writeln!(out, "  v{i} [label=\"{}\", shape={shape}];", alphabet.format_word(w));
        }
        for i in 0..self.letters {
            let _ = writeln!(out, "  start -> v{i};");
        }
        for (s, t) in &self.edges {
            let _ = writeln!(out, "  v{s} -> v{t};");
        }
        out.push_str("}\n");
        out
    }
}
