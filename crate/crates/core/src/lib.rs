//! Noncommutative Gröbner bases, Anick resolutions and Koszulness checks for
//! finitely presented graded algebras.

pub mod anick;
pub mod automaton;
pub mod cli;
pub mod dual;
pub mod gldim;
pub mod graph;
pub mod groebner;
pub mod homology;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod presentation;
pub mod report;
pub mod resolution;
pub mod scalar;
pub mod word;
