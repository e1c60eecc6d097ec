//! Machine-readable reports shared by the command line and the browser demo.
//!
//! Every report has the shape
//! `{ command, config, payload, certified, timing_ms }`. The payload keys are
//! fixed per command; `timing_ms` is the only field that varies between runs.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::anick::{ChainError, Obstructions};
use crate::automaton::AutomatonError;
use crate::dual::quadratic_dual;
use crate::gldim::{gldim_report, hilbert_from_basis, AnalysisError};
use crate::graph::chain_graph;
use crate::groebner::{complete, Certificate, GroebnerError};
use crate::homology::{betti_from_resolution, koszul_verdict, HomologyError};
use crate::presentation::Presentation;
use crate::resolution::{Resolution, ResolutionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("{0} output is not available for `{1}`")]
    UnsupportedFormat(&'static str, &'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Analysis {
    Gb,
    Chains,
    Resolution,
    Betti,
    Koszul,
    Dual,
    Hilbert,
    Gldim,
    Graph,
}

impl Analysis {
    pub fn name(self) -> &'static str {
        match self {
            Analysis::Gb => "gb",
            Analysis::Chains => "chains",
            Analysis::Resolution => "resolution",
            Analysis::Betti => "betti",
            Analysis::Koszul => "koszul",
            Analysis::Dual => "dual",
            Analysis::Hilbert => "hilbert",
            Analysis::Gldim => "gldim",
            Analysis::Graph => "graph",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    pub max_deg: usize,
    pub max_level: usize,
    pub order: String,
    pub field: String,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Config,
    pub payload: Value,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// A report with its plain-text rendering and, for graphs, DOT source.
#[derive(Clone, Debug)]
pub struct Rendered {
    pub report: Report,
    pub text: String,
    pub dot: Option<String>,
}

/// Runs one analysis with degree bound `max_deg` and level bound `max_level`.
pub fn analyse(command: Analysis, p: &Presentation, max_deg: usize, max_level: usize) -> Result<Rendered, ReportError> {
    let a = p.alphabet();
    let config = Config {
        max_deg,
        max_level,
        order: a.order_label(),
        field: p.field().label(),
        relations: p.relations().iter().map(|r| r.display(a).to_string()).collect(),
    };
    let mut text = String::new();
    let mut dot = None;
    let (payload, certified) = match command {
        Analysis::Gb => {
            let gb = complete(p, max_deg.max(p.max_relation_degree()))?;
            let basis: Vec<String> = gb.elements().iter().map(|g| g.display(a).to_string()).collect();
            let _ = writeln!(text, "certificate: {}", certificate_text(gb.certificate()));
            for b in &basis {
                let _ = writeln!(text, "  {b}");
            }
            let payload = json!({
                "basis": basis,
                "certificate": gb.certificate().label(),
                "valid_degree": gb.valid_degree(),
                "obstructions": gb.obstructions().iter().map(|w| a.format_word(w)).collect::<Vec<_>>(),
            });
            (payload, gb.is_certified())
        }
        Analysis::Chains => {
            let res = Resolution::new(p, max_level, max_deg)?;
            let chains = res.chains();
            let mut levels = Vec::new();
            for n in 0..=max_level {
                let list: Vec<Value> = chains
                    .level(n)
                    .iter()
                    .map(|c| json!({"chain": a.format_word(c.word()), "degree": c.degree(), "tails": c.tails().iter().map(|t| a.format_word(t)).collect::<Vec<_>>()}))
                    .collect();
                let counts: Vec<usize> = (0..=max_deg).map(|j| chains.count(n, j)).collect();
                let _ = writeln!(text, "level {n}: {} chains, by degree {:?}", list.len(), counts);
                levels.push(json!({"level": n, "counts": counts, "chains": list}));
            }
            let payload = json!({"certificate": res.basis().certificate().label(), "chains": levels});
            (payload, res.basis().is_certified())
        }
        Analysis::Resolution => {
            let mut res = Resolution::new(p, max_level, max_deg)?;
            let mut out = Vec::new();
            for n in 0..=max_level {
                let words: Vec<_> = res.chains().level(n).iter().map(|c| c.word().clone()).collect();
                for w in words {
                    let d = res.differential(n, &w)?;
                    let image = d.display(a).to_string();
                    let _ = writeln!(text, "d{n}({}⊗1) = {image}", a.format_word(&w));
                    out.push(json!({"level": n, "chain": a.format_word(&w), "image": image}));
                }
            }
            let payload = json!({"certificate": res.basis().certificate().label(), "differentials": out});
            (payload, res.basis().is_certified())
        }
        Analysis::Betti | Analysis::Koszul => {
            let mut res = Resolution::new(p, max_level, max_deg)?;
            let b = betti_from_resolution(&mut res, max_level, max_deg)?;
            let certified = b.reliable.iter().flatten().all(|&r| r);
            text.push_str(&b.to_text());
            let mut payload = json!({"betti": b.betti, "reliable": b.reliable, "diagonal": b.diagonal()});
            if command == Analysis::Betti {
                (payload, certified)
            } else {
                let checked = max_deg.min(max_level);
                let verdict = koszul_verdict(p, &b, checked)?;
                let _ = writeln!(text, "verdict: {}", verdict_text(&serde_json::to_value(verdict).unwrap()));
                payload["verdict"] = serde_json::to_value(verdict).unwrap();
                payload["checked_degree"] = json!(checked);
                (payload, certified && checked == max_deg)
            }
        }
        Analysis::Dual => {
            let d = quadratic_dual(p)?;
            text.push_str(&d.to_string());
            let payload = json!({"dual": {
                "vars": d.alphabet().descending_names().collect::<Vec<_>>(),
                "relations": d.relations().iter().map(|r| r.display(d.alphabet()).to_string()).collect::<Vec<_>>(),
                "presentation": d.to_string(),
            }});
            (payload, true)
        }
        Analysis::Hilbert => {
            let gb = complete(p, max_deg.max(p.max_relation_degree()))?;
            let h = hilbert_from_basis(p, &gb, max_deg)?;
            let _ = writeln!(text, "hilbert: {:?}", h.hilbert);
            let _ = writeln!(text, "finiteness: {}", serde_json::to_value(h.finiteness).unwrap());
            let payload = json!({"hilbert": h.hilbert, "certificate": gb.certificate().label(), "finiteness": h.finiteness});
            (payload, gb.is_certified())
        }
        Analysis::Gldim => {
            let r = gldim_report(p, max_deg)?;
            let dual = quadratic_dual(p)?;
            let _ = writeln!(text, "koszul: {}", verdict_text(&serde_json::to_value(r.koszul).unwrap()));
            let _ = writeln!(text, "dual hilbert: {:?} ({})", r.dual_hilbert, certificate_text(r.dual_certificate));
            match r.gldim {
                Some(g) => {
                    let _ = writeln!(text, "gldim: {g} (conditional on Koszulness beyond degree {})", r.degree_bound);
                }
                None => {
                    let _ = writeln!(text, "gldim: {:?}", r.conclusion);
                }
            }
            let _ = writeln!(text, "dim A_1: {}", r.dim_a1);
            let _ = writeln!(text, "conjecture counterexample: {}", r.conjecture_counterexample);
            let mut payload = serde_json::to_value(&r).unwrap();
            payload["verdict"] = payload["koszul"].clone();
            payload["dual"] = json!({
                "relations": dual.relations().iter().map(|x| x.display(dual.alphabet()).to_string()).collect::<Vec<_>>(),
            });
            (payload, r.dual_certificate == Certificate::CertifiedComplete)
        }
        Analysis::Graph => {
            let gb = complete(p, max_deg.max(p.max_relation_degree()))?;
            let obs = Obstructions::new(p.generator_count(), gb.obstructions())?;
            let g = chain_graph(&obs);
            let src = g.to_dot(a);
            text.push_str(&src);
            let summary = g.summary(a);
            dot = Some(src);
            let payload = json!({"certificate": gb.certificate().label(), "graph": summary});
            (payload, gb.is_certified())
        }
    };
    let report = Report { command: command.name().to_string(), config, payload, certified, timing_ms: None };
    Ok(Rendered { report, text, dot })
}

fn certificate_text(c: Certificate) -> String {
    match c {
        Certificate::CertifiedComplete => "certified-complete".into(),
        Certificate::CompleteUpToDegree(d) => format!("complete-up-to-degree {d}"),
    }
}

fn verdict_text(v: &Value) -> String {
    match v["status"].as_str() {
        Some("koszul-up-to") => format!("Koszul up to degree {}", v["degree"]),
        Some("fails-at") => format!("fails at (i, j) = ({}, {}) with b = {}", v["i"], v["j"], v["value"]),
        _ => v.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_presentation;

    const A: &str = "vars: x > y > z\nrelations:\n x^2 + y*x\n x*z\n z*y\n";

    #[test]
    fn gldim_payload_keys() {
        let p = parse_presentation(A).unwrap();
        let r = analyse(Analysis::Gldim, &p, 8, 8).unwrap().report;
        assert_eq!(r.payload["gldim"], 4);
        assert_eq!(r.payload["dim_A1"], 3);
        assert_eq!(r.payload["conjecture_counterexample"], true);
        assert!(r.certified);
    }

    #[test]
    fn reports_are_deterministic() {
        let p = parse_presentation(A).unwrap();
        for c in [Analysis::Gb, Analysis::Chains, Analysis::Betti, Analysis::Graph] {
            let x = analyse(c, &p, 5, 4).unwrap().report.to_json();
            let y = analyse(c, &p, 5, 4).unwrap().report.to_json();
            assert_eq!(x, y);
        }
    }

    #[test]
    fn koszul_with_small_level_bound_is_uncertified() {
        let p = parse_presentation(A).unwrap();
        let r = analyse(Analysis::Koszul, &p, 6, 4).unwrap().report;
        assert_eq!(r.payload["checked_degree"], 4);
        assert!(!r.certified);
    }
}
