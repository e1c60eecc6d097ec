//! Browser bindings: each export takes presentation text and a degree bound
//! and returns a JSON report (or DOT source for the graph).

use anick::parse::parse_presentation;
use anick::report::{analyse, Analysis};
use wasm_bindgen::prelude::*;

fn run(text: &str, command: Analysis, max_deg: usize) -> Result<anick::report::Rendered, String> {
    let p = parse_presentation(text).map_err(|e| e.to_string())?;
    analyse(command, &p, max_deg, max_deg).map_err(|e| e.to_string())
}

/// Betti table and Koszulness verdict.
pub fn koszul_json(text: &str, max_deg: usize) -> Result<String, String> {
    run(text, Analysis::Koszul, max_deg).map(|r| r.report.to_json())
}

/// Hilbert series prefix and, for quadratic input, the quadratic dual.
pub fn hilbert_dual_json(text: &str, max_deg: usize) -> Result<String, String> {
    let hilbert = run(text, Analysis::Hilbert, max_deg)?.report;
    let dual = match run(text, Analysis::Dual, max_deg) {
        Ok(r) => r.report.payload["dual"].clone(),
        Err(e) => serde_json::json!({ "error": e }),
    };
    let out = serde_json::json!({
        "hilbert": hilbert.payload["hilbert"],
        "certificate": hilbert.payload["certificate"],
        "finiteness": hilbert.payload["finiteness"],
        "dual": dual,
    });
    Ok(serde_json::to_string_pretty(&out).expect("json values serialize"))
}

/// Chain-generation graph as DOT source.
pub fn graph_dot(text: &str, max_deg: usize) -> Result<String, String> {
    run(text, Analysis::Graph, max_deg).map(|r| r.dot.unwrap_or_default())
}

#[wasm_bindgen(js_name = koszul)]
pub fn koszul_js(text: &str, max_deg: usize) -> Result<String, JsValue> {
    koszul_json(text, max_deg).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = hilbertDual)]
pub fn hilbert_dual_js(text: &str, max_deg: usize) -> Result<String, JsValue> {
    hilbert_dual_json(text, max_deg).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = chainGraph)]
pub fn graph_js(text: &str, max_deg: usize) -> Result<String, JsValue> {
    graph_dot(text, max_deg).map_err(|e| JsValue::from_str(&e))
}
