//! Browser bindings. Every export returns a JSON string; failures come back
//! as `{"error": "..."}` so the page never has to catch exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use flagext::complex::{is_homology_manifold, SimplicialComplex};
use flagext::constructions::{j_graph_partitioned, join_of_cycles, PartSizes};
use flagext::extremal::{maximize_clique_fn, MaximizeOptions, Parts};
use flagext::face_vectors::{CliqueFunction, FaceVectorSet};
use flagext::graph::{clique_vector, Graph};
use flagext::harness::growth_probe;

/// Above this size the manifold certificate is skipped to keep the page
/// responsive.
const CERTIFY_LIMIT: usize = 16;

fn render(v: Result<Value, String>) -> String {
    match v {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn edges(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().map(|(u, v)| [u, v]).collect()
}

fn j_stats(n: usize, r: usize) -> Result<Value, String> {
    let j = j_graph_partitioned(n, r).map_err(|e| e.to_string())?;
    let cv = clique_vector(&j.graph, None);
    let vectors = FaceVectorSet::from_clique_vector(&cv);
    let manifold = (n <= CERTIFY_LIMIT)
        .then(|| is_homology_manifold(&SimplicialComplex::clique_complex(&j.graph)).map(|c| c.holds))
        .transpose()
        .map_err(|e| e.to_string())?;
    Ok(json!({
        "n": n,
        "r": r,
        "edges": edges(&j.graph),
        "parts": j.parts,
        "clique_vector": cv,
        "face_vectors": vectors,
        "manifold": manifold,
    }))
}

/// Sizes unbalanced by one vertex and every part left without its cycle.
fn demo_start(n: usize, r: usize) -> Result<(Graph, Parts), String> {
    let mut sizes = PartSizes::balanced(n, r).0;
    if r >= 2 && sizes[r - 1] > 4 {
        sizes[0] += 1;
        sizes[r - 1] -= 1;
    }
    let full = join_of_cycles(&sizes).map_err(|e| e.to_string())?;
    let mut g = full.graph;
    for p in &full.parts {
        for (i, &u) in p.iter().enumerate() {
            g = g.without_edge(u, p[(i + 1) % p.len()]);
        }
    }
    Ok((g, std::iter::once(Vec::new()).chain(full.parts).collect()))
}

fn maximize_demo(n: usize, r: usize, k: usize) -> Result<Value, String> {
    let f = CliqueFunction::clique_count(k);
    let (start, parts) = demo_start(n, r)?;
    let out = maximize_clique_fn(&f, r, &start, &parts, &MaximizeOptions::default()).map_err(|e| e.to_string())?;
    Ok(json!({
        "start": { "edges": edges(&start), "parts": parts },
        "result": { "edges": edges(&out.graph), "parts": out.parts },
        "moves": out.log,
        "radical": out.radical,
        "value": flagext::json::rational_string(&out.value),
    }))
}

fn growth(r: usize, n_min: usize, n_max: usize) -> Result<Value, String> {
    growth_probe(r, n_min, n_max).map(|t| serde_json::to_value(t).expect("table serializes")).map_err(|e| e.to_string())
}

/// Face numbers of `J_r(n)`, its edges and parts for drawing, and (for small
/// `n`) the manifold certificate.
#[wasm_bindgen(js_name = jStats)]
pub fn j_stats_json(n: usize, r: usize) -> String {
    render(j_stats(n, r))
}

/// Runs the maximizer for `e_k` from a cycle-free, slightly unbalanced start.
#[wasm_bindgen(js_name = maximizeDemo)]
pub fn maximize_demo_json(n: usize, r: usize, k: usize) -> String {
    render(maximize_demo(n, r, k))
}

/// `e_{r+1}(J_r(n)) / n^r` over a range of `n`.
#[wasm_bindgen(js_name = growthTable)]
pub fn growth_table_json(r: usize, n_min: usize, n_max: usize) -> String {
    render(growth(r, n_min, n_max))
}
