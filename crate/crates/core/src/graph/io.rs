//! Graph text format (`n m` header then `u v` lines with `u < v`) and the
//! JSON alternative `{"n": .., "edges": [[u, v], ..]}`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse { line, message: message.into() }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, GraphError> {
    tok.parse::<usize>().map_err(|_| parse_err(line, format!("expected a non-negative integer, got {tok:?}")))
}

pub fn parse_graph_text(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header line"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(hline + 1, "header must be \"n m\""));
    }
    let n = parse_usize(toks[0], hline + 1)?;
    let m = parse_usize(toks[1], hline + 1)?;
    let mut edges = Vec::with_capacity(m);
    for (i, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(i + 1, "edge line must be \"u v\""));
        }
        let u = parse_usize(toks[0], i + 1)?;
        let v = parse_usize(toks[1], i + 1)?;
        if u >= v {
            return Err(parse_err(i + 1, format!("edge endpoints must satisfy u < v, got {u} {v}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(hline + 1, format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::new(n, &edges)
}

pub fn parse_graph_json(text: &str) -> Result<Graph, GraphError> {
    let parsed: GraphJson = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    let edges: Vec<(usize, usize)> = parsed.edges.iter().map(|e| (e[0], e[1])).collect();
    Graph::new(parsed.n, &edges)
}

/// Accepts either format, choosing JSON when the first non-blank byte is `{`.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph_text(text)
    }
}

pub fn write_graph_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String cannot fail");
    }
    out
}

pub fn write_graph_json(g: &Graph) -> serde_json::Value {
    serde_json::to_value(GraphJson { n: g.vertex_count(), edges: g.edges().map(|(u, v)| [u, v]).collect() })
        .expect("graph JSON is always serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::j_graph;
    use proptest::prelude::*;

    #[test]
    fn text_golden() {
        let g = crate::constructions::cycle(4);
        assert_eq!(write_graph_text(&g), "4 4\n0 1\n0 3\n1 2\n2 3\n");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_graph_text("3 1\n1 0\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_graph_text("3 2\n0 1\n0 1\n"), Err(GraphError::DuplicateEdge(0, 1))));
        assert!(matches!(parse_graph_text("3 2\n0 1\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(parse_graph_text("3 1\n0 3\n"), Err(GraphError::VertexOutOfRange { .. })));
        assert!(matches!(parse_graph_text(""), Err(GraphError::Parse { .. })));
    }

    #[test]
    fn json_format() {
        let g = parse_graph(r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(write_graph_json(&g).to_string(), r#"{"edges":[[0,1],[1,2]],"n":3}"#);
        let j = j_graph(8, 2).unwrap();
        assert_eq!(parse_graph(&write_graph_json(&j).to_string()).unwrap(), j);
    }

    proptest! {
        #[test]
        fn text_round_trip(n in 0usize..12, bits in proptest::collection::vec(any::<bool>(), 66)) {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] { edges.push((u, v)); }
                    k += 1;
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            prop_assert_eq!(parse_graph(&write_graph_text(&g)).unwrap(), g);
        }
    }
}
