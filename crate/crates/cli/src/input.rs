use std::fs;
use std::path::Path;

use flagext::complex::{parse_complex, SimplicialComplex};
use flagext::extremal::{parse_partition, Parts};
use flagext::graph::{parse_graph, Graph};
use num_rational::BigRational;

use crate::CliError;

/// A graph file or a complex file; the header line tells them apart
/// (`n m` or JSON for graphs, a lone `n` for complexes).
pub enum Input {
    Graph(Graph),
    Complex(SimplicialComplex),
}

impl Input {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = read_text(path)?;
        let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        let ctx = |e: &dyn std::fmt::Display| CliError::Input(format!("{}: {e}", path.display()));
        if first.trim_start().starts_with('{') || first.split_whitespace().count() == 2 {
            parse_graph(&text).map(Input::Graph).map_err(|e| ctx(&e))
        } else {
            parse_complex(&text).map(Input::Complex).map_err(|e| ctx(&e))
        }
    }

    /// The graph itself, or the 1-skeleton of a complex.
    pub fn graph(&self) -> Graph {
        match self {
            Input::Graph(g) => g.clone(),
            Input::Complex(k) => k.one_skeleton(),
        }
    }

    /// The complex itself, or the clique complex of a graph.
    pub fn complex(&self) -> SimplicialComplex {
        match self {
            Input::Graph(g) => SimplicialComplex::clique_complex(g),
            Input::Complex(k) => k.clone(),
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_partition(path: &Path) -> Result<Parts, CliError> {
    parse_partition(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn rational(text: &str) -> Result<BigRational, CliError> {
    flagext::json::parse_rational(text.trim()).map_err(|e| CliError::Usage(format!("{text:?}: {e}")))
}

/// Comma-separated list such as `1,0,-2` or `1/2,3`.
pub fn rational_list(text: &str) -> Result<Vec<BigRational>, CliError> {
    text.split(',').map(rational).collect()
}

pub fn usize_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("expected a non-negative integer, got {t:?}")))
        })
        .collect()
}
