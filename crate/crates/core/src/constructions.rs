//! Builders for the named graph families: Turán graphs, joins of cycles
//! `J_r(n)`, their double suspensions `J*_r(n)`, and `K_3^r`.
//!
//! Vertices are assigned to parts in contiguous blocks with the larger parts
//! first; the cycle inside a part joins consecutive block indices plus the
//! wrap-around edge.

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("need at least {needed} vertices for r = {r}, got {n}")]
    TooFewVertices { n: usize, r: usize, needed: usize },
    #[error("r must be positive")]
    ZeroParts,
    #[error("a part of size {0} cannot carry an induced cycle of length at least 4")]
    PartTooSmall(usize),
}

/// Sizes `(p_1, …, p_r)` of the parts of a multipartite structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartSizes(pub Vec<usize>);

impl PartSizes {
    /// `⌊n/r⌋` / `⌈n/r⌉` sizes, larger parts first.
    pub fn balanced(n: usize, r: usize) -> Self {
        assert!(r > 0, "r must be positive");
        let (q, rem) = (n / r, n % r);
        PartSizes((0..r).map(|i| q + usize::from(i < rem)).collect())
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        match (self.0.iter().max(), self.0.iter().min()) {
            (Some(a), Some(b)) => a - b <= 1,
            _ => true,
        }
    }

    /// Contiguous vertex blocks for these sizes.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut start = 0;
        self.0
            .iter()
            .map(|&s| {
                let b: Vec<usize> = (start..start + s).collect();
                start += s;
                b
            })
            .collect()
    }
}

/// A graph together with the parts it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedGraph {
    pub graph: Graph,
    pub parts: Vec<Vec<usize>>,
}

impl PartitionedGraph {
    pub fn sizes(&self) -> PartSizes {
        PartSizes(self.parts.iter().map(Vec::len).collect())
    }
}

fn complete_multipartite(blocks: &[Vec<usize>], n: usize) -> Vec<FixedBitSet> {
    let mut rows = vec![FixedBitSet::with_capacity(n); n];
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            for &u in a {
                for &v in b {
                    rows[u].insert(v);
                    rows[v].insert(u);
                }
            }
        }
    }
    rows
}

fn add_cycle(rows: &mut [FixedBitSet], block: &[usize]) {
    let k = block.len();
    for i in 0..k {
        let (u, v) = (block[i], block[(i + 1) % k]);
        rows[u].insert(v);
        rows[v].insert(u);
    }
}

/// Complete multipartite graph with the given part sizes, no edges inside parts.
pub fn complete_multipartite_with(sizes: &PartSizes) -> PartitionedGraph {
    let parts = sizes.blocks();
    let rows = complete_multipartite(&parts, sizes.total());
    PartitionedGraph { graph: Graph::from_rows(rows), parts }
}

/// `T_r(n)` with its parts. When `n < r` some parts are empty.
pub fn turan_partitioned(n: usize, r: usize) -> PartitionedGraph {
    complete_multipartite_with(&PartSizes::balanced(n, r))
}

pub fn turan(n: usize, r: usize) -> Graph {
    turan_partitioned(n, r).graph
}

/// Complete multipartite graph whose parts each induce a cycle of the given
/// length: the join of the cycles `C_{p_1} * … * C_{p_r}`.
pub fn join_of_cycles(lengths: &[usize]) -> Result<PartitionedGraph, ConstructionError> {
    if lengths.is_empty() {
        return Err(ConstructionError::ZeroParts);
    }
    if let Some(&bad) = lengths.iter().find(|&&l| l < 4) {
        return Err(ConstructionError::PartTooSmall(bad));
    }
    let sizes = PartSizes(lengths.to_vec());
    let parts = sizes.blocks();
    let mut rows = complete_multipartite(&parts, sizes.total());
    for b in &parts {
        add_cycle(&mut rows, b);
    }
    Ok(PartitionedGraph { graph: Graph::from_rows(rows), parts })
}

/// `J_r(n)` with its parts; requires `n ≥ 4r`.
pub fn j_graph_partitioned(n: usize, r: usize) -> Result<PartitionedGraph, ConstructionError> {
    if r == 0 {
        return Err(ConstructionError::ZeroParts);
    }
    if n < 4 * r {
        return Err(ConstructionError::TooFewVertices { n, r, needed: 4 * r });
    }
    join_of_cycles(&PartSizes::balanced(n, r).0)
}

pub fn j_graph(n: usize, r: usize) -> Result<Graph, ConstructionError> {
    Ok(j_graph_partitioned(n, r)?.graph)
}

/// `J*_r(n)`: `J_r(n−2)` plus two non-adjacent apexes (indices `n−2`, `n−1`)
/// joined to every other vertex. The returned parts are those of `J_r(n−2)`.
pub fn j_star_partitioned(n: usize, r: usize) -> Result<PartitionedGraph, ConstructionError> {
    if r == 0 {
        return Err(ConstructionError::ZeroParts);
    }
    if n < 4 * r + 2 {
        return Err(ConstructionError::TooFewVertices { n, r, needed: 4 * r + 2 });
    }
    let base = j_graph_partitioned(n - 2, r)?;
    let apexes = Graph::empty(2);
    Ok(PartitionedGraph { graph: graph_join(&base.graph, &apexes), parts: base.parts })
}

pub fn j_star(n: usize, r: usize) -> Result<Graph, ConstructionError> {
    Ok(j_star_partitioned(n, r)?.graph)
}

/// `K_3^r = T_r(3r)`.
pub fn k3r(r: usize) -> Graph {
    turan(3 * r, r)
}

/// Disjoint union plus every edge between the two sides.
pub fn graph_join(g: &Graph, h: &Graph) -> Graph {
    let a = g.vertex_count();
    let n = a + h.vertex_count();
    let mut rows = g.disjoint_union(h).rows();
    for u in 0..a {
        for v in a..n {
            rows[u].insert(v);
            rows[v].insert(u);
        }
    }
    Graph::from_rows(rows)
}

/// The cycle `C_len`; `len ≥ 3`.
pub fn cycle(len: usize) -> Graph {
    assert!(len >= 3, "a cycle needs at least 3 vertices");
    let mut rows = vec![FixedBitSet::with_capacity(len); len];
    add_cycle(&mut rows, &(0..len).collect::<Vec<_>>());
    Graph::from_rows(rows)
}

/// The star `K_{1,k}` with center 0.
pub fn star(k: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..=k).map(|v| (0, v)).collect();
    Graph::new(k + 1, &edges).expect("star edges are valid")
}

/// The suspension of a graph: two non-adjacent apexes joined to everything.
pub fn suspension(g: &Graph) -> Graph {
    graph_join(g, &Graph::empty(2))
}
