//! Simple undirected graphs and the clique machinery built on them.

mod cliques;
mod io;
mod iso;
mod k3r;

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use cliques::{clique_vector, find_clique, for_each_clique, CliqueVector};
pub use io::{parse_graph, parse_graph_json, parse_graph_text, write_graph_json, write_graph_text};
pub use iso::{
    are_isomorphic, canonical_form, canonical_labeling, find_isomorphism, verify_isomorphism, CanonicalForm,
};
pub use k3r::{contains_k3r, is_k3r_witness, K3rWitness};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertices {0} and {1} are not adjacent, so the set is not a clique")]
    NotAClique(usize, usize),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Adjacency is kept twice: as strictly sorted neighbor lists for ordered
/// scans and as bitsets for the set algebra that clique expansion needs.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    neighbors: Vec<Vec<usize>>,
    rows: Vec<FixedBitSet>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph, rejecting loops, out-of-range endpoints and repeated edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if rows[u].contains(v) {
                let (a, b) = (u.min(v), u.max(v));
                return Err(GraphError::DuplicateEdge(a, b));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    /// The graph with no edges on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_rows(vec![FixedBitSet::with_capacity(n); n])
    }

    pub fn complete(n: usize) -> Self {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (v, row) in rows.iter_mut().enumerate() {
            row.insert_range(..);
            row.set(v, false);
        }
        Self::from_rows(rows)
    }

    pub(crate) fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        let neighbors: Vec<Vec<usize>> = rows.iter().map(|r| r.ones().collect()).collect();
        let edge_count = neighbors.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { neighbors, rows, edge_count }
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.rows[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.neighbors.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    /// `|N(v) ∩ W|`.
    pub fn degree_into(&self, v: usize, w: &[usize]) -> usize {
        w.iter().filter(|&&u| self.rows[v].contains(u)).count()
    }

    pub fn degree_into_set(&self, v: usize, w: &FixedBitSet) -> usize {
        self.rows[v].intersection_count(w)
    }

    /// A bitset over `0..n` holding exactly `vertices`.
    pub fn vertex_set(&self, vertices: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.vertex_count());
        for &v in vertices {
            s.insert(v);
        }
        s
    }

    /// Induced subgraph on `vertices` (taken in sorted order). The second value
    /// maps new indices back to the original vertices.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut map: Vec<usize> = vertices.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let k = map.len();
        let mut rows = vec![FixedBitSet::with_capacity(k); k];
        for (i, &v) in map.iter().enumerate() {
            for &u in &self.neighbors[v] {
                if index[u] != usize::MAX {
                    rows[i].insert(index[u]);
                }
            }
        }
        (Graph::from_rows(rows), map)
    }

    /// The link `G[∩_{v∈σ} N(v)]` of a clique, with the map from new indices
    /// to original vertices.
    pub fn link(&self, sigma: &Clique) -> (Graph, Vec<usize>) {
        let common = self.common_neighborhood(sigma.vertices());
        let vs: Vec<usize> = common.ones().collect();
        self.induced_subgraph(&vs)
    }

    /// Intersection of the neighborhoods of `vertices`; all of `V` for an empty slice.
    pub fn common_neighborhood(&self, vertices: &[usize]) -> FixedBitSet {
        let mut common = FixedBitSet::with_capacity(self.vertex_count());
        common.insert_range(..);
        for &v in vertices {
            common.intersect_with(&self.rows[v]);
        }
        common
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n, "permutation length must match vertex count");
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in self.edges() {
            rows[perm[u]].insert(perm[v]);
            rows[perm[v]].insert(perm[u]);
        }
        Graph::from_rows(rows)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut rows = self.rows.clone();
        rows[u].insert(v);
        rows[v].insert(u);
        Graph::from_rows(rows)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut rows = self.rows.clone();
        rows[u].set(v, false);
        rows[v].set(u, false);
        Graph::from_rows(rows)
    }

    /// Returns a mutable copy of the adjacency rows for bulk edits.
    pub(crate) fn rows(&self) -> Vec<FixedBitSet> {
        self.rows.clone()
    }

    /// Disjoint union of `self` followed by `other` (vertices of `other` are shifted).
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let (a, b) = (self.vertex_count(), other.vertex_count());
        let mut rows = vec![FixedBitSet::with_capacity(a + b); a + b];
        for (u, v) in self.edges() {
            rows[u].insert(v);
            rows[v].insert(u);
        }
        for (u, v) in other.edges() {
            rows[a + u].insert(a + v);
            rows[a + v].insert(a + u);
        }
        Graph::from_rows(rows)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in &self.neighbors[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        f.debug_struct("Graph").field("n", &self.vertex_count()).field("edges", &edges).finish()
    }
}

/// A clique of some host graph, stored as a strictly sorted vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clique(Vec<usize>);

impl Clique {
    /// Checks that `vertices` are pairwise adjacent in `g`.
    pub fn new(g: &Graph, vertices: &[usize]) -> Result<Self, GraphError> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        for &v in &vs {
            if v >= g.vertex_count() {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: g.vertex_count() });
            }
        }
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !g.is_adjacent(u, v) {
                    return Err(GraphError::NotAClique(u, v));
                }
            }
        }
        Ok(Clique(vs))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The link of a clique given as a vertex list. Fails with `NotAClique` if the
/// vertices are not pairwise adjacent.
pub fn link_graph(g: &Graph, sigma: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
    let c = Clique::new(g, sigma)?;
    Ok(g.link(&c))
}
