use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::HarnessError;
use crate::complex::{is_homology_sphere, SimplicialComplex};
use crate::constructions::{j_graph_partitioned, j_star_partitioned};
use crate::face_vectors::multipartite_clique_count;
use crate::graph::{clique_vector, Graph};

/// Swaps the suspension `C ∗ {a, b}` of the first part's cycle inside
/// `J*_r(n)` for another flag 2-sphere on the same number of vertices. The
/// rest of the graph is joined to that piece, so face numbers are unchanged.
/// The replacement's vertices fill the first part in order, then the two
/// apexes.
pub fn non_uniqueness_variant(r: usize, n: usize, replacement: &SimplicialComplex) -> Result<Graph, HarnessError> {
    let js = j_star_partitioned(n, r)?;
    let mut slots = js.parts[0].clone();
    slots.extend([n - 2, n - 1]);
    let k = replacement.faces(0).len();
    if k != slots.len() || replacement.vertex_count() != k {
        return Err(HarnessError::BadReplacement(format!(
            "need a complex on exactly {} vertices, got {} of {} used",
            slots.len(),
            k,
            replacement.vertex_count()
        )));
    }
    if replacement.dimension() != 2 || !replacement.is_flag() || !is_homology_sphere(replacement) {
        return Err(HarnessError::BadReplacement("replacement is not a flag homology 2-sphere".into()));
    }
    let mut rows = js.graph.rows();
    for &u in &slots {
        for &v in &slots {
            rows[u].set(v, false);
        }
    }
    for (u, v) in replacement.one_skeleton().edges() {
        rows[slots[u]].insert(slots[v]);
        rows[slots[v]].insert(slots[u]);
    }
    Ok(Graph::from_rows(rows))
}

/// An 8-vertex flag 2-sphere that is not a suspension: every vertex has
/// degree 4 or 5.
pub fn non_suspension_sphere_8() -> SimplicialComplex {
    const FACETS: [[usize; 3]; 12] = [
        [0, 1, 2],
        [0, 1, 3],
        [0, 2, 4],
        [0, 3, 5],
        [0, 4, 5],
        [1, 2, 6],
        [1, 3, 6],
        [2, 4, 7],
        [2, 6, 7],
        [3, 5, 6],
        [4, 5, 7],
        [5, 6, 7],
    ];
    SimplicialComplex::from_facets(8, FACETS.iter().map(|f| f.to_vec())).expect("valid facets")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    /// `e_{r+1}(J_r(n))` by clique enumeration.
    #[serde(serialize_with = "crate::json::ser_bigint")]
    pub count: BigInt,
    /// The same number from the part sizes alone.
    #[serde(serialize_with = "crate::json::ser_bigint")]
    pub formula: BigInt,
    /// `count / n^r`.
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub ratio: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthTable {
    pub r: usize,
    pub rows: Vec<GrowthRow>,
    /// Largest ratio seen: the empirical constant `C_r` over the range.
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub max_ratio: BigRational,
}

/// `e_{r+1}(J_r(n)) / n^r` for `n_min ≤ n ≤ n_max`.
pub fn growth_probe(r: usize, n_min: usize, n_max: usize) -> Result<GrowthTable, HarnessError> {
    if r == 0 {
        return Err(HarnessError::BadInput("r must be positive".into()));
    }
    if n_min < 4 * r || n_min > n_max {
        return Err(HarnessError::BadInput(format!("need {} <= n_min <= n_max, got {n_min}..={n_max}", 4 * r)));
    }
    let mut rows = Vec::with_capacity(n_max - n_min + 1);
    for n in n_min..=n_max {
        let j = j_graph_partitioned(n, r)?;
        let count = BigInt::from(clique_vector(&j.graph, Some(r + 1)).get(r + 1));
        let sizes: Vec<usize> = j.parts.iter().map(Vec::len).collect();
        let formula = multipartite_clique_count(&sizes, &sizes, r + 1).expect("J_r(n) is in the multipartite class");
        let ratio = BigRational::new(count.clone(), num_traits::pow(BigInt::from(n), r));
        rows.push(GrowthRow { n, count, formula, ratio });
    }
    let max_ratio = rows.iter().map(|row| row.ratio.clone()).max().expect("nonempty range");
    Ok(GrowthTable { r, rows, max_ratio })
}
