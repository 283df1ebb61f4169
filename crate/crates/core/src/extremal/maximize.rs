use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{check_extremal, is_radical, ExtremalConstants, ExtremalError, PartitionCertificate, Parts, VertexType};
use crate::face_vectors::{sigma_shift_delta, CliqueFunction};
use crate::graph::{clique_vector, CliqueVector, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MoveKind {
    EdgeAdd,
    Type1Relocate,
    Type2Relocate,
    PathRepair,
    Rebalance,
}

/// One applied move. `vertices` holds the added edge for `EdgeAdd` and
/// `PathRepair`, and the moved vertex for the relocations and `Rebalance`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Move {
    pub kind: MoveKind,
    pub vertices: Vec<usize>,
    pub from_part: usize,
    pub to_part: usize,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub gain: BigRational,
    /// Closed-form gain from the symmetric-polynomial shift; `Rebalance` only.
    #[serde(serialize_with = "crate::json::ser_opt_rational")]
    pub predicted_gain: Option<BigRational>,
    pub pre: CliqueVector,
    pub post: CliqueVector,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MoveLog {
    pub moves: Vec<Move>,
}

impl MoveLog {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn count(&self, kind: MoveKind) -> usize {
        self.moves.iter().filter(|m| m.kind == kind).count()
    }
}

#[derive(Debug, Clone, Default)]
pub struct MaximizeOptions {
    /// Overrides `η = 1/(14 r^r)`.
    pub eta: Option<BigRational>,
}

#[derive(Debug, Clone)]
pub struct MaximizeOutcome {
    pub graph: Graph,
    pub parts: Parts,
    pub log: MoveLog,
    pub radical: bool,
    pub value: BigRational,
    pub certificate: PartitionCertificate,
}

struct Candidate {
    kind: MoveKind,
    graph: Graph,
    parts: Parts,
    vertices: Vec<usize>,
    from_part: usize,
    to_part: usize,
}

fn part_of(parts: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut home = vec![0; n];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            home[v] = i;
        }
    }
    home
}

fn edge_add(g: &Graph, parts: &[Vec<usize>]) -> Option<Candidate> {
    let n = g.vertex_count();
    let home = part_of(parts, n);
    for u in 0..n {
        for v in u + 1..n {
            if home[u] != 0 && home[v] != 0 && home[u] != home[v] && !g.is_adjacent(u, v) {
                return Some(Candidate {
                    kind: MoveKind::EdgeAdd,
                    graph: g.with_edge(u, v),
                    parts: parts.to_vec(),
                    vertices: vec![u, v],
                    from_part: home[u],
                    to_part: home[v],
                });
            }
        }
    }
    None
}

/// Replaces `v ∈ V_0` by a vertex of the smallest part `V_j` with
/// `|V_j| < n/r` (lowest index on ties), joined to every other `V_i`.
fn relocate(g: &Graph, parts: &[Vec<usize>], cert: &PartitionCertificate, want_type1: bool) -> Option<Candidate> {
    let n = g.vertex_count();
    let r = parts.len() - 1;
    let v = cert
        .vertex_types
        .iter()
        .filter(|(_, t)| match t {
            VertexType::Type1 { .. } => want_type1,
            VertexType::Type2 { .. } => !want_type1,
            VertexType::Untyped => false,
        })
        .map(|&(v, _)| v)
        .min()?;
    let j = (1..=r).filter(|&j| parts[j].len() * r < n).min_by_key(|&j| (parts[j].len(), j))?;
    let mut rows = g.rows();
    for u in g.neighbors(v).to_vec() {
        rows[u].set(v, false);
        rows[v].set(u, false);
    }
    for (i, p) in parts.iter().enumerate().skip(1) {
        if i != j {
            for &u in p {
                rows[u].insert(v);
                rows[v].insert(u);
            }
        }
    }
    let mut new_parts = parts.to_vec();
    new_parts[0].retain(|&x| x != v);
    new_parts[j].push(v);
    new_parts[j].sort_unstable();
    Some(Candidate {
        kind: if want_type1 { MoveKind::Type1Relocate } else { MoveKind::Type2Relocate },
        graph: Graph::from_rows(rows),
        parts: new_parts,
        vertices: vec![v],
        from_part: 0,
        to_part: j,
    })
}

fn set_intra(rows: &mut [fixedbitset::FixedBitSet], part: &[usize], edges: &[(usize, usize)]) {
    for &u in part {
        for &w in part {
            rows[u].set(w, false);
        }
    }
    for &(a, b) in edges {
        rows[a].insert(b);
        rows[b].insert(a);
    }
}

fn path_edges(p: &[usize], len: usize) -> Vec<(usize, usize)> {
    (0..len).map(|i| (p[i], p[i + 1])).collect()
}

fn cycle_edges(p: &[usize]) -> Vec<(usize, usize)> {
    let mut e = path_edges(p, p.len() - 1);
    e.push((p[p.len() - 1], p[0]));
    e
}

/// Rewires a part with fewer edges than vertices as a path with the same
/// number of edges, then adds one edge extending it (closing it into a cycle
/// when it already spans the part).
fn path_repair(g: &Graph, parts: &[Vec<usize>]) -> Option<Candidate> {
    for (i, p) in parts.iter().enumerate().skip(1) {
        let m = p.len();
        let e: usize = p.iter().map(|&v| g.degree_into(v, p)).sum::<usize>() / 2;
        if e >= m || (e + 1 == m && m < 4) {
            continue;
        }
        let mut sorted = p.clone();
        sorted.sort_unstable();
        let (mut edges, added) = if e + 1 < m {
            (path_edges(&sorted, e + 1), (sorted[e], sorted[e + 1]))
        } else {
            (cycle_edges(&sorted), (sorted[m - 1], sorted[0]))
        };
        edges.sort_unstable();
        let mut rows = g.rows();
        set_intra(&mut rows, &sorted, &edges);
        return Some(Candidate {
            kind: MoveKind::PathRepair,
            graph: Graph::from_rows(rows),
            parts: parts.to_vec(),
            vertices: vec![added.0.min(added.1), added.0.max(added.1)],
            from_part: i,
            to_part: i,
        });
    }
    None
}

/// Moves the largest vertex of the first largest part into the first
/// smallest part when their sizes differ by at least 2; both parts are
/// rewired as cycles and the cross edges stay complete.
fn rebalance(g: &Graph, parts: &[Vec<usize>]) -> Option<Candidate> {
    let r = parts.len() - 1;
    let a = (1..=r).max_by_key(|&i| (parts[i].len(), std::cmp::Reverse(i)))?;
    let b = (1..=r).min_by_key(|&i| (parts[i].len(), i))?;
    if parts[a].len() < parts[b].len() + 2 || parts[a].len() < 5 {
        return None;
    }
    let x = *parts[a].iter().max().expect("nonempty part");
    let mut new_parts = parts.to_vec();
    new_parts[a].retain(|&v| v != x);
    new_parts[b].push(x);
    new_parts[b].sort_unstable();
    let mut rows = g.rows();
    for u in g.neighbors(x).to_vec() {
        rows[u].set(x, false);
        rows[x].set(u, false);
    }
    for (i, p) in new_parts.iter().enumerate().skip(1) {
        if i != b {
            for &u in p {
                rows[u].insert(x);
                rows[x].insert(u);
            }
        }
    }
    for i in [a, b] {
        let edges = cycle_edges(&new_parts[i]);
        set_intra(&mut rows, &new_parts[i], &edges);
    }
    Some(Candidate {
        kind: MoveKind::Rebalance,
        graph: Graph::from_rows(rows),
        parts: new_parts,
        vertices: vec![x],
        from_part: a,
        to_part: b,
    })
}

/// `F(H') − F(H)` from the part-shift identity, with the donor part first
/// and the receiving part second.
fn predicted_rebalance_gain(f: &CliqueFunction, parts: &[Vec<usize>], from: usize, to: usize) -> BigRational {
    let mut sizes = vec![parts[from].len(), parts[to].len()];
    sizes.extend((1..parts.len()).filter(|&i| i != from && i != to).map(|i| parts[i].len()));
    f.symmetric_coefficients()
        .iter()
        .enumerate()
        .map(|(j, c)| c * BigRational::from_integer(sigma_shift_delta(&sizes, j).expect("at least two parts")))
        .sum()
}

/// Local search over extremal graphs: applies the first available move in
/// the order EdgeAdd, Type1Relocate, Type2Relocate, PathRepair, Rebalance
/// until none applies. Every move must strictly increase `F` and keep the
/// partition extremal; otherwise the run aborts with a diagnostic.
pub fn maximize_clique_fn(
    f: &CliqueFunction,
    r: usize,
    start: &Graph,
    parts: &[Vec<usize>],
    opts: &MaximizeOptions,
) -> Result<MaximizeOutcome, ExtremalError> {
    let k = f.order();
    if k < 2 || k > r {
        return Err(ExtremalError::BadOrder { k, r });
    }
    let eta = opts.eta.clone().unwrap_or_else(|| ExtremalConstants::eta(r));
    let mut cert = check_extremal(start, parts, &eta, r)?;
    if !cert.holds {
        return Err(ExtremalError::NotExtremal(Box::new(cert)));
    }
    let mut g = start.clone();
    let mut parts: Parts = parts.to_vec();
    let mut cv = clique_vector(&g, None);
    let mut value = f.eval(&cv);
    let mut log = MoveLog::default();
    loop {
        let candidate = edge_add(&g, &parts)
            .or_else(|| relocate(&g, &parts, &cert, true))
            .or_else(|| relocate(&g, &parts, &cert, false))
            .or_else(|| path_repair(&g, &parts))
            .or_else(|| rebalance(&g, &parts));
        let Some(c) = candidate else { break };
        let post = clique_vector(&c.graph, None);
        let new_value = f.eval(&post);
        let gain = &new_value - &value;
        if gain <= BigRational::zero() {
            return Err(ExtremalError::NonImprovingMove { kind: c.kind, gain: crate::json::rational_string(&gain) });
        }
        let new_cert = check_extremal(&c.graph, &c.parts, &eta, r)?;
        if !new_cert.holds {
            return Err(ExtremalError::MoveBrokeExtremality { kind: c.kind });
        }
        let predicted_gain =
            (c.kind == MoveKind::Rebalance).then(|| predicted_rebalance_gain(f, &parts, c.from_part, c.to_part));
        log.moves.push(Move {
            kind: c.kind,
            vertices: c.vertices,
            from_part: c.from_part,
            to_part: c.to_part,
            gain,
            predicted_gain,
            pre: cv,
            post: post.clone(),
        });
        g = c.graph;
        parts = c.parts;
        cv = post;
        value = new_value;
        cert = new_cert;
    }
    let radical = is_radical(&g, &parts)?;
    Ok(MaximizeOutcome { graph: g, parts, log, radical, value, certificate: cert })
}

/// `F(J_r(n))` through the symmetric-polynomial formula with balanced parts.
pub fn value_at_j(f: &CliqueFunction, n: usize, r: usize) -> BigRational {
    let sizes = super::balanced_sizes(n, r);
    f.symmetric_coefficients()
        .iter()
        .enumerate()
        .map(|(j, c)| c * BigRational::from_integer(crate::face_vectors::elementary_symmetric(&sizes, j)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{j_graph, j_graph_partitioned, join_of_cycles};
    use crate::extremal::ratio;
    use crate::extremal::tests::with_v0;
    use crate::graph::are_isomorphic;

    fn e(k: usize) -> CliqueFunction {
        CliqueFunction::clique_count(k)
    }

    fn assert_consistent(out: &MaximizeOutcome) {
        for w in out.log.moves.windows(2) {
            assert_eq!(w[0].post, w[1].pre);
        }
        for m in &out.log.moves {
            assert!(m.gain > BigRational::zero());
            if let Some(p) = &m.predicted_gain {
                assert_eq!(p, &m.gain);
            }
        }
    }

    #[test]
    fn single_missing_cross_edge_is_added() {
        let j = j_graph_partitioned(112, 2).unwrap();
        let (u, v) = (j.parts[0][0], j.parts[1][0]);
        let g = j.graph.without_edge(u, v);
        let out = maximize_clique_fn(&e(2), 2, &g, &with_v0(&j.parts), &MaximizeOptions::default()).unwrap();
        assert_eq!(out.log.len(), 1);
        assert_eq!(out.log.moves[0].kind, MoveKind::EdgeAdd);
        assert_eq!(out.log.moves[0].vertices, vec![u, v]);
        assert_eq!(out.graph, j.graph);
        assert!(out.radical);
        assert_consistent(&out);
    }

    #[test]
    fn default_eta_rejects_a_missing_edge_at_24_vertices() {
        let j = j_graph_partitioned(24, 2).unwrap();
        let g = j.graph.without_edge(j.parts[0][0], j.parts[1][0]);
        let parts = with_v0(&j.parts);
        assert!(matches!(
            maximize_clique_fn(&e(2), 2, &g, &parts, &MaximizeOptions::default()),
            Err(ExtremalError::NotExtremal(_))
        ));
        let opts = MaximizeOptions { eta: Some(ratio(1, 10)) };
        let out = maximize_clique_fn(&e(2), 2, &g, &parts, &opts).unwrap();
        assert_eq!(out.log.count(MoveKind::EdgeAdd), 1);
        assert!(are_isomorphic(&out.graph, &j.graph));
    }

    #[test]
    fn broken_cycle_is_repaired() {
        let j = j_graph_partitioned(24, 2).unwrap();
        let (a, b) = (j.parts[1][3], j.parts[1][4]);
        let g = j.graph.without_edge(a, b);
        let out = maximize_clique_fn(&e(2), 2, &g, &with_v0(&j.parts), &MaximizeOptions::default()).unwrap();
        assert_eq!(out.log.len(), 1);
        assert_eq!(out.log.moves[0].kind, MoveKind::PathRepair);
        assert!(out.radical);
        assert!(are_isomorphic(&out.graph, &j.graph));
        assert_consistent(&out);
    }

    #[test]
    fn unbalanced_parts_are_rebalanced() {
        let start = join_of_cycles(&[13, 11]).unwrap();
        let out =
            maximize_clique_fn(&e(2), 2, &start.graph, &with_v0(&start.parts), &MaximizeOptions::default()).unwrap();
        assert_eq!(out.log.len(), 1);
        let m = &out.log.moves[0];
        assert_eq!(m.kind, MoveKind::Rebalance);
        assert_eq!(m.gain, ratio(1, 1));
        assert_eq!(m.predicted_gain, Some(ratio(1, 1)));
        assert_eq!(out.value, value_at_j(&e(2), 24, 2));
        assert!(out.radical);
        assert!(are_isomorphic(&out.graph, &j_graph(24, 2).unwrap()));
    }

    #[test]
    fn exceptional_vertices_are_relocated() {
        let eta = ratio(99, 100);
        // n = 130 allows one vertex in V_0 under this η
        let base = j_graph_partitioned(129, 2).unwrap();
        // Type 1: an isolated extra vertex
        let g = base.graph.disjoint_union(&Graph::empty(1));
        let parts = vec![vec![129], base.parts[0].clone(), base.parts[1].clone()];
        let opts = MaximizeOptions { eta: Some(eta.clone()) };
        let cert = check_extremal(&g, &parts, &eta, 2).unwrap();
        assert!(cert.holds, "{:?}", cert.conditions);
        assert!(matches!(cert.vertex_types[0].1, VertexType::Type1 { .. }));
        let out = maximize_clique_fn(&e(2), 2, &g, &parts, &opts).unwrap();
        assert_eq!(out.log.moves[0].kind, MoveKind::Type1Relocate);
        assert_eq!(out.log.moves[0].to_part, 2);
        assert!(out.radical);
        assert_eq!(out.value, value_at_j(&e(2), 130, 2));
        assert_consistent(&out);

        // Type 2: three neighbors in each part
        let mut rows = g.rows();
        for &u in base.parts[0][..3].iter().chain(&base.parts[1][..3]) {
            rows[u].insert(129);
            rows[129].insert(u);
        }
        let g2 = Graph::from_rows(rows);
        let cert = check_extremal(&g2, &parts, &eta, 2).unwrap();
        assert!(matches!(cert.vertex_types[0].1, VertexType::Type2 { .. }));
        let out = maximize_clique_fn(&e(2), 2, &g2, &parts, &opts).unwrap();
        assert_eq!(out.log.moves[0].kind, MoveKind::Type2Relocate);
        assert!(out.radical);
        assert_consistent(&out);
    }

    #[test]
    fn order_must_fit_r() {
        let j = j_graph_partitioned(24, 2).unwrap();
        let parts = with_v0(&j.parts);
        assert_eq!(
            maximize_clique_fn(&e(3), 2, &j.graph, &parts, &MaximizeOptions::default()).unwrap_err(),
            ExtremalError::BadOrder { k: 3, r: 2 }
        );
        let f = CliqueFunction::new(vec![ratio(1, 1), ratio(0, 1)]).unwrap();
        assert!(matches!(
            maximize_clique_fn(&f, 2, &j.graph, &parts, &MaximizeOptions::default()),
            Err(ExtremalError::BadOrder { .. })
        ));
    }

    #[test]
    fn radical_start_needs_no_moves() {
        let j = j_graph_partitioned(24, 3).unwrap();
        let out = maximize_clique_fn(&e(3), 3, &j.graph, &with_v0(&j.parts), &MaximizeOptions::default()).unwrap();
        assert!(out.log.is_empty() && out.radical);
        assert_eq!(out.value, value_at_j(&e(3), 24, 3));
    }
}
