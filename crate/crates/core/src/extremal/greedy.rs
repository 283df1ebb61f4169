use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{balanced_sizes, validate_parts, ExtremalError};
use crate::face_vectors::elementary_symmetric;
use crate::graph::{clique_vector, find_clique, is_k3r_witness, Graph, K3rWitness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum GreedyOutcome {
    Found(K3rWitness),
    /// No independent triple was available at `level` (1-based part index);
    /// `candidates` lists the common neighbors that remained there. Level 1
    /// means the seed triple itself is not independent.
    Stuck {
        level: usize,
        candidates: Vec<usize>,
    },
}

fn first_independent_triple(h: &Graph, cand: &[usize]) -> Option<[usize; 3]> {
    for (i, &a) in cand.iter().enumerate() {
        for (j, &b) in cand.iter().enumerate().skip(i + 1) {
            if h.is_adjacent(a, b) {
                continue;
            }
            for &c in &cand[j + 1..] {
                if !h.is_adjacent(a, c) && !h.is_adjacent(b, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Extends the seed triple `w ⊆ V_1` part by part: at level `l + 1` the
/// lexicographically first independent triple among the common neighbors of
/// everything chosen so far inside `A_{l+1}` is taken. `a_sets` lists
/// `A_2, …, A_r`.
pub fn find_k3r_greedy(
    h: &Graph,
    parts: &[Vec<usize>],
    w: [usize; 3],
    a_sets: &[Vec<usize>],
) -> Result<GreedyOutcome, ExtremalError> {
    let n = h.vertex_count();
    validate_parts(n, parts)?;
    let r = parts.len() - 1;
    if r == 0 {
        return Err(ExtremalError::BadInput("need at least one part besides V_0".into()));
    }
    if a_sets.len() + 1 != r {
        return Err(ExtremalError::BadInput(format!("expected {} sets A_2..A_r, got {}", r - 1, a_sets.len())));
    }
    let mut seed = w;
    seed.sort_unstable();
    if seed[0] == seed[1] || seed[1] == seed[2] {
        return Err(ExtremalError::BadInput("seed vertices must be distinct".into()));
    }
    if let Some(v) = seed.iter().find(|v| !parts[1].contains(v)) {
        return Err(ExtremalError::BadInput(format!("seed vertex {v} is not in V_1")));
    }
    for (i, a) in a_sets.iter().enumerate() {
        if let Some(v) = a.iter().find(|v| !parts[i + 2].contains(v)) {
            return Err(ExtremalError::BadInput(format!("vertex {v} of A_{} is not in V_{}", i + 2, i + 2)));
        }
    }
    if first_independent_triple(h, &seed).is_none() {
        return Ok(GreedyOutcome::Stuck { level: 1, candidates: seed.to_vec() });
    }
    let mut common = FixedBitSet::with_capacity(n);
    common.insert_range(..);
    let mut triples = vec![seed];
    for v in seed {
        common.intersect_with(h.neighbor_set(v));
    }
    for (i, a) in a_sets.iter().enumerate() {
        let mut cand: Vec<usize> = a.iter().copied().filter(|&v| common.contains(v)).collect();
        cand.sort_unstable();
        cand.dedup();
        match first_independent_triple(h, &cand) {
            Some(t) => {
                for v in t {
                    common.intersect_with(h.neighbor_set(v));
                }
                triples.push(t);
            }
            None => return Ok(GreedyOutcome::Stuck { level: i + 2, candidates: cand }),
        }
    }
    let witness = K3rWitness { triples };
    assert!(is_k3r_witness(h, &witness), "greedy construction yields a valid witness");
    Ok(GreedyOutcome::Found(witness))
}

/// `e_k(h) / e_k(T_r(n))` for `k = 1, …, min(r, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZykovReport {
    #[serde(serialize_with = "crate::json::ser_rational_seq")]
    pub ratios: Vec<BigRational>,
    /// Non-increasing chain. `false` signals a defect, not a counterexample.
    pub monotone: bool,
}

pub fn zykov_ratios(h: &Graph, r: usize) -> Result<ZykovReport, ExtremalError> {
    if r == 0 {
        return Err(ExtremalError::BadInput("r must be at least 1".into()));
    }
    if let Some(c) = find_clique(h, r + 1) {
        return Err(ExtremalError::KPlusOneClique(c));
    }
    let n = h.vertex_count();
    let top = r.min(n);
    let cv = clique_vector(h, Some(top));
    let sizes = balanced_sizes(n, r);
    let ratios: Vec<BigRational> =
        (1..=top).map(|k| BigRational::new(BigInt::from(cv.get(k)), elementary_symmetric(&sizes, k))).collect();
    let monotone = ratios.windows(2).all(|w| w[0] >= w[1]);
    Ok(ZykovReport { ratios, monotone })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle, j_graph_partitioned, k3r, turan, turan_partitioned};
    use crate::extremal::ratio;
    use crate::extremal::tests::with_v0;
    use crate::graph::contains_k3r;

    #[test]
    fn greedy_on_k3r_uses_everything() {
        let g = k3r(3);
        let parts = with_v0(&turan_partitioned(9, 3).parts);
        let out = find_k3r_greedy(&g, &parts, [0, 1, 2], &[parts[2].clone(), parts[3].clone()]).unwrap();
        assert_eq!(out, GreedyOutcome::Found(K3rWitness { triples: vec![[0, 1, 2], [3, 4, 5], [6, 7, 8]] }));
    }

    #[test]
    fn greedy_in_turan_graph() {
        let t = turan_partitioned(30, 3);
        let parts = with_v0(&t.parts);
        let a2 = parts[2][3..8].to_vec();
        let a3 = parts[3][5..10].to_vec();
        let out = find_k3r_greedy(&t.graph, &parts, [4, 7, 1], &[a2, a3]).unwrap();
        match out {
            GreedyOutcome::Found(w) => assert!(is_k3r_witness(&t.graph, &w) && w.triples[0] == [1, 4, 7]),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn greedy_needs_an_independent_seed() {
        let j = j_graph_partitioned(16, 2).unwrap();
        let parts = with_v0(&j.parts);
        let consecutive = [parts[1][0], parts[1][1], parts[1][2]];
        let out = find_k3r_greedy(&j.graph, &parts, consecutive, &[parts[2].clone()]).unwrap();
        assert!(matches!(out, GreedyOutcome::Stuck { level: 1, .. }));
        let spread = [parts[1][0], parts[1][2], parts[1][4]];
        let out = find_k3r_greedy(&j.graph, &parts, spread, &[parts[2].clone()]).unwrap();
        let GreedyOutcome::Found(w) = out else { panic!("expected a witness") };
        assert!(is_k3r_witness(&j.graph, &w));
        assert!(contains_k3r(&j.graph, 2).is_some());
    }

    #[test]
    fn greedy_reports_where_it_stops() {
        let j = j_graph_partitioned(16, 2).unwrap();
        let parts = with_v0(&j.parts);
        let spread = [parts[1][0], parts[1][2], parts[1][4]];
        // A_2 spans three consecutive cycle vertices: no independent triple
        let a2 = parts[2][0..3].to_vec();
        let out = find_k3r_greedy(&j.graph, &parts, spread, std::slice::from_ref(&a2)).unwrap();
        assert_eq!(out, GreedyOutcome::Stuck { level: 2, candidates: a2 });
    }

    #[test]
    fn greedy_rejects_bad_input() {
        let t = turan_partitioned(9, 3);
        let parts = with_v0(&t.parts);
        let a = [parts[2].clone(), parts[3].clone()];
        assert!(matches!(find_k3r_greedy(&t.graph, &parts, [0, 1, 3], &a), Err(ExtremalError::BadInput(_))));
        assert!(matches!(find_k3r_greedy(&t.graph, &parts, [0, 1, 1], &a), Err(ExtremalError::BadInput(_))));
        assert!(matches!(
            find_k3r_greedy(&t.graph, &parts, [0, 1, 2], &[parts[3].clone(), parts[2].clone()]),
            Err(ExtremalError::BadInput(_))
        ));
        assert!(matches!(find_k3r_greedy(&t.graph, &parts, [0, 1, 2], &a[..1]), Err(ExtremalError::BadInput(_))));
    }

    #[test]
    fn zykov_examples() {
        let c5 = zykov_ratios(&cycle(5), 2).unwrap();
        assert_eq!(c5.ratios, vec![ratio(1, 1), ratio(5, 6)]);
        assert!(c5.monotone);
        let t = zykov_ratios(&turan(9, 3), 3).unwrap();
        assert_eq!(t.ratios, vec![ratio(1, 1); 3]);
        assert_eq!(zykov_ratios(&Graph::complete(4), 3), Err(ExtremalError::KPlusOneClique(vec![0, 1, 2, 3])));
        assert_eq!(zykov_ratios(&Graph::empty(2), 3).unwrap().ratios.len(), 2);
    }
}
