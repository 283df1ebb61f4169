use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::Graph;

/// A copy of `K_3^r`: `r` triples, each independent, complete between triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K3rWitness {
    pub triples: Vec<[usize; 3]>,
}

/// Checks the witness against `g`: disjoint independent triples with every
/// cross pair adjacent.
pub fn is_k3r_witness(g: &Graph, w: &K3rWitness) -> bool {
    let mut seen = FixedBitSet::with_capacity(g.vertex_count());
    for t in &w.triples {
        for &v in t {
            if v >= g.vertex_count() || seen.put(v) {
                return false;
            }
        }
        if g.is_adjacent(t[0], t[1]) || g.is_adjacent(t[0], t[2]) || g.is_adjacent(t[1], t[2]) {
            return false;
        }
    }
    for (i, a) in w.triples.iter().enumerate() {
        for b in &w.triples[i + 1..] {
            if !a.iter().all(|&u| b.iter().all(|&v| g.is_adjacent(u, v))) {
                return false;
            }
        }
    }
    true
}

/// Exhaustive search for `K_3^r`. Triples are chosen in increasing order of
/// their smallest vertex, each from the common neighborhood of the previous
/// ones, so the first witness found is the lexicographically smallest in that
/// order. `None` is a proof of absence.
pub fn contains_k3r(g: &Graph, r: usize) -> Option<K3rWitness> {
    fn extend(g: &Graph, cand: &FixedBitSet, r: usize, min_after: usize, triples: &mut Vec<[usize; 3]>) -> bool {
        if triples.len() == r {
            return true;
        }
        let need = 3 * (r - triples.len());
        if cand.count_ones(..) < need {
            return false;
        }
        let vs: Vec<usize> = cand.ones().collect();
        for (i, &a) in vs.iter().enumerate() {
            if triples.last().is_some() && a <= min_after {
                continue;
            }
            for (j, &b) in vs.iter().enumerate().skip(i + 1) {
                if g.is_adjacent(a, b) {
                    continue;
                }
                for &c in &vs[j + 1..] {
                    if g.is_adjacent(a, c) || g.is_adjacent(b, c) {
                        continue;
                    }
                    let mut next = cand.clone();
                    for v in [a, b, c] {
                        next.intersect_with(g.neighbor_set(v));
                    }
                    if next.count_ones(..) < need - 3 {
                        continue;
                    }
                    triples.push([a, b, c]);
                    if extend(g, &next, r, a, triples) {
                        return true;
                    }
                    triples.pop();
                }
            }
        }
        false
    }
    if r == 0 {
        return Some(K3rWitness { triples: Vec::new() });
    }
    let mut all = FixedBitSet::with_capacity(g.vertex_count());
    all.insert_range(..);
    let mut triples = Vec::new();
    extend(g, &all, r, 0, &mut triples).then(|| {
        let w = K3rWitness { triples };
        debug_assert!(is_k3r_witness(g, &w));
        w
    })
}
