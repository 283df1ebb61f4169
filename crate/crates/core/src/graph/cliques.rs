use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::Graph;

/// Clique counts `(e_0, e_1, …, e_ω)` of a graph.
///
/// `e_0 = 1` counts the empty clique. When counting was truncated at some
/// `k_max < ω`, the vector simply stops there.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliqueVector {
    counts: Vec<BigUint>,
}

impl CliqueVector {
    pub fn from_counts(mut counts: Vec<BigUint>) -> Self {
        while counts.len() > 1 && counts.last().is_some_and(Zero::is_zero) {
            counts.pop();
        }
        if counts.is_empty() {
            counts.push(BigUint::from(1u32));
        }
        CliqueVector { counts }
    }

    pub fn from_u64(counts: &[u64]) -> Self {
        Self::from_counts(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `e_k`, zero past the end.
    pub fn get(&self, k: usize) -> BigUint {
        self.counts.get(k).cloned().unwrap_or_default()
    }

    /// Largest clique size present.
    pub fn omega(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn to_u64_vec(&self) -> Option<Vec<u64>> {
        self.counts.iter().map(ToPrimitive::to_u64).collect()
    }

    /// Clique vector of a join: the convolution of the two operands.
    pub fn convolve(&self, other: &CliqueVector) -> CliqueVector {
        let mut out = vec![BigUint::zero(); self.counts.len() + other.counts.len() - 1];
        for (i, a) in self.counts.iter().enumerate() {
            for (j, b) in other.counts.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CliqueVector::from_counts(out)
    }
}

impl Serialize for CliqueVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::json::ser_biguint_seq(&self.counts, s)
    }
}

/// Per-size counters. Leaves of the pivot tree add binomial rows, so the fast
/// path uses `u128` and reports overflow instead of wrapping.
trait Tally {
    fn add_row(&mut self, keep: usize, pivots: usize, k_max: usize) -> bool;
}

struct WideTally {
    counts: Vec<u128>,
    binom: Vec<Vec<u128>>,
}

impl Tally for WideTally {
    fn add_row(&mut self, keep: usize, pivots: usize, k_max: usize) -> bool {
        let top = pivots.min(k_max - keep);
        for i in 0..=top {
            match self.counts[keep + i].checked_add(self.binom[pivots][i]) {
                Some(v) => self.counts[keep + i] = v,
                None => return false,
            }
        }
        true
    }
}

struct BigTally {
    counts: Vec<BigUint>,
    binom: Vec<Vec<BigUint>>,
}

impl Tally for BigTally {
    fn add_row(&mut self, keep: usize, pivots: usize, k_max: usize) -> bool {
        let top = pivots.min(k_max - keep);
        for i in 0..=top {
            self.counts[keep + i] += &self.binom[pivots][i];
        }
        true
    }
}

/// Pivoted expansion: every clique is produced exactly once as a leaf
/// `(kept vertices, optional pivots)`, contributing `C(pivots, i)` cliques of
/// size `kept + i`.
fn expand<T: Tally>(g: &Graph, cand: FixedBitSet, keep: usize, pivots: usize, k_max: usize, tally: &mut T) -> bool {
    if keep > k_max {
        return true;
    }
    if keep == k_max || cand.is_clear() {
        return tally.add_row(keep, if keep == k_max { 0 } else { pivots }, k_max);
    }
    let pivot = cand
        .ones()
        .max_by_key(|&u| (g.neighbor_set(u).intersection_count(&cand), std::cmp::Reverse(u)))
        .expect("candidate set is non-empty");
    let mut branch = cand.clone();
    branch.difference_with(g.neighbor_set(pivot));
    let mut rest = cand;
    for v in branch.ones() {
        let mut next = rest.clone();
        next.intersect_with(g.neighbor_set(v));
        rest.set(v, false);
        let ok = if v == pivot {
            expand(g, next, keep, pivots + 1, k_max, tally)
        } else {
            expand(g, next, keep + 1, pivots, k_max, tally)
        };
        if !ok {
            return false;
        }
    }
    true
}

fn binomials_u128(n: usize) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![1u128; i + 1];
        for j in 1..i {
            row[j] = rows[i - 1][j - 1].saturating_add(rows[i - 1][j]);
        }
        rows.push(row);
    }
    rows
}

fn binomials_big(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigUint::from(1u32); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// Exact clique counts `e_0, …, e_min(k_max, ω)`.
pub fn clique_vector(g: &Graph, k_max: Option<usize>) -> CliqueVector {
    let n = g.vertex_count();
    let k_max = k_max.unwrap_or(n).min(n);
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    // C(n, k) < 2^127 for n <= 128, so the binomial table itself cannot saturate.
    if n <= 128 {
        let mut tally = WideTally { counts: vec![0; k_max + 1], binom: binomials_u128(n) };
        if expand(g, all.clone(), 0, 0, k_max, &mut tally) {
            return CliqueVector::from_counts(tally.counts.into_iter().map(BigUint::from).collect());
        }
    }
    let mut tally = BigTally { counts: vec![BigUint::zero(); k_max + 1], binom: binomials_big(n) };
    expand(g, all, 0, 0, k_max, &mut tally);
    CliqueVector::from_counts(tally.counts)
}

/// Calls `visit` on every nonempty clique with at most `k_max` vertices, as a
/// sorted slice, in lexicographic order.
pub fn for_each_clique<F: FnMut(&[usize])>(g: &Graph, k_max: Option<usize>, mut visit: F) {
    fn walk<F: FnMut(&[usize])>(g: &Graph, stack: &mut Vec<usize>, cand: &FixedBitSet, k_max: usize, visit: &mut F) {
        for v in cand.ones() {
            stack.push(v);
            visit(stack);
            if stack.len() < k_max {
                let mut next = cand.clone();
                next.intersect_with(g.neighbor_set(v));
                next.set_range(..v + 1, false);
                walk(g, stack, &next, k_max, visit);
            }
            stack.pop();
        }
    }
    let n = g.vertex_count();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    walk(g, &mut Vec::new(), &all, k_max.unwrap_or(n), &mut visit);
}

/// The lexicographically first clique of exactly `k` vertices, if any.
pub fn find_clique(g: &Graph, k: usize) -> Option<Vec<usize>> {
    fn walk(g: &Graph, stack: &mut Vec<usize>, cand: &FixedBitSet, k: usize) -> bool {
        if stack.len() == k {
            return true;
        }
        if stack.len() + cand.count_ones(..) < k {
            return false;
        }
        for v in cand.ones() {
            stack.push(v);
            let mut next = cand.clone();
            next.intersect_with(g.neighbor_set(v));
            next.set_range(..v + 1, false);
            if walk(g, stack, &next, k) {
                return true;
            }
            stack.pop();
        }
        false
    }
    let n = g.vertex_count();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut stack = Vec::new();
    walk(g, &mut stack, &all, k).then_some(stack)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle, j_graph, turan};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: test every vertex subset for being a clique.
    fn brute_force_counts(g: &Graph) -> Vec<u64> {
        let n = g.vertex_count();
        let mut counts = vec![0u64; n + 1];
        for mask in 0u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let ok = vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.is_adjacent(u, v)));
            if ok {
                counts[vs.len()] += 1;
            }
        }
        while counts.len() > 1 && *counts.last().unwrap() == 0 {
            counts.pop();
        }
        counts
    }

    fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn named_examples() {
        assert_eq!(clique_vector(&Graph::complete(4), None).to_u64_vec().unwrap(), vec![1, 4, 6, 4, 1]);
        assert_eq!(clique_vector(&cycle(5), None).to_u64_vec().unwrap(), vec![1, 5, 5]);
        let j = j_graph(8, 2).unwrap();
        assert_eq!(brute_force_counts(&j), vec![1, 8, 24, 32, 16]);
        assert_eq!(clique_vector(&j, None).to_u64_vec().unwrap(), vec![1, 8, 24, 32, 16]);
        assert_eq!(clique_vector(&Graph::empty(0), None).to_u64_vec().unwrap(), vec![1]);
        assert_eq!(clique_vector(&Graph::empty(3), None).to_u64_vec().unwrap(), vec![1, 3]);
    }

    #[test]
    fn truncation() {
        let k6 = Graph::complete(6);
        assert_eq!(clique_vector(&k6, Some(2)).to_u64_vec().unwrap(), vec![1, 6, 15]);
        assert_eq!(clique_vector(&k6, Some(0)).to_u64_vec().unwrap(), vec![1]);
    }

    #[test]
    fn dense_counts_switch_to_unbounded_integers() {
        // e_k(K_130) = C(130, k); the total 2^130 overflows u128.
        let k = Graph::complete(130);
        let cv = clique_vector(&k, None);
        assert_eq!(cv.omega(), 130);
        assert_eq!(cv.get(65), binomials_big(130)[130][65]);
        let k = Graph::complete(128);
        let cv = clique_vector(&k, None);
        assert_eq!(cv.get(64), binomials_big(128)[128][64]);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(0..=12);
            let p = rng.gen_range(0.0..1.0);
            let g = random_graph(n, p, &mut rng);
            assert_eq!(clique_vector(&g, None).to_u64_vec().unwrap(), brute_force_counts(&g), "{g:?}");
        }
    }

    #[test]
    fn listing_agrees_with_counting() {
        let g = turan(9, 3).disjoint_union(&cycle(5));
        let mut counts = vec![1u64];
        for_each_clique(&g, None, |c| {
            if counts.len() <= c.len() {
                counts.resize(c.len() + 1, 0);
            }
            counts[c.len()] += 1;
        });
        assert_eq!(clique_vector(&g, None).to_u64_vec().unwrap(), counts);
        assert_eq!(find_clique(&g, 3), Some(vec![0, 3, 6]));
        assert_eq!(find_clique(&g, 4), None);
    }

    proptest! {
        #[test]
        fn handshake_and_edge_deletion(seed in any::<u64>(), n in 2usize..11, p in 0.1f64..0.9) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(n, p, &mut rng);
            let cv = clique_vector(&g, None);
            let deg_sum: usize = (0..n).map(|v| g.degree(v)).sum();
            prop_assert_eq!(cv.get(2), BigUint::from(deg_sum / 2));
            let first = g.edges().next();
            if let Some((u, v)) = first {
                let h = g.without_edge(u, v);
                let ch = clique_vector(&h, None);
                let (link, _) = g.link(&super::super::Clique::new(&g, &[u, v]).unwrap());
                let cl = clique_vector(&link, None);
                for k in 0..=cv.omega() {
                    prop_assert!(ch.get(k) <= cv.get(k));
                    if k >= 2 {
                        // exactly the k-cliques through the edge disappear
                        prop_assert_eq!(cv.get(k) - ch.get(k), cl.get(k - 2));
                        prop_assert!(cl.get(k - 2) <= BigUint::from(n).pow(k as u32 - 2));
                    }
                }
            }
        }

        #[test]
        fn vertex_links_count_cofaces(seed in any::<u64>(), n in 1usize..11, p in 0.2f64..0.9) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graph(n, p, &mut rng);
            for v in 0..n {
                let (link, _) = g.link(&super::super::Clique::new(&g, &[v]).unwrap());
                let cl = clique_vector(&link, None);
                let mut through = vec![0u64; n + 1];
                for_each_clique(&g, None, |c| if c.contains(&v) { through[c.len()] += 1 });
                for k in 0..n {
                    prop_assert_eq!(cl.get(k), BigUint::from(through[k + 1]));
                }
            }
        }
    }
}
