use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::{balanced_sizes, check_extremal, is_radical, rat, validate_parts, ExtremalError, PartitionCertificate};
use crate::constructions::j_graph_partitioned;
use crate::graph::{verify_isomorphism, Graph};

/// Builds `V_0, …, V_r` from a balanced partition `X_1, …, X_r`:
/// `Y_0` collects the vertices deficient towards some other part, the
/// vertices of `Y_0` deficient towards exactly one part return to that part,
/// and the rest form `V_0`. Returns the certificate of the result.
///
/// A vertex is deficient towards `X_k` when `deg(v, X_k) ≤ (1 − 2η/3)·m`,
/// with `m = |X_k|`, or `m = |X_k \ {v}|` for its own part.
pub fn build_extremal_partition(
    h: &Graph,
    x_parts: &[Vec<usize>],
    eta: &BigRational,
) -> Result<PartitionCertificate, ExtremalError> {
    let n = h.vertex_count();
    let r = x_parts.len();
    if r == 0 {
        return Err(ExtremalError::BadPartition("need at least one part".into()));
    }
    validate_parts(n, x_parts)?;
    let mut sizes: Vec<usize> = x_parts.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    if sizes != balanced_sizes(n, r) {
        return Err(ExtremalError::BadPartition(format!(
            "X-parts must have sizes floor(n/r) or ceil(n/r), got {sizes:?}"
        )));
    }
    let factor = BigRational::one() - eta * BigRational::new(BigInt::from(2), BigInt::from(3));
    let mut home = vec![0usize; n];
    for (i, p) in x_parts.iter().enumerate() {
        for &v in p {
            home[v] = i;
        }
    }
    let deficient = |v: usize, k: usize| -> bool {
        let m = x_parts[k].len() - usize::from(home[v] == k);
        rat(h.degree_into(v, &x_parts[k])) <= &factor * rat(m)
    };
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); r + 1];
    for (v, &i) in home.iter().enumerate() {
        let in_y0 = (0..r).any(|j| j != i && deficient(v, j));
        if !in_y0 {
            parts[i + 1].push(v);
            continue;
        }
        let towards: Vec<usize> = (0..r).filter(|&k| deficient(v, k)).collect();
        match towards.as_slice() {
            [j] => parts[j + 1].push(v),
            _ => parts[0].push(v),
        }
    }
    check_extremal(h, &parts, eta, r)
}

/// Default vertex bound for exact edit distance.
pub const DEFAULT_EXACT_BOUND: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosenessMode {
    /// Enumerates every balanced partition, up to `bound` vertices.
    Exact { bound: usize },
    /// Steepest-descent swaps from a greedy seed; an upper bound.
    Heuristic,
}

/// Edit cost to `T_r(n)` under a balanced partition: edges inside parts plus
/// non-edges across parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Closeness {
    pub cost: usize,
    pub exact: bool,
    pub parts: Vec<Vec<usize>>,
}

fn partition_cost(h: &Graph, assign: &[usize]) -> usize {
    let n = h.vertex_count();
    let mut cost = 0;
    for u in 0..n {
        for v in u + 1..n {
            let same = assign[u] == assign[v];
            if same == h.is_adjacent(u, v) {
                cost += 1;
            }
        }
    }
    cost
}

fn parts_of(assign: &[usize], r: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); r];
    for (v, &p) in assign.iter().enumerate() {
        parts[p].push(v);
    }
    parts
}

/// Minimum edit cost over balanced `r`-partitions. Exact mode returns the
/// lexicographically first optimal assignment (vertex 0 in part 0, parts
/// opened in order).
pub fn closeness_to_turan(h: &Graph, r: usize, mode: ClosenessMode) -> Result<Closeness, ExtremalError> {
    let n = h.vertex_count();
    if r == 0 {
        return Err(ExtremalError::BadInput("r must be at least 1".into()));
    }
    match mode {
        ClosenessMode::Exact { bound } => {
            if n > bound {
                return Err(ExtremalError::TooLargeForExact { n, bound });
            }
            let (cost, assign) = exact_closeness(h, r);
            Ok(Closeness { cost, exact: true, parts: parts_of(&assign, r) })
        }
        ClosenessMode::Heuristic => {
            let assign = heuristic_closeness(h, r);
            Ok(Closeness { cost: partition_cost(h, &assign), exact: false, parts: parts_of(&assign, r) })
        }
    }
}

struct ExactSearch<'a> {
    h: &'a Graph,
    r: usize,
    cap: usize,
    /// Parts allowed to reach `cap`; zero when `r | n` (all parts equal).
    big_allowed: usize,
    assign: Vec<usize>,
    sizes: Vec<usize>,
    best: usize,
    best_assign: Vec<usize>,
}

impl ExactSearch<'_> {
    fn go(&mut self, v: usize, opened: usize, cost: usize) {
        if cost >= self.best {
            return;
        }
        let n = self.h.vertex_count();
        if v == n {
            self.best = cost;
            self.best_assign = self.assign.clone();
            return;
        }
        let limit = (opened + 1).min(self.r);
        for p in 0..limit {
            if self.sizes[p] == self.cap {
                continue;
            }
            if self.sizes[p] + 1 == self.cap && self.big_allowed > 0 {
                let big_now = self.sizes.iter().filter(|&&s| s == self.cap).count();
                if big_now == self.big_allowed {
                    continue;
                }
            }
            let mut added = 0;
            for u in 0..v {
                let same = self.assign[u] == p;
                if same == self.h.is_adjacent(u, v) {
                    added += 1;
                }
            }
            self.assign[v] = p;
            self.sizes[p] += 1;
            self.go(v + 1, opened.max(p + 1), cost + added);
            self.sizes[p] -= 1;
        }
    }
}

fn exact_closeness(h: &Graph, r: usize) -> (usize, Vec<usize>) {
    let n = h.vertex_count();
    let sizes = balanced_sizes(n, r);
    let cap = sizes[0];
    let big_allowed = if n.is_multiple_of(r) { 0 } else { n % r };
    let mut search = ExactSearch {
        h,
        r,
        cap,
        big_allowed,
        assign: vec![0; n],
        sizes: vec![0; r],
        best: usize::MAX,
        best_assign: Vec::new(),
    };
    if n == 0 {
        return (0, Vec::new());
    }
    search.go(0, 0, 0);
    (search.best, search.best_assign)
}

fn heuristic_closeness(h: &Graph, r: usize) -> Vec<usize> {
    let n = h.vertex_count();
    let caps = balanced_sizes(n, r);
    let mut assign = vec![usize::MAX; n];
    let mut sizes = vec![0usize; r];
    // greedy seed: each vertex joins the open part with the cheapest increment
    for v in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for p in 0..r {
            if sizes[p] == caps[p] {
                continue;
            }
            let inc = (0..v).filter(|&u| (assign[u] == p) == h.is_adjacent(u, v)).count();
            if best.is_none_or(|(c, _)| inc < c) {
                best = Some((inc, p));
            }
        }
        let (_, p) = best.expect("capacities sum to n");
        assign[v] = p;
        sizes[p] += 1;
    }
    // steepest descent over swaps of two vertices in different parts
    let delta_move = |assign: &[usize], v: usize, to: usize, skip: usize| -> i64 {
        let from = assign[v];
        let mut d = 0i64;
        for (u, &au) in assign.iter().enumerate() {
            if u == v || u == skip {
                continue;
            }
            let adj = h.is_adjacent(u, v);
            let before = (au == from) == adj;
            let after = (au == to) == adj;
            d += i64::from(after) - i64::from(before);
        }
        d
    };
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for u in 0..n {
            for v in u + 1..n {
                let (pu, pv) = (assign[u], assign[v]);
                if pu == pv {
                    continue;
                }
                // the u–v pair keeps its same/different status under a swap
                let d = delta_move(&assign, u, pv, v) + delta_move(&assign, v, pu, u);
                if d < 0 && best.is_none_or(|(b, _, _)| d < b) {
                    best = Some((d, u, v));
                }
            }
        }
        match best {
            Some((_, u, v)) => assign.swap(u, v),
            None => break,
        }
    }
    assign
}

/// For a radical graph whose parts each induce a single cycle, returns the
/// map `v ↦ φ(v)` onto `J_r(n)`. A part inducing several cycles yields
/// `NotSingleCycle`, which rules out a homology-manifold clique complex.
pub fn radical_implies_j(h: &Graph, parts: &[Vec<usize>]) -> Result<Vec<usize>, ExtremalError> {
    if !is_radical(h, parts)? {
        return Err(ExtremalError::NotRadical);
    }
    let n = h.vertex_count();
    let r = parts.len() - 1;
    let mut cycles: Vec<(usize, Vec<usize>)> = Vec::with_capacity(r);
    for (i, p) in parts.iter().enumerate().skip(1) {
        let (sub, map) = h.induced_subgraph(p);
        let comps = sub.components();
        if comps.len() != 1 {
            return Err(ExtremalError::NotSingleCycle { part: i, cycles: comps.len() });
        }
        let mut order = vec![0usize];
        let mut prev = usize::MAX;
        while order.len() < sub.vertex_count() {
            let cur = *order.last().expect("nonempty");
            let next = sub.neighbors(cur).iter().copied().find(|&x| x != prev && !order.contains(&x));
            prev = cur;
            order.push(next.expect("connected 2-regular graph is a cycle"));
        }
        cycles.push((i, order.into_iter().map(|x| map[x]).collect()));
    }
    cycles.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
    let target = j_graph_partitioned(n, r).map_err(|e| ExtremalError::BadInput(e.to_string()))?;
    let mut phi = vec![0usize; n];
    for ((_, cyc), block) in cycles.iter().zip(&target.parts) {
        for (&v, &w) in cyc.iter().zip(block) {
            phi[v] = w;
        }
    }
    if !verify_isomorphism(h, &target.graph, &phi) {
        return Err(ExtremalError::BadInput("internal: cycle alignment failed".into()));
    }
    Ok(phi)
}
