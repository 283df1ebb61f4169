//! Isomorphism testing and canonical forms by color refinement plus
//! individualization. Intended for graphs up to a few dozen vertices.

use std::collections::HashMap;

use super::Graph;

/// Refines `colors` to the coarsest equitable partition below it.
///
/// New color ids are ranks of `(old color, sorted neighbor colors)`, so the
/// result depends only on the isomorphism type of `(g, colors)`.
fn refine(g: &Graph, colors: &mut [usize]) -> usize {
    let n = colors.len();
    let mut classes = count_classes(colors);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nc: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                nc.sort_unstable();
                (colors[v], nc, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = 0usize;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                next += 1;
            }
            colors[sigs[i].2] = next;
        }
        let now = if n == 0 { 0 } else { next + 1 };
        if now == classes {
            return now;
        }
        classes = now;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c: Vec<usize> = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// First non-singleton class of minimum size, ties by smallest color id.
fn target_cell(colors: &[usize], classes: usize, side: std::ops::Range<usize>) -> Option<usize> {
    let mut sizes = vec![0usize; classes];
    for v in side {
        sizes[colors[v]] += 1;
    }
    sizes.iter().enumerate().filter(|(_, &s)| s > 1).min_by_key(|(c, &s)| (s, *c)).map(|(c, _)| c)
}

/// True iff an edge-preserving bijection exists.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// A verified bijection `map` with `{u,v} ∈ E(g) ⇔ {map[u], map[v]} ∈ E(h)`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let union = g.disjoint_union(h);
    let colors = vec![0usize; 2 * n];
    let map = iso_search(&union, n, colors)?;
    verify_isomorphism(g, h, &map).then_some(map)
}

/// Checks that `map` (with `v ↦ map[v]`) is an isomorphism from `g` onto `h`.
pub fn verify_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    let n = g.vertex_count();
    if map.len() != n || h.vertex_count() != n || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut seen = vec![false; n];
    for &m in map {
        if m >= n || std::mem::replace(&mut seen[m], true) {
            return false;
        }
    }
    g.edges().all(|(u, v)| h.is_adjacent(map[u], map[v]))
}

fn iso_search(union: &Graph, n: usize, mut colors: Vec<usize>) -> Option<Vec<usize>> {
    let classes = refine(union, &mut colors);
    let mut left = vec![0usize; classes];
    let mut right = vec![0usize; classes];
    for v in 0..n {
        left[colors[v]] += 1;
        right[colors[n + v]] += 1;
    }
    if left != right {
        return None;
    }
    match target_cell(&colors, classes, 0..n) {
        None => {
            let mut by_color = vec![0usize; classes];
            for v in 0..n {
                by_color[colors[n + v]] = v;
            }
            let map: Vec<usize> = (0..n).map(|v| by_color[colors[v]]).collect();
            let ok = (0..n).all(|u| union.neighbors(u).iter().all(|&v| union.is_adjacent(n + map[u], n + map[v])));
            ok.then_some(map)
        }
        Some(cell) => {
            let v = (0..n).find(|&v| colors[v] == cell).expect("cell is non-empty");
            for w in (n..2 * n).filter(|&w| colors[w] == cell) {
                let mut next = colors.clone();
                next[v] = classes;
                next[w] = classes;
                if let Some(map) = iso_search(union, n, next) {
                    return Some(map);
                }
            }
            None
        }
    }
}

/// A labeling-independent encoding of a graph: two graphs have equal
/// canonical forms iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Rebuilds the canonical representative.
    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0usize;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.bits[k / 64] >> (k % 64) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::new(self.n, &edges).expect("canonical bits describe a simple graph")
    }
}

fn certificate(g: &Graph, position: &[usize]) -> CanonicalForm {
    let n = g.vertex_count();
    let mut at = vec![0usize; n];
    for (v, &p) in position.iter().enumerate() {
        at[p] = v;
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; total.div_ceil(64)];
    let mut k = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if g.is_adjacent(at[i], at[j]) {
                bits[k / 64] |= 1 << (k % 64);
            }
            k += 1;
        }
    }
    CanonicalForm { n, bits }
}

struct CanonSearch<'a> {
    g: &'a Graph,
    best: Option<(CanonicalForm, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl CanonSearch<'_> {
    fn run(&mut self, mut colors: Vec<usize>, prefix: &mut Vec<usize>) {
        let n = self.g.vertex_count();
        let classes = refine(self.g, &mut colors);
        let Some(cell) = target_cell(&colors, classes, 0..n) else {
            let cert = certificate(self.g, &colors);
            match &self.best {
                None => self.best = Some((cert, colors)),
                Some((best, best_pos)) => {
                    if cert == *best {
                        let mut at = vec![0usize; n];
                        for (v, &p) in best_pos.iter().enumerate() {
                            at[p] = v;
                        }
                        let gamma: Vec<usize> = (0..n).map(|v| at[colors[v]]).collect();
                        self.automorphisms.push(gamma);
                    } else if cert > *best {
                        self.best = Some((cert, colors));
                    }
                }
            }
            return;
        };
        let members: Vec<usize> = (0..n).filter(|&v| colors[v] == cell).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &members {
            if !explored.is_empty() && self.same_orbit(prefix, &explored, v) {
                continue;
            }
            let mut next = colors.clone();
            next[v] = classes;
            prefix.push(v);
            self.run(next, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    /// Whether `v` is equivalent to an explored vertex under the automorphisms
    /// found so far that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.g.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if prefix.iter().all(|&p| gamma[p] == p) {
                any = true;
                for (x, &gx) in gamma.iter().enumerate() {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gx));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

/// Canonical form together with the canonical position of every vertex.
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let mut search = CanonSearch { g, best: None, automorphisms: Vec::new() };
    search.run(vec![0; g.vertex_count()], &mut Vec::new());
    search.best.expect("search reaches at least one leaf")
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Groups graphs into isomorphism classes by pairwise testing; used to
/// cross-check canonical forms.
#[allow(dead_code)]
pub(crate) fn classes_by_pairwise(graphs: &[Graph]) -> usize {
    let mut reps: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut count = 0;
    for (i, g) in graphs.iter().enumerate() {
        let bucket = reps.entry((g.vertex_count(), g.edge_count())).or_default();
        if !bucket.iter().any(|&j| are_isomorphic(&graphs[j], g)) {
            bucket.push(i);
            count += 1;
        }
    }
    count
}
