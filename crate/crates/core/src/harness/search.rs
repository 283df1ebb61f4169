use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{sha256_hex, Comparison, HarnessError, VectorKind, SCHEMA_VERSION};
use crate::complex::is_flag_weak_pseudomanifold;
use crate::constructions::j_graph;
use crate::graph::{canonical_form, clique_vector, find_clique, for_each_clique, CanonicalForm, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Facets of the sought complexes have `d` vertices (dimension `d − 1`).
    pub d: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub mode: SearchMode,
    pub seed: u64,
    /// Exhaustive: cap on isomorphism classes examined. Random: number of
    /// samples.
    pub budget: u64,
    /// Largest `n_max` accepted in exhaustive mode.
    pub exhaustive_limit: usize,
}

impl SearchOptions {
    pub fn exhaustive(d: usize, n_max: usize) -> Self {
        SearchOptions {
            d,
            n_min: 1,
            n_max,
            mode: SearchMode::Exhaustive,
            seed: 0,
            budget: u64::MAX,
            exhaustive_limit: 10,
        }
    }

    pub fn random(d: usize, n_max: usize, seed: u64, budget: u64) -> Self {
        SearchOptions { d, n_min: 1, n_max, mode: SearchMode::Random, seed, budget, exhaustive_limit: 10 }
    }
}

/// A flag weak pseudomanifold, stored under its canonical labeling, with its
/// face numbers compared against `X(J_{d/2}(n))` when that exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub schema_version: u32,
    pub mode: SearchMode,
    pub d: usize,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub canonical_sha256: String,
    #[serde(serialize_with = "crate::json::ser_bigint_seq")]
    pub f_vector: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ser_opt_bigint_seq")]
    pub reference_f_vector: Option<Vec<BigInt>>,
    /// `f_i` against the reference for `1 ≤ i ≤ d − 1`.
    pub comparisons: Vec<Comparison>,
    /// Some `f_i` exceeds the reference: a candidate counterexample.
    pub violation: bool,
    /// `f_{d/2} / n^{d/2 + 1}` for even `d`.
    #[serde(serialize_with = "crate::json::ser_opt_rational")]
    pub middle_ratio: Option<BigRational>,
}

impl Finding {
    pub fn graph(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(self.n, &edges).expect("findings hold valid graphs")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub examined: u64,
    pub findings: u64,
    pub violations: u64,
}

fn clique_counts(g: &Graph) -> Vec<BigInt> {
    clique_vector(g, None).counts().iter().map(|c| BigInt::from(c.clone())).collect()
}

fn finding(cf: &CanonicalForm, d: usize, mode: SearchMode) -> Finding {
    let g = cf.to_graph();
    let n = g.vertex_count();
    let f = clique_counts(&g);
    let entry = |v: &[BigInt], i: usize| v.get(i + 1).cloned().unwrap_or_default();
    let (reference, comparisons, middle_ratio) = if d.is_multiple_of(2) {
        let r = d / 2;
        let reference = j_graph(n, r).ok().map(|j| clique_counts(&j));
        let comparisons: Vec<Comparison> = match &reference {
            Some(rf) => (1..d).map(|i| Comparison::new(VectorKind::F, i, entry(&f, i), entry(rf, i))).collect(),
            None => Vec::new(),
        };
        let middle = BigRational::new(entry(&f, r), num_traits::pow(BigInt::from(n), r + 1));
        (reference, comparisons, Some(middle))
    } else {
        (None, Vec::new(), None)
    };
    let violation = comparisons.iter().any(|c| c.slack < BigInt::zero());
    let canonical = format!("{n}:{:?}", g.edges().collect::<Vec<_>>());
    Finding {
        schema_version: SCHEMA_VERSION,
        mode,
        d,
        n,
        edges: g.edges().map(|(u, v)| [u, v]).collect(),
        canonical_sha256: sha256_hex(canonical.as_bytes()),
        f_vector: f,
        reference_f_vector: reference,
        comparisons,
        violation,
        middle_ratio,
    }
}

/// The hereditary part of the pseudomanifold condition: no `(d+1)`-clique
/// and at most two common neighbors for every `(d−1)`-clique. Closed under
/// deleting edges, so it can prune edge-by-edge growth.
fn admissible(g: &Graph, d: usize) -> bool {
    if find_clique(g, d + 1).is_some() {
        return false;
    }
    let mut ok = true;
    for_each_clique(g, Some(d - 1), |c| {
        if ok && c.len() == d - 1 && g.common_neighborhood(c).count_ones(..) > 2 {
            ok = false;
        }
    });
    ok
}

struct Emitter<'a> {
    d: usize,
    mode: SearchMode,
    budget: u64,
    summary: SearchSummary,
    sink: &'a mut dyn FnMut(&Finding) -> Result<(), HarnessError>,
}

impl Emitter<'_> {
    /// Counts one examined candidate; `Err` once the budget is spent.
    fn examine(&mut self) -> Result<(), HarnessError> {
        if self.summary.examined >= self.budget {
            return Err(HarnessError::BudgetExceeded {
                examined: self.summary.examined,
                findings: self.summary.findings,
            });
        }
        self.summary.examined += 1;
        Ok(())
    }

    fn emit(&mut self, cf: &CanonicalForm) -> Result<(), HarnessError> {
        let f = finding(cf, self.d, self.mode);
        self.summary.findings += 1;
        self.summary.violations += u64::from(f.violation);
        (self.sink)(&f)
    }
}

/// Enumerates (exhaustive) or samples (random) graphs on `n_min..=n_max`
/// vertices whose clique complexes are weak pseudomanifolds of dimension
/// `d − 1`, streaming each isomorphism class once to `sink`.
///
/// Exhaustive mode grows graphs one edge at a time from the empty graph,
/// keeping one representative per isomorphism class at each edge count and
/// discarding graphs that break the hereditary part of the condition.
/// Random mode builds `budget` random maximal admissible graphs from a
/// seeded generator; equal seeds give equal streams.
pub fn search_pseudomanifolds(
    opts: &SearchOptions,
    sink: &mut dyn FnMut(&Finding) -> Result<(), HarnessError>,
) -> Result<SearchSummary, HarnessError> {
    let d = opts.d;
    if d < 2 {
        return Err(HarnessError::BadInput("d must be at least 2".into()));
    }
    if opts.n_min > opts.n_max {
        return Err(HarnessError::BadInput(format!("empty vertex range {}..={}", opts.n_min, opts.n_max)));
    }
    let mut em = Emitter {
        d,
        mode: opts.mode,
        budget: opts.budget,
        summary: SearchSummary { examined: 0, findings: 0, violations: 0 },
        sink,
    };
    match opts.mode {
        SearchMode::Exhaustive => {
            if opts.n_max > opts.exhaustive_limit {
                return Err(HarnessError::BadInput(format!(
                    "exhaustive search is limited to n_max <= {}",
                    opts.exhaustive_limit
                )));
            }
            for n in opts.n_min.max(1)..=opts.n_max {
                exhaustive_for(n, &mut em)?;
            }
        }
        SearchMode::Random => {
            let lo = opts.n_min.max(d + 1);
            if lo > opts.n_max {
                return Err(HarnessError::BadInput(format!("random search needs n_max >= {lo}")));
            }
            if opts.budget == 0 {
                return Err(HarnessError::BudgetExceeded { examined: 0, findings: 0 });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut seen = HashSet::new();
            for _ in 0..opts.budget {
                em.examine()?;
                let n = rng.gen_range(lo..=opts.n_max);
                let g = random_maximal(n, d, &mut rng);
                if is_flag_weak_pseudomanifold(&g, d) {
                    let cf = canonical_form(&g);
                    if seen.insert(cf.clone()) {
                        em.emit(&cf)?;
                    }
                }
            }
        }
    }
    Ok(em.summary)
}

fn exhaustive_for(n: usize, em: &mut Emitter<'_>) -> Result<(), HarnessError> {
    let d = em.d;
    let mut level = vec![canonical_form(&Graph::empty(n))];
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for cf in &level {
            em.examine()?;
            let g = cf.to_graph();
            if is_flag_weak_pseudomanifold(&g, d) {
                em.emit(cf)?;
            }
            for u in 0..n {
                for v in u + 1..n {
                    if !g.is_adjacent(u, v) {
                        let child = g.with_edge(u, v);
                        if admissible(&child, d) {
                            next.insert(canonical_form(&child));
                        }
                    }
                }
            }
        }
        level = next.into_iter().collect();
    }
    Ok(())
}

fn random_maximal(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let mut g = Graph::empty(n);
    for (u, v) in pairs {
        let child = g.with_edge(u, v);
        if admissible(&child, d) {
            g = child;
        }
    }
    g
}
