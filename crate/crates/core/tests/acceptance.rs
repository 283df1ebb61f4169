//! Acceptance checks. Each criterion runs under its own time limit and prints
//! one `PASS`/`FAIL` line; the process exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flagext::complex::{homology, is_homology_manifold, is_homology_sphere, SimplicialComplex};
use flagext::constructions::{cycle, j_graph, j_graph_partitioned, j_star, join_of_cycles, suspension, turan};
use flagext::extremal::{
    check_extremal, maximize_clique_fn, radical_implies_j, zykov_ratios, ExtremalConstants, ExtremalError,
    MaximizeOptions, MoveKind,
};
use flagext::face_vectors::{
    dehn_sommerville_holds, f_to_h, h_to_gamma, multipartite_clique_count, sigma_shift_delta, CliqueFunction,
    FaceVectorSet,
};
use flagext::graph::{
    are_isomorphic, canonical_form, clique_vector, contains_k3r, find_clique, link_graph, verify_isomorphism,
    CliqueVector, Graph,
};
use flagext::harness::{
    non_suspension_sphere_8, non_uniqueness_variant, search_pseudomanifolds, Finding, SearchOptions,
};

type Parts = Vec<Vec<usize>>;

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn x(g: &Graph) -> SimplicialComplex {
    SimplicialComplex::clique_complex(g)
}

fn vectors(g: &Graph) -> FaceVectorSet {
    FaceVectorSet::from_clique_vector(&clique_vector(g, None))
}

fn with_v0(parts: &[Vec<usize>]) -> Parts {
    std::iter::once(Vec::new()).chain(parts.iter().cloned()).collect()
}

/// Radical graph on 16 vertices, two parts, each inducing two disjoint 4-cycles.
fn two_cycles_per_part() -> (Graph, Parts) {
    let base = turan(16, 2);
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    for offset in [0, 4, 8, 12] {
        for i in 0..4 {
            edges.push((offset + i, offset + (i + 1) % 4));
        }
    }
    let g = Graph::new(16, &edges).unwrap();
    (g, vec![Vec::new(), (0..8).collect(), (8..16).collect()])
}

/// Odd-dimensional corpus: cycles, joins of two cycles, `J_r(n)` and
/// the disconnected-parts graph that is not a manifold.
fn odd_dimensional_corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 4..=10 {
        out.push((format!("C_{n}"), cycle(n)));
    }
    for a in 4..=10 {
        for b in 4..=a.min(14 - a) {
            out.push((format!("C_{a}*C_{b}"), join_of_cycles(&[a, b]).unwrap().graph));
        }
    }
    for (r, hi) in [(2, 16), (3, 15)] {
        for n in 4 * r..=hi {
            out.push((format!("J_{r}({n})"), j_graph(n, r).unwrap()));
        }
    }
    out.push(("C_4*C_4*C_4".into(), join_of_cycles(&[4, 4, 4]).unwrap().graph));
    out.push(("two-cycles radical".into(), two_cycles_per_part().0));
    out
}

fn cross_polytope_golden() {
    let j = j_graph(8, 2).unwrap();
    let cv = clique_vector(&j, None);
    assert_eq!(cv, CliqueVector::from_u64(&[1, 8, 24, 32, 16]));
    let f = ints(&[1, 8, 24, 32, 16]);
    let h = f_to_h(&f, 4).unwrap();
    assert_eq!(h, ints(&[1, 4, 6, 4, 1]));
    assert_eq!(h_to_gamma(&h).unwrap(), ints(&[1, 0, 0]));
    assert!(is_homology_sphere(&x(&j)));
}

fn gamma_identity_sweep() {
    for r in [2usize, 3] {
        let d = 2 * r;
        for n in 4 * r..=30 {
            let gamma = vectors(&j_graph(n, r).unwrap()).gamma.expect("palindromic h");
            let t = clique_vector(&turan(n - 4 * r, r), None);
            for (i, g) in gamma.iter().enumerate() {
                assert_eq!(g, &BigInt::from(t.get(i)), "γ_{i} of J_{r}({n})");
            }
            assert_eq!(gamma[1], BigInt::from(n as i64 - 2 * d as i64), "γ_1 of J_{r}({n})");
        }
    }
}

fn dehn_sommerville() {
    for r in 1..=3 {
        for n in 4 * r..=20 {
            let v = vectors(&j_graph(n, r).unwrap());
            assert!(dehn_sommerville_holds(&v.h), "J_{r}({n})");
        }
    }
    let mut manifolds = 0;
    for (name, g) in odd_dimensional_corpus() {
        let m = x(&g);
        if m.dimension() % 2 == 1 && is_homology_manifold(&m).unwrap().holds {
            manifolds += 1;
            assert!(dehn_sommerville_holds(&vectors(&g).h), "{name}");
        }
    }
    assert!(manifolds >= 30, "only {manifolds} manifolds in the corpus");
}

fn vertex_links_are_k33_free() {
    let mut corpus: Vec<(String, Graph)> = (8..=14).map(|n| (format!("J_2({n})"), j_graph(n, 2).unwrap())).collect();
    for a in 4..=10 {
        for b in 4..=a.min(14 - a) {
            corpus.push((format!("C_{a}*C_{b}"), join_of_cycles(&[a, b]).unwrap().graph));
        }
    }
    for (name, g) in corpus {
        let cert = is_homology_manifold(&x(&g)).unwrap();
        assert!(cert.holds && cert.dimension == 3, "{name} is not a flag homology 3-manifold");
        for v in 0..g.vertex_count() {
            let (link, _) = link_graph(&g, &[v]).unwrap();
            assert!(contains_k3r(&link, 2).is_none(), "{name}: link of {v} contains K_3,3");
        }
    }
}

fn multipartite_oracle() {
    for r in 1..=4usize {
        for n in 4 * r..=24 {
            let j = j_graph_partitioned(n, r).unwrap();
            let sizes: Vec<usize> = j.parts.iter().map(Vec::len).collect();
            let cv = clique_vector(&j.graph, None);
            for l in 0..=2 * r + 1 {
                let formula = multipartite_clique_count(&sizes, &sizes, l).unwrap();
                assert_eq!(formula, BigInt::from(cv.get(l)), "J_{r}({n}), ℓ = {l}");
            }
        }
    }
}

struct Perturbation {
    graph: Graph,
    parts: Parts,
}

/// Unbalances `J_r(n)` by moving up to two vertices between parts, breaks
/// at most one cycle and deletes at most three cross edges.
fn perturb(n: usize, r: usize, seed: u64) -> Perturbation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sizes: Vec<usize> = j_graph_partitioned(n, r).unwrap().parts.iter().map(Vec::len).collect();
    let shift = rng.gen_range(0..=2);
    let (from, to) = (rng.gen_range(0..r), rng.gen_range(0..r));
    if from != to {
        sizes[from] -= shift;
        sizes[to] += shift;
    }
    let base = join_of_cycles(&sizes).unwrap();
    let mut g = base.graph;
    if rng.gen_bool(0.5) {
        let p = &base.parts[rng.gen_range(0..r)];
        let i = rng.gen_range(0..p.len());
        g = g.without_edge(p[i], p[(i + 1) % p.len()]);
    }
    let mut home = vec![0; n];
    for (i, p) in base.parts.iter().enumerate() {
        for &v in p {
            home[v] = i;
        }
    }
    let mut cross: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| home[u] != home[v]).collect();
    cross.shuffle(&mut rng);
    for &(u, v) in cross.iter().take(rng.gen_range(0..=3)) {
        g = g.without_edge(u, v);
    }
    Perturbation { graph: g, parts: with_v0(&base.parts) }
}

fn maximizer_convergence() {
    let mut runs = 0;
    let mut survivors_by_r = Vec::new();
    for r in [2usize, 3] {
        let n = 24;
        let eta = ExtremalConstants::eta(r);
        let target = j_graph(n, r).unwrap();
        let target_cv = clique_vector(&target, None);
        let mut survivors = 0;
        for seed in 0..50 {
            let p = perturb(n, r, seed);
            if !check_extremal(&p.graph, &p.parts, &eta, r).unwrap().holds {
                continue;
            }
            survivors += 1;
            for k in BTreeSet::from([2, r]) {
                let f = CliqueFunction::clique_count(k);
                let out = maximize_clique_fn(&f, r, &p.graph, &p.parts, &MaximizeOptions::default())
                    .unwrap_or_else(|e| panic!("r = {r}, seed {seed}, F = e_{k}: {e}"));
                runs += 1;
                assert!(out.radical, "r = {r}, seed {seed}: not radical");
                assert_eq!(out.value, f.eval(&target_cv), "r = {r}, seed {seed}: F differs from F(J)");
                let mut sizes: Vec<usize> = p.parts.iter().map(Vec::len).collect();
                let coeffs = f.symmetric_coefficients();
                for m in &out.log.moves {
                    assert!(m.gain > BigRational::zero());
                    if m.kind == MoveKind::Rebalance {
                        let mut shifted = vec![sizes[m.from_part], sizes[m.to_part]];
                        shifted.extend((1..=r).filter(|&i| i != m.from_part && i != m.to_part).map(|i| sizes[i]));
                        let expected: BigRational = coeffs
                            .iter()
                            .enumerate()
                            .map(|(j, c)| c * BigRational::from_integer(sigma_shift_delta(&shifted, j).unwrap()))
                            .sum();
                        assert_eq!(m.gain, expected, "rebalance gain, r = {r}, seed {seed}");
                    }
                    if m.from_part != m.to_part {
                        sizes[m.from_part] -= 1;
                        sizes[m.to_part] += 1;
                    }
                }
            }
        }
        survivors_by_r.push(survivors);
    }
    assert!(survivors_by_r.iter().all(|&s| s > 0), "no extremal perturbations: {survivors_by_r:?}");
    note(&format!("maximizer runs: {runs}, extremal perturbations per r: {survivors_by_r:?}"));
}

fn radical_graphs_are_j() {
    for r in [2usize, 3] {
        for n in 4 * r..=20 {
            let j = j_graph_partitioned(n, r).unwrap();
            let perm: Vec<usize> = (0..n).rev().collect();
            let g = j.graph.relabel(&perm);
            let parts: Parts = with_v0(
                &j.parts
                    .iter()
                    .map(|p| {
                        let mut q: Vec<usize> = p.iter().map(|&v| perm[v]).collect();
                        q.sort_unstable();
                        q
                    })
                    .collect::<Vec<_>>(),
            );
            let phi = radical_implies_j(&g, &parts).unwrap();
            assert!(verify_isomorphism(&g, &j.graph, &phi), "J_{r}({n})");
        }
    }
    let (g, parts) = two_cycles_per_part();
    assert!(matches!(radical_implies_j(&g, &parts), Err(ExtremalError::NotSingleCycle { .. })));
    assert!(!is_homology_manifold(&x(&g)).unwrap().holds);
}

fn zykov_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let r = rng.gen_range(1..=4usize);
        let n = rng.gen_range(1..=20usize);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let p = rng.gen_range(0.0..0.6);
        let blowup = turan(n, r).relabel(&perm);
        let kept: Vec<(usize, usize)> = blowup.edges().filter(|_| !rng.gen_bool(p)).collect();
        let g = Graph::new(n, &kept).unwrap();
        assert!(find_clique(&g, r + 1).is_none());
        let z = zykov_ratios(&g, r).unwrap();
        assert!(z.monotone, "r = {r}, n = {n}: {:?}", z.ratios);
    }
    for r in 1..=4 {
        for n in 1..=20 {
            let z = zykov_ratios(&turan(n, r), r).unwrap();
            assert!(z.ratios.iter().all(|q| *q == BigRational::from_integer(1.into())), "T_{r}({n})");
        }
    }
}

fn homology_engine() {
    let circle = x(&cycle(4));
    let h = homology(&circle);
    assert_eq!((h.betti(0), h.betti(1)), (0, 1));
    let octa = x(&suspension(&cycle(4)));
    let h = homology(&octa);
    assert_eq!((h.betti(0), h.betti(1), h.betti(2)), (0, 0, 1));
    for d in 1..=6usize {
        let facets: Vec<Vec<usize>> = (0..=d).map(|skip| (0..=d).filter(|&v| v != skip).collect()).collect();
        let sphere = SimplicialComplex::from_facets(d + 1, facets).unwrap();
        let h = homology(&sphere);
        for i in -1..d as isize {
            let expected = usize::from(i == d as isize - 1);
            assert_eq!(h.betti(i), expected, "∂Δ^{d}, dimension {i}");
            assert!(h.torsion(i).is_empty());
        }
    }
    let rp2 = SimplicialComplex::from_facets(
        6,
        [[0, 1, 3], [0, 1, 5], [0, 2, 4], [0, 2, 5], [0, 3, 4], [1, 2, 3], [1, 2, 4], [1, 4, 5], [2, 3, 5], [3, 4, 5]]
            .iter()
            .map(|f| f.to_vec()),
    )
    .unwrap();
    let h = homology(&rp2);
    assert_eq!((h.betti(0), h.betti(1), h.betti(2)), (0, 0, 0));
    assert_eq!(h.torsion(1), &[BigInt::from(2)]);
    assert!(h.torsion(0).is_empty() && h.torsion(2).is_empty());
}

fn non_uniqueness() {
    let sphere = non_suspension_sphere_8();
    assert!(sphere.is_flag() && is_homology_sphere(&sphere));
    assert!(!are_isomorphic(&sphere.one_skeleton(), &suspension(&cycle(6))));
    let variant = non_uniqueness_variant(2, 14, &sphere).unwrap();
    let js = j_star(14, 2).unwrap();
    assert_eq!(clique_vector(&variant, None), clique_vector(&js, None));
    assert!(!are_isomorphic(&variant, &js));
}

fn disjoint_cycles(lengths: &[usize]) -> Graph {
    lengths.iter().fold(Graph::empty(0), |acc, &l| acc.disjoint_union(&cycle(l)))
}

/// Multisets of cycle lengths `≥ 4` with total at most `n_max`.
fn cycle_partitions(n_max: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for p in 4..=rest.min(max_part) {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n_max, n_max, &mut Vec::new(), &mut out);
    out
}

fn pseudomanifold_search() {
    let mut found: Vec<Finding> = Vec::new();
    search_pseudomanifolds(&SearchOptions::exhaustive(2, 8), &mut |f| {
        found.push(f.clone());
        Ok(())
    })
    .unwrap();
    let searched: BTreeSet<_> = found.iter().map(|f| canonical_form(&f.graph())).collect();
    assert_eq!(searched.len(), found.len(), "duplicate isomorphism classes");
    let expected: BTreeSet<_> = cycle_partitions(8).iter().map(|p| canonical_form(&disjoint_cycles(p))).collect();
    assert_eq!(searched, expected);

    let mut found = Vec::new();
    search_pseudomanifolds(&SearchOptions { n_min: 8, ..SearchOptions::exhaustive(4, 8) }, &mut |f| {
        found.push(f.clone());
        Ok(())
    })
    .unwrap();
    let j = j_graph(8, 2).unwrap();
    let hit = found.iter().find(|f| are_isomorphic(&f.graph(), &j)).expect("J_2(8) among the findings");
    assert!(!hit.comparisons.is_empty() && hit.comparisons.iter().all(|c| c.slack.is_zero()));
    note(&format!("d = 4, n = 8: {} flag weak 3-pseudomanifolds", found.len()));
}

fn note(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "       {line}");
}

/// Number, title, time limit in seconds, body.
type Criterion = (u32, &'static str, u64, fn());

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "cross-polytope clique, h and gamma vectors", 1, cross_polytope_golden),
        (2, "gamma vector of J_r(n) equals Turan clique counts", 60, gamma_identity_sweep),
        (3, "palindromic h-vectors of odd-dimensional manifolds", 120, dehn_sommerville),
        (4, "vertex links of flag 3-manifolds avoid K_3,3", 120, vertex_links_are_k33_free),
        (5, "multipartite clique formula matches enumeration", 60, multipartite_oracle),
        (6, "maximizer converges to J_r(24) from perturbations", 300, maximizer_convergence),
        (7, "radical manifolds are isomorphic to J_r(n)", 60, radical_graphs_are_j),
        (8, "clique-density ratio chain of K_(r+1)-free graphs", 60, zykov_chain),
        (9, "reduced integral homology of reference complexes", 60, homology_engine),
        (10, "equal face numbers without isomorphism to J*_2(14)", 60, non_uniqueness),
        (11, "pseudomanifold search recovers known classes", 600, pseudomanifold_search),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    panic::set_hook(Box::new(|info| {
        let mut err = std::io::stderr().lock();
        let _ = writeln!(err, "       {info}");
    }));
    let mut failed = 0;
    for (id, title, limit, body) in criteria {
        let label = format!("criterion_{id:02}");
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(body));
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit);
        let ok = outcome.is_ok() && elapsed <= limit;
        failed += usize::from(!ok);
        let status = if ok { "PASS" } else { "FAIL" };
        let timing = if elapsed > limit { " over the time limit" } else { "" };
        let mut out = std::io::stdout().lock();
        let _ = writeln!(
            out,
            "{status} {label} {title} ({:.2}s, limit {}s{timing})",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
