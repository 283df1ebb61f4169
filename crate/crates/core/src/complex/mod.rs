//! Simplicial complexes, integer homology, and the link-based certificates
//! (homology manifold, homology sphere, Eulerian, weak pseudomanifold).

mod homology;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{clique_vector, for_each_clique, Graph};

pub use homology::{
    boundary_matrix, homology, smith_normal_form, HomologyGroup, HomologyProfile, SmithForm, SparseMatrix,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("facet {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),
    #[error("complex is not pure: facets range over dimensions {min}..={max}")]
    NotPure { min: isize, max: isize },
    #[error("{0:?} is not a face")]
    NotAFace(Vec<usize>),
}

static EMPTY_FACE: [Vec<usize>; 1] = [Vec::new()];

/// A finite simplicial complex on the ground set `0..vertex_count`, stored as
/// lexicographically sorted face lists per dimension. The empty face is
/// always present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// `faces[i]` holds the `i`-dimensional faces.
    faces: Vec<Vec<Vec<usize>>>,
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|v| it.any(|w| w == v))
}

impl SimplicialComplex {
    fn from_face_sets(vertex_count: usize, mut by_size: Vec<BTreeSet<Vec<usize>>>) -> Self {
        while by_size.last().is_some_and(|s| s.is_empty()) {
            by_size.pop();
        }
        let faces = by_size.into_iter().skip(1).map(|s| s.into_iter().collect()).collect();
        SimplicialComplex { vertex_count, faces }
    }

    /// Downward closure of the given facets. Each facet is sorted on entry.
    pub fn from_facets<I>(vertex_count: usize, facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut by_size: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new()];
        for mut facet in facets {
            facet.sort_unstable();
            if facet.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::RepeatedVertex(facet));
            }
            if let Some(&v) = facet.iter().find(|&&v| v >= vertex_count) {
                return Err(ComplexError::VertexOutOfRange { vertex: v, n: vertex_count });
            }
            if by_size.len() <= facet.len() {
                by_size.resize(facet.len() + 1, BTreeSet::new());
            }
            if by_size[facet.len()].contains(&facet) {
                continue;
            }
            assert!(facet.len() < 32, "facets with 32 or more vertices are out of reach");
            for mask in 1u32..(1 << facet.len()) {
                let sub: Vec<usize> =
                    facet.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                by_size[sub.len()].insert(sub);
            }
        }
        Ok(Self::from_face_sets(vertex_count, by_size))
    }

    /// The clique complex `X(g)`: every clique is a face.
    pub fn clique_complex(g: &Graph) -> Self {
        let mut by_size: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new()];
        for_each_clique(g, None, |c| {
            if by_size.len() <= c.len() {
                by_size.resize(c.len() + 1, BTreeSet::new());
            }
            by_size[c.len()].insert(c.to_vec());
        });
        Self::from_face_sets(g.vertex_count(), by_size)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Largest face dimension; `−1` when only the empty face is present.
    pub fn dimension(&self) -> isize {
        self.faces.len() as isize - 1
    }

    /// Faces of the given dimension in lexicographic order.
    pub fn faces(&self, dim: isize) -> &[Vec<usize>] {
        match dim {
            -1 => &EMPTY_FACE,
            d if d >= 0 && (d as usize) < self.faces.len() => &self.faces[d as usize],
            _ => &[],
        }
    }

    /// All faces, empty face first, then by dimension.
    pub fn all_faces(&self) -> impl Iterator<Item = &[usize]> + '_ {
        (-1..=self.dimension()).flat_map(move |d| self.faces(d).iter().map(Vec::as_slice))
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        let d = face.len() as isize - 1;
        let mut sorted = face.to_vec();
        sorted.sort_unstable();
        self.faces(d).binary_search(&sorted).is_ok()
    }

    /// `(f_{−1}, f_0, …, f_{dim})`.
    pub fn f_vector(&self) -> Vec<BigInt> {
        (-1..=self.dimension()).map(|d| BigInt::from(self.faces(d).len())).collect()
    }

    /// `Σ_{i ≥ −1} (−1)^i f_i`.
    pub fn reduced_euler_characteristic(&self) -> BigInt {
        (-1..=self.dimension())
            .map(|d| {
                let f = BigInt::from(self.faces(d).len());
                if d.rem_euclid(2) == 0 {
                    f
                } else {
                    -f
                }
            })
            .sum()
    }

    /// Maximal faces, by dimension then lexicographically.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for d in 0..=self.dimension() {
            let above = self.faces(d + 1);
            let covered: BTreeSet<Vec<usize>> =
                above.iter().flat_map(|f| (0..f.len()).map(move |i| [&f[..i], &f[i + 1..]].concat())).collect();
            out.extend(self.faces(d).iter().filter(|f| !covered.contains(*f)).cloned());
        }
        if out.is_empty() {
            out.push(Vec::new());
        }
        out
    }

    /// Checks that every facet has the top dimension.
    pub fn check_pure(&self) -> Result<(), ComplexError> {
        let facets = self.facets();
        let min = facets.iter().map(|f| f.len() as isize - 1).min().unwrap_or(-1);
        let max = self.dimension();
        if min == max {
            Ok(())
        } else {
            Err(ComplexError::NotPure { min, max })
        }
    }

    pub fn is_pure(&self) -> bool {
        self.check_pure().is_ok()
    }

    /// The graph of vertices and edges, on the full ground set.
    pub fn one_skeleton(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self.faces(1).iter().map(|e| (e[0], e[1])).collect();
        Graph::new(self.vertex_count, &edges).expect("edges of a complex form a simple graph")
    }

    /// True when the complex is the clique complex of its 1-skeleton.
    pub fn is_flag(&self) -> bool {
        let mut cliques: Vec<BigInt> =
            clique_vector(&self.one_skeleton(), None).counts().iter().map(|c| BigInt::from(c.clone())).collect();
        // ground vertices outside the complex are isolated 1-cliques
        if cliques.len() > 1 {
            cliques[1] -= self.vertex_count - self.faces(0).len();
            if cliques.len() == 2 && cliques[1] == BigInt::from(0) {
                cliques.pop();
            }
        }
        cliques == self.f_vector()
    }

    /// `lk(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ K}` on the same ground set.
    pub fn link(&self, sigma: &[usize]) -> Result<SimplicialComplex, ComplexError> {
        let mut sigma = sigma.to_vec();
        sigma.sort_unstable();
        if !self.contains(&sigma) {
            return Err(ComplexError::NotAFace(sigma));
        }
        let mut by_size: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); self.faces.len() + 1 - sigma.len()];
        for d in sigma.len() as isize - 1..=self.dimension() {
            for f in self.faces(d) {
                if is_subset(&sigma, f) {
                    let rest: Vec<usize> = f.iter().copied().filter(|v| sigma.binary_search(v).is_err()).collect();
                    by_size[rest.len()].insert(rest);
                }
            }
        }
        Ok(Self::from_face_sets(self.vertex_count, by_size))
    }

    /// Whether the vertices that are faces form one connected component
    /// under the edges. A complex without vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        let g = self.one_skeleton();
        let present: BTreeSet<usize> = self.faces(0).iter().map(|f| f[0]).collect();
        let comps = g.components();
        comps.iter().filter(|c| c.iter().any(|v| present.contains(v))).count() <= 1
    }
}

/// Outcome of a link-by-link check, naming the first failing face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifoldCertificate {
    pub holds: bool,
    pub dimension: isize,
    pub failing_face: Option<Vec<usize>>,
    pub failing_link_homology: Option<HomologyProfile>,
    /// Reported separately; the link criterion does not require it.
    pub connected: bool,
    pub faces_checked: usize,
}

/// Every nonempty face `σ` of a pure `q`-complex must have a link with the
/// reduced homology of `S^{q−|σ|}`. Faces are visited in decreasing
/// dimension, lexicographically within a dimension, stopping at the first
/// failure.
pub fn is_homology_manifold(k: &SimplicialComplex) -> Result<ManifoldCertificate, ComplexError> {
    k.check_pure()?;
    let q = k.dimension();
    let mut checked = 0;
    for d in (0..=q).rev() {
        for face in k.faces(d) {
            checked += 1;
            let link = k.link(face).expect("face of the complex");
            let h = homology(&link);
            if !h.is_sphere(q - face.len() as isize) {
                return Ok(ManifoldCertificate {
                    holds: false,
                    dimension: q,
                    failing_face: Some(face.clone()),
                    failing_link_homology: Some(h),
                    connected: k.is_connected(),
                    faces_checked: checked,
                });
            }
        }
    }
    Ok(ManifoldCertificate {
        holds: true,
        dimension: q,
        failing_face: None,
        failing_link_homology: None,
        connected: k.is_connected(),
        faces_checked: checked,
    })
}

/// A homology manifold that itself has the homology of `S^{dim}`.
pub fn is_homology_sphere(k: &SimplicialComplex) -> bool {
    matches!(is_homology_manifold(k), Ok(c) if c.holds) && homology(k).is_sphere(k.dimension())
}

/// Pass/fail with the first face that breaks the property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceCertificate {
    pub holds: bool,
    pub failing_face: Option<Vec<usize>>,
}

/// Checks `χ̃(lk σ) = (−1)^{q−|σ|}` for every face, the empty face first.
pub fn eulerian_certificate(k: &SimplicialComplex) -> Result<FaceCertificate, ComplexError> {
    k.check_pure()?;
    let q = k.dimension();
    for sigma in k.all_faces() {
        let mut chi = 0i64;
        for d in sigma.len() as isize - 1..=q {
            for f in k.faces(d) {
                if is_subset(sigma, f) {
                    chi += if (f.len() - sigma.len()) % 2 == 1 { 1 } else { -1 };
                }
            }
        }
        let want = if (q - sigma.len() as isize).rem_euclid(2) == 0 { 1 } else { -1 };
        if chi != want {
            return Ok(FaceCertificate { holds: false, failing_face: Some(sigma.to_vec()) });
        }
    }
    Ok(FaceCertificate { holds: true, failing_face: None })
}

pub fn is_eulerian(k: &SimplicialComplex) -> Result<bool, ComplexError> {
    eulerian_certificate(k).map(|c| c.holds)
}

/// Purity plus: every codimension-one face lies in exactly two facets. The
/// failing face is an impure facet or a ridge with the wrong incidence.
pub fn pseudomanifold_certificate(k: &SimplicialComplex) -> FaceCertificate {
    let q = k.dimension();
    if let Some(f) = k.facets().into_iter().find(|f| f.len() as isize - 1 != q) {
        return FaceCertificate { holds: false, failing_face: Some(f) };
    }
    let mut incidence: HashMap<Vec<usize>, usize> = k.faces(q - 1).iter().map(|r| (r.clone(), 0)).collect();
    for f in k.faces(q) {
        for i in 0..f.len() {
            *incidence.get_mut(&[&f[..i], &f[i + 1..]].concat()).expect("closed under subsets") += 1;
        }
    }
    let failing = k.faces(q - 1).iter().find(|r| incidence[*r] != 2).cloned();
    FaceCertificate { holds: failing.is_none(), failing_face: failing }
}

pub fn is_weak_pseudomanifold(k: &SimplicialComplex) -> bool {
    pseudomanifold_certificate(k).holds
}

/// The same property read off a graph for its clique complex of dimension
/// `d − 1`: every clique on fewer than `d − 1` vertices extends, and every
/// `(d − 1)`-clique has exactly two, nonadjacent, common neighbors.
pub fn is_flag_weak_pseudomanifold(g: &Graph, d: usize) -> bool {
    if d == 0 {
        return false;
    }
    let check = |c: &[usize]| -> bool {
        let common = g.common_neighborhood(c);
        if c.len() + 1 < d {
            common.count_ones(..) > 0
        } else {
            let vs: Vec<usize> = common.ones().collect();
            vs.len() == 2 && !g.is_adjacent(vs[0], vs[1])
        }
    };
    if !check(&[]) {
        return false;
    }
    let mut ok = true;
    if d >= 2 {
        for_each_clique(g, Some(d - 1), |c| ok = ok && check(c));
    }
    ok
}

/// Complex file: first line `n`, then one facet per line as sorted vertex
/// indices.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex, ComplexError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or(ComplexError::Parse { line: 1, message: "missing header".into() })?;
    let n: usize = header.trim().parse().map_err(|_| ComplexError::Parse {
        line: hline + 1,
        message: format!("expected vertex count, got {:?}", header.trim()),
    })?;
    let mut facets = Vec::new();
    for (i, l) in lines {
        let facet = l
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| ComplexError::Parse {
                    line: i + 1,
                    message: format!("expected a vertex index, got {t:?}"),
                })
            })
            .collect::<Result<Vec<usize>, _>>()?;
        if facet.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ComplexError::Parse { line: i + 1, message: "facet must be strictly increasing".into() });
        }
        facets.push(facet);
    }
    SimplicialComplex::from_facets(n, facets)
}

pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut out = format!("{}\n", k.vertex_count());
    for f in k.facets().into_iter().filter(|f| !f.is_empty()) {
        let line: Vec<String> = f.iter().map(usize::to_string).collect();
        writeln!(out, "{}", line.join(" ")).expect("writing to a String cannot fail");
    }
    out
}
