use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::SimplicialComplex;

/// Sparse integer matrix in triplet form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, value)` with nonzero values and no repeated positions.
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    /// Product `self · other`; panics on a dimension mismatch.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut by_row: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for &(r, c, v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &(r, k, v) in &self.entries {
            for &(c, w) in by_row.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                *acc.entry((r, c)).or_insert(0) += v * w;
            }
        }
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: acc.into_iter().filter(|&(_, v)| v != 0).map(|((r, c), v)| (r, c, v)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Rank and invariant factors (all ≥ 1, each dividing the next).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    /// Invariant factors ≥ 2.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Column-major sparse matrix with a row → columns index, kept in sync.
struct Work {
    cols: Vec<BTreeMap<usize, BigInt>>,
    rows: Vec<BTreeSet<usize>>,
}

impl Work {
    fn set(&mut self, r: usize, c: usize, v: BigInt) {
        if v.is_zero() {
            self.cols[c].remove(&r);
            self.rows[r].remove(&c);
        } else {
            self.cols[c].insert(r, v);
            self.rows[r].insert(c);
        }
    }

    fn get(&self, r: usize, c: usize) -> BigInt {
        self.cols[c].get(&r).cloned().unwrap_or_default()
    }

    /// Nonzero entry of least absolute value, stopping early at a unit.
    fn min_entry(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for (c, col) in self.cols.iter().enumerate() {
            for (&r, v) in col {
                let a = v.abs();
                if a.is_one() {
                    return Some((r, c));
                }
                if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                    best = Some((r, c, a));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    /// `row_s -= f · row_p`.
    fn row_axpy(&mut self, s: usize, p: usize, f: &BigInt) {
        let cs: Vec<usize> = self.rows[p].iter().copied().collect();
        for c in cs {
            let v = self.get(s, c) - f * self.get(p, c);
            self.set(s, c, v);
        }
    }

    /// `col_c -= f · col_q`.
    fn col_axpy(&mut self, c: usize, q: usize, f: &BigInt) {
        let rs: Vec<(usize, BigInt)> = self.cols[q].iter().map(|(&r, v)| (r, v.clone())).collect();
        for (r, v) in rs {
            let nv = self.get(r, c) - f * v;
            self.set(r, c, nv);
        }
    }
}

/// Smith normal form over the integers. Pivots on an entry of minimal
/// absolute value; a nonzero remainder restarts pivot selection, so the pivot
/// magnitude strictly decreases until the pivot divides its row and column.
pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    let mut w = Work { cols: vec![BTreeMap::new(); m.cols], rows: vec![BTreeSet::new(); m.rows] };
    for &(r, c, v) in &m.entries {
        w.set(r, c, BigInt::from(v));
    }
    let mut diagonal: Vec<BigInt> = Vec::new();
    'pivot: while let Some((p, q)) = w.min_entry() {
        let a = w.get(p, q);
        let col_rows: Vec<usize> = w.cols[q].keys().copied().filter(|&s| s != p).collect();
        let mut clean = true;
        for s in col_rows {
            let f = w.get(s, q).div_floor(&a);
            w.row_axpy(s, p, &f);
            clean &= !w.cols[q].contains_key(&s);
        }
        if !clean {
            continue 'pivot;
        }
        let row_cols: Vec<usize> = w.rows[p].iter().copied().filter(|&c| c != q).collect();
        for c in row_cols {
            let f = w.get(p, c).div_floor(&a);
            w.col_axpy(c, q, &f);
            clean &= !w.rows[p].contains(&c);
        }
        if !clean {
            continue 'pivot;
        }
        w.set(p, q, BigInt::zero());
        diagonal.push(a.abs());
    }
    SmithForm { rank: diagonal.len(), invariant_factors: normalize_diagonal(diagonal) }
}

/// Turns any diagonal into a divisibility chain with the same cokernel by
/// replacing pairs with their gcd and lcm.
fn normalize_diagonal(diag: Vec<BigInt>) -> Vec<BigInt> {
    let units = diag.iter().filter(|d| d.is_one()).count();
    let mut rest: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_one()).collect();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    // after the pairwise pass rest[0] | rest[1] | …, with any units first
    let mut out = vec![BigInt::one(); units];
    out.extend(rest);
    out
}

/// Reduced homology in one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub dim: isize,
    pub betti: usize,
    #[serde(serialize_with = "crate::json::ser_bigint_seq")]
    pub torsion: Vec<BigInt>,
}

/// Reduced integer homology from dimension −1 up to the dimension of the
/// complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    fn group(&self, dim: isize) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.dim == dim)
    }

    pub fn betti(&self, dim: isize) -> usize {
        self.group(dim).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, dim: isize) -> &[BigInt] {
        self.group(dim).map_or(&[], |g| g.torsion.as_slice())
    }

    /// Matches `S^q`: a single `Z` in dimension `q`, nothing else.
    pub fn is_sphere(&self, q: isize) -> bool {
        self.group(q).is_some()
            && self.groups.iter().all(|g| g.torsion.is_empty() && g.betti == usize::from(g.dim == q))
    }

    /// `Σ (−1)^i β_i`, which equals the reduced Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().map(|g| if g.dim.rem_euclid(2) == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum()
    }
}

/// Augmented boundary map `∂_d : C_d → C_{d−1}` for `d ≥ 0`, with rows and
/// columns indexed by the sorted face lists (`C_{−1}` is spanned by the empty
/// face).
pub fn boundary_matrix(k: &SimplicialComplex, d: usize) -> SparseMatrix {
    let upper = k.faces(d as isize);
    if d == 0 {
        return SparseMatrix { rows: 1, cols: upper.len(), entries: (0..upper.len()).map(|c| (0, c, 1)).collect() };
    }
    let lower = k.faces(d as isize - 1);
    let index: HashMap<&[usize], usize> = lower.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let mut entries = Vec::with_capacity(upper.len() * (d + 1));
    let mut buf = Vec::with_capacity(d);
    for (c, face) in upper.iter().enumerate() {
        for i in 0..face.len() {
            buf.clear();
            buf.extend(face.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
            let r = index[buf.as_slice()];
            entries.push((r, c, if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    entries.sort_unstable();
    SparseMatrix { rows: lower.len(), cols: upper.len(), entries }
}

/// Reduced integer homology via Smith normal forms of the augmented boundary
/// maps.
pub fn homology(k: &SimplicialComplex) -> HomologyProfile {
    let top = k.dimension();
    // forms[d + 1] is the SNF of ∂_d for d = 0..=top; ∂_{top+1} is zero.
    let forms: Vec<SmithForm> = (0..=top).map(|d| smith_normal_form(&boundary_matrix(k, d as usize))).collect();
    let rank = |d: isize| -> usize {
        if d < 0 || d > top {
            0
        } else {
            forms[d as usize].rank
        }
    };
    let groups = (-1..=top)
        .map(|i| {
            let chains = k.faces(i).len();
            let torsion = if i < top { forms[(i + 1) as usize].torsion() } else { Vec::new() };
            HomologyGroup { dim: i, betti: chains - rank(i) - rank(i + 1), torsion }
        })
        .collect();
    HomologyProfile { groups }
}
