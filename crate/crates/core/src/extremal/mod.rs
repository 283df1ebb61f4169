//! Extremality certificates for partitions `V_0 ⊔ V_1 ⊔ … ⊔ V_r`, the
//! partition builder, the greedy `K_3^r` finder, Zykov ratios, edit distance
//! to the Turán graph, and local search for clique-function maximizers.

mod greedy;
mod maximize;
mod partition;

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

pub use greedy::{find_k3r_greedy, zykov_ratios, GreedyOutcome, ZykovReport};
pub use maximize::{maximize_clique_fn, value_at_j, MaximizeOptions, MaximizeOutcome, Move, MoveKind, MoveLog};
pub use partition::{
    build_extremal_partition, closeness_to_turan, radical_implies_j, Closeness, ClosenessMode, DEFAULT_EXACT_BOUND,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtremalError {
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("graph contains a clique on r + 1 vertices: {0:?}")]
    KPlusOneClique(Vec<usize>),
    #[error("exact edit distance is limited to {bound} vertices, got {n}")]
    TooLargeForExact { n: usize, bound: usize },
    #[error("start graph is not extremal for the given parameters")]
    NotExtremal(Box<PartitionCertificate>),
    #[error("{kind:?} move did not increase F (gain {gain}); n is below the range where the move is guaranteed")]
    NonImprovingMove { kind: MoveKind, gain: String },
    #[error("{kind:?} move left the extremal class")]
    MoveBrokeExtremality { kind: MoveKind },
    #[error("clique function order {k} must satisfy 2 <= k <= r = {r}")]
    BadOrder { k: usize, r: usize },
    #[error("graph is not radical for the given partition")]
    NotRadical,
    #[error("part {part} induces {cycles} cycles instead of one")]
    NotSingleCycle { part: usize, cycles: usize },
}

/// Parts `V_0, V_1, …, V_r` of a graph's vertex set, `V_0` first.
pub type Parts = Vec<Vec<usize>>;

/// Checks that `parts` (including `V_0`) are disjoint and cover `0..n`.
pub fn validate_parts(n: usize, parts: &[Vec<usize>]) -> Result<(), ExtremalError> {
    let mut seen = FixedBitSet::with_capacity(n);
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            if v >= n {
                return Err(ExtremalError::BadPartition(format!(
                    "vertex {v} in part {i} is out of range for {n} vertices"
                )));
            }
            if seen.put(v) {
                return Err(ExtremalError::BadPartition(format!("vertex {v} appears twice")));
            }
        }
    }
    if seen.count_ones(..) != n {
        let missing = (0..n).find(|&v| !seen.contains(v)).expect("some vertex is uncovered");
        return Err(ExtremalError::BadPartition(format!("vertex {missing} is in no part")));
    }
    Ok(())
}

/// Partition file: one line per part, line 0 is `V_0` and may be empty.
pub fn parse_partition(text: &str) -> Result<Parts, ExtremalError> {
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            line.split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| ExtremalError::BadPartition(format!("line {}: bad vertex {t:?}", i + 1)))
                })
                .collect()
        })
        .collect()
}

pub fn write_partition(parts: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for p in parts {
        let line: Vec<String> = p.iter().map(usize::to_string).collect();
        writeln!(out, "{}", line.join(" ")).expect("writing to a String cannot fail");
    }
    out
}

fn rat(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[cfg(test)]
pub(crate) fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn pow(base: usize, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

/// Constants used by the extremal argument. `eta` and `epsilon` follow their
/// defining formulas; the remaining ones are existential and are carried as
/// configuration with conservative defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalConstants {
    pub r: usize,
    /// `1 / (14 r^r)`.
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub eta: BigRational,
    /// `η² / (120 r^{r+3})`.
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub epsilon: BigRational,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub alpha: BigRational,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub beta: BigRational,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub delta: BigRational,
    pub m0: usize,
    pub m1: usize,
    pub m2: usize,
}

impl ExtremalConstants {
    pub fn eta(r: usize) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(14) * pow(r, r))
    }

    pub fn epsilon(r: usize) -> BigRational {
        let eta = Self::eta(r);
        &eta * &eta / BigRational::from_integer(BigInt::from(120) * pow(r, r + 3))
    }

    /// `⌈2r/η⌉`, the vertex count from which the partition builder's
    /// guarantee applies.
    pub fn partition_threshold(r: usize, eta: &BigRational) -> usize {
        let bound = rat(2 * r) / eta;
        bound.ceil().to_integer().try_into().unwrap_or(usize::MAX)
    }

    /// Defaults: `α = β = δ = ε/2` and `m_0 = m_1 = m_2 = ⌈2r/η⌉`.
    pub fn for_r(r: usize) -> Self {
        let eta = Self::eta(r);
        let epsilon = Self::epsilon(r);
        let half = &epsilon / rat(2);
        let m = Self::partition_threshold(r, &eta);
        ExtremalConstants { r, eta, epsilon, alpha: half.clone(), beta: half.clone(), delta: half, m0: m, m1: m, m2: m }
    }
}

/// A part index in `1..=r` paired with another, for the exceptional-vertex
/// classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum VertexType {
    Type1 { g: usize, h: usize },
    Type2 { g: usize, h: usize },
    Untyped,
}

/// A single violation, with enough data to re-check it by hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    ExceptionalSetTooLarge {
        size: usize,
        #[serde(serialize_with = "crate::json::ser_rational")]
        bound: BigRational,
    },
    PartSize {
        part: usize,
        size: usize,
        #[serde(serialize_with = "crate::json::ser_bigint")]
        lower: BigInt,
        #[serde(serialize_with = "crate::json::ser_bigint")]
        upper: BigInt,
    },
    Triangle {
        part: usize,
        vertices: [usize; 3],
    },
    HighDegree {
        part: usize,
        vertex: usize,
        degree: usize,
    },
    LowCrossDegree {
        vertex: usize,
        from: usize,
        to: usize,
        degree: usize,
        #[serde(serialize_with = "crate::json::ser_rational")]
        required: BigRational,
    },
    Untyped {
        vertex: usize,
    },
}

const MAX_WITNESSES: usize = 32;

/// Outcome for one condition; `violations` counts all failures while
/// `witnesses` keeps the first few.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct ConditionResult {
    pub passed: bool,
    pub violations: usize,
    pub witnesses: Vec<Witness>,
}

impl ConditionResult {
    fn from_witnesses(all: Vec<Witness>) -> Self {
        let violations = all.len();
        ConditionResult {
            passed: violations == 0,
            violations,
            witnesses: all.into_iter().take(MAX_WITNESSES).collect(),
        }
    }
}

/// Conditions (a)–(e) of extremality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    /// Size bounds on `V_0` and on every `V_i`.
    pub a: ConditionResult,
    /// Each `H[V_i]` is triangle-free.
    pub b: ConditionResult,
    /// Each `H[V_i]` has maximum degree at most 2.
    pub c: ConditionResult,
    /// `deg(v, V_j) ≥ (1 − η)|V_j|` for `v ∈ V_i`, `i ≠ j`.
    pub d: ConditionResult,
    /// Every vertex of `V_0` is of Type 1 or Type 2.
    pub e: ConditionResult,
}

impl ConditionReport {
    pub fn all_passed(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d, &self.e].iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionCertificate {
    pub holds: bool,
    pub r: usize,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub eta: BigRational,
    pub parts: Parts,
    pub conditions: ConditionReport,
    /// Classification of every vertex of `V_0`, in the order of `parts[0]`.
    pub vertex_types: Vec<(usize, VertexType)>,
}

impl PartitionCertificate {
    pub fn sizes(&self) -> Vec<usize> {
        self.parts[1..].iter().map(Vec::len).collect()
    }
}

/// `deg(v, V_g) ≤ 2` with `deg(v, V_h) ≤ (1 − η/2)|V_h|` wins over the
/// Type 2 pattern; the first qualifying `(g, h)` in lexicographic order is
/// reported.
pub fn classify_vertex(h: &Graph, v: usize, parts: &[Vec<usize>], eta: &BigRational) -> VertexType {
    let r = parts.len() - 1;
    let degs: Vec<usize> = parts[1..].iter().map(|p| h.degree_into(v, p)).collect();
    let half_bound = |i: usize| (BigRational::one() - eta / rat(2)) * rat(parts[i + 1].len());
    let three_bound = |i: usize| rat(3 * r) * eta * rat(parts[i + 1].len());
    for g in 0..r {
        for hh in 0..r {
            if g != hh && degs[g] <= 2 && rat(degs[hh]) <= half_bound(hh) {
                return VertexType::Type1 { g: g + 1, h: hh + 1 };
            }
        }
    }
    for g in 0..r {
        for hh in g + 1..r {
            if rat(degs[g]) <= three_bound(g) && rat(degs[hh]) <= three_bound(hh) {
                return VertexType::Type2 { g: g + 1, h: hh + 1 };
            }
        }
    }
    VertexType::Untyped
}

/// Evaluates conditions (a)–(e) for `parts = [V_0, V_1, …, V_r]`.
pub fn check_extremal(
    h: &Graph,
    parts: &[Vec<usize>],
    eta: &BigRational,
    r: usize,
) -> Result<PartitionCertificate, ExtremalError> {
    let n = h.vertex_count();
    if parts.len() != r + 1 {
        return Err(ExtremalError::BadPartition(format!(
            "expected {} parts including V_0, got {}",
            r + 1,
            parts.len()
        )));
    }
    if r == 0 {
        return Err(ExtremalError::BadInput("r must be at least 1".into()));
    }
    if *eta < BigRational::zero() || *eta >= BigRational::one() {
        return Err(ExtremalError::BadInput("eta must lie in [0, 1)".into()));
    }
    validate_parts(n, parts)?;
    let r_pow = pow(r, r);

    let mut a = Vec::new();
    let v0_bound = eta * rat(n) / BigRational::from_integer(BigInt::from(30) * &r_pow);
    if rat(parts[0].len()) > v0_bound {
        a.push(Witness::ExceptionalSetTooLarge { size: parts[0].len(), bound: v0_bound });
    }
    let per = rat(n) / rat(r);
    let slack = eta / rat(30 * r);
    let lower = ((BigRational::one() - &slack) * &per).floor().to_integer();
    let upper = ((BigRational::one() + &slack) * &per).ceil().to_integer();
    for (i, p) in parts.iter().enumerate().skip(1) {
        let size = BigInt::from(p.len());
        if size < lower || size > upper {
            a.push(Witness::PartSize { part: i, size: p.len(), lower: lower.clone(), upper: upper.clone() });
        }
    }

    let mut b = Vec::new();
    let mut c = Vec::new();
    for (i, p) in parts.iter().enumerate().skip(1) {
        let set = h.vertex_set(p);
        for &v in p {
            let inside: Vec<usize> = h.neighbors(v).iter().copied().filter(|&u| set.contains(u)).collect();
            if inside.len() > 2 {
                c.push(Witness::HighDegree { part: i, vertex: v, degree: inside.len() });
            }
            for (x, &u) in inside.iter().enumerate() {
                if u <= v {
                    continue;
                }
                for &w in &inside[x + 1..] {
                    if h.is_adjacent(u, w) {
                        b.push(Witness::Triangle { part: i, vertices: [v, u, w] });
                    }
                }
            }
        }
    }

    let mut d = Vec::new();
    let required: Vec<BigRational> = parts.iter().map(|p| (BigRational::one() - eta) * rat(p.len())).collect();
    for (i, p) in parts.iter().enumerate().skip(1) {
        for &v in p {
            for (j, q) in parts.iter().enumerate().skip(1) {
                if i == j {
                    continue;
                }
                let degree = h.degree_into(v, q);
                if rat(degree) < required[j] {
                    d.push(Witness::LowCrossDegree {
                        vertex: v,
                        from: i,
                        to: j,
                        degree,
                        required: required[j].clone(),
                    });
                }
            }
        }
    }

    let vertex_types: Vec<(usize, VertexType)> =
        parts[0].iter().map(|&v| (v, classify_vertex(h, v, parts, eta))).collect();
    let e = vertex_types
        .iter()
        .filter(|(_, t)| *t == VertexType::Untyped)
        .map(|&(vertex, _)| Witness::Untyped { vertex })
        .collect();

    let conditions = ConditionReport {
        a: ConditionResult::from_witnesses(a),
        b: ConditionResult::from_witnesses(b),
        c: ConditionResult::from_witnesses(c),
        d: ConditionResult::from_witnesses(d),
        e: ConditionResult::from_witnesses(e),
    };
    Ok(PartitionCertificate {
        holds: conditions.all_passed(),
        r,
        eta: eta.clone(),
        parts: parts.to_vec(),
        conditions,
        vertex_types,
    })
}

/// `(0, r)`-extremal with every vertex of degree exactly 2 inside its part.
pub fn is_radical(h: &Graph, parts: &[Vec<usize>]) -> Result<bool, ExtremalError> {
    let r = parts.len().checked_sub(1).ok_or_else(|| ExtremalError::BadPartition("no parts".into()))?;
    let cert = check_extremal(h, parts, &BigRational::zero(), r)?;
    Ok(cert.holds && parts[1..].iter().all(|p| p.iter().all(|&v| h.degree_into(v, p) == 2)))
}

/// Balanced sizes `⌈n/r⌉, …, ⌊n/r⌋`, larger parts first.
pub(crate) fn balanced_sizes(n: usize, r: usize) -> Vec<usize> {
    let (q, rem) = n.div_rem(&r);
    (0..r).map(|i| q + usize::from(i < rem)).collect()
}
