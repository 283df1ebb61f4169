//! Verification campaigns for the face-number inequalities of flag manifolds
//! and spheres, the pseudomanifold search, and growth probes.
//!
//! Verifiers never fail on open inequalities: a violated inequality is a
//! finding recorded in the report, and an input that does not meet a
//! verifier's hypotheses yields a `NotApplicable` verdict with the reason.

mod probe;
mod search;

pub use probe::{growth_probe, non_suspension_sphere_8, non_uniqueness_variant, GrowthRow, GrowthTable};
pub use search::{search_pseudomanifolds, Finding, SearchMode, SearchOptions, SearchSummary};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::complex::{is_homology_manifold, is_homology_sphere, write_complex, SimplicialComplex};
use crate::constructions::{j_graph, j_star, ConstructionError};
use crate::face_vectors::FaceVectorSet;
use crate::graph::{are_isomorphic, clique_vector, Graph};

/// Version of every JSON document this module emits.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HarnessError {
    #[error("bad replacement: {0}")]
    BadReplacement(String),
    #[error("budget exhausted after {examined} candidates ({findings} findings emitted)")]
    BudgetExceeded { examined: u64, findings: u64 },
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("finding sink failed: {0}")]
    Sink(String),
}

/// Lowercase hex SHA-256.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorKind {
    F,
    H,
    G,
    Gamma,
}

impl VectorKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "f" => Some(Self::F),
            "h" => Some(Self::H),
            "g" => Some(Self::G),
            "gamma" => Some(Self::Gamma),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::F => "f",
            Self::H => "h",
            Self::G => "g",
            Self::Gamma => "gamma",
        }
    }

    /// Entry `i` of this vector; f is indexed by dimension, so `f_i` sits at
    /// position `i + 1` of the stored `(f_{−1}, …)`.
    fn entry(self, v: &FaceVectorSet, i: usize) -> BigInt {
        let pick = |xs: &[BigInt], j: usize| xs.get(j).cloned().unwrap_or_default();
        match self {
            Self::F => pick(&v.f, i + 1),
            Self::H => pick(&v.h, i),
            Self::G => pick(&v.g_unchecked(), i),
            Self::Gamma => pick(v.gamma.as_deref().unwrap_or(&[]), i),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    UpperBounds,
    RatioChain,
    EvenDim,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Self::UpperBounds => "upper-bounds",
            Self::RatioChain => "ratio-chain",
            Self::EvenDim => "even-dim",
        }
    }
}

/// `slack = bound − value`; negative slack is a violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub vector: VectorKind,
    pub index: usize,
    #[serde(serialize_with = "crate::json::ser_bigint")]
    pub value: BigInt,
    #[serde(serialize_with = "crate::json::ser_bigint")]
    pub bound: BigInt,
    #[serde(serialize_with = "crate::json::ser_bigint")]
    pub slack: BigInt,
}

impl Comparison {
    fn new(vector: VectorKind, index: usize, value: BigInt, bound: BigInt) -> Self {
        let slack = &bound - &value;
        Comparison { vector, index, value, bound, slack }
    }
}

/// `v_i(M) / v_i(reference)`; `None` when the reference entry is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioStep {
    pub index: usize,
    #[serde(serialize_with = "crate::json::ser_opt_rational")]
    pub ratio: Option<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    AllHold,
    ViolationAt { vector: VectorKind, index: usize },
    NotApplicable { reason: String },
}

/// Outcome of the isomorphism test run when some inequality is tight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityCheck {
    pub tight: Vec<(VectorKind, usize)>,
    pub isomorphic_to_reference: bool,
}

/// Arguments that rerun the check; `<input>` stands for the file whose
/// hash is `input_sha256`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reproduction {
    pub args: Vec<String>,
}

pub const INPUT_PLACEHOLDER: &str = "<input>";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub check: Check,
    /// Short id derived from the input hash.
    pub subject: String,
    pub r: usize,
    pub n: usize,
    pub dimension: isize,
    pub reference: String,
    pub kind: Option<VectorKind>,
    pub comparisons: Vec<Comparison>,
    pub ratios: Vec<RatioStep>,
    pub verdict: Verdict,
    pub equality: Option<EqualityCheck>,
    pub input_sha256: String,
    pub reproduction: Reproduction,
}

impl VerificationReport {
    fn new(check: Check, m: &SimplicialComplex, r: usize, kind: Option<VectorKind>) -> Self {
        let input_sha256 = sha256_hex(write_complex(m).as_bytes());
        let mut args: Vec<String> = vec![
            "verify".into(),
            "--conjecture".into(),
            check.name().into(),
            "--input".into(),
            INPUT_PLACEHOLDER.into(),
        ];
        args.extend(["--r".into(), r.to_string()]);
        if let Some(k) = kind {
            args.extend(["--kind".into(), k.name().into()]);
        }
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            check,
            subject: input_sha256[..16].to_string(),
            r,
            n: m.faces(0).len(),
            dimension: m.dimension(),
            reference: String::new(),
            kind,
            comparisons: Vec::new(),
            ratios: Vec::new(),
            verdict: Verdict::NotApplicable { reason: String::new() },
            equality: None,
            input_sha256,
            reproduction: Reproduction { args },
        }
    }

    fn not_applicable(mut self, reason: String) -> Self {
        self.verdict = Verdict::NotApplicable { reason };
        self
    }

    /// A violated inequality, or a tight one without the isomorphism the
    /// equality case predicts.
    pub fn is_finding(&self) -> bool {
        matches!(self.verdict, Verdict::ViolationAt { .. })
            || self.equality.as_ref().is_some_and(|e| !e.isomorphic_to_reference)
    }

    fn verdict_from_comparisons(&mut self) {
        self.verdict = match self.comparisons.iter().find(|c| c.slack < BigInt::zero()) {
            Some(c) => Verdict::ViolationAt { vector: c.vector, index: c.index },
            None => Verdict::AllHold,
        };
    }
}

/// The graph on the vertices the complex actually uses.
fn used_skeleton(m: &SimplicialComplex) -> Graph {
    let used: Vec<usize> = m.faces(0).iter().map(|f| f[0]).collect();
    m.one_skeleton().induced_subgraph(&used).0
}

/// Reason the complex is not a flag homology manifold of dimension `dim`
/// (a sphere when `sphere`), or `None` when it is.
fn certification_failure(m: &SimplicialComplex, dim: isize, sphere: bool) -> Option<String> {
    if !m.is_pure() {
        return Some("complex is not pure".into());
    }
    if m.dimension() != dim {
        return Some(format!("expected dimension {dim}, got {}", m.dimension()));
    }
    if !m.is_flag() {
        return Some("complex is not flag".into());
    }
    match is_homology_manifold(m) {
        Ok(c) if !c.holds => {
            return Some(format!("link of face {:?} is not a homology sphere", c.failing_face.unwrap_or_default()))
        }
        Err(e) => return Some(e.to_string()),
        Ok(_) => {}
    }
    if sphere && !is_homology_sphere(m) {
        return Some("homology manifold without the homology of a sphere".into());
    }
    None
}

fn vectors_of(g: &Graph) -> FaceVectorSet {
    FaceVectorSet::from_clique_vector(&clique_vector(g, None))
}

fn odd_dim_setup(
    check: Check,
    m: &SimplicialComplex,
    r: usize,
    kind: Option<VectorKind>,
) -> Result<(VerificationReport, FaceVectorSet, FaceVectorSet, Graph), Box<VerificationReport>> {
    let mut report = VerificationReport::new(check, m, r, kind);
    if r == 0 {
        return Err(Box::new(report.not_applicable("r must be positive".into())));
    }
    if let Some(reason) = certification_failure(m, 2 * r as isize - 1, false) {
        return Err(Box::new(report.not_applicable(reason)));
    }
    let n = report.n;
    let reference = match j_graph(n, r) {
        Ok(j) => j,
        Err(e) => return Err(Box::new(report.not_applicable(e.to_string()))),
    };
    report.reference = format!("J_{r}({n})");
    let mine = FaceVectorSet::from_f(m.f_vector()).expect("complex f-vectors start with 1");
    let theirs = vectors_of(&reference);
    Ok((report, mine, theirs, reference))
}

/// Compares `f_i` (1 ≤ i ≤ d−1), `h_i` (2 ≤ i ≤ d−2), `g_i` and `γ_i`
/// (2 ≤ i ≤ d/2) of a flag homology `(2r−1)`-manifold with those of
/// `X(J_r(n))`, `d = 2r`. Tight inequalities trigger an isomorphism test.
pub fn verify_upper_bounds(m: &SimplicialComplex, r: usize) -> VerificationReport {
    let (mut report, mine, theirs, reference) = match odd_dim_setup(Check::UpperBounds, m, r, None) {
        Ok(x) => x,
        Err(report) => return *report,
    };
    let d = 2 * r;
    let ranges = [
        (VectorKind::F, 1..d),
        (VectorKind::H, 2..d.saturating_sub(1)),
        (VectorKind::G, 2..r + 1),
        (VectorKind::Gamma, 2..r + 1),
    ];
    for (kind, range) in ranges {
        for i in range {
            report.comparisons.push(Comparison::new(kind, i, kind.entry(&mine, i), kind.entry(&theirs, i)));
        }
    }
    report.verdict_from_comparisons();
    let tight: Vec<(VectorKind, usize)> =
        report.comparisons.iter().filter(|c| c.slack.is_zero()).map(|c| (c.vector, c.index)).collect();
    if !tight.is_empty() {
        let iso = are_isomorphic(&used_skeleton(m), &reference);
        report.equality = Some(EqualityCheck { tight, isomorphic_to_reference: iso });
    }
    report
}

/// The chain `v_1(M)/v_1(J) ≥ v_2(M)/v_2(J) ≥ … ≥ v_r(M)/v_r(J)` for
/// `v = (f_0, …, f_{r−1})`, `(h_1, …, h_r)`, `(g_1, …, g_r)` or
/// `(γ_1, …, γ_r)`. Reports the first index where a ratio increases.
pub fn verify_ratio_chain(m: &SimplicialComplex, r: usize, kind: VectorKind) -> VerificationReport {
    let (mut report, mine, theirs, _) = match odd_dim_setup(Check::RatioChain, m, r, Some(kind)) {
        Ok(x) => x,
        Err(report) => return *report,
    };
    // f is listed from f_0, the others from index 1
    let shift = usize::from(kind == VectorKind::F);
    for pos in 1..=r {
        let i = pos - shift;
        let (value, bound) = (kind.entry(&mine, i), kind.entry(&theirs, i));
        let ratio = (!bound.is_zero()).then(|| BigRational::new(value.clone(), bound.clone()));
        report.comparisons.push(Comparison::new(kind, i, value, bound));
        report.ratios.push(RatioStep { index: i, ratio });
    }
    report.verdict = Verdict::AllHold;
    let defined: Vec<(usize, &BigRational)> =
        report.ratios.iter().filter_map(|s| s.ratio.as_ref().map(|q| (s.index, q))).collect();
    if let Some(w) = defined.windows(2).find(|w| w[1].1 > w[0].1) {
        report.verdict = Verdict::ViolationAt { vector: kind, index: w[1].0 };
    }
    report
}

/// Compares `f_i` (0 ≤ i ≤ 2r) and `γ_i` (0 ≤ i ≤ r) of a flag homology
/// `2r`-sphere with those of `X(J*_r(n))`.
pub fn verify_even_dim(m: &SimplicialComplex, r: usize) -> VerificationReport {
    let mut report = VerificationReport::new(Check::EvenDim, m, r, None);
    if r == 0 {
        return report.not_applicable("r must be positive".into());
    }
    if let Some(reason) = certification_failure(m, 2 * r as isize, true) {
        return report.not_applicable(reason);
    }
    let n = report.n;
    let reference = match j_star(n, r) {
        Ok(j) => j,
        Err(e) => return report.not_applicable(e.to_string()),
    };
    report.reference = format!("J*_{r}({n})");
    let mine = FaceVectorSet::from_f(m.f_vector()).expect("complex f-vectors start with 1");
    let theirs = vectors_of(&reference);
    for i in 0..=2 * r {
        report.comparisons.push(Comparison::new(
            VectorKind::F,
            i,
            VectorKind::F.entry(&mine, i),
            VectorKind::F.entry(&theirs, i),
        ));
    }
    for i in 0..=r {
        report.comparisons.push(Comparison::new(
            VectorKind::Gamma,
            i,
            VectorKind::Gamma.entry(&mine, i),
            VectorKind::Gamma.entry(&theirs, i),
        ));
    }
    report.verdict_from_comparisons();
    report
}
