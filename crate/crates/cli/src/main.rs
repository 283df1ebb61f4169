//! `flagext`: build graph families, certify clique complexes, run the
//! clique-function maximizer, and drive verification campaigns.
//!
//! Exit codes: 0 success, 2 a violation or finding was recorded, 1 error.

mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use flagext::complex::{
    eulerian_certificate, homology, is_homology_manifold, is_homology_sphere, pseudomanifold_certificate,
    write_complex, SimplicialComplex,
};
use flagext::constructions::{
    cycle, j_graph_partitioned, j_star_partitioned, join_of_cycles, k3r, turan_partitioned, PartitionedGraph,
};
use flagext::extremal::{
    check_extremal, closeness_to_turan, is_radical, maximize_clique_fn, write_partition, zykov_ratios, ClosenessMode,
    ExtremalConstants, ExtremalError, MaximizeOptions, Parts, DEFAULT_EXACT_BOUND,
};
use flagext::face_vectors::{CliqueFunction, FaceVectorSet};
use flagext::graph::{clique_vector, write_graph_json, write_graph_text};
use flagext::harness::{
    growth_probe, search_pseudomanifolds, verify_even_dim, verify_ratio_chain, verify_upper_bounds, HarnessError,
    SearchMode, SearchOptions, VectorKind, INPUT_PLACEHOLDER,
};

use input::{rational, rational_list, read_partition, usize_list, Input};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error(transparent)]
    Construction(#[from] flagext::constructions::ConstructionError),
    #[error(transparent)]
    Complex(#[from] flagext::complex::ComplexError),
    #[error(transparent)]
    FaceVector(#[from] flagext::face_vectors::FaceVectorError),
}

const OK: u8 = 0;
const FINDING: u8 = 2;

#[derive(Parser)]
#[command(name = "flagext", version, about = "Flag complexes, face vectors and extremal clique functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named graph family.
    Construct(ConstructArgs),
    /// Certify a property of a graph or complex; prints a JSON certificate.
    Check(CheckArgs),
    /// Face numbers and related statistics of a graph or complex.
    Stats(StatsArgs),
    /// Local search for the maximizer of a clique function.
    Maximize(MaximizeArgs),
    /// Compare a certified complex with the extremal reference complex.
    Verify(VerifyArgs),
    /// Search for flag weak pseudomanifolds.
    Search(SearchArgs),
    /// Growth of clique counts along the extremal family.
    Probe(ProbeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Turan,
    Jr,
    JrStar,
    K3r,
    Cycle,
    Join,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Text,
    Json,
    /// The clique complex in complex format.
    Complex,
}

#[derive(Args)]
struct ConstructArgs {
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Cycle lengths for `join`, comma separated.
    #[arg(long)]
    lengths: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: GraphFormat,
    /// Also write the parts as a partition file (line 0 is the empty V_0).
    #[arg(long)]
    partition_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Flag,
    Pseudomanifold,
    Eulerian,
    Manifold,
    Sphere,
    Extremal,
    Radical,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    what: Property,
    #[arg(long)]
    input: PathBuf,
    /// Partition file for `extremal` and `radical`.
    #[arg(long)]
    partition: Option<PathBuf>,
    /// η as `a/b`; defaults to 1/(14 r^r).
    #[arg(long)]
    eta: Option<String>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    input: PathBuf,
    /// Adds clique-density ratios against T_r(n) and the edit distance to it.
    #[arg(long)]
    r: Option<usize>,
    /// Adds reduced integral homology.
    #[arg(long)]
    homology: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MaximizeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// Clique-function coefficients `c_k,…,c_0`, highest first.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    /// Start graph; defaults to T_r(n) with its natural parts.
    #[arg(long, requires = "partition")]
    start: Option<PathBuf>,
    #[arg(long)]
    partition: Option<PathBuf>,
    #[arg(long)]
    eta: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Conjecture {
    UpperBounds,
    RatioChain,
    EvenDim,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    F,
    H,
    G,
    Gamma,
}

impl From<Kind> for VectorKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::F => VectorKind::F,
            Kind::H => VectorKind::H,
            Kind::G => VectorKind::G,
            Kind::Gamma => VectorKind::Gamma,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    conjecture: Conjecture,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    r: usize,
    #[arg(long, value_enum, default_value = "f")]
    kind: Kind,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Args)]
struct SearchArgs {
    /// Search flag weak pseudomanifolds (the only search target).
    #[arg(long)]
    pseudo: bool,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exhaustive: isomorphism classes examined. Random: samples.
    #[arg(long)]
    budget: Option<u64>,
    /// Largest n_max accepted in exhaustive mode.
    #[arg(long, default_value_t = 10)]
    exhaustive_limit: usize,
    /// JSON-lines output; one finding per line.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ProbeArgs {
    /// Tabulate e_{r+1}(J_r(n)) / n^r (the only probe).
    #[arg(long)]
    growth: bool,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn writer(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_json(out: &Option<PathBuf>, value: &Value) -> Result<(), CliError> {
    let mut w = writer(out)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::from)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required here")))
}

fn with_v0(parts: Vec<Vec<usize>>) -> Parts {
    std::iter::once(Vec::new()).chain(parts).collect()
}

fn construct(a: ConstructArgs) -> Result<u8, CliError> {
    let built: PartitionedGraph = match a.family {
        Family::Turan => turan_partitioned(need(a.n, "n")?, need(a.r, "r")?),
        Family::Jr => j_graph_partitioned(need(a.n, "n")?, need(a.r, "r")?)?,
        Family::JrStar => j_star_partitioned(need(a.n, "n")?, need(a.r, "r")?)?,
        Family::K3r => {
            let r = need(a.r, "r")?;
            PartitionedGraph { graph: k3r(r), parts: turan_partitioned(3 * r, r).parts }
        }
        Family::Cycle => {
            let n = need(a.n, "n")?;
            if n < 3 {
                return Err(CliError::Usage("a cycle needs at least 3 vertices".into()));
            }
            PartitionedGraph { graph: cycle(n), parts: vec![(0..n).collect()] }
        }
        Family::Join => join_of_cycles(&usize_list(&need(a.lengths, "lengths")?)?)?,
    };
    if let Some(p) = &a.partition_out {
        let mut parts = with_v0(built.parts.clone());
        if let Family::JrStar = a.family {
            // apexes are outside the multipartite structure
            let n = built.graph.vertex_count();
            parts[0] = vec![n - 2, n - 1];
        }
        std::fs::write(p, write_partition(&parts))?;
    }
    let text = match a.format {
        GraphFormat::Text => write_graph_text(&built.graph),
        GraphFormat::Json => format!("{}\n", write_graph_json(&built.graph)),
        GraphFormat::Complex => write_complex(&SimplicialComplex::clique_complex(&built.graph)),
    };
    let mut w = writer(&a.out)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(OK)
}

fn eta_for(eta: &Option<String>, r: usize) -> Result<num_rational::BigRational, CliError> {
    match eta {
        Some(t) => rational(t),
        None => Ok(ExtremalConstants::eta(r)),
    }
}

fn check(a: CheckArgs) -> Result<u8, CliError> {
    let input = Input::read(&a.input)?;
    let (name, report) = match a.what {
        Property::Flag => {
            let holds = input.complex().is_flag();
            ("flag", json!({ "holds": holds }))
        }
        Property::Pseudomanifold => ("pseudomanifold", to_json(&pseudomanifold_certificate(&input.complex()))),
        Property::Eulerian => ("eulerian", to_json(&eulerian_certificate(&input.complex())?)),
        Property::Manifold => ("manifold", to_json(&is_homology_manifold(&input.complex())?)),
        Property::Sphere => {
            let k = input.complex();
            let manifold = is_homology_manifold(&k)?;
            let holds = manifold.holds && is_homology_sphere(&k);
            ("sphere", json!({ "holds": holds, "manifold": to_json(&manifold) }))
        }
        Property::Extremal => {
            let parts = read_partition(&need(a.partition, "partition")?)?;
            let r = a.r.unwrap_or(parts.len().saturating_sub(1));
            let eta = eta_for(&a.eta, r)?;
            ("extremal", to_json(&check_extremal(&input.graph(), &parts, &eta, r)?))
        }
        Property::Radical => {
            let parts = read_partition(&need(a.partition, "partition")?)?;
            ("radical", json!({ "holds": is_radical(&input.graph(), &parts)? }))
        }
    };
    emit_json(&a.out, &json!({ "check": name, "input": a.input.display().to_string(), "result": report }))?;
    Ok(OK)
}

fn stats(a: StatsArgs) -> Result<u8, CliError> {
    let input = Input::read(&a.input)?;
    let k = input.complex();
    let g = input.graph();
    let vectors = FaceVectorSet::from_f(k.f_vector())?;
    let mut out = json!({
        "n": k.vertex_count(),
        "edges": g.edge_count(),
        "dimension": k.dimension(),
        "pure": k.is_pure(),
        "flag": k.is_flag(),
        "clique_vector": to_json(&clique_vector(&g, None)),
        "face_vectors": to_json(&vectors),
    });
    if a.homology {
        out["homology"] = to_json(&homology(&k));
    }
    if let Some(r) = a.r {
        out["zykov"] = match zykov_ratios(&g, r) {
            Ok(z) => to_json(&z),
            Err(e) => json!({ "error": e.to_string() }),
        };
        let mode = if g.vertex_count() <= DEFAULT_EXACT_BOUND {
            ClosenessMode::Exact { bound: DEFAULT_EXACT_BOUND }
        } else {
            ClosenessMode::Heuristic
        };
        out["closeness"] = to_json(&closeness_to_turan(&g, r, mode)?);
    }
    emit_json(&a.out, &out)?;
    Ok(OK)
}

fn maximize(a: MaximizeArgs) -> Result<u8, CliError> {
    let f = CliqueFunction::new(rational_list(&a.coeffs)?)?;
    let (start, parts) = match (&a.start, &a.partition) {
        (Some(s), Some(p)) => (Input::read(s)?.graph(), read_partition(p)?),
        (None, None) => {
            let t = turan_partitioned(a.n, a.r);
            (t.graph, with_v0(t.parts))
        }
        (None, Some(_)) => return Err(CliError::Usage("--partition needs --start".into())),
        (Some(_), None) => return Err(CliError::Usage("--start needs --partition".into())),
    };
    if start.vertex_count() != a.n {
        return Err(CliError::Usage(format!("start graph has {} vertices, --n is {}", start.vertex_count(), a.n)));
    }
    let opts = MaximizeOptions { eta: a.eta.as_deref().map(rational).transpose()? };
    match maximize_clique_fn(&f, a.r, &start, &parts, &opts) {
        Ok(out) => {
            emit_json(
                &a.out,
                &json!({
                    "graph": write_graph_json(&out.graph),
                    "parts": out.parts,
                    "value": flagext::json::rational_string(&out.value),
                    "radical": out.radical,
                    "moves": to_json(&out.log),
                    "certificate": to_json(&out.certificate),
                }),
            )?;
            Ok(OK)
        }
        Err(e @ (ExtremalError::NonImprovingMove { .. } | ExtremalError::MoveBrokeExtremality { .. })) => {
            emit_json(&a.out, &json!({ "diagnostic": e.to_string() }))?;
            eprintln!("flagext: {e}");
            Ok(FINDING)
        }
        Err(ExtremalError::NotExtremal(cert)) => {
            eprintln!("flagext: start graph is not extremal");
            emit_json(&a.out, &json!({ "error": "start graph is not extremal", "certificate": to_json(&cert) }))?;
            Err(CliError::Usage("start graph is not extremal".into()))
        }
        Err(e) => Err(e.into()),
    }
}

fn verify(a: VerifyArgs) -> Result<u8, CliError> {
    let k = Input::read(&a.input)?.complex();
    let mut report = match a.conjecture {
        Conjecture::UpperBounds => verify_upper_bounds(&k, a.r),
        Conjecture::RatioChain => verify_ratio_chain(&k, a.r, a.kind.into()),
        Conjecture::EvenDim => verify_even_dim(&k, a.r),
    };
    let path = a.input.display().to_string();
    for arg in &mut report.reproduction.args {
        if arg == INPUT_PLACEHOLDER {
            *arg = path.clone();
        }
    }
    emit_json(&a.out, &to_json(&report))?;
    Ok(if report.is_finding() { FINDING } else { OK })
}

fn search(a: SearchArgs) -> Result<u8, CliError> {
    if !a.pseudo {
        return Err(CliError::Usage("pass --pseudo to select the pseudomanifold search".into()));
    }
    let mode = match a.mode {
        Mode::Exhaustive => SearchMode::Exhaustive,
        Mode::Random => SearchMode::Random,
    };
    let budget = match (mode, a.budget) {
        (_, Some(b)) => b,
        (SearchMode::Exhaustive, None) => u64::MAX,
        (SearchMode::Random, None) => return Err(CliError::Usage("random mode needs --budget".into())),
    };
    let opts = SearchOptions {
        d: a.d,
        n_min: a.n_min,
        n_max: a.n_max,
        mode,
        seed: a.seed,
        budget,
        exhaustive_limit: a.exhaustive_limit,
    };
    let mut w = BufWriter::new(File::create(&a.out)?);
    let result = search_pseudomanifolds(&opts, &mut |f| {
        let line = serde_json::to_string(f).map_err(|e| HarnessError::Sink(e.to_string()))?;
        writeln!(w, "{line}").map_err(|e| HarnessError::Sink(e.to_string()))
    });
    w.flush()?;
    let summary = result?;
    let out = json!({ "out": a.out.display().to_string(), "summary": to_json(&summary) });
    emit_json(&None, &out)?;
    Ok(if summary.violations > 0 { FINDING } else { OK })
}

fn probe(a: ProbeArgs) -> Result<u8, CliError> {
    if !a.growth {
        return Err(CliError::Usage("pass --growth to select the growth probe".into()));
    }
    emit_json(&a.out, &to_json(&growth_probe(a.r, a.n_min, a.n_max)?))?;
    Ok(OK)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Construct(a) => construct(a),
        Command::Check(a) => check(a),
        Command::Stats(a) => stats(a),
        Command::Maximize(a) => maximize(a),
        Command::Verify(a) => verify(a),
        Command::Search(a) => search(a),
        Command::Probe(a) => probe(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors share the generic error code; help and version succeed
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("flagext: {e}");
            ExitCode::from(1)
        }
    }
}
