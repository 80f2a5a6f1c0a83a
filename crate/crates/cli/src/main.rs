//! `qgraph` command-line front end.
//!
//! Exit codes: 0 verdict true or success, 1 verdict false, 2 input error,
//! 3 numerical validity error (not Hermitian, not PSD, bad trace).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qgraph::discord::{zero_discord_verdict, CertSide, CertificateReport, Verdict, VerdictInput};
use qgraph::gates::{apply_word, parse_gate_word};
use qgraph::graph::{pure_by_component, ConventionChoice, LaplacianConvention};
use qgraph::io::{fmt_f64, read_graph, read_matrix, write_matrix, GraphDocument};
use qgraph::linalg::{is_psd, min_eigenvalue, psd_necessary_minors, psd_sufficient_split, ComplexMatrix, Subsystem};
use qgraph::oracle::{discord_estimate, DiscordEstimate, GridConfig};
use qgraph::state::{pure_by_entries, qubits_for_dim};
use qgraph::{DensityOperator, Partition, Tolerance};

/// Oracle values at or below this count as zero discord.
const ZERO_DISCORD: f64 = 2e-3;

#[derive(Parser)]
#[command(name = "qgraph", version, about = "Graph-built density operators, zero-discord certificates and a discord oracle")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Absolute and relative tolerance for every numerical test.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Subsystem that is measured (certified classical).
    #[arg(long, global = true, value_enum, default_value_t = Side::B)]
    measured: Side,
    /// Laplacian convention for graph files; overrides the file's own field.
    #[arg(long, global = true)]
    convention: Option<ConventionChoice>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<Side> for Subsystem {
    fn from(s: Side) -> Self {
        match s {
            Side::A => Subsystem::A,
            Side::B => Subsystem::B,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the density operator of a graph file.
    Build {
        graph: PathBuf,
        /// Write the matrix document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a check on a graph or matrix file.
    Check {
        #[arg(value_enum)]
        which: Which,
        file: PathBuf,
        /// Qubit split `P,Q` for matrix files (default `1,n-1`).
        #[arg(long, value_parser = parse_partition)]
        partition: Option<Partition>,
        /// Add oracle discord values for both sides to the notes (two qubits only).
        #[arg(long)]
        with_oracle: bool,
        #[command(flatten)]
        grid: GridOpts,
    },
    /// Apply a gate word such as `H(0),CX(0,1),partial(q=1)` to a matrix.
    Gate {
        file: PathBuf,
        word: String,
        /// Write the result here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force discord of a two-qubit state.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        grid: GridOpts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Pure,
    Psd,
    Discord,
}

#[derive(Args)]
struct GridOpts {
    #[arg(long, default_value_t = 64)]
    n_theta: usize,
    #[arg(long, default_value_t = 128)]
    n_phi: usize,
    /// Refinement passes after the initial grid.
    #[arg(long, default_value_t = 3)]
    passes: usize,
}

impl GridOpts {
    fn config(&self) -> qgraph::Result<GridConfig> {
        GridConfig::new(self.n_theta, self.n_phi, self.passes)
    }
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    let (p, q) = s.split_once(',').ok_or("expected P,Q")?;
    let p = p.trim().parse().map_err(|_| format!("bad qubit count {p:?}"))?;
    let q = q.trim().parse().map_err(|_| format!("bad qubit count {q:?}"))?;
    Partition::new(p, q).map_err(|e| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Core(qgraph::Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<qgraph::Error> for Failure {
    fn from(e: qgraph::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Usage(msg) => f.write_str(msg),
        }
    }
}

type Outcome = Result<u8, Failure>;

enum Input {
    Graph(GraphDocument),
    Matrix(ComplexMatrix),
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

/// Graph documents are recognised by their `qubits` field.
fn load(path: &Path) -> Result<Input, Failure> {
    let text = read_text(path)?;
    let is_graph = serde_json::from_str::<serde_json::Value>(&text)
        .map(|v| v.get("qubits").is_some())
        .unwrap_or(false);
    Ok(if is_graph {
        Input::Graph(read_graph(&text)?)
    } else {
        Input::Matrix(read_matrix(&text)?)
    })
}

struct Context {
    tol: Tolerance,
    format: Format,
    measured: Subsystem,
    convention: Option<ConventionChoice>,
}

impl Context {
    fn resolve(&self, doc: &GraphDocument) -> LaplacianConvention {
        self.convention.unwrap_or(doc.convention).resolve(&doc.graph)
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        match self.format {
            Format::Text => print!("{}", text()),
            Format::Structured => {
                println!("{}", serde_json::to_string_pretty(value).expect("report serialises"));
            }
        }
    }
}

fn default_partition(m: &ComplexMatrix) -> Result<Partition, Failure> {
    let n = qubits_for_dim(m.square_dim()?)?;
    Ok(Partition::new(1, n - 1)?)
}

fn matrix_operator(m: ComplexMatrix, partition: Option<Partition>, tol: Tolerance) -> Result<DensityOperator, Failure> {
    let part = match partition {
        Some(p) => p,
        None => default_partition(&m)?,
    };
    Ok(DensityOperator::new(m, part, tol)?)
}

fn reject_partition_for_graph(doc: &GraphDocument, partition: Option<Partition>) -> Result<(), Failure> {
    match partition {
        Some(p) if p != doc.graph.partition() => Err(Failure::Usage(format!(
            "--partition {p} conflicts with the graph document's partition {}",
            doc.graph.partition()
        ))),
        _ => Ok(()),
    }
}

fn num(x: f64) -> String {
    format!("{x:.10e}")
}

#[derive(Serialize)]
struct BuildSummary {
    dim: usize,
    partition: Partition,
    convention: LaplacianConvention,
    trace: f64,
    min_eigenvalue: f64,
    purity: f64,
    out: Option<String>,
}

fn cmd_build(ctx: &Context, graph: &Path, out: Option<&Path>) -> Outcome {
    let text = read_text(graph)?;
    let doc = read_graph(&text)?;
    let conv = ctx.resolve(&doc);
    let rho = doc.graph.density_operator(conv, ctx.tol)?;
    if let Some(path) = out {
        write_text(path, &write_matrix(rho.matrix()))?;
    }
    let summary = BuildSummary {
        dim: rho.dim(),
        partition: rho.partition(),
        convention: conv,
        trace: rho.matrix().trace().re,
        min_eigenvalue: min_eigenvalue(rho.matrix())?,
        purity: rho.purity(),
        out: out.map(|p| p.display().to_string()),
    };
    ctx.emit(&summary, || {
        let mut s = String::new();
        let _ = writeln!(s, "dim             {}", summary.dim);
        let _ = writeln!(s, "partition       {}", summary.partition);
        let _ = writeln!(s, "convention      {conv}");
        let _ = writeln!(s, "trace           {}", num(summary.trace));
        let _ = writeln!(s, "min_eigenvalue  {}", num(summary.min_eigenvalue));
        let _ = writeln!(s, "purity          {}", num(summary.purity));
        if let Some(p) = &summary.out {
            let _ = writeln!(s, "wrote           {p}");
        }
        s
    });
    Ok(0)
}

#[derive(Serialize)]
struct PropertyEntry {
    name: &'static str,
    passed: bool,
    residual: Option<f64>,
}

/// Result of `check pure` or `check psd`.
#[derive(Serialize)]
struct PropertyReport {
    check: &'static str,
    verdict: bool,
    certificates: Vec<PropertyEntry>,
    convention: Option<LaplacianConvention>,
    tolerances: Tolerance,
}

fn property_text(r: &PropertyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "check       {}", r.check);
    let _ = writeln!(s, "verdict     {}", r.verdict);
    if let Some(c) = r.convention {
        let _ = writeln!(s, "convention  {c}");
    }
    for e in &r.certificates {
        let residual = e.residual.map_or_else(|| "-".to_string(), num);
        let _ = writeln!(s, "  {:<24} {:<6} {residual}", e.name, e.passed);
    }
    s
}

fn check_pure(ctx: &Context, input: Input, partition: Option<Partition>) -> Outcome {
    let mut entries = Vec::new();
    let (rho, convention) = match input {
        Input::Graph(doc) => {
            reject_partition_for_graph(&doc, partition)?;
            let conv = ctx.resolve(&doc);
            let component = pure_by_component(&doc.graph, conv, ctx.tol)?;
            entries.push(PropertyEntry {
                name: "pure_by_component",
                passed: component,
                residual: None,
            });
            (doc.graph.density_operator(conv, ctx.tol)?, Some(conv))
        }
        Input::Matrix(m) => (matrix_operator(m, partition, ctx.tol)?, None),
    };
    entries.insert(
        0,
        PropertyEntry {
            name: "pure_by_entries",
            passed: pure_by_entries(&rho, ctx.tol),
            residual: None,
        },
    );
    let deviation = (rho.purity() - 1.0).abs();
    entries.push(PropertyEntry {
        name: "unit_purity",
        passed: deviation <= ctx.tol.threshold(1.0),
        residual: Some(deviation),
    });
    finish_property(ctx, "pure", entries, convention)
}

fn check_psd(ctx: &Context, input: Input) -> Outcome {
    // The raw (normalised) matrix is tested; it need not be a valid state.
    let (m, convention) = match input {
        Input::Graph(doc) => {
            let conv = ctx.resolve(&doc);
            let l = doc.graph.laplacian(conv)?;
            let tr = l.trace().re;
            let m = if tr.abs() > ctx.tol.abs_eps { l.scale(1.0 / tr) } else { l };
            (m, Some(conv))
        }
        Input::Matrix(m) => (m, None),
    };
    let minors = psd_necessary_minors(&m, ctx.tol)?;
    let split = psd_sufficient_split(&m, ctx.tol)?;
    let min = min_eigenvalue(&m)?;
    let slack = split.per_row_slack.iter().copied().fold(f64::INFINITY, f64::min);
    let entries = vec![
        PropertyEntry {
            name: "diag_dominance",
            passed: minors.diag_dominance,
            residual: None,
        },
        PropertyEntry {
            name: "all_minors_nonneg",
            passed: minors.all_minors_nonneg,
            residual: Some(minors.worst_minor),
        },
        PropertyEntry {
            name: "sufficient_split",
            passed: split.satisfied,
            residual: Some(slack),
        },
        PropertyEntry {
            name: "min_eigenvalue",
            passed: is_psd(&m, ctx.tol)?,
            residual: Some(min),
        },
    ];
    finish_property(ctx, "psd", entries, convention)
}

fn finish_property(
    ctx: &Context,
    check: &'static str,
    certificates: Vec<PropertyEntry>,
    convention: Option<LaplacianConvention>,
) -> Outcome {
    // The last entry is the spectral ground truth; the others only explain it.
    let verdict = certificates.last().is_some_and(|e| e.passed);
    let report = PropertyReport {
        check,
        verdict,
        certificates,
        convention,
        tolerances: ctx.tol,
    };
    ctx.emit(&report, || property_text(&report));
    Ok(if verdict { 0 } else { 1 })
}

fn oracle_note(rho: &DensityOperator, grid: GridConfig) -> Result<String, Failure> {
    if rho.dim() != 4 {
        return Ok("oracle skipped: needs a two-qubit state".into());
    }
    let a = discord_estimate(rho, Subsystem::A, grid)?;
    let b = discord_estimate(rho, Subsystem::B, grid)?;
    Ok(format!("oracle D_A = {}, D_B = {}", fmt_f64(a.value), fmt_f64(b.value)))
}

fn report_text(r: &CertificateReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verdict        {}", r.verdict.as_str());
    let _ = writeln!(s, "measured_side  {:?}", r.measured_side);
    if let Some(c) = r.convention {
        let _ = writeln!(s, "convention     {c}");
    }
    for e in &r.certificates {
        let side = match e.side {
            CertSide::A => "A",
            CertSide::B => "B",
            CertSide::Both => "both",
        };
        let _ = writeln!(s, "  {:<26} {:<6} {:<18} side {side}", e.name, e.passed, num(e.residual));
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn check_discord(ctx: &Context, input: Input, partition: Option<Partition>, oracle: Option<GridConfig>) -> Outcome {
    let (mut report, rho) = match input {
        Input::Graph(doc) => {
            reject_partition_for_graph(&doc, partition)?;
            let conv = ctx.resolve(&doc);
            let input = VerdictInput::Graph {
                graph: &doc.graph,
                convention: conv,
            };
            let report = zero_discord_verdict(input, ctx.measured, ctx.tol)?;
            (report, doc.graph.density_operator(conv, ctx.tol)?)
        }
        Input::Matrix(m) => {
            let rho = matrix_operator(m, partition, ctx.tol)?;
            (zero_discord_verdict(VerdictInput::Operator(&rho), ctx.measured, ctx.tol)?, rho)
        }
    };
    if let Some(grid) = oracle {
        report.notes.push(oracle_note(&rho, grid)?);
    }
    ctx.emit(&report, || report_text(&report));
    Ok(if report.verdict == Verdict::CertifiedZero { 0 } else { 1 })
}

#[derive(Serialize)]
struct GateSummary {
    out: String,
    dim: usize,
    steps: usize,
}

fn cmd_gate(ctx: &Context, file: &Path, word: &str, out: Option<&Path>) -> Outcome {
    let steps = parse_gate_word(word)?;
    let m = match load(file)? {
        Input::Matrix(m) => m,
        Input::Graph(doc) => {
            let conv = ctx.resolve(&doc);
            doc.graph.density_operator(conv, ctx.tol)?.into_matrix()
        }
    };
    let result = apply_word(&m, &steps)?;
    let text = write_matrix(&result);
    match out {
        None => print!("{text}"),
        Some(path) => {
            write_text(path, &text)?;
            let summary = GateSummary {
                out: path.display().to_string(),
                dim: result.rows(),
                steps: steps.len(),
            };
            ctx.emit(&summary, || format!("wrote {} ({} steps, dim {})\n", summary.out, summary.steps, summary.dim));
        }
    }
    Ok(0)
}

fn cmd_oracle(ctx: &Context, file: &Path, grid: GridConfig) -> Outcome {
    let m = match load(file)? {
        Input::Matrix(m) => m,
        Input::Graph(doc) => {
            let conv = ctx.resolve(&doc);
            doc.graph.density_operator(conv, ctx.tol)?.into_matrix()
        }
    };
    if m.rows() != 4 || m.cols() != 4 {
        return Err(qgraph::Error::Dimension(format!("the oracle needs a 4x4 state, got {}x{}", m.rows(), m.cols())).into());
    }
    let rho = DensityOperator::new(m, Partition::new(1, 1)?, ctx.tol)?;
    let est: DiscordEstimate = discord_estimate(&rho, ctx.measured, grid)?;
    ctx.emit(&est, || {
        let mut s = String::new();
        let _ = writeln!(s, "discord                {}", num(est.value));
        let _ = writeln!(s, "raw_value              {}", num(est.raw_value));
        let _ = writeln!(s, "measured               {:?}", est.measured);
        let _ = writeln!(s, "argmin theta, phi      {}, {}", num(est.argmin.theta), num(est.argmin.phi));
        let _ = writeln!(s, "mutual_information     {}", num(est.mutual_information));
        let _ = writeln!(s, "classical_correlation  {}", num(est.classical_correlation));
        let _ = writeln!(s, "grid                   {}x{}, {} refinement passes", est.grid.0, est.grid.1, est.refinement_passes);
        s
    });
    Ok(if est.value <= ZERO_DISCORD { 0 } else { 1 })
}

fn run(cli: Cli) -> Outcome {
    let ctx = Context {
        tol: Tolerance::uniform(cli.global.tol)?,
        format: cli.global.format,
        measured: cli.global.measured.into(),
        convention: cli.global.convention,
    };
    match cli.command {
        Command::Build { graph, out } => cmd_build(&ctx, &graph, out.as_deref()),
        Command::Check {
            which,
            file,
            partition,
            with_oracle,
            grid,
        } => {
            let input = load(&file)?;
            match which {
                Which::Pure => check_pure(&ctx, input, partition),
                Which::Psd => check_psd(&ctx, input),
                Which::Discord => {
                    let oracle = if with_oracle { Some(grid.config()?) } else { None };
                    check_discord(&ctx, input, partition, oracle)
                }
            }
        }
        Command::Gate { file, word, out } => cmd_gate(&ctx, &file, &word, out.as_deref()),
        Command::Oracle { file, grid } => cmd_oracle(&ctx, &file, grid.config()?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
