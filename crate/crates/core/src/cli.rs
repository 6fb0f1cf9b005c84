//! The `bct` command line: `solve`, `gen`, `verify` and `search`.
//!
//! Exit codes: 0 success (or `FOUND`), 1 `NONE`, 2 `BUDGET_EXCEEDED`,
//! 64 usage error, 65 malformed input file, 66 unreadable input,
//! 70 verification failures, 73 unwritable output.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::constructions::{example2_min_n, ConstructionSpec};
use crate::format::{parse_graph, write_graph};
use crate::graph::sigma11;
use crate::lemmas::LemmaId;
use crate::solver::{solve_with_workers, worker_count, Mode, SolveRequest, SolveStatus, DEFAULT_BUDGET};
use crate::sweep::{
    conjecture_search, lemma_sweep, theorem_exhaustive, theorem_sampled, Conjecture, SweepConfig, Theorem,
    VerificationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_FAILURES: i32 = 70;
pub const EXIT_CANT_CREATE: i32 = 73;

#[derive(Debug, Parser)]
#[command(name = "bct", version, about = "Disjoint feasible cycles in balanced bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the graph has k disjoint feasible cycles of the given kind.
    Solve(SolveArgs),
    /// Write one of the extremal constructions or a seeded random graph.
    Gen(GenArgs),
    /// Sweep instances of a theorem or lemma and report any failure.
    Verify(VerifyArgs),
    /// Look for counterexamples to a conjecture.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "feasible")]
    mode: String,
    /// Comma-separated S-counts, partition mode only.
    #[arg(long, value_delimiter = ',')]
    parts: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Turn off the feasibility bounds.
    #[arg(long)]
    no_prune: bool,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// 1, 2, 3, 4 or `random`.
    #[arg(long)]
    example: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    s_size: Option<usize>,
    /// Edge probability in thousandths.
    #[arg(long, default_value_t = 700)]
    density: u32,
    #[arg(long)]
    sigma_floor: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timings: bool,
    /// Write the report here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "lemma", required_unless_present = "lemma")]
    theorem: Option<u8>,
    #[arg(long)]
    lemma: Option<String>,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    /// Smallest n to sweep; defaults to the least admissible one.
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long)]
    exhaustive: bool,
    #[command(flatten)]
    sweep: SweepArgs,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    conjecture: u8,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[command(flatten)]
    sweep: SweepArgs,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn fail(&mut self, code: i32, msg: impl std::fmt::Display) -> i32 {
        let _ = writeln!(self.err, "bct: {msg}");
        code
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(io.err, "{text}");
            } else {
                let _ = write!(io.out, "{text}");
            }
            return code;
        }
    };
    match cli.command {
        Command::Solve(a) => cmd_solve(a, &mut io),
        Command::Gen(a) => cmd_gen(a, &mut io),
        Command::Verify(a) => cmd_verify(a, &mut io),
        Command::Search(a) => cmd_search(a, &mut io),
    }
}

fn cmd_solve(a: SolveArgs, io: &mut Io) -> i32 {
    let mode: Mode = match a.mode.parse() {
        Ok(m) => m,
        Err(e) => return io.fail(EXIT_USAGE, e),
    };
    let k = match (mode, a.k) {
        (_, Some(k)) => k,
        (Mode::Partition, None) => a.parts.len(),
        (_, None) => 1,
    };
    let mut req = SolveRequest::new(mode, k).with_budget(a.budget).with_seed(a.seed);
    req.parts = a.parts;
    if a.no_prune {
        req = req.without_pruning();
    }
    let text = match std::fs::read_to_string(&a.file) {
        Ok(t) => t,
        Err(e) => return io.fail(EXIT_NO_INPUT, format_args!("{}: {e}", a.file.display())),
    };
    let (g, s) = match parse_graph(&text) {
        Ok(v) => v,
        Err(e) => return io.fail(EXIT_DATA, format_args!("{}: {e}", a.file.display())),
    };
    let out = match solve_with_workers(&g, &s, &req, worker_count()) {
        Ok(o) => o,
        Err(e) => return io.fail(EXIT_USAGE, e),
    };
    let report = json!({
        "status": out.status,
        "mode": mode.name(),
        "k": k,
        "parts": req.parts,
        "witness": out.witness.as_ref().map(|w| w.labels()),
        "nodes_expanded": out.nodes_expanded,
        "seed": a.seed,
    });
    let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(&report).expect("serializes"));
    match out.status {
        SolveStatus::Found => EXIT_OK,
        SolveStatus::None => EXIT_NONE,
        SolveStatus::BudgetExceeded => EXIT_BUDGET,
    }
}

fn need(v: Option<usize>, flag: &str, io: &mut Io) -> Result<usize, i32> {
    v.ok_or_else(|| io.fail(EXIT_USAGE, format_args!("--example needs --{flag}")))
}

fn gen_spec(a: &GenArgs, io: &mut Io) -> Result<ConstructionSpec, i32> {
    Ok(match a.example.as_str() {
        "1" => ConstructionSpec::G1 { k: need(a.k, "k", io)? },
        "2" => {
            let p = need(a.p, "p", io)?;
            ConstructionSpec::G2 { p, n: a.n.unwrap_or_else(|| example2_min_n(p)) }
        }
        "3" => ConstructionSpec::G3 { n: need(a.n, "n", io)?, s_size: need(a.s_size, "s-size", io)? },
        "4" => ConstructionSpec::G4 { n: need(a.n, "n", io)?, k: need(a.k, "k", io)?, s_size: need(a.s_size, "s-size", io)? },
        "random" => ConstructionSpec::Random {
            n: need(a.n, "n", io)?,
            s_size: need(a.s_size, "s-size", io)?,
            density_permille: a.density,
            sigma_floor: a.sigma_floor,
            seed: a.seed,
        },
        other => return Err(io.fail(EXIT_USAGE, format_args!("unknown example `{other}`; use 1, 2, 3, 4 or random"))),
    })
}

fn cmd_gen(a: GenArgs, io: &mut Io) -> i32 {
    let construction = match gen_spec(&a, io) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let built = match construction.build() {
        Ok(b) => b,
        Err(e) => return io.fail(EXIT_USAGE, e),
    };
    let computed = sigma11(&built.graph, &built.s);
    let mut comments = vec![serde_json::to_string(&construction).expect("serializes")];
    let mut summary = Vec::new();
    if let Some(cf) = built.closed_form_sigma {
        summary.push(format!("sigma closed-form {cf}"));
    }
    summary.push(format!("sigma computed {computed}"));
    comments.extend(summary.iter().cloned());
    let text = write_graph(&built.graph, &built.s, &comments);
    // The summary goes wherever the graph does not.
    let code = match &a.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return io.fail(EXIT_CANT_CREATE, format_args!("{}: {e}", path.display()));
            }
            for line in &summary {
                let _ = writeln!(io.out, "{line}");
            }
            EXIT_OK
        }
        None => {
            let _ = write!(io.out, "{text}");
            for line in &summary {
                let _ = writeln!(io.err, "{line}");
            }
            EXIT_OK
        }
    };
    match built.closed_form_sigma {
        Some(cf) if cf != computed => io.fail(EXIT_FAILURES, "computed sigma differs from the closed form"),
        _ => code,
    }
}

fn config(a: &SweepArgs) -> SweepConfig {
    SweepConfig { seed: a.seed, budget: a.budget, workers: worker_count(), timings: a.timings }
}

fn emit(report: &VerificationReport, a: &SweepArgs, io: &mut Io) -> Result<(), i32> {
    let text = report.to_json();
    match &a.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| io.fail(EXIT_CANT_CREATE, format_args!("{}: {e}", path.display()))),
        None => {
            let _ = write!(io.out, "{text}");
            Ok(())
        }
    }
}

fn cmd_verify(a: VerifyArgs, io: &mut Io) -> i32 {
    let cfg = config(&a.sweep);
    if a.sweep.budget == 0 {
        return io.fail(EXIT_USAGE, "budget must be at least 1");
    }
    let result = match (a.theorem, &a.lemma) {
        (Some(t), None) => {
            let th = match t {
                3 => Theorem::Three,
                4 => Theorem::Four,
                other => return io.fail(EXIT_USAGE, format_args!("no theorem {other}; use 3 or 4")),
            };
            if a.exhaustive {
                theorem_exhaustive(th, a.n_min, a.n_max, a.k, &cfg)
            } else {
                theorem_sampled(th, a.n_min, a.n_max, a.k, a.samples, &cfg)
            }
        }
        (None, Some(id)) => {
            let id: LemmaId = match id.parse() {
                Ok(id) => id,
                Err(e) => return io.fail(EXIT_USAGE, e),
            };
            lemma_sweep(id, a.samples, &cfg)
        }
        _ => return io.fail(EXIT_USAGE, "give exactly one of --theorem and --lemma"),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => return io.fail(EXIT_USAGE, e),
    };
    if let Err(code) = emit(&report, &a.sweep, io) {
        return code;
    }
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILURES
    }
}

fn cmd_search(a: SearchArgs, io: &mut Io) -> i32 {
    let cfg = config(&a.sweep);
    if a.sweep.budget == 0 {
        return io.fail(EXIT_USAGE, "budget must be at least 1");
    }
    let c = match a.conjecture {
        1 => Conjecture::One,
        2 => Conjecture::Two,
        other => return io.fail(EXIT_USAGE, format_args!("no conjecture {other}; use 1 or 2")),
    };
    let report = match conjecture_search(c, a.n, a.k, a.samples, &cfg) {
        Ok(r) => r,
        Err(e) => return io.fail(EXIT_USAGE, e),
    };
    match emit(&report, &a.sweep, io) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}
