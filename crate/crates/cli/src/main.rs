use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsearch::grover::{compare_with_oneshot, comparison_csv};
use qsearch::hamming::phase_table_csv;
use qsearch::oracle::parse_item;
use qsearch::verify::{run_verify, VerifyConfig, ALGEBRAIC_TOLERANCE, PROBABILITY_TOLERANCE};
use qsearch::{
    build_trace_file, make_membership_oracle, sweep, BooleanOracle, Error, ScenarioKind, SearchList, Strictness,
    SweepConfig, DEFAULT_MAX_SEARCH_QUBITS,
};

const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "qsearch", version, about = "One-shot Hamming-phase search simulator")]
struct Cli {
    /// Default directory for output files when --output is not given.
    #[arg(long, global = true, env = "QSEARCH_OUT_DIR")]
    out_dir: Option<PathBuf>,

    /// Largest number of search qubits accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SEARCH_QUBITS)]
    max_qubits: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the pipeline once and dump checkpoints psi0..psi6 as JSON.
    Trace(TraceArgs),
    /// Measure P(YES) over register sizes and scenarios.
    Sweep(SweepArgs),
    /// Print the Hamming-distance phase table as CSV.
    PhaseTable(PhaseTableArgs),
    /// Tabulate Grover success probabilities beside the one-shot pipeline.
    GroverCompare(GroverArgs),
    /// Run the self-check suite.
    Verify(VerifyArgs),
    /// Regenerate the golden trace file(s).
    Golden(GoldenArgs),
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file; defaults to --out-dir/<name>, else standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
struct SourceArgs {
    /// Synthetic list that contains the target.
    #[arg(long, group = "source")]
    present: bool,
    /// Synthetic list that does not contain the target.
    #[arg(long, group = "source")]
    absent: bool,
    /// Oracle marks this label instead of the target (exploratory).
    #[arg(long, group = "source", value_name = "LABEL")]
    displaced: Option<String>,
    /// List file, one item per line (binary of width n, 0b-prefixed, or decimal).
    #[arg(long, group = "source", value_name = "FILE")]
    list: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TraceArgs {
    /// Number of search qubits (taken from the list length with --list).
    #[arg(long, short)]
    n: Option<usize>,
    /// Item searched for.
    #[arg(long = "target", visible_alias = "x-s", value_name = "ITEM")]
    target: String,
    #[command(flatten)]
    source: SourceArgs,
    /// Accept lists where the target occurs more than once.
    #[arg(long)]
    lenient: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long, value_delimiter = ',', default_value = "present,absent")]
    scenarios: Vec<String>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Distinct targets sampled per n above 4 (smaller n are exhaustive).
    #[arg(long, default_value_t = 32)]
    sampled_targets: usize,
    /// Largest n cross-checked against the dense-matrix model.
    #[arg(long, default_value_t = 10)]
    dense_max_n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct PhaseTableArgs {
    #[arg(long, short, default_value_t = 3)]
    n: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct GroverArgs {
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    /// List every k up to 2⌈π/4·√N⌉ instead of the default iteration count.
    #[arg(long)]
    all_k: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Tolerance for algebraic identities.
    #[arg(long, default_value_t = ALGEBRAIC_TOLERANCE)]
    tol: f64,
    /// Tolerance for end-to-end probabilities.
    #[arg(long, default_value_t = PROBABILITY_TOLERANCE)]
    prob_tol: f64,
    /// Flip the sign of H_i's lower-right entry (fault-injection fixture).
    #[arg(long, hide = true)]
    inject_hi_sign_error: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct GoldenArgs {
    /// Directory receiving the golden files.
    #[arg(long, default_value = "crates/core/tests/golden")]
    dir: PathBuf,
}

enum Failure {
    Usage(String),
    Capacity(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

struct Ctx {
    out_dir: Option<PathBuf>,
    max_qubits: usize,
}

impl Ctx {
    /// Writes `payload` to the resolved destination. File outputs get a
    /// `<file>.meta.json` sidecar carrying the generation time.
    fn emit(&self, out: &OutputArgs, default_name: &str, payload: &str, command: &str) -> CmdResult {
        let path = match (&out.output, &self.out_dir) {
            (Some(path), _) => path.clone(),
            (None, Some(dir)) => dir.join(default_name),
            (None, None) => {
                io::stdout().write_all(payload.as_bytes())?;
                return Ok(());
            }
        };
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent)?;
        }
        fs::write(&path, payload)?;
        write_sidecar(&path, command)?;
        eprintln!("wrote {}", path.display());
        Ok(())
    }
}

fn write_sidecar(path: &Path, command: &str) -> io::Result<()> {
    let generated = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let meta = serde_json::json!({
        "command": command,
        "generated_unix_secs": generated,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let mut sidecar = path.as_os_str().to_owned();
    sidecar.push(".meta.json");
    fs::write(PathBuf::from(sidecar), format!("{meta:#}\n"))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn cmd_trace(ctx: &Ctx, args: &TraceArgs) -> CmdResult {
    let (n, oracle, target) = if let Some(path) = &args.source.list {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let list = SearchList::parse(&text, &args.target)?;
        if let Some(n) = args.n.filter(|&n| n != list.num_bits()) {
            return Err(Failure::Usage(format!(
                "--n {n} disagrees with a list of {} items",
                list.items().len()
            )));
        }
        let strictness = if args.lenient { Strictness::Lenient } else { Strictness::Strict };
        (list.num_bits(), make_membership_oracle(&list, strictness)?, list.target())
    } else {
        let n = args
            .n
            .ok_or_else(|| Failure::Usage("--n is required without --list".into()))?;
        qsearch::state::check_capacity(n, ctx.max_qubits)?;
        let target = parse_item(&args.target, n)?;
        let oracle = if args.source.present {
            make_membership_oracle(&SearchList::synthetic_present(n, target)?, Strictness::Strict)?
        } else if args.source.absent {
            make_membership_oracle(&SearchList::synthetic_absent(n, target)?, Strictness::Strict)?
        } else {
            let marked = parse_item(args.source.displaced.as_deref().unwrap_or_default(), n)?;
            if marked == target {
                return Err(Failure::Usage("--displaced label must differ from the target".into()));
            }
            BooleanOracle::direct(n, Some(marked))?
        };
        (n, oracle, target)
    };

    let file = build_trace_file(n, &oracle, target, ctx.max_qubits)?;
    let name = format!("trace_n{n}_xs{target}_{}.json", file.scenario);
    ctx.emit(&args.out, &name, &to_json(&file), "trace")?;

    let p_yes = file.distribution[target as usize];
    let deviation = file
        .max_deviation
        .map(|d| format!(", max deviation {d:.3e}"))
        .unwrap_or_default();
    eprintln!(
        "trace n={n} x_s={target} {}: 7 checkpoints{deviation}, P(x_s)={p_yes:.12}, answer {:?}",
        file.scenario, file.answer
    );
    if n <= 4 {
        let dist: Vec<String> = file
            .distribution
            .iter()
            .enumerate()
            .map(|(x, p)| format!("{x}: {p:.12}"))
            .collect();
        eprintln!("distribution {{{}}}", dist.join(", "));
    }
    Ok(())
}

fn cmd_sweep(ctx: &Ctx, args: &SweepArgs) -> CmdResult {
    if args.n_min > args.n_max {
        return Err(Failure::Usage(format!("--n-min {} exceeds --n-max {}", args.n_min, args.n_max)));
    }
    let scenarios = args
        .scenarios
        .iter()
        .map(|s| s.trim().parse::<ScenarioKind>())
        .collect::<Result<Vec<_>, _>>()?;
    let config = SweepConfig {
        n_range: args.n_min..=args.n_max,
        scenarios,
        trials: args.trials,
        seed: args.seed,
        sampled_targets: args.sampled_targets,
        dense_check_max_n: args.dense_max_n,
        max_search_qubits: ctx.max_qubits,
        ..Default::default()
    };
    let report = sweep(&config)?;
    let (payload, ext) = match args.format {
        Format::Json => (to_json(&report), "json"),
        Format::Csv => (report.cells_csv(), "csv"),
    };
    ctx.emit(&args.out, &format!("sweep.{ext}"), &payload, "sweep")?;
    eprint!("{}", report.summary_table());
    Ok(())
}

fn cmd_phase_table(ctx: &Ctx, args: &PhaseTableArgs) -> CmdResult {
    // Tables grow as 4^n; 12 bits is already 16M cells.
    qsearch::state::check_capacity(args.n, ctx.max_qubits.min(12))?;
    ctx.emit(&args.out, &format!("phase_table_n{}.csv", args.n), &phase_table_csv(args.n), "phase-table")
}

fn cmd_grover(ctx: &Ctx, args: &GroverArgs) -> CmdResult {
    if args.n_min > args.n_max {
        return Err(Failure::Usage(format!("--n-min {} exceeds --n-max {}", args.n_min, args.n_max)));
    }
    for n in [args.n_min, args.n_max] {
        qsearch::state::check_capacity(n, ctx.max_qubits)?;
    }
    let rows = compare_with_oneshot(args.n_min..=args.n_max, args.all_k)?;
    ctx.emit(&args.out, "grover_compare.csv", &comparison_csv(&rows), "grover-compare")
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let mut config = VerifyConfig {
        algebraic_tolerance: args.tol,
        probability_tolerance: args.prob_tol,
        ..Default::default()
    };
    if args.inject_hi_sign_error {
        config.gates.hi.entries[1][1] = -config.gates.hi.entries[1][1];
    }
    let report = run_verify(&config);
    match args.format {
        Some(Format::Json) => print!("{}", to_json(&report)),
        Some(Format::Csv) => {
            println!("check,deviation,tolerance,status");
            for c in &report.checks {
                println!("\"{}\",{},{},{}", c.name, c.deviation, c.tolerance, c.status);
            }
        }
        None => print!("{}", report.table()),
    }
    let passed = report.checks.iter().filter(|c| c.status == qsearch::verify::CheckStatus::Pass).count();
    println!("{passed}/{} checks passed", report.checks.len());
    match report.first_failure() {
        None => Ok(()),
        Some(first) => Err(Failure::Check(format!("check failed: {} ({})", first.name, first.status))),
    }
}

fn cmd_golden(args: &GoldenArgs) -> CmdResult {
    let oracle = BooleanOracle::direct(3, Some(5))?;
    let file = build_trace_file(3, &oracle, 5, DEFAULT_MAX_SEARCH_QUBITS)?;
    fs::create_dir_all(&args.dir)?;
    let path = args.dir.join("trace_n3_xs5_present.json");
    fs::write(&path, to_json(&file))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        out_dir: cli.out_dir,
        max_qubits: cli.max_qubits,
    };
    let result = match &cli.command {
        Command::Trace(args) => cmd_trace(&ctx, args),
        Command::Sweep(args) => cmd_sweep(&ctx, args),
        Command::PhaseTable(args) => cmd_phase_table(&ctx, args),
        Command::GroverCompare(args) => cmd_grover(&ctx, args),
        Command::Verify(args) => cmd_verify(args),
        Command::Golden(args) => cmd_golden(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CHECK_FAILURE)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CAPACITY)
        }
    }
}
