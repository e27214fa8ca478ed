use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use bootstrap_core::exact::{exact_bootstrap, ExactOptions, DEFAULT_SUBSET_CAP};
use bootstrap_core::{baselines, dvd, format, generate, lp, rounding};
use bootstrap_core::{Budget, Circuit, Error, MarkSet};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Plan bootstrapping operations in homomorphically evaluated circuits.
#[derive(Parser)]
#[command(name = "bootplan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a marking against the noise budget.
    Check {
        circuit: PathBuf,
        marks: PathBuf,
        #[arg(long)]
        level: usize,
    },
    /// Compute markings with one or more methods and report them.
    Solve(SolveArgs),
    /// Turn a vertex-deletion instance into a bootstrapping instance.
    ReduceDvd {
        dvd: PathBuf,
        #[arg(long)]
        level: usize,
        /// Circuit output path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the vertex provenance table here.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Generate a random circuit.
    Gen(GenArgs),
}

#[derive(Args)]
struct SolveArgs {
    circuit: PathBuf,
    #[arg(long)]
    level: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "lp-round")]
    method: Vec<Method>,
    /// Seed for randomized rounding.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Round at a random threshold instead of the best breakpoint.
    #[arg(long)]
    randomized: bool,
    /// Write a key=value report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the row-generation trace (tab-separated) here.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
    max_exact_subsets: u64,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 10)]
    layers: usize,
    #[arg(long, default_value_t = 10)]
    width: usize,
    #[arg(long, default_value_t = 20)]
    gates: usize,
    #[arg(long, default_value_t = 5)]
    length: usize,
    #[arg(long, default_value_t = 0.5)]
    red_fraction: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    LpRound,
    Exact,
    AfterRed,
    Greedy,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::LpRound => "lp-round",
            Method::Exact => "exact",
            Method::AfterRed => "after-red",
            Method::Greedy => "greedy",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Layered,
    SeriesParallel,
    RedChain,
}

const EXIT_INFEASIBLE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::CapExceeded { .. })
            | Some(Error::TooLarge { .. })
            | Some(Error::IterationLimitExceeded(_))
            | Some(Error::TimeLimitExceeded(_)) => EXIT_RESOURCE,
            Some(Error::NumericalFailure(_))
            | Some(Error::NoFeasibleCandidate)
            | Some(Error::InfeasibleInput(_)) => EXIT_INFEASIBLE,
            _ => EXIT_USAGE,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        anyhow::Error::new(error).into()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check {
            circuit,
            marks,
            level,
        } => check(&circuit, &marks, level),
        Command::Solve(args) => solve(&args),
        Command::ReduceDvd {
            dvd,
            level,
            out,
            map,
        } => reduce_dvd(&dvd, level, out.as_deref(), map.as_deref()),
        Command::Gen(args) => gen(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(|error| Failure {
            code: EXIT_USAGE,
            error,
        })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(|error| Failure {
            code: EXIT_USAGE,
            error,
        })
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text = read(path)?;
    Ok(format::parse_circuit(&text).with_context(|| path.display().to_string())?)
}

fn check(circuit_path: &Path, marks_path: &Path, level: usize) -> Result<u8, Failure> {
    let budget = Budget::new(level)?;
    let circuit = load_circuit(circuit_path)?;
    let marks = format::parse_marks(&read(marks_path)?, &circuit)
        .with_context(|| marks_path.display().to_string())?;
    let levels = circuit.eval_levels(&marks);
    let violations = levels.violations(budget);

    println!("max level {} (budget {level})", levels.max());
    for (l, count) in levels.histogram().iter().enumerate() {
        println!("  level {l}: {count}");
    }
    if violations.is_empty() {
        println!("feasible");
        Ok(0)
    } else {
        let names: Vec<&str> = violations.iter().map(|&v| circuit.name(v)).collect();
        println!("infeasible: {}", names.join(" "));
        Ok(EXIT_INFEASIBLE)
    }
}

struct MethodRun {
    method: Method,
    marks: MarkSet,
    millis: f64,
    verified: bool,
}

fn solve(args: &SolveArgs) -> Result<u8, Failure> {
    let budget = Budget::new(args.level)?;
    let circuit = load_circuit(&args.circuit)?;
    let mut methods = args.method.clone();
    methods.dedup();

    let mut runs = Vec::new();
    let mut lp_objective = None;
    let mut exact_optimum = None;
    for &method in &methods {
        let start = Instant::now();
        let marks = match method {
            Method::LpRound => {
                let relaxation = lp::solve_relaxation(&circuit, budget)?;
                if let Some(path) = &args.trace {
                    write(path, &relaxation.trace_tsv())?;
                }
                lp_objective = Some(relaxation.objective);
                let outcome = if args.randomized {
                    rounding::randomized_round(&circuit, &relaxation.tables, args.seed)?
                } else {
                    rounding::derandomized_round(&circuit, &relaxation.tables)?
                };
                outcome.marks
            }
            Method::Exact => {
                let options = ExactOptions {
                    max_subsets: args.max_exact_subsets,
                    ..ExactOptions::default()
                };
                let result = exact_bootstrap(&circuit, budget, options)?;
                exact_optimum = Some(result.optimum);
                result.witness
            }
            Method::AfterRed => baselines::after_every_red(&circuit),
            Method::Greedy => baselines::greedy_topological(&circuit, budget),
        };
        let millis = start.elapsed().as_secs_f64() * 1e3;
        let verified = circuit.is_feasible_by_levels(&marks, budget);
        runs.push(MethodRun {
            method,
            marks,
            millis,
            verified,
        });
    }

    let instance = args.circuit.display().to_string();
    print!(
        "{}",
        report_table(
            &instance,
            &circuit,
            args.level,
            &runs,
            lp_objective,
            exact_optimum
        )
    );
    if let Some(path) = &args.out {
        let text = report_kv(
            &instance,
            &circuit,
            args.level,
            &runs,
            lp_objective,
            exact_optimum,
        );
        write(path, &text)?;
    }
    Ok(if runs.iter().all(|r| r.verified) {
        0
    } else {
        EXIT_INFEASIBLE
    })
}

fn sorted_names(circuit: &Circuit, marks: &MarkSet) -> Vec<String> {
    format::write_marks(circuit, marks)
        .lines()
        .map(str::to_string)
        .collect()
}

fn report_table(
    instance: &str,
    circuit: &Circuit,
    level: usize,
    runs: &[MethodRun],
    lp_objective: Option<f64>,
    exact_optimum: Option<usize>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instance  {instance}");
    let _ = writeln!(out, "vertices  {}", circuit.len());
    let _ = writeln!(out, "edges     {}", circuit.edge_count());
    let _ = writeln!(out, "level     {level}");
    if let Some(obj) = lp_objective {
        let _ = writeln!(out, "lp        {obj:.6}");
    }
    if let Some(opt) = exact_optimum {
        let _ = writeln!(out, "optimum   {opt}");
    }
    let _ = writeln!(
        out,
        "\n{:<10} {:>11} {:>10}  verified",
        "method", "cardinality", "time_ms"
    );
    for run in runs {
        let _ = writeln!(
            out,
            "{:<10} {:>11} {:>10.2}  {}",
            run.method.name(),
            run.marks.len(),
            run.millis,
            if run.verified { "yes" } else { "NO" }
        );
    }
    out.push('\n');
    for run in runs {
        let _ = writeln!(
            out,
            "marks {}: {}",
            run.method.name(),
            sorted_names(circuit, &run.marks).join(" ")
        );
    }
    out
}

fn report_kv(
    instance: &str,
    circuit: &Circuit,
    level: usize,
    runs: &[MethodRun],
    lp_objective: Option<f64>,
    exact_optimum: Option<usize>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instance={instance}");
    let _ = writeln!(out, "vertices={}", circuit.len());
    let _ = writeln!(out, "edges={}", circuit.edge_count());
    let _ = writeln!(out, "level={level}");
    if let Some(obj) = lp_objective {
        let _ = writeln!(out, "lp_objective={obj}");
    }
    if let Some(opt) = exact_optimum {
        let _ = writeln!(out, "exact_optimum={opt}");
    }
    for run in runs {
        let m = run.method.name();
        let _ = writeln!(out, "{m}.cardinality={}", run.marks.len());
        let _ = writeln!(out, "{m}.time_ms={:.3}", run.millis);
        let _ = writeln!(out, "{m}.verified={}", run.verified);
        let _ = writeln!(
            out,
            "{m}.marks={}",
            sorted_names(circuit, &run.marks).join(",")
        );
    }
    out
}

fn reduce_dvd(
    path: &Path,
    level: usize,
    out: Option<&Path>,
    map_path: Option<&Path>,
) -> Result<u8, Failure> {
    let h = format::parse_dvd(&read(path)?, level).with_context(|| path.display().to_string())?;
    let map = dvd::reduce(&h)?;
    let text = format::write_circuit(&map.circuit);
    match out {
        Some(p) => {
            write(p, &text)?;
            eprintln!(
                "{} vertices, {} edges",
                map.circuit.len(),
                map.circuit.edge_count()
            );
        }
        None => print!("{text}"),
    }
    if let Some(p) = map_path {
        write(p, &format::write_provenance(&map, &h))?;
    }
    Ok(0)
}

fn gen(args: &GenArgs) -> Result<u8, Failure> {
    if !(0.0..=1.0).contains(&args.red_fraction) {
        return Err(Failure {
            code: EXIT_USAGE,
            error: anyhow::anyhow!("--red-fraction must lie in [0, 1]"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let circuit = match args.kind {
        GenKind::Layered => {
            if args.width == 0 {
                return Err(Failure {
                    code: EXIT_USAGE,
                    error: anyhow::anyhow!("--width must be positive"),
                });
            }
            generate::layered(&mut rng, args.layers, args.width, args.red_fraction)
        }
        GenKind::SeriesParallel => {
            generate::series_parallel(&mut rng, args.gates, args.red_fraction)
        }
        GenKind::RedChain => generate::red_chain(args.length),
    };
    let text = format::write_circuit(&circuit);
    match &args.out {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}
