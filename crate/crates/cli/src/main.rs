//! `tropot`: solve, analyze and experiment with discrete max-plus optimal
//! transport problems.

mod error;
mod number;
mod problem;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use tropical_ot::oracle::{brute_force_global, enumerate_prob_beta1, enumerate_prob_beta_j};
use tropical_ot::randomlab::{
    prob_beta1, prob_beta1_exact, prob_beta_j, prob_beta_j_exact, run_experiment, BernoulliCostSpec, CostModel,
    EventKind, PSchedule, SimulationReport, UniformCostSpec,
};
use tropical_ot::{build_regions, solve, thresholds};

use error::{CliError, CliResult};
use number::{parse_rational, parse_rational_list, parse_real, parse_real_list};
use problem::Problem;
use report::{AnalyzeOut, RegionOut, SolveOut, FORMAT_VERSION};

#[derive(Parser)]
#[command(name = "tropot", about = "Discrete optimal transport over the max-plus semiring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and print the optimal cost and plan.
    Solve(FileArgs),
    /// Reducedness, uniqueness and perfect-matching report for the optimum.
    Analyze(FileArgs),
    /// Show how the grid splits into regions (the cost matrix is optional).
    Regions(FileArgs),
    /// Evaluate the probability that the optimal cost is the smallest cost value.
    Formula(FormulaArgs),
    /// Monte Carlo estimate of an event over random fundamental problems.
    Simulate(SimulateArgs),
    /// Brute-force references for small instances.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct FileArgs {
    /// JSON file with "mu", "nu" and "cost".
    #[arg(required_unless_present = "input")]
    file: Option<PathBuf>,
    /// The problem file, as an option instead of a positional argument.
    #[arg(long, short, conflicts_with = "file")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

impl FileArgs {
    fn path(&self) -> &Path {
        self.file.as_deref().or(self.input.as_deref()).expect("clap requires one of the two")
    }
}

#[derive(Args)]
struct FormulaArgs {
    /// Matrix size; several sizes may be given as a comma-separated list.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Probability of the smallest cost value, as a decimal or a/b.
    #[arg(long, conflicts_with_all = ["probs", "schedule"])]
    p: Option<String>,
    /// Use a named p_n schedule: log-n, n-pow:<gamma> or const:<p>.
    #[arg(long, conflicts_with = "probs")]
    schedule: Option<String>,
    /// Distribution of several cost values, smallest first (comma-separated).
    #[arg(long, requires = "j")]
    probs: Option<String>,
    /// 1-based rank of the cost value whose probability is wanted.
    #[arg(long, requires = "probs")]
    j: Option<usize>,
    /// Exact rational arithmetic.
    #[arg(long, conflicts_with = "schedule")]
    exact_rational: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum EventArg {
    Beta1,
    Pm,
    Unique,
    UniqueAll,
}

impl From<EventArg> for EventKind {
    fn from(e: EventArg) -> Self {
        match e {
            EventArg::Beta1 => EventKind::CostIsBeta1,
            EventArg::Pm => EventKind::ContainsPm,
            EventArg::Unique => EventKind::UniqueReduced,
            EventArg::UniqueAll => EventKind::UniqueReducedAmongAll,
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    event: EventArg,
    /// Matrix sizes, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Bernoulli costs: probability of beta1.
    #[arg(long, group = "model")]
    p: Option<String>,
    /// Bernoulli costs with p taken from a named schedule.
    #[arg(long, group = "model")]
    schedule: Option<String>,
    /// Uniform costs on [0, M].
    #[arg(long = "M", group = "model")]
    upper: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    beta1: f64,
    #[arg(long, default_value_t = 1.0)]
    beta2: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, env = "TROPOT_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Append one row per size to this CSV file (created with a header).
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exhaustive search over reduced plans (at most 4×4, 3 distinct weights per side).
    Solve(FileArgs),
    /// Exact probability by enumerating every Bernoulli matrix (n ≤ 4).
    Prob {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "probs")]
        p: Option<String>,
        #[arg(long, requires = "j")]
        probs: Option<String>,
        #[arg(long, requires = "probs")]
        j: Option<usize>,
    },
}

fn main() -> ExitCode {
    let version: &'static str = Box::leak(
        format!("{} (library {}, format {FORMAT_VERSION})", env!("CARGO_PKG_VERSION"), tropical_ot::VERSION)
            .into_boxed_str(),
    );
    let matches = Cli::command().version(version).get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Regions(args) => cmd_regions(&args),
        Command::Formula(args) => cmd_formula(&args),
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Oracle(OracleCommand::Solve(args)) => cmd_oracle_solve(&args),
        Command::Oracle(OracleCommand::Prob { n, p, probs, j }) => cmd_oracle_prob(n, p, probs, j),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn cmd_solve(args: &FileArgs) -> CliResult<()> {
    let problem = Problem::load(args.path())?;
    let solution = solve(&problem.mu, &problem.nu, problem.require_cost()?)?;
    match args.format {
        Format::Json => print_json(&SolveOut::new(&problem, &solution)),
        Format::Table => {
            print!("{}", report::solve_table(&problem, &solution));
            Ok(())
        }
    }
}

fn cmd_analyze(args: &FileArgs) -> CliResult<()> {
    let problem = Problem::load(args.path())?;
    let solution = solve(&problem.mu, &problem.nu, problem.require_cost()?)?;
    let out = AnalyzeOut::new(&problem, &solution);
    match args.format {
        Format::Json => print_json(&out),
        Format::Table => {
            print!("{}", report::analyze_table(&out));
            Ok(())
        }
    }
}

fn cmd_regions(args: &FileArgs) -> CliResult<()> {
    let problem = Problem::load(args.path())?;
    let regions = build_regions(&problem.mu, &problem.nu);
    match args.format {
        Format::Json => print_json(&regions.iter().map(RegionOut::new).collect::<Vec<_>>()),
        Format::Table => {
            let (p, q) = thresholds(&problem.mu, &problem.nu);
            print!("{}", report::regions_table(&problem, &regions, &p, &q));
            Ok(())
        }
    }
}

fn print_values(ns: &[usize], values: Vec<String>) {
    if ns.len() == 1 {
        println!("{}", values[0]);
    } else {
        for (n, v) in ns.iter().zip(values) {
            println!("{n}\t{v}");
        }
    }
}

fn cmd_formula(args: &FormulaArgs) -> CliResult<()> {
    let values: Vec<String> = if let (Some(probs), Some(j)) = (&args.probs, args.j) {
        if args.exact_rational {
            let probs = parse_rational_list(probs)?;
            args.n.iter().map(|&n| Ok(prob_beta_j_exact(n, &probs, j)?.to_string())).collect::<CliResult<_>>()?
        } else {
            let probs = parse_real_list(probs)?;
            args.n.iter().map(|&n| Ok(prob_beta_j(n, &probs, j)?.to_string())).collect::<CliResult<_>>()?
        }
    } else if let Some(schedule) = &args.schedule {
        let schedule: PSchedule = schedule.parse()?;
        args.n.iter().map(|&n| Ok(prob_beta1(n, schedule.p_at(n))?.to_string())).collect::<CliResult<_>>()?
    } else {
        let p = args.p.as_deref().ok_or_else(|| CliError::Usage("give one of --p, --schedule or --probs".into()))?;
        if args.exact_rational {
            let p = parse_rational(p)?;
            args.n.iter().map(|&n| Ok(prob_beta1_exact(n, &p)?.to_string())).collect::<CliResult<_>>()?
        } else {
            let p = parse_real(p)?;
            args.n.iter().map(|&n| Ok(prob_beta1(n, p)?.to_string())).collect::<CliResult<_>>()?
        }
    };
    print_values(&args.n, values);
    Ok(())
}

fn model_for(args: &SimulateArgs, n: usize) -> CliResult<CostModel> {
    if let Some(upper) = args.upper {
        return Ok(CostModel::Uniform(UniformCostSpec { n, upper, seed: args.seed }));
    }
    let p = match (&args.p, &args.schedule) {
        (Some(p), _) => parse_real(p)?,
        (None, Some(s)) => s.parse::<PSchedule>()?.p_at(n),
        (None, None) => return Err(CliError::Usage("give one of --p, --schedule or --M".into())),
    };
    Ok(CostModel::Bernoulli(BernoulliCostSpec { n, p, beta1: args.beta1, beta2: args.beta2, seed: args.seed }))
}

#[derive(serde::Serialize)]
struct CsvRow {
    event: &'static str,
    n: usize,
    p_or_m: f64,
    trials: u64,
    seed: u64,
    frequency: f64,
    stderr: f64,
    exact: Option<f64>,
}

impl From<&SimulationReport> for CsvRow {
    fn from(r: &SimulationReport) -> Self {
        CsvRow {
            event: r.event.name(),
            n: r.n,
            p_or_m: r.param,
            trials: r.trials,
            seed: r.seed,
            frequency: r.frequency,
            stderr: r.stderr,
            exact: r.exact,
        }
    }
}

const CSV_HEADER: [&str; 8] = ["event", "n", "p_or_M", "trials", "seed", "frequency", "stderr", "exact"];

fn cmd_simulate(args: &SimulateArgs) -> CliResult<()> {
    let kind = EventKind::from(args.event);
    let models = args.n.iter().map(|&n| model_for(args, n)).collect::<CliResult<Vec<_>>>()?;
    let mut writer = match &args.csv {
        Some(path) => {
            let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
            let file = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
            if fresh {
                w.write_record(CSV_HEADER)?;
            }
            Some(w)
        }
        None => None,
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(
        out,
        "{:<10} {:>5} {:>10} {:>8} {:>10} {:>10} {:>10} {:>9}",
        "event", "n", "p_or_M", "trials", "frequency", "stderr", "exact", "secs"
    )?;
    for model in &models {
        let r = run_experiment(kind, model, args.trials, args.threads)?;
        let exact = r.exact.map_or("-".to_string(), |e| format!("{e:.6}"));
        writeln!(
            out,
            "{:<10} {:>5} {:>10.6} {:>8} {:>10.6} {:>10.6} {:>10} {:>9.3}",
            r.event.name(),
            r.n,
            r.param,
            r.trials,
            r.frequency,
            r.stderr,
            exact,
            r.wall_time_secs
        )?;
        if let Some(w) = writer.as_mut() {
            w.serialize(CsvRow::from(&r))?;
        }
    }
    if let Some(mut w) = writer {
        w.flush()?;
    }
    Ok(())
}

fn cmd_oracle_solve(args: &FileArgs) -> CliResult<()> {
    let problem = Problem::load(args.path())?;
    let c = problem.require_cost()?;
    let brute = brute_force_global(&problem.mu, &problem.nu, c)?;
    let solved = solve(&problem.mu, &problem.nu, c)?.cost;
    match args.format {
        Format::Json => {
            print_json(&serde_json::json!({ "brute_force": brute, "solver": solved, "agree": brute == solved }))
        }
        Format::Table => {
            println!("brute force: {brute}\nsolver:      {solved}\nagree:       {}", brute == solved);
            Ok(())
        }
    }
}

fn cmd_oracle_prob(n: usize, p: Option<String>, probs: Option<String>, j: Option<usize>) -> CliResult<()> {
    let value: BigRational = match (p, probs, j) {
        (Some(p), None, _) => enumerate_prob_beta1(n, &parse_rational(&p)?)?,
        (None, Some(probs), Some(j)) => enumerate_prob_beta_j(n, &parse_rational_list(&probs)?, j)?,
        _ => return Err(CliError::Usage("give --p, or --probs with --j".into())),
    };
    println!("{value}");
    Ok(())
}
