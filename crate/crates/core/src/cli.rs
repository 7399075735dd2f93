//! Command-line interface.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 property violation,
//! 4 evaluation budget exceeded. `CML_THREADS` caps the worker pool.

use std::fmt::Write as _;
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::circle::Instance;
use crate::error::Error;
use crate::mechanism::Mechanism;
use crate::ratio::{two_pair_sweep, two_pair_table};
use crate::report::{normalize_positions, parse_position_list, EvaluationReport};
use crate::search::{
    check_budget, curve_csv, hypothesis_dataset, grid_search_top, hybrid_search, random_search,
    CurveBudget, HybridConfig, SearchMethod, SearchResult, DEFAULT_BUDGET,
};
use crate::suites::{run_suite, Suite, SuiteOptions, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "cml", version, about = "Facility location on the circle: mechanism evaluation and worst-case search")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MechanismName {
    Pcd,
    Rd,
    Mix,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one instance.
    Eval {
        /// Comma-separated positions as fractions of the circumference.
        #[arg(long, allow_hyphen_values = true)]
        positions: String,
        #[arg(long, value_enum, default_value_t = MechanismName::Pcd)]
        mechanism: MechanismName,
        /// Weight on PCD for the mixture.
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
    },
    /// Run a sampled property suite (or `all`).
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Ball radius for eps-ball.
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        /// Line resolution for reduction.
        #[arg(long, default_value_t = 1e-4)]
        resolution: f64,
    },
    /// Search arc profiles for the worst ratio.
    Search {
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Lattice spacing of the grid stage.
        #[arg(long)]
        grid: Option<f64>,
        /// Dirichlet samples of the random stage.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Hill-climb the best candidates.
        #[arg(long)]
        refine: bool,
        #[arg(long, default_value_t = 100)]
        top: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Maxima of the two-pair cases.
    TwoPair {
        #[arg(long, default_value_t = 0.001)]
        step: f64,
    },
    /// Numeric worst ratio against the closed-form hypothesis for odd n.
    Hypothesis {
        #[arg(long, default_value_t = 101)]
        n_max: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        iters: usize,
    },
    /// Start the HTTP evaluation service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Rendered command output plus the exit code it implies.
#[derive(Debug)]
pub struct Rendered {
    pub body: String,
    pub code: i32,
}

impl Rendered {
    fn ok(body: String) -> Self {
        Self { body, code: EXIT_OK }
    }
}

fn mechanism(name: MechanismName, lambda: f64) -> Result<Mechanism, CliError> {
    Ok(match name {
        MechanismName::Pcd => Mechanism::Pcd,
        MechanismName::Rd => Mechanism::RandomDictator,
        MechanismName::Mix => Mechanism::mixture(lambda)?,
    })
}

pub fn eval(positions: &str, mech: &Mechanism, format: Format) -> Result<Rendered, CliError> {
    let values = parse_position_list(positions).map_err(CliError::Usage)?;
    let (pts, notes) = normalize_positions(&values)?;
    for note in notes {
        eprintln!("warning: {note}");
    }
    let report = EvaluationReport::new(&Instance::canonicalize(&pts)?, mech);
    Ok(Rendered::ok(match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    }))
}

fn verify(suite: &str, opts_for: impl Fn(Suite) -> SuiteOptions, format: Format) -> Result<Rendered, CliError> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        vec![Suite::parse(suite).ok_or_else(|| {
            CliError::Usage(format!("unknown suite '{suite}', expected one of {} or all", names.join(", ")))
        })?]
    };
    for &s in &suites {
        opts_for(s).validate(s)?;
    }
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, &opts_for(s))).collect();
    let passed = reports.iter().all(SuiteReport::passed);
    let body = match format {
        Format::Json if reports.len() == 1 => serde_json::to_string(&reports[0]).expect("serializable") + "\n",
        Format::Json => serde_json::to_string(&reports).expect("serializable") + "\n",
        Format::Csv => {
            let mut s = String::from("suite,passed,checked,violations,max_excess\n");
            for r in &reports {
                let _ = writeln!(s, "{},{},{},{},{}", r.suite, r.passed(), r.checked, r.violations, r.max_excess);
            }
            s
        }
        Format::Text => reports.iter().map(|r| r.summary() + "\n").collect(),
    };
    Ok(Rendered { body, code: if passed { EXIT_OK } else { EXIT_VIOLATION } })
}

pub fn render_search(r: &SearchResult, format: Format) -> String {
    let p = r.best_profile.as_slice();
    match format {
        Format::Json => serde_json::to_string(r).expect("serializable") + "\n",
        Format::Csv => {
            let cols: Vec<String> = (1..=p.len()).map(|i| format!("p{i}")).collect();
            let vals: Vec<String> = p.iter().map(f64::to_string).collect();
            let method = serde_json::to_value(r.method).expect("serializable");
            format!(
                "method,best_gamma,evaluations,{}\n{},{},{},{}\n",
                cols.join(","),
                method.as_str().unwrap_or_default(),
                r.best_gamma,
                r.evaluations,
                vals.join(",")
            )
        }
        Format::Text => {
            let list: Vec<String> = p.iter().map(|x| format!("{x:.9}")).collect();
            format!(
                "method       {:?}\nbest gamma   {:.12}\nprofile      {}\nevaluations  {}\n",
                r.method,
                r.best_gamma,
                list.join(", "),
                r.evaluations
            )
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    n: usize,
    grid: Option<f64>,
    samples: Option<u64>,
    seed: Option<u64>,
    refine: bool,
    top: usize,
    iters: usize,
    budget: u64,
) -> Result<SearchResult, CliError> {
    let samples = samples.unwrap_or(0);
    if samples > 0 && seed.is_none() {
        return Err(CliError::Usage("random search needs --seed".into()));
    }
    let seed = seed.unwrap_or(0);
    match (grid, samples > 0, refine) {
        (None, false, _) => Err(CliError::Usage("search needs --grid or --samples".into())),
        (Some(res), false, false) => {
            let (top, evaluations) = grid_search_top(n, res, budget, 1)?;
            let (_, profile) = top.into_iter().next().expect("lattice is nonempty");
            Ok(SearchResult::emit(profile, evaluations, SearchMethod::Grid)?)
        }
        (None, true, false) => {
            check_budget(samples, budget)?;
            Ok(random_search(n, samples, seed)?)
        }
        _ => {
            let cfg = HybridConfig {
                n,
                grid,
                samples,
                seed,
                top,
                iters: if refine { iters } else { 0 },
                budget,
                ..Default::default()
            };
            Ok(hybrid_search(&cfg)?)
        }
    }
}

fn two_pair(step: f64, format: Format) -> Result<String, CliError> {
    let rows = two_pair_table(step)?;
    let best = two_pair_sweep(step)?;
    Ok(match format {
        Format::Json => serde_json::to_string(&json!({ "cases": rows, "max": best })).expect("serializable") + "\n",
        Format::Csv => {
            let mut s = String::from("case,s,t,gamma\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{}", r.case.name(), r.s, r.t, r.gamma);
            }
            s
        }
        Format::Text => {
            let mut s = String::from("case      s           t           gamma\n");
            for r in &rows {
                let _ = writeln!(s, "{:<9} {:.9} {:.9} {:.9}", r.case.name(), r.s, r.t, r.gamma);
            }
            let _ = writeln!(s, "max       {} at s = {:.9}, t = {:.9}: {:.9}", best.case.name(), best.s, best.t, best.gamma);
            s
        }
    })
}

fn hypothesis(n_max: usize, budget: &CurveBudget, format: Format) -> Result<String, CliError> {
    let points = hypothesis_dataset(n_max, budget)?;
    Ok(match format {
        Format::Json => serde_json::to_string(&points).expect("serializable") + "\n",
        Format::Csv => curve_csv(&points),
        Format::Text => {
            let mut s = String::from("n     numeric       hypothesis    rd            mix bound\n");
            for p in &points {
                let h = p.gamma_hypothesis.map(|h| format!("{h:.9}")).unwrap_or_else(|| "-".into());
                let _ = writeln!(s, "{:<5} {:.9}   {:<13} {:.9}   {}", p.n, p.gamma_numeric, h, p.rd_ratio, p.mix_bound);
            }
            s
        }
    })
}

/// Runs a parsed command that produces output. `serve` is handled by [`run`].
pub fn execute(cli: &Cli) -> Result<Rendered, CliError> {
    let format = cli.output.format;
    match &cli.command {
        Command::Eval { positions, mechanism: name, lambda } => eval(positions, &mechanism(*name, *lambda)?, format),
        Command::Verify { suite, samples, seed, eps, resolution } => verify(
            suite,
            |s| SuiteOptions {
                samples: samples.unwrap_or_else(|| s.default_samples()),
                seed: *seed,
                eps: *eps,
                resolution: *resolution,
            },
            format,
        ),
        Command::Search { n, grid, samples, seed, refine, top, iters, budget } => {
            let r = search(*n, *grid, *samples, *seed, *refine, *top, *iters, *budget)?;
            Ok(Rendered::ok(render_search(&r, format)))
        }
        Command::TwoPair { step } => Ok(Rendered::ok(two_pair(*step, format)?)),
        Command::Hypothesis { n_max, samples, seed, iters } => {
            let budget = CurveBudget { samples: *samples, seed: *seed, iters: *iters, cap: DEFAULT_BUDGET };
            Ok(Rendered::ok(hypothesis(*n_max, &budget, format)?))
        }
        Command::Serve { .. } => Err(CliError::Usage("serve produces no output".into())),
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("CML_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("CML_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn serve(host: IpAddr, port: u16) -> Result<(), CliError> {
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    runtime
        .block_on(crate::service::serve(SocketAddr::new(host, port)))
        .map_err(|e| CliError::Usage(format!("cannot serve on {host}:{port}: {e}")))
}

fn deliver(cli: &Cli, rendered: Rendered) -> Result<i32, CliError> {
    match &cli.output.output {
        Some(path) => std::fs::write(path, &rendered.body)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{}", rendered.body),
    }
    Ok(rendered.code)
}

/// Parses `std::env::args`, runs the command and returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = configure_threads().and_then(|()| match &cli.command {
        Command::Serve { port, host } => serve(*host, *port).map(|()| EXIT_OK),
        _ => execute(&cli).and_then(|r| deliver(&cli, r)),
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            match &e {
                CliError::Usage(m) | CliError::Budget(m) => eprintln!("error: {m}"),
            }
            e.code()
        }
    }
}
