//! Command line interface.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use uidim_core::dimension::{analyze, vc_dimension_exact, ExactLimits};
use uidim_core::rademacher::{rademacher_exact, rademacher_mc, vc_rad_bound, RadLimits};
use uidim_core::rules::ExpandLimits;
use uidim_core::sampling::{simulate_deterministic, simulate_quarterplane, simulate_random_set};
use uidim_core::{scenarios, ErrorKind, SetFamily, TrialBatch};

use crate::format::{self, FormatError};
use crate::report::{self, SimParams};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_170_101;

pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const PRECONDITION: i32 = 3;
    pub const INFEASIBLE: i32 = 4;
    pub const UNSOUND: i32 = 5;
}

#[derive(Debug, Parser)]
#[command(name = "uidim", version, about = "UI-dimension analysis and sampling tail-bound simulation")]
pub struct Cli {
    /// Master seed for all randomness.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact UI and VC dimension, boundedness profile.
    Analyze {
        family: PathBuf,
        #[arg(long, default_value_t = 20)]
        max_ground: usize,
    },
    /// Dimension bound of an expression via the composition rules.
    Compose {
        expr: PathBuf,
        /// Expand the support and compare with its exact dimension.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 20)]
        max_ground: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_expansion: usize,
    },
    /// Monte Carlo check of the sampling tail bounds.
    Simulate {
        #[command(subcommand)]
        kind: SimKind,
    },
    /// Rademacher complexity, exact or Monte Carlo.
    Rademacher {
        family: PathBuf,
        #[arg(long, conflicts_with = "mc")]
        exact: bool,
        /// Monte Carlo estimate with this many sign vectors.
        #[arg(long, value_name = "SAMPLES")]
        mc: Option<u64>,
        #[arg(long, default_value_t = 22)]
        max_ground: usize,
        /// Also write the per-cardinality table as CSV.
        #[arg(long)]
        slices_csv: Option<PathBuf>,
    },
    /// Write a built-in example family as JSON.
    Scenario {
        #[arg(value_enum)]
        kind: ScenarioKind,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioKind {
    /// Quarter-plane ranges on the diagonal antichain.
    Quarterplane,
    /// Union of the two axis threshold chains on the diagonal antichain.
    UnionChains,
    /// Prefixes of n elements.
    PrefixChain,
    /// Half-lines on the diagonal.
    HalfLines,
    /// Half-lines on an n×n grid.
    HalfLineGrid,
}

#[derive(Debug, Args)]
pub struct SimCommon {
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Also write one CSV row per trial.
    #[arg(long)]
    pub trials_csv: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SimKind {
    /// A fixed set of t elements.
    Deterministic {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[command(flatten)]
        common: SimCommon,
    },
    /// An adversarially chosen member of a d-bounded family.
    RandomSet {
        #[arg(long, required_unless_present_any = ["union_chains", "prefix_chain"], conflicts_with_all = ["union_chains", "prefix_chain"])]
        family: Option<PathBuf>,
        /// Union of two threshold chains on N points.
        #[arg(long, value_name = "N", conflicts_with = "prefix_chain")]
        union_chains: Option<usize>,
        /// Chain of prefixes of N elements.
        #[arg(long, value_name = "N")]
        prefix_chain: Option<usize>,
        /// Boundedness degree (default: the family's smallest).
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        t_min: usize,
        #[command(flatten)]
        common: SimCommon,
    },
    /// The quarter-plane family on n points, which has no bound.
    Quarterplane {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[arg(long, default_value_t = 2)]
        t_min: usize,
        #[command(flatten)]
        common: SimCommon,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] uidim_core::Error),
    #[error("rule bound {bound} is below the exact dimension {exact}")]
    Unsound { exact: u32, bound: u32 },
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::PARSE,
            CliError::Format(FormatError::Read { .. } | FormatError::Write { .. } | FormatError::Csv(_)) => exit::IO,
            CliError::Format(_) => exit::PARSE,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Precondition => exit::PRECONDITION,
                ErrorKind::Infeasible => exit::INFEASIBLE,
            },
            CliError::Unsound { .. } => exit::UNSOUND,
            CliError::Io(_) => exit::IO,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

enum Output {
    Text(String),
    Json(Value),
    Csv(Vec<u8>),
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let output = match &cli.command {
        Command::Analyze { family, max_ground } => cmd_analyze(cli.format, family, *max_ground)?,
        Command::Compose {
            expr,
            verify,
            max_ground,
            max_expansion,
        } => cmd_compose(cli.format, expr, *verify, *max_ground, *max_expansion)?,
        Command::Simulate { kind } => cmd_simulate(cli.format, kind, cli.seed)?,
        Command::Rademacher {
            family,
            exact: _,
            mc,
            max_ground,
            slices_csv,
        } => cmd_rademacher(cli.format, family, *mc, *max_ground, slices_csv.as_deref(), cli.seed)?,
        Command::Scenario { kind, n } => Output::Json(scenario_json(*kind, *n)),
    };
    emit(output, cli.out.as_deref())
}

fn emit(output: Output, out: Option<&Path>) -> Result<(), CliError> {
    let bytes = match output {
        Output::Text(s) => s.into_bytes(),
        Output::Json(v) => {
            let mut s = serde_json::to_string_pretty(&v).expect("serializable");
            s.push('\n');
            s.into_bytes()
        }
        Output::Csv(b) => b,
    };
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|source| FormatError::Write {
            path: path.to_owned(),
            source,
        })?,
        None => {
            let mut w = io::stdout().lock();
            w.write_all(&bytes)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn no_csv(what: &str) -> CliError {
    CliError::Usage(format!("--format csv is not available for {what}"))
}

fn cmd_analyze(fmt: OutputFormat, path: &Path, max_ground: usize) -> Result<Output, CliError> {
    let family = format::load_family(path)?;
    let bounded = family.min_boundedness();
    if fmt == OutputFormat::Csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["j", "count", "ceiling"]).map_err(FormatError::from)?;
        for c in &bounded.per_j {
            w.write_record([c.j.to_string(), c.count.to_string(), c.ceiling.to_string()])
                .map_err(FormatError::from)?;
        }
        return Ok(Output::Csv(w.into_inner().map_err(|e| io::Error::other(e.to_string()))?));
    }
    let dims = analyze(&family, &ExactLimits::new(max_ground))?;
    Ok(match fmt {
        OutputFormat::Json => Output::Json(report::analysis_json(&family, &bounded, &dims)),
        _ => Output::Text(report::analysis_text(&family, &bounded, &dims)),
    })
}

fn cmd_compose(
    fmt: OutputFormat,
    path: &Path,
    verify: bool,
    max_ground: usize,
    max_expansion: usize,
) -> Result<Output, CliError> {
    if fmt == OutputFormat::Csv {
        return Err(no_csv("compose"));
    }
    let loaded = format::load_expr(path)?;
    let exact = ExactLimits::new(max_ground);
    let derivation = loaded.expr.eval_bound(&exact)?;
    let verification = if verify {
        Some(loaded.expr.verify_bound(&loaded.ground, &ExpandLimits { max_sets: max_expansion }, &exact)?)
    } else {
        None
    };
    let output = match fmt {
        OutputFormat::Json => Output::Json(report::derivation_json(&derivation, verification.as_ref())),
        _ => Output::Text(report::derivation_text(&derivation, verification.as_ref())),
    };
    if let Some(v) = verification.filter(|v| !v.sound) {
        // Still print the derivation before failing.
        emit(output, None)?;
        return Err(CliError::Unsound {
            exact: v.exact,
            bound: derivation.final_dimension(),
        });
    }
    Ok(output)
}

fn sim_output(fmt: OutputFormat, params: &SimParams, batch: &TrialBatch, csv_path: Option<&Path>) -> Result<Output, CliError> {
    if let Some(path) = csv_path {
        let file = File::create(path).map_err(|source| FormatError::Write {
            path: path.to_owned(),
            source,
        })?;
        format::write_trials_csv(BufWriter::new(file), batch)?;
    }
    Ok(match fmt {
        OutputFormat::Json => Output::Json(report::batch_json(params, batch)),
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            format::write_trials_csv(&mut buf, batch)?;
            Output::Csv(buf)
        }
        OutputFormat::Text => Output::Text(report::batch_text(params, batch)),
    })
}

fn cmd_simulate(fmt: OutputFormat, kind: &SimKind, seed: u64) -> Result<Output, CliError> {
    match kind {
        SimKind::Deterministic { t, r, common } => {
            let batch = simulate_deterministic(*t, common.p, *r, common.trials, seed)?;
            let params = SimParams {
                kind: "deterministic",
                fields: vec![("t", json!(t)), ("r", json!(r))],
            };
            sim_output(fmt, &params, &batch, common.trials_csv.as_deref())
        }
        SimKind::RandomSet {
            family,
            union_chains,
            prefix_chain,
            d,
            t_min,
            common,
        } => {
            let (fam, source): (SetFamily, Value) = match (family, union_chains, prefix_chain) {
                (Some(path), _, _) => (format::load_family(path)?, json!(path.display().to_string())),
                (_, Some(n), _) => (scenarios::diagonal_union_of_chains(*n), json!(format!("union-chains:{n}"))),
                (_, _, Some(n)) => (scenarios::prefix_chain(*n), json!(format!("prefix-chain:{n}"))),
                _ => return Err(CliError::Usage("a family source is required".into())),
            };
            let d = d.unwrap_or_else(|| fam.min_boundedness().min_d);
            let batch = simulate_random_set(&fam, common.p, d, *t_min, common.trials, seed)?;
            let params = SimParams {
                kind: "random-set",
                fields: vec![("family", source), ("d", json!(d)), ("t_min", json!(t_min))],
            };
            sim_output(fmt, &params, &batch, common.trials_csv.as_deref())
        }
        SimKind::Quarterplane { n, d, t_min, common } => {
            let batch = simulate_quarterplane(*n, common.p, *d, *t_min, common.trials, seed)?;
            let params = SimParams {
                kind: "quarterplane",
                fields: vec![("n", json!(n)), ("d", json!(d)), ("t_min", json!(t_min))],
            };
            sim_output(fmt, &params, &batch, common.trials_csv.as_deref())
        }
    }
}

fn cmd_rademacher(
    fmt: OutputFormat,
    path: &Path,
    mc: Option<u64>,
    max_ground: usize,
    slices_csv: Option<&Path>,
    seed: u64,
) -> Result<Output, CliError> {
    let family = format::load_family(path)?;
    let report = match mc {
        Some(samples) => rademacher_mc(&family, samples, seed)?,
        None => rademacher_exact(&family, &RadLimits { max_ground })?,
    };
    let vc_bound = match vc_dimension_exact(&family, &ExactLimits::default()) {
        Ok(vc) if vc.dim > 0 => Some(vc_rad_bound(vc.dim as usize, family.ground_size())?),
        _ => None,
    };
    if let Some(p) = slices_csv {
        let file = File::create(p).map_err(|source| FormatError::Write {
            path: p.to_owned(),
            source,
        })?;
        format::write_slices_csv(BufWriter::new(file), &report)?;
    }
    Ok(match fmt {
        OutputFormat::Json => Output::Json(report::rad_json(&report, vc_bound)),
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            format::write_slices_csv(&mut buf, &report)?;
            Output::Csv(buf)
        }
        OutputFormat::Text => Output::Text(report::rad_text(&report, vc_bound)),
    })
}

fn scenario_json(kind: ScenarioKind, n: usize) -> Value {
    let family = match kind {
        ScenarioKind::Quarterplane => scenarios::quarterplane_family(n),
        ScenarioKind::UnionChains => scenarios::diagonal_union_of_chains(n),
        ScenarioKind::PrefixChain => scenarios::prefix_chain(n),
        ScenarioKind::HalfLines => scenarios::diagonal_half_lines(n),
        ScenarioKind::HalfLineGrid => scenarios::half_line_grid(n, n),
    };
    serde_json::to_value(format::FamilyFile::from_family(&family)).expect("plain data")
}
