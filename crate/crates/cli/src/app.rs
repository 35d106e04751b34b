//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 success, 1 usage error, 2 config error, 3 runtime error.

use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use adaptstream_core::sim::{
    compare_baseline, compare_baseline_recorded, run, run_recorded, JsonLinesSink, MetricsReport,
    ScenarioConfig, SimError, SlotRecord,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use crate::chart::{render_charts, ChartError};
use crate::config::{default_scenario, parse_config, ConfigError, Overrides, DEFAULT_SCENARIO};
use crate::eval::{EvalError, Formula};
use crate::report::{write_report, Format, RunView};

#[derive(Debug, Parser)]
#[command(name = "adaptstream", version, about = "Adaptive streaming scenario simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate the adaptive controller over one or more scenarios
    Run(RunArgs),
    /// Run adaptive and static controllers on the same trace
    Compare(RunArgs),
    /// Evaluate a single formula
    Eval {
        #[command(subcommand)]
        formula: Formula,
    },
    /// Parse and validate scenario files without running them
    Validate(ScenarioArgs),
    /// Write the bundled default scenario to a file
    InitScenario {
        path: PathBuf,
        /// Overwrite an existing file
        #[arg(long)]
        force: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// Scenario file; repeat for a batch. Defaults to the bundled scenario.
    #[arg(long = "scenario", value_name = "PATH")]
    pub scenarios: Vec<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub slots: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Report file. A directory when several scenarios are given.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Directory for latency, throughput and offload charts
    #[arg(long, value_name = "DIR")]
    pub chart: Option<PathBuf>,
    /// Also run the static comparator
    #[arg(long)]
    pub compare: bool,
    /// Worker threads for batch runs
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("simulation failed for {scenario}: {source}")]
    Sim {
        scenario: String,
        #[source]
        source: SimError,
    },
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error("{} already exists (use --force to overwrite)", .0.display())]
    Exists(PathBuf),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Eval(_) => 1,
            CliError::Config(_) => 2,
            CliError::Sim { .. } | CliError::Write { .. } | CliError::Chart(_) | CliError::Exists(_) => 3,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match run_command(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run_command(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Run(args) => simulate_command(&args, args.compare, out),
        Command::Compare(args) => simulate_command(&args, true, out),
        Command::Eval { formula } => {
            let result = formula.evaluate()?;
            write!(out, "{result}").map_err(stdout_error)
        }
        Command::Validate(args) => {
            for (origin, cfg) in load_scenarios(&args)? {
                writeln!(
                    out,
                    "ok {origin}: {} ({} slots, seed {})",
                    cfg.name, cfg.slots, cfg.seed
                )
                .map_err(stdout_error)?;
            }
            Ok(())
        }
        Command::InitScenario { path, force } => {
            if path.exists() && !force {
                return Err(CliError::Exists(path));
            }
            std::fs::write(&path, DEFAULT_SCENARIO).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?;
            writeln!(out, "wrote {}", path.display()).map_err(stdout_error)
        }
    }
}

fn stdout_error(source: io::Error) -> CliError {
    CliError::Write {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

/// Loads every requested scenario as `(origin, config)`.
fn load_scenarios(args: &ScenarioArgs) -> Result<Vec<(String, ScenarioConfig)>, CliError> {
    let overrides = Overrides {
        seed: args.seed,
        slots: args.slots,
    };
    if args.scenarios.is_empty() {
        let cfg = default_scenario(overrides)?;
        return Ok(vec![(cfg.name.clone(), cfg)]);
    }
    args.scenarios
        .iter()
        .map(|path| {
            let stem = path
                .file_stem()
                .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
            Ok((stem, parse_config(path, overrides)?))
        })
        .collect()
}

struct Outcome {
    config: ScenarioConfig,
    journal: Vec<SlotRecord>,
    report: MetricsReport,
    baseline: Option<(Vec<SlotRecord>, MetricsReport)>,
}

fn open_recording(path: &Path) -> Result<JsonLinesSink<BufWriter<File>>, CliError> {
    File::create(path)
        .map(|f| JsonLinesSink::new(BufWriter::new(f)))
        .map_err(|source| CliError::Write {
            path: path.to_owned(),
            source,
        })
}

fn simulate(config: ScenarioConfig, compare: bool) -> Result<Outcome, CliError> {
    let sim_error = |source| CliError::Sim {
        scenario: config.name.clone(),
        source,
    };
    let recording = match (&config.recording.path, config.recording.enabled) {
        (Some(path), true) => Some(open_recording(Path::new(path))?),
        _ => None,
    };
    if compare {
        let out = match recording {
            Some(mut sink) => compare_baseline_recorded(&config, &mut sink),
            None => compare_baseline(&config),
        }
        .map_err(sim_error)?;
        Ok(Outcome {
            journal: out.adaptive,
            report: out.report,
            baseline: Some((out.baseline, out.baseline_report)),
            config,
        })
    } else {
        let out = match recording {
            Some(mut sink) => run_recorded(&config, &mut sink),
            None => run(&config),
        }
        .map_err(sim_error)?;
        Ok(Outcome {
            journal: out.journal,
            report: out.report,
            baseline: None,
            config,
        })
    }
}

fn simulate_all(
    scenarios: Vec<ScenarioConfig>,
    compare: bool,
    jobs: Option<u16>,
) -> Result<Vec<Outcome>, CliError> {
    match jobs {
        Some(n) if scenarios.len() > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(usize::from(n))
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?;
            pool.install(|| {
                scenarios
                    .into_par_iter()
                    .map(|cfg| simulate(cfg, compare))
                    .collect()
            })
        }
        _ => scenarios.into_iter().map(|cfg| simulate(cfg, compare)).collect(),
    }
}

fn simulate_command(args: &RunArgs, compare: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let loaded = load_scenarios(&args.scenario)?;
    let batch = loaded.len() > 1;
    if batch {
        if args.output.is_none() && args.format != Format::Table {
            return Err(CliError::Usage(
                "several scenarios with csv or structured output need --output <DIR>".to_owned(),
            ));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = loaded.iter().find(|(name, _)| !seen.insert(name.as_str())) {
            return Err(CliError::Usage(format!(
                "two scenarios share the file name {:?}; batch outputs would collide",
                dup.0
            )));
        }
    }
    let (names, configs): (Vec<String>, Vec<ScenarioConfig>) = loaded.into_iter().unzip();
    let outcomes = simulate_all(configs, compare, args.jobs)?;

    if batch {
        if let Some(dir) = &args.output {
            std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
                path: dir.clone(),
                source,
            })?;
        }
    }
    for (i, (name, outcome)) in names.iter().zip(&outcomes).enumerate() {
        let view = RunView {
            config: &outcome.config,
            journal: &outcome.journal,
            report: &outcome.report,
            baseline: outcome.baseline.as_ref().map(|(j, r)| (j.as_slice(), r)),
        };
        let mut rendered = Vec::new();
        write_report(&view, args.format, &mut rendered).map_err(stdout_error)?;
        let destination = args.output.as_ref().map(|p| {
            if batch {
                p.join(format!("{name}.{}", args.format.extension()))
            } else {
                p.clone()
            }
        });
        match destination {
            Some(path) => std::fs::write(&path, &rendered)
                .map_err(|source| CliError::Write { path, source })?,
            None => {
                if i > 0 {
                    writeln!(out).map_err(stdout_error)?;
                }
                out.write_all(&rendered).map_err(stdout_error)?;
            }
        }
        if let Some(dir) = &args.chart {
            let dir = if batch { dir.join(name) } else { dir.clone() };
            render_charts(
                &dir,
                view.journal,
                view.report,
                view.baseline.map(|(j, _)| j),
            )?;
        }
    }
    Ok(())
}
