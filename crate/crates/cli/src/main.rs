//! Command-line driver: run scenario files, replay the built-in example
//! catalog, search bid grids for equilibria, check certificates, and
//! generate seeded instance families.
//!
//! Exit codes: 0 every check holds, 1 a check is violated, 2 usage or
//! parse error, 3 enumeration budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use bidlab::catalog::run_catalog;
use bidlab::error::Error;
use bidlab::generate::{generate_instances, Family, GenConfig};
use bidlab::mechanisms::Mechanism;
use bidlab::report::{emit_csv, emit_structured, emit_text, Report};
use bidlab::scenario::{
    parse_scenario_file, resolve, run_scenario, scenario_file_for_instance, CheckOp, GridDto,
    RunOptions, ScenarioFile,
};

#[derive(Parser)]
#[command(
    name = "bidlab",
    about = "Desk-scale laboratory for simultaneous item auctions",
    version
)]
struct Cli {
    /// Tie-break order over bidders, e.g. 1,0 (default: ascending index)
    #[arg(long, global = true, value_delimiter = ',')]
    tie_break: Option<Vec<usize>>,

    /// Bid grid step as p/q (overrides the scenario grid)
    #[arg(long, global = true)]
    grid_step: Option<String>,

    /// Bid grid maximum as p/q (overrides the scenario grid)
    #[arg(long, global = true)]
    grid_max: Option<String>,

    /// Generator seed (overrides the scenario seed)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Budget for enumeration-flavored checks (nodes / profiles / rows)
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a scenario file
    Run { scenario: PathBuf },
    /// Run a built-in catalog entry, e.g. ex-1.2 or app-b2(1/2)
    Example { name: String },
    /// Enumerate grid pure Nash equilibria of a scenario's instance
    PneSearch {
        scenario: PathBuf,
        /// Conditions surviving equilibria must satisfy
        #[arg(long, value_delimiter = ',')]
        filters: Vec<String>,
    },
    /// Check certificates at the scenario's bid profile
    Certify {
        scenario: PathBuf,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        delta: Option<String>,
    },
    /// Generate a seeded instance family as scenario JSON
    Gen {
        /// ud | sm_table | xos_clauses | sa_table | mon_table
        #[arg(long)]
        family: String,
        #[arg(short = 'n', long)]
        bidders: usize,
        #[arg(short = 'm', long)]
        items: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Parser)]
#[command(name = "bidlab", version)]
struct Full {
    #[command(flatten)]
    global: Cli,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Full::parse();
    let started = Instant::now();
    let outcome = dispatch(&cli);
    let code = match outcome {
        Ok(report) => {
            if let Some(report) = &report {
                print_report(report, cli.global.format);
            }
            eprintln!("elapsed: {:?}", started.elapsed());
            if report.is_some_and(|r| r.any_violated()) {
                1
            } else {
                0
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err.downcast_ref::<Error>() {
                Some(Error::BudgetExceeded(_)) => 3,
                _ => 2,
            }
        }
    };
    ExitCode::from(code)
}

fn print_report(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{}", emit_text(report)),
        Format::Csv => print!("{}", emit_csv(report)),
        Format::Structured => println!("{}", emit_structured(report)),
    }
}

fn dispatch(cli: &Full) -> anyhow::Result<Option<Report>> {
    let opts = run_options(&cli.global);
    match &cli.command {
        Command::Run { scenario } => {
            let file = load_with_overrides(scenario, &cli.global)?;
            Ok(Some(run_scenario(&resolve(&file)?, &opts)?))
        }
        Command::Example { name } => Ok(Some(run_catalog(name, &opts)?)),
        Command::PneSearch { scenario, filters } => {
            let mut file = load_with_overrides(scenario, &cli.global)?;
            file.checks = vec![CheckOp::EnumeratePne {
                filters: filters.clone(),
                expect_worst_ratio: None,
            }];
            Ok(Some(run_scenario(&resolve(&file)?, &opts)?))
        }
        Command::Certify {
            scenario,
            lambda,
            mu,
            gamma,
            delta,
        } => {
            let mut file = load_with_overrides(scenario, &cli.global)?;
            let mut checks = Vec::new();
            if let (Some(l), Some(m)) = (lambda, mu) {
                checks.push(CheckOp::Smoothness {
                    lambda: l.clone(),
                    mu: m.clone(),
                    expect: true,
                });
            }
            if let (Some(g), Some(d)) = (gamma, delta) {
                checks.push(CheckOp::RevenueGuarantee {
                    gamma: g.clone(),
                    delta: d.clone(),
                    expect: true,
                });
                checks.push(CheckOp::WelfareFloor {
                    gamma: g.clone(),
                    delta: d.clone(),
                });
            }
            if checks.is_empty() {
                anyhow::bail!("certify needs --lambda/--mu and/or --gamma/--delta");
            }
            checks.push(CheckOp::PoaBound {
                lambda: lambda.clone(),
                mu: mu.clone(),
                gamma: gamma.clone(),
                delta: delta.clone(),
                expect: None,
            });
            file.checks = checks;
            Ok(Some(run_scenario(&resolve(&file)?, &opts)?))
        }
        Command::Gen {
            family,
            bidders,
            items,
            count,
        } => {
            let cfg = GenConfig {
                family: Family::parse(family)?,
                bidders: *bidders,
                items: *items,
                seed: cli.global.seed.unwrap_or(0),
                count: *count,
                mechanism: Mechanism::SecondPrice,
            };
            let instances = generate_instances(&cfg)?;
            let files: Vec<ScenarioFile> = instances
                .iter()
                .map(|inst| scenario_file_for_instance(inst, Some(cfg.seed)))
                .collect();
            println!("{}", serde_json::to_string_pretty(&files)?);
            Ok(None)
        }
    }
}

fn run_options(global: &Cli) -> RunOptions {
    let mut opts = RunOptions::default();
    if let Some(budget) = global.budget {
        opts.search_budget = budget;
        opts.enumeration_budget = budget;
        opts.deviation_budget = budget;
    }
    opts
}

fn load_with_overrides(path: &PathBuf, global: &Cli) -> anyhow::Result<ScenarioFile> {
    let text =
        std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    let mut file = parse_scenario_file(&text)?;
    if let Some(order) = &global.tie_break {
        file.instance.tie_break = Some(order.clone());
    }
    if global.grid_step.is_some() || global.grid_max.is_some() {
        let base = file.grid.clone();
        let step = global
            .grid_step
            .clone()
            .or_else(|| base.as_ref().map(|g| g.step.clone()))
            .ok_or_else(|| anyhow::anyhow!("--grid-step needed (scenario has no grid)"))?;
        let max = global
            .grid_max
            .clone()
            .or_else(|| base.as_ref().map(|g| g.max.clone()))
            .ok_or_else(|| anyhow::anyhow!("--grid-max needed (scenario has no grid)"))?;
        file.grid = Some(GridDto { step, max });
    }
    if let Some(seed) = global.seed {
        file.seed = Some(seed);
    }
    Ok(file)
}
