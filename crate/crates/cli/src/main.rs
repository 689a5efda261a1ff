use std::fs::File;
use std::io::{self, BufReader};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use qwalk::{marked_components, solve_min_norm, verify_stationary, Graph, MarkedSet, WalkState64};
use qwalk_cli::config::read_graph;
use qwalk_cli::run::{error_exit_code, RESIDUAL_TOL};
use qwalk_cli::sweep::{combined_exit_code, write_summary};
use qwalk_cli::{collect_configs, configure_threads, run, sweep, Experiment, Overrides};

#[derive(Parser)]
#[command(name = "qwalk", version, about = "Coined quantum walk search experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Override the config's number of steps.
    #[arg(long, global = true)]
    t_max: Option<usize>,
    /// Override every seed in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for CSV and JSON outputs.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Use the coefficients in this file instead of the minimum-norm solution.
    #[arg(long, global = true)]
    assignment: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment config.
    Run { config: PathBuf },
    /// Run a directory of configs, or files listing config paths.
    Sweep { inputs: Vec<PathBuf> },
    /// Print the minimum-norm stationary assignment for a marked set.
    Solve { graph: PathBuf, marked: String },
    /// Print the stationarity residual of a state snapshot.
    Verify { graph: PathBuf, marked: String, snapshot: PathBuf },
}

/// A comma or whitespace separated vertex list, or a file holding one.
fn parse_marked(g: &Graph, spec: &str) -> Result<MarkedSet> {
    let text = if Path::new(spec).is_file() {
        std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?
    } else {
        spec.to_string()
    };
    let vertices = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().with_context(|| format!("bad vertex {s:?}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(MarkedSet::new(g, vertices)?)
}

fn main_inner(cli: Cli) -> Result<i32> {
    configure_threads()?;
    let overrides = Overrides {
        t_max: cli.t_max,
        seed: cli.seed,
        out_dir: cli.out_dir,
        assignment: cli.assignment,
    };
    match cli.command {
        Command::Run { config } => {
            let exp = Experiment::load(&config, &overrides)?;
            let report = run(&exp)?;
            println!(
                "{}: bound {:e}, observed max {:e}, margin {:e}, residual {:e}",
                report.name, report.total_bound, report.observed_max, report.margin, report.stationary_residual
            );
            if !report.dominance {
                eprintln!("dominance check failed");
            }
            if !report.residual_ok {
                eprintln!("stationary residual above {RESIDUAL_TOL:e}");
            }
            Ok(report.exit_code())
        }
        Command::Sweep { inputs } => {
            let configs = collect_configs(&inputs)?;
            let entries = sweep(&configs, &overrides);
            for entry in &entries {
                if let Err(e) = &entry.result {
                    eprintln!("{}: {e:#}", entry.path.display());
                }
            }
            write_summary(&entries, io::stdout().lock())?;
            Ok(combined_exit_code(&entries))
        }
        Command::Solve { graph, marked } => {
            let g = read_graph(&graph)?;
            let marked = parse_marked(&g, &marked)?;
            let asgs = marked_components(&g, &marked)
                .iter()
                .map(|c| solve_min_norm::<f64>(c))
                .collect::<qwalk::Result<Vec<_>>>()
                .map_err(|e| match e {
                    qwalk::Error::NoStationaryState { .. } => qwalk_cli::run::Infeasible(e.to_string()).into(),
                    e => anyhow::Error::from(e),
                })?;
            qwalk::stationary::write_assignments(&asgs, io::stdout().lock())?;
            Ok(0)
        }
        Command::Verify { graph, marked, snapshot } => {
            let g = read_graph(&graph)?;
            let marked = parse_marked(&g, &marked)?;
            let file = File::open(&snapshot).with_context(|| format!("opening {}", snapshot.display()))?;
            let s: WalkState64 = qwalk::walk::read_snapshot(&g, BufReader::new(file))
                .with_context(|| format!("reading snapshot {}", snapshot.display()))?;
            let report = verify_stationary(&g, &marked, &s);
            println!("residual = {:e}", report.residual);
            Ok(if report.is_stationary(RESIDUAL_TOL) { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
