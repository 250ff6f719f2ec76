//! Thin command-line front end. All computation lives in the library; this
//! binary parses flags, routes to the pipelines, writes the output files, and
//! records a run manifest per invocation.
//!
//! Exit codes: 0 success, 1 domain error, 2 budget exhausted / inconclusive,
//! 3 invariant violation (self-test failure).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use triortho::code::{build_code, distance_z, yield_table, CodeSummary};
use triortho::distill::{basin_grid, depolarizing_threshold, Orientation};
use triortho::search::{search, write_catalog, SearchConfig, SearchMode};
use triortho::selftest::run_selftest;
use triortho::space::{default_punctures, family_space, puncture, PunctureSet};
use triortho::Error;

#[derive(Parser)]
#[command(name = "triortho", version, about = "Qutrit triorthogonal code toolkit")]
struct Cli {
    /// Worker threads for parallel commands (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family code and write its matrices and summary
    Construct {
        #[arg(long)]
        m: usize,
        /// Number of punctures (ignored when --punctures is given)
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Explicit 1-based puncture coordinates, comma separated
        #[arg(long, value_delimiter = ',')]
        punctures: Option<Vec<usize>>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Yield-parameter table of the maximally punctured family
    YieldTable {
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Depolarizing threshold of the [9m-1, 1] code (or a sweep over m)
    Threshold {
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Sweep m = 1..=SWEEP instead of a single run
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long, default_value_t = Orientation::default())]
        orientation: Orientation,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Basin-of-attraction grid over the error simplex
    Basin {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long, default_value_t = Orientation::default())]
        orientation: Orientation,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Search for maximal triorthogonal spaces
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kappa_min: usize,
        /// "exhaustive" or "randomized"
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        #[arg(long, default_value_t = triortho::search::DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Run the built-in consistency and golden-value checks
    Selftest {
        #[arg(long, default_value_t = Orientation::default())]
        orientation: Orientation,
    },
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    parameters: serde_json::Value,
    version: String,
    elapsed_seconds: f64,
    outputs: Vec<String>,
}

fn write_manifest(
    out: &Path,
    command: &str,
    parameters: serde_json::Value,
    started: Instant,
    outputs: &[PathBuf],
) -> Result<(), Error> {
    let manifest = RunManifest {
        command: command.to_string(),
        parameters,
        version: env!("CARGO_PKG_VERSION").to_string(),
        elapsed_seconds: started.elapsed().as_secs_f64(),
        outputs: outputs
            .iter()
            .map(|p| p.to_string_lossy().into_owned())
            .collect(),
    };
    std::fs::write(
        out.join("manifest.json"),
        serde_json::to_string_pretty(&manifest)?,
    )?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    if let Some(workers) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .ok();
    }
    match cli.command {
        Command::Construct { m, k, punctures, out } => {
            let started = Instant::now();
            std::fs::create_dir_all(&out)?;
            let space = family_space(m)?;
            let punctures = match &punctures {
                Some(coords) => PunctureSet::new(coords.clone())?,
                None => default_punctures(m, k)?,
            };
            let tm = puncture(&space, &punctures)?;
            let code = build_code(&tm)?;
            let d = distance_z(&code)?;
            let summary = CodeSummary::new(&code, Some(m), punctures.coords(), d)?;
            let basis_path = out.join("basis.txt");
            let h_path = out.join("h.txt");
            let summary_path = out.join("summary.json");
            std::fs::write(&basis_path, space.basis().to_text())?;
            std::fs::write(&h_path, tm.to_text())?;
            std::fs::write(&summary_path, serde_json::to_string_pretty(&summary)?)?;
            println!(
                "[{},{},{}]_3  rank Lx {}  rank Lz {}  gamma {:.4}",
                summary.n, summary.k, summary.d, summary.rank_lx, summary.rank_lz, summary.gamma
            );
            write_manifest(
                &out,
                "construct",
                serde_json::json!({"m": m, "punctures": punctures.coords()}),
                started,
                &[basis_path, h_path, summary_path],
            )?;
            Ok(0)
        }
        Command::YieldTable { m_max, out } => {
            let started = Instant::now();
            std::fs::create_dir_all(&out)?;
            let mut csv = String::from("m,n,k,gamma\n");
            for row in yield_table(m_max) {
                csv.push_str(&format!("{},{},{},{:.6}\n", row.m, row.n, row.k, row.gamma));
            }
            let path = out.join("yield.csv");
            std::fs::write(&path, &csv)?;
            print!("{csv}");
            write_manifest(
                &out,
                "yield-table",
                serde_json::json!({"m_max": m_max}),
                started,
                &[path],
            )?;
            Ok(0)
        }
        Command::Threshold { m, sweep, orientation, out } => {
            let started = Instant::now();
            std::fs::create_dir_all(&out)?;
            let outputs;
            match sweep {
                Some(m_max) => {
                    let mut csv = String::from("m,n,delta_star\n");
                    for mm in 1..=m_max {
                        let code = triortho::code::family_code(mm, 1)?;
                        let run = depolarizing_threshold(&code, orientation)?;
                        csv.push_str(&format!("{},{},{:.4}\n", mm, code.n(), run.delta_star));
                    }
                    let path = out.join("thresholds.csv");
                    std::fs::write(&path, &csv)?;
                    print!("{csv}");
                    outputs = vec![path];
                }
                None => {
                    let code = triortho::code::family_code(m, 1)?;
                    let run = depolarizing_threshold(&code, orientation)?;
                    let path = out.join("threshold.json");
                    std::fs::write(&path, serde_json::to_string_pretty(&run)?)?;
                    println!("{} delta_star {:.4}", run.code, run.delta_star);
                    outputs = vec![path];
                }
            }
            write_manifest(
                &out,
                "threshold",
                serde_json::json!({"m": m, "sweep": sweep, "orientation": orientation.to_string()}),
                started,
                &outputs,
            )?;
            Ok(0)
        }
        Command::Basin { m, resolution, orientation, out } => {
            let started = Instant::now();
            std::fs::create_dir_all(&out)?;
            let code = triortho::code::family_code(m, 1)?;
            let grid = basin_grid(&code, resolution, orientation)?;
            let path = out.join("basin.csv");
            std::fs::write(&path, grid.to_csv())?;
            println!(
                "basin grid for [{},1]_3 at resolution {}: {} points -> {}",
                code.n(),
                resolution,
                grid.cells.len(),
                path.display()
            );
            write_manifest(
                &out,
                "basin",
                serde_json::json!({"m": m, "resolution": resolution, "orientation": orientation.to_string()}),
                started,
                &[path],
            )?;
            Ok(0)
        }
        Command::Search { n, kappa_min, mode, budget, restarts, seed, out } => {
            let started = Instant::now();
            let mode = match mode.as_str() {
                "exhaustive" => SearchMode::Exhaustive,
                "randomized" => SearchMode::Randomized { restarts, seed },
                other => {
                    return Err(Error::Parse(format!("unknown search mode: {other}")));
                }
            };
            let config = SearchConfig {
                n,
                kappa_min,
                budget,
                mode,
            };
            let report = search(&config)?;
            let outputs = write_catalog(&report, &out)?;
            println!(
                "n = {}: {} class(es) ({} non-trivial), {} nodes, exhausted: {}",
                n,
                report.entries.len(),
                report.nontrivial_entries().count(),
                report.nodes_expanded,
                report.exhausted
            );
            let exhausted = report.exhausted;
            write_manifest(
                &out,
                "search",
                serde_json::json!({"n": n, "kappa_min": kappa_min, "budget": budget}),
                started,
                &outputs,
            )?;
            Ok(if exhausted || matches!(config.mode, SearchMode::Randomized { .. }) {
                0
            } else {
                2
            })
        }
        Command::Selftest { orientation } => {
            let report = run_selftest(orientation)?;
            print!("{}", report.render());
            Ok(if report.passed() { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
