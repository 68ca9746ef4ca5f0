//! `smadamp` - simulate vibration damping of a mass block attached to a
//! shape-memory-alloy rod.
//!
//! Exit codes: 0 success, 2 configuration error, 3 solver non-convergence,
//! 4 I/O error.

use clap::{Args, Parser, Subcommand};
use smadamp_core::material::StationaryKind;
use smadamp_core::scenario::{self, ScenarioError, PRESET_NAMES};
use smadamp_core::MaterialParams;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "smadamp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write CSV/JSON outputs.
    Run(RunArgs),
    /// List the built-in presets.
    Presets,
    /// Print the stationary strains of the free energy over a temperature
    /// sweep as CSV (columns: theta_K, strain, kind).
    Wells(WellsArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Built-in preset name (exp1, exp2, exp3-novisc, exp3-visc).
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    /// Path to a key-value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides the configured output_path).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Time step in ms (overrides the configured solver.dt).
    #[arg(long)]
    dt: Option<f64>,
    /// Field snapshot cadence in steps; 0 disables snapshots.
    #[arg(long)]
    snapshots_every: Option<usize>,
}

#[derive(Args)]
struct WellsArgs {
    #[arg(long, default_value_t = 200.0)]
    theta_min: f64,
    #[arg(long, default_value_t = 300.0)]
    theta_max: f64,
    #[arg(long, default_value_t = 1.0)]
    step: f64,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::Presets => presets(),
        Command::Wells(args) => wells(args),
    }
}

fn run(args: RunArgs) -> ExitCode {
    let source = args
        .preset
        .clone()
        .or_else(|| args.config.as_ref().map(|p| p.display().to_string()))
        .expect("clap enforces preset xor config");
    let mut cfg = match scenario::load_config(&source) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(dir) = args.out_dir {
        cfg.output_path = dir;
    }
    if let Some(dt) = args.dt {
        cfg.solver.dt = dt;
    }
    if let Some(every) = args.snapshots_every {
        cfg.snapshots_every = every;
    }

    match scenario::run_scenario(&cfg) {
        Ok((summary, _)) => {
            println!(
                "wrote {} samples and {} snapshots to {}",
                summary.samples_written,
                summary.snapshots_written,
                cfg.output_path.display()
            );
            println!(
                "steps: {} (newton max {} per step), final avg temperature {:.2} K, \
                 midpoint strain switches: {}",
                summary.newton.steps,
                summary.newton.max_iterations_per_step,
                summary.final_energy.avg_temperature,
                summary.midpoint_switching_count
            );
            ExitCode::SUCCESS
        }
        Err(ScenarioError::Config(e)) => {
            eprintln!("configuration error: {e}");
            ExitCode::from(2)
        }
        Err(ScenarioError::Solver(e)) => {
            eprintln!("solver error: {e}");
            ExitCode::from(3)
        }
        Err(ScenarioError::Io { path, source }) => {
            eprintln!("i/o error on {}: {source}", path.display());
            ExitCode::from(4)
        }
    }
}

fn presets() -> ExitCode {
    println!("available presets (shared: L=1 cm, N=40, strain0=0.115, theta0=210 K):");
    for name in PRESET_NAMES {
        let cfg = scenario::preset(name).expect("built-in preset");
        println!(
            "  {name:<12} m/beta={:<4} v0={:<4} nu={:<4} t_end={} ms",
            cfg.block.mass_per_area, cfg.block.v0, cfg.material.nu, cfg.t_end
        );
    }
    ExitCode::SUCCESS
}

fn wells(args: WellsArgs) -> ExitCode {
    if !(args.step > 0.0) || args.theta_max < args.theta_min {
        eprintln!("configuration error: need step > 0 and theta_max >= theta_min");
        return ExitCode::from(2);
    }
    let material = MaterialParams::default();
    println!("theta_K,strain,kind");
    let mut theta = args.theta_min;
    while theta <= args.theta_max + 1e-12 {
        match material.stationary_strains(theta) {
            Ok(points) => {
                for p in points {
                    let kind = match p.kind {
                        StationaryKind::Minimum => "minimum",
                        StationaryKind::Maximum => "maximum",
                        StationaryKind::Inflection => "inflection",
                    };
                    println!("{theta},{},{kind}", p.strain);
                }
            }
            Err(e) => {
                eprintln!("configuration error: {e}");
                return ExitCode::from(2);
            }
        }
        theta += args.step;
    }
    ExitCode::SUCCESS
}
