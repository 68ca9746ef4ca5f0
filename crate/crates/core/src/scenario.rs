//! Scenario configuration, the four built-in presets, and the run pipeline
//! that executes a scenario and writes its outputs.
//!
//! Configuration files are flat `key = value` text with dotted section
//! keys, e.g. `material.k1 = 480`; `#` starts a comment. Keys may be
//! omitted, in which case the preset-1 defaults apply. A run writes into
//! its output directory:
//!
//! * `timeseries.csv` - one row per output sample (block position and
//!   velocity, average temperature, energy partition, end strain);
//! * `snapshot_NNNNNN.csv` - nodal fields `x, u, v, strain, theta` every
//!   `snapshots_every` steps (0 disables snapshots);
//! * `summary.json` - config echo, Newton statistics, final energies and
//!   the midpoint switching count.

use crate::diagnostics::switching_count;
use crate::integrator::{self, RunError, SolverConfig, Trajectory};
use crate::material::MaterialParams;
use crate::model::{initial_state, BlockParams};
use crate::grid::Grid;
use serde::Serialize;
use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown preset {0:?}; available: exp1, exp2, exp3-novisc, exp3-visc")]
    UnknownPreset(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key {key:?}")]
    DuplicateKey { line: usize, key: String },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Solver(#[from] RunError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub const PRESET_NAMES: [&str; 4] = ["exp1", "exp2", "exp3-novisc", "exp3-visc"];

/// Full description of one simulation run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub material: MaterialParams,
    pub block: BlockParams,
    /// Rod length, cm.
    pub rod_length: f64,
    /// Number of grid intervals (nodes minus one).
    pub n_intervals: usize,
    /// Uniform initial strain.
    pub strain0: f64,
    /// Uniform initial temperature, K.
    pub theta0: f64,
    /// Simulation horizon, ms.
    pub t_end: f64,
    pub solver: SolverConfig,
    /// Record a trajectory sample every this many steps.
    pub output_every: usize,
    /// Write a field snapshot every this many steps; 0 disables snapshots.
    /// Must be a multiple of `output_every`.
    pub snapshots_every: usize,
    /// Output directory.
    pub output_path: PathBuf,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            material: MaterialParams::default(),
            block: BlockParams {
                mass_per_area: 200.0,
                friction: 0.0,
                stiffness: 0.0,
                v0: -3.0,
            },
            rod_length: 1.0,
            n_intervals: 40,
            strain0: 0.115,
            theta0: 210.0,
            t_end: 4.0,
            solver: SolverConfig::default(),
            output_every: 10,
            snapshots_every: 4000,
            output_path: PathBuf::from("out"),
        }
    }
}

/// Returns one of the built-in presets. They differ only in block mass,
/// initial block velocity, viscosity and horizon:
///
/// | name        | m/beta | v0 | nu | t_end |
/// |-------------|--------|----|----|-------|
/// | exp1        | 200    | -3 | 10 | 4     |
/// | exp2        | 500    | -3 | 10 | 4     |
/// | exp3-novisc | 20     | -1 | 0  | 20    |
/// | exp3-visc   | 20     | -1 | 20 | 20    |
pub fn preset(name: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut cfg = ScenarioConfig::default();
    match name {
        "exp1" => {}
        "exp2" => cfg.block.mass_per_area = 500.0,
        "exp3-novisc" | "exp3-visc" => {
            cfg.block.mass_per_area = 20.0;
            cfg.block.v0 = -1.0;
            cfg.t_end = 20.0;
            cfg.material.nu = if name == "exp3-visc" { 20.0 } else { 0.0 };
        }
        other => return Err(ConfigError::UnknownPreset(other.to_string())),
    }
    cfg.output_path = PathBuf::from(format!("out-{name}"));
    Ok(cfg)
}

/// Loads a configuration from a preset name or, failing that, a file path.
pub fn load_config(source: &str) -> Result<ScenarioConfig, ConfigError> {
    if PRESET_NAMES.contains(&source) {
        preset(source)
    } else {
        ScenarioConfig::from_file(Path::new(source))
    }
}

impl ScenarioConfig {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_config_str(&text)
    }

    /// Parses the flat key-value format; absent keys keep their defaults.
    pub fn from_config_str(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = ScenarioConfig::default();
        let mut seen: HashSet<String> = HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::Parse {
                    line,
                    message: format!("expected `key = value`, got {content:?}"),
                });
            };
            let key = key.trim();
            let value = value.trim();
            if !seen.insert(key.to_string()) {
                return Err(ConfigError::DuplicateKey {
                    line,
                    key: key.to_string(),
                });
            }
            cfg.apply(key, value, line)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply(&mut self, key: &str, value: &str, line: usize) -> Result<(), ConfigError> {
        let bad = |what: &str| ConfigError::Parse {
            line,
            message: format!("cannot parse {value:?} as {what} for key {key:?}"),
        };
        let float = || value.parse::<f64>().map_err(|_| bad("a number"));
        let integer = || value.parse::<usize>().map_err(|_| bad("an integer"));
        match key {
            "material.rho" => self.material.rho = float()?,
            "material.k1" => self.material.k1 = float()?,
            "material.k2" => self.material.k2 = float()?,
            "material.k3" => self.material.k3 = float()?,
            "material.theta1" => self.material.theta1 = float()?,
            "material.cv" => self.material.cv = float()?,
            "material.kappa" => self.material.kappa = float()?,
            "material.kg" => self.material.kg = float()?,
            "material.nu" => self.material.nu = float()?,
            "block.mass_per_area" => self.block.mass_per_area = float()?,
            "block.friction" => self.block.friction = float()?,
            "block.stiffness" => self.block.stiffness = float()?,
            "block.v0" => self.block.v0 = float()?,
            "rod_length" => self.rod_length = float()?,
            "n_intervals" => self.n_intervals = integer()?,
            "strain0" => self.strain0 = float()?,
            "theta0" => self.theta0 = float()?,
            "t_end" => self.t_end = float()?,
            "solver.dt" => self.solver.dt = float()?,
            "solver.bdf_order" => {
                self.solver.bdf_order = value.parse::<u8>().map_err(|_| bad("1 or 2"))?
            }
            "solver.newton_tol" => self.solver.newton_tol = float()?,
            "solver.newton_abs_tol" => self.solver.newton_abs_tol = float()?,
            "solver.max_newton_iters" => {
                self.solver.max_newton_iters =
                    value.parse::<u32>().map_err(|_| bad("an integer"))?
            }
            "solver.jacobian_mode" => {
                self.solver.jacobian_mode = match value {
                    "finite-difference" => integrator::JacobianMode::FiniteDifference,
                    "reuse-per-step" => integrator::JacobianMode::ReusePerStep,
                    _ => return Err(bad("finite-difference or reuse-per-step")),
                }
            }
            "output_every" => self.output_every = integer()?,
            "snapshots_every" => self.snapshots_every = integer()?,
            "output_path" => self.output_path = PathBuf::from(value),
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
        Ok(())
    }

    /// Serializes in the same flat format `from_config_str` accepts;
    /// reloading the result reproduces the configuration exactly.
    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let m = &self.material;
        let _ = writeln!(s, "material.rho = {}", m.rho);
        let _ = writeln!(s, "material.k1 = {}", m.k1);
        let _ = writeln!(s, "material.k2 = {}", m.k2);
        let _ = writeln!(s, "material.k3 = {}", m.k3);
        let _ = writeln!(s, "material.theta1 = {}", m.theta1);
        let _ = writeln!(s, "material.cv = {}", m.cv);
        let _ = writeln!(s, "material.kappa = {}", m.kappa);
        let _ = writeln!(s, "material.kg = {}", m.kg);
        let _ = writeln!(s, "material.nu = {}", m.nu);
        let _ = writeln!(s, "block.mass_per_area = {}", self.block.mass_per_area);
        let _ = writeln!(s, "block.friction = {}", self.block.friction);
        let _ = writeln!(s, "block.stiffness = {}", self.block.stiffness);
        let _ = writeln!(s, "block.v0 = {}", self.block.v0);
        let _ = writeln!(s, "rod_length = {}", self.rod_length);
        let _ = writeln!(s, "n_intervals = {}", self.n_intervals);
        let _ = writeln!(s, "strain0 = {}", self.strain0);
        let _ = writeln!(s, "theta0 = {}", self.theta0);
        let _ = writeln!(s, "t_end = {}", self.t_end);
        let _ = writeln!(s, "solver.dt = {}", self.solver.dt);
        let _ = writeln!(s, "solver.bdf_order = {}", self.solver.bdf_order);
        let _ = writeln!(s, "solver.newton_tol = {}", self.solver.newton_tol);
        let _ = writeln!(s, "solver.newton_abs_tol = {}", self.solver.newton_abs_tol);
        let _ = writeln!(s, "solver.max_newton_iters = {}", self.solver.max_newton_iters);
        let mode = match self.solver.jacobian_mode {
            integrator::JacobianMode::FiniteDifference => "finite-difference",
            integrator::JacobianMode::ReusePerStep => "reuse-per-step",
        };
        let _ = writeln!(s, "solver.jacobian_mode = {}", mode);
        let _ = writeln!(s, "output_every = {}", self.output_every);
        let _ = writeln!(s, "snapshots_every = {}", self.snapshots_every);
        let _ = writeln!(s, "output_path = {}", self.output_path.display());
        s
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |field: &str, message: String| ConfigError::Invalid {
            field: field.to_string(),
            message,
        };
        self.material
            .validate()
            .map_err(|e| invalid("material", e.to_string()))?;
        self.block
            .validate()
            .map_err(|e| invalid("block", e))?;
        if !(self.rod_length > 0.0) || !self.rod_length.is_finite() {
            return Err(invalid(
                "rod_length",
                format!("must be positive, got {}", self.rod_length),
            ));
        }
        if self.n_intervals < 4 {
            return Err(invalid(
                "n_intervals",
                format!("must be at least 4, got {}", self.n_intervals),
            ));
        }
        if !self.strain0.is_finite() {
            return Err(invalid("strain0", "must be finite".into()));
        }
        if !(self.theta0 > 0.0) {
            return Err(invalid(
                "theta0",
                format!("must be positive, got {}", self.theta0),
            ));
        }
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return Err(invalid(
                "t_end",
                format!("must be positive, got {}", self.t_end),
            ));
        }
        self.solver
            .validate()
            .map_err(|e| invalid("solver", e.to_string()))?;
        if self.output_every == 0 {
            return Err(invalid("output_every", "must be at least 1".into()));
        }
        if self.snapshots_every != 0 && self.snapshots_every % self.output_every != 0 {
            return Err(invalid(
                "snapshots_every",
                format!(
                    "must be a multiple of output_every ({}), got {}",
                    self.output_every, self.snapshots_every
                ),
            ));
        }
        Ok(())
    }
}

/// Newton statistics of a finished run.
#[derive(Debug, Clone, Serialize)]
pub struct NewtonStats {
    pub steps: usize,
    pub total_iterations: u64,
    pub max_iterations_per_step: u32,
}

/// Machine-readable summary written as `summary.json`.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub config: ScenarioConfig,
    pub newton: NewtonStats,
    pub final_energy: crate::diagnostics::EnergyReport,
    pub midpoint_node: usize,
    pub midpoint_switching_count: usize,
    pub samples_written: usize,
    pub snapshots_written: usize,
}

/// Executes the scenario and writes `timeseries.csv`, optional snapshot
/// files and `summary.json` into `cfg.output_path`. Returns the summary
/// together with the full trajectory for further analysis.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<(RunSummary, Trajectory), ScenarioError> {
    cfg.validate()?;
    let grid = Grid::new(cfg.n_intervals, cfg.rod_length).map_err(|e| ConfigError::Invalid {
        field: "grid".into(),
        message: e.to_string(),
    })?;
    let initial = initial_state(&grid, cfg.strain0, cfg.theta0, &cfg.block).map_err(|e| {
        ConfigError::Invalid {
            field: "initial state".into(),
            message: e.to_string(),
        }
    })?;
    let trajectory = integrator::run(
        &grid,
        &cfg.material,
        &cfg.block,
        &cfg.solver,
        initial,
        cfg.t_end,
        cfg.output_every,
    )?;

    let dir = &cfg.output_path;
    fs::create_dir_all(dir).map_err(|source| ScenarioError::Io {
        path: dir.clone(),
        source,
    })?;

    write_timeseries(&grid, &trajectory, &dir.join("timeseries.csv"))?;
    let snapshots_written = write_snapshots(&grid, cfg, &trajectory)?;

    let mid = grid.n_nodes() / 2;
    let summary = RunSummary {
        config: cfg.clone(),
        newton: NewtonStats {
            steps: trajectory.newton_iterations.len(),
            total_iterations: trajectory.newton_iterations.iter().map(|&i| i as u64).sum(),
            max_iterations_per_step: trajectory.newton_iterations.iter().copied().max().unwrap_or(0),
        },
        final_energy: trajectory.samples[trajectory.samples.len() - 1].energy,
        midpoint_node: mid,
        midpoint_switching_count: switching_count(&grid, &trajectory, mid),
        samples_written: trajectory.samples.len(),
        snapshots_written,
    };
    let json = serde_json::to_string_pretty(&summary).expect("summary serialization");
    let path = dir.join("summary.json");
    fs::write(&path, json).map_err(|source| ScenarioError::Io { path, source })?;

    Ok((summary, trajectory))
}

/// Header of `timeseries.csv`; a stable part of the output contract.
pub const TIMESERIES_HEADER: &str = "time_ms,block_pos_cm,block_vel_cm_per_ms,avg_temp_K,\
rod_kinetic,block_kinetic,potential,thermal,total,strain_at_L";

fn write_timeseries(grid: &Grid, trajectory: &Trajectory, path: &Path) -> Result<(), ScenarioError> {
    let io_err = |source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = fs::File::create(path).map_err(io_err)?;
    let mut out = std::io::BufWriter::new(file);
    let n_end = grid.n_nodes() - 1;
    let end_row = grid.d1().row(n_end).into_owned();
    (|| -> std::io::Result<()> {
        writeln!(out, "{TIMESERIES_HEADER}")?;
        for s in &trajectory.samples {
            let e = &s.energy;
            let strain_at_l = (&end_row * &s.state.u)[(0, 0)];
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                s.time,
                grid.length() + s.state.end_displacement(),
                s.state.block_velocity(),
                e.avg_temperature,
                e.rod_kinetic,
                e.block_kinetic,
                e.potential,
                e.thermal,
                e.total,
                strain_at_l
            )?;
        }
        out.flush()
    })()
    .map_err(io_err)
}

fn write_snapshots(
    grid: &Grid,
    cfg: &ScenarioConfig,
    trajectory: &Trajectory,
) -> Result<usize, ScenarioError> {
    if cfg.snapshots_every == 0 {
        return Ok(0);
    }
    let mut written = 0;
    for sample in &trajectory.samples {
        let step = (sample.time / cfg.solver.dt).round() as usize;
        if step % cfg.snapshots_every != 0 {
            continue;
        }
        let path = cfg.output_path.join(format!("snapshot_{step:06}.csv"));
        let io_err = |source| ScenarioError::Io {
            path: path.clone(),
            source,
        };
        let file = fs::File::create(&path).map_err(io_err)?;
        let mut out = std::io::BufWriter::new(file);
        let strain = grid.d1() * &sample.state.u;
        (|| -> std::io::Result<()> {
            writeln!(out, "x,u,v,strain,theta")?;
            for i in 0..grid.n_nodes() {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    grid.nodes()[i],
                    sample.state.u[i],
                    sample.state.v[i],
                    strain[i],
                    sample.state.theta[i]
                )?;
            }
            out.flush()
        })()
        .map_err(io_err)?;
        written += 1;
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn presets_reproduce_the_published_numbers() {
        let exp1 = preset("exp1").unwrap();
        assert_eq!(exp1.block.mass_per_area, 200.0);
        assert_eq!(exp1.block.v0, -3.0);
        assert_eq!(exp1.material.nu, 10.0);
        assert_eq!(exp1.t_end, 4.0);

        let exp2 = preset("exp2").unwrap();
        assert_eq!(exp2.block.mass_per_area, 500.0);
        assert_eq!(exp2.block.v0, -3.0);

        let e3n = preset("exp3-novisc").unwrap();
        assert_eq!(e3n.block.mass_per_area, 20.0);
        assert_eq!(e3n.block.v0, -1.0);
        assert_eq!(e3n.material.nu, 0.0);
        assert_eq!(e3n.t_end, 20.0);

        let e3v = preset("exp3-visc").unwrap();
        assert_eq!(e3v.material.nu, 20.0);
        assert_eq!(e3v.t_end, 20.0);

        for name in PRESET_NAMES {
            let cfg = preset(name).unwrap();
            cfg.validate().unwrap();
            assert_eq!(cfg.rod_length, 1.0);
            assert_eq!(cfg.n_intervals, 40);
            assert_eq!(cfg.strain0, 0.115);
            assert_eq!(cfg.theta0, 210.0);
            assert_eq!(cfg.block.friction, 0.0);
            assert_eq!(cfg.block.stiffness, 0.0);
            assert_eq!(cfg.solver.dt, 1e-4);
        }

        assert!(matches!(
            preset("exp9"),
            Err(ConfigError::UnknownPreset(_))
        ));
    }

    #[test]
    fn config_round_trips() {
        for name in PRESET_NAMES {
            let cfg = preset(name).unwrap();
            let text = cfg.to_config_string();
            let reloaded = ScenarioConfig::from_config_str(&text).unwrap();
            assert_eq!(cfg, reloaded);
        }
        // non-default values survive as well
        let mut cfg = preset("exp1").unwrap();
        cfg.solver.dt = 3.5e-5;
        cfg.solver.jacobian_mode = integrator::JacobianMode::FiniteDifference;
        cfg.n_intervals = 16;
        cfg.material.kg = 0.25;
        let reloaded = ScenarioConfig::from_config_str(&cfg.to_config_string()).unwrap();
        assert_eq!(cfg, reloaded);
    }

    #[test]
    fn parse_accepts_overrides_and_comments() {
        let cfg = ScenarioConfig::from_config_str(
            "# comment line\n\
             n_intervals = 16   # trailing comment\n\
             \n\
             block.v0 = -1.5\n",
        )
        .unwrap();
        assert_eq!(cfg.n_intervals, 16);
        assert_eq!(cfg.block.v0, -1.5);
        // untouched keys keep defaults
        assert_eq!(cfg.block.mass_per_area, 200.0);
        assert_eq!(cfg.material.k1, 480.0);
    }

    #[test]
    fn parse_reports_line_and_key() {
        let err = ScenarioConfig::from_config_str("n_intervals 16\n").unwrap_err();
        assert!(matches!(err, ConfigError::Parse { line: 1, .. }));

        let err = ScenarioConfig::from_config_str("\nmaterial.k9 = 1\n").unwrap_err();
        match err {
            ConfigError::UnknownKey { line, key } => {
                assert_eq!(line, 2);
                assert_eq!(key, "material.k9");
            }
            other => panic!("unexpected {other:?}"),
        }

        let err =
            ScenarioConfig::from_config_str("t_end = 1\nt_end = 2\n").unwrap_err();
        assert!(matches!(err, ConfigError::DuplicateKey { line: 2, .. }));

        let err = ScenarioConfig::from_config_str("theta0 = warm\n").unwrap_err();
        assert!(matches!(err, ConfigError::Parse { line: 1, .. }));
    }

    #[test]
    fn validation_reports_field_violations() {
        let cases = [
            ("n_intervals = 3\n", "n_intervals"),
            ("t_end = 0\n", "t_end"),
            ("theta0 = -5\n", "theta0"),
            ("material.k1 = 0\n", "material"),
            ("block.mass_per_area = 0\n", "block"),
            ("solver.dt = 0\n", "solver"),
            ("output_every = 0\n", "output_every"),
            ("snapshots_every = 15\n", "snapshots_every"),
        ];
        for (text, field) in cases {
            match ScenarioConfig::from_config_str(text).unwrap_err() {
                ConfigError::Invalid { field: f, .. } => assert_eq!(f, field, "for {text:?}"),
                other => panic!("expected Invalid for {text:?}, got {other:?}"),
            }
        }
    }

    fn tiny_config(dir: &Path) -> ScenarioConfig {
        let mut cfg = preset("exp1").unwrap();
        cfg.n_intervals = 8;
        cfg.t_end = 5e-3;
        cfg.output_every = 5;
        cfg.snapshots_every = 25;
        cfg.output_path = dir.to_path_buf();
        cfg
    }

    #[test]
    fn run_scenario_writes_all_outputs() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = tiny_config(dir.path());
        let (summary, trajectory) = run_scenario(&cfg).unwrap();

        assert_eq!(summary.newton.steps, 50);
        assert_eq!(summary.samples_written, trajectory.samples.len());
        assert_eq!(trajectory.samples.len(), 11);
        assert_eq!(summary.snapshots_written, 3); // steps 0, 25, 50

        let csv = fs::read_to_string(dir.path().join("timeseries.csv")).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), TIMESERIES_HEADER);
        let field_count = TIMESERIES_HEADER.split(',').count();
        let mut rows = 0;
        for line in lines {
            assert_eq!(line.split(',').count(), field_count, "ragged row {line:?}");
            for v in line.split(',') {
                v.parse::<f64>().expect("numeric cell");
            }
            rows += 1;
        }
        assert_eq!(rows, 11);

        let snap = fs::read_to_string(dir.path().join("snapshot_000025.csv")).unwrap();
        assert_eq!(snap.lines().next().unwrap(), "x,u,v,strain,theta");
        assert_eq!(snap.lines().count(), cfg.n_intervals + 2);

        let json: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap())
                .unwrap();
        assert_eq!(json["newton"]["steps"], 50);
        assert_eq!(json["config"]["n_intervals"], 8);
        assert!(json["final_energy"]["total"].is_number());
    }

    #[test]
    fn zero_energy_scenario_stays_at_rest() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = tiny_config(dir.path());
        cfg.block.v0 = 0.0;
        cfg.strain0 = cfg
            .material
            .positive_well_strain(cfg.theta0)
            .unwrap()
            .unwrap();
        let (_, trajectory) = run_scenario(&cfg).unwrap();
        for sample in &trajectory.samples {
            assert!(
                sample.state.v.amax() <= 1e-7,
                "velocity {} at t={}",
                sample.state.v.amax(),
                sample.time
            );
        }
        let first = &trajectory.samples[0].energy;
        let last = &trajectory.samples[trajectory.samples.len() - 1].energy;
        assert_relative_eq!(first.total, last.total, max_relative = 1e-9);
    }

    #[test]
    fn load_config_dispatches_presets_and_files() {
        assert_eq!(load_config("exp2").unwrap(), preset("exp2").unwrap());

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(&path, "n_intervals = 12\n").unwrap();
        let cfg = load_config(path.to_str().unwrap()).unwrap();
        assert_eq!(cfg.n_intervals, 12);

        assert!(matches!(
            load_config("no-such-file.cfg"),
            Err(ConfigError::Io { .. })
        ));
    }
}
