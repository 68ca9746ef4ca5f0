//! End-to-end tests of the `smadamp` binary: subcommands, output files and
//! exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn smadamp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smadamp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn presets_lists_all_four() {
    let out = smadamp(&["presets"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ["exp1", "exp2", "exp3-novisc", "exp3-visc"] {
        assert!(text.contains(name), "missing {name} in {text}");
    }
}

#[test]
fn wells_emits_the_double_well_structure() {
    let out = smadamp(&[
        "wells",
        "--theta-min",
        "210",
        "--theta-max",
        "210",
        "--step",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "theta_K,strain,kind");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    // three minima at 210 K: the symmetric outer wells and austenite at 0
    let minima: Vec<f64> = rows
        .iter()
        .filter(|r| r.ends_with("minimum"))
        .map(|r| r.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(minima.len(), 3);
    let outer: Vec<f64> = minima.iter().copied().filter(|w| *w != 0.0).collect();
    assert_eq!(outer.len(), 2);
    assert!((outer[0].abs() - 0.114767).abs() < 1e-6);
    assert!((outer[0] + outer[1]).abs() < 1e-12);

    // single minimum at high temperature
    let out = smadamp(&["wells", "--theta-min", "280", "--theta-max", "280"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("280,0,minimum"));
}

#[test]
fn unknown_preset_is_a_config_error() {
    let out = smadamp(&["run", "--preset", "exp9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_file_is_a_config_error() {
    let out = smadamp(&["run", "--config", "definitely-not-here.cfg"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_config_value_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "n_intervals = 2\n").unwrap();
    let out = smadamp(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

fn write_tiny_config(path: &Path, out_dir: &Path, extra: &str) {
    fs::write(
        path,
        format!(
            "n_intervals = 8\n\
             t_end = 0.002\n\
             output_every = 2\n\
             snapshots_every = 10\n\
             output_path = {}\n\
             {extra}",
            out_dir.display()
        ),
    )
    .unwrap();
}

#[test]
fn run_writes_outputs_and_reports_success() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("results");
    let cfg = dir.path().join("run.cfg");
    write_tiny_config(&cfg, &out_dir, "");

    let out = smadamp(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out_dir.join("timeseries.csv").exists());
    assert!(out_dir.join("summary.json").exists());
    assert!(out_dir.join("snapshot_000000.csv").exists());
    assert!(out_dir.join("snapshot_000020.csv").exists());

    let csv = fs::read_to_string(out_dir.join("timeseries.csv")).unwrap();
    assert!(csv.starts_with(
        "time_ms,block_pos_cm,block_vel_cm_per_ms,avg_temp_K,rod_kinetic,block_kinetic,\
         potential,thermal,total,strain_at_L"
    ));
    assert_eq!(csv.lines().count(), 12); // header + t=0 + 10 samples
}

#[test]
fn out_dir_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let configured = dir.path().join("a");
    let requested = dir.path().join("b");
    let cfg = dir.path().join("run.cfg");
    write_tiny_config(&cfg, &configured, "");

    let out = smadamp(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        requested.to_str().unwrap(),
        "--snapshots-every",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(requested.join("timeseries.csv").exists());
    assert!(!configured.exists());
    // snapshots disabled by the flag
    assert!(!requested.join("snapshot_000000.csv").exists());
}

#[test]
fn nonconvergence_maps_to_exit_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("results");
    let cfg = dir.path().join("run.cfg");
    // one Newton iteration cannot absorb the initial transient
    write_tiny_config(&cfg, &out_dir, "solver.max_newton_iters = 1\n");

    let out = smadamp(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}
