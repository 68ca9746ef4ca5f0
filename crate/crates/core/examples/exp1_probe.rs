// temporary probe, not part of the deliverable
use smadamp_core::diagnostics::switching_count_between;
use smadamp_core::model::initial_state;
use smadamp_core::scenario::preset;
use smadamp_core::Grid;
use std::time::Instant;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "exp1".into());
    let cfg = preset(&name).unwrap();
    let grid = Grid::new(cfg.n_intervals, cfg.rod_length).unwrap();
    let initial = initial_state(&grid, cfg.strain0, cfg.theta0, &cfg.block).unwrap();
    let t0 = Instant::now();
    let traj = smadamp_core::integrator::run(
        &grid, &cfg.material, &cfg.block, &cfg.solver, initial, cfg.t_end, cfg.output_every,
    )
    .unwrap();
    let el = t0.elapsed().as_secs_f64();
    let steps = traj.newton_iterations.len();
    let iters: u64 = traj.newton_iterations.iter().map(|&i| i as u64).sum();
    println!(
        "{name}: {steps} steps in {el:.1}s ({:.3} ms/step) newton avg {:.2} max {}",
        1e3 * el / steps as f64,
        iters as f64 / steps as f64,
        traj.newton_iterations.iter().max().unwrap()
    );
    let e0 = &traj.samples[0].energy;
    let budget = 0.01 * (e0.total.abs() + e0.block_kinetic);
    let drift = traj
        .samples
        .iter()
        .map(|s| (s.energy.total - e0.total).abs())
        .fold(0.0f64, f64::max);
    println!("{name}: total(0)={:.3} max drift={:.3} budget={:.3}", e0.total, drift, budget);
    let temps: Vec<f64> = traj.samples.iter().map(|s| s.energy.avg_temperature).collect();
    let tmax = temps.iter().cloned().fold(f64::MIN, f64::max);
    let tmin = temps.iter().cloned().fold(f64::MAX, f64::min);
    let mut running_max = f64::MIN;
    let mut max_dip = 0.0f64;
    let mut max_step = 0.0f64;
    for w in temps.windows(2) {
        max_step = max_step.max((w[1] - w[0]).abs());
    }
    for &t in &temps {
        running_max = running_max.max(t);
        max_dip = max_dip.max(running_max - t);
    }
    println!(
        "{name}: avgT start={:.2} end={:.2} min={tmin:.2} max={tmax:.2} maxdip={max_dip:.3} maxstep={max_step:.3}",
        temps[0],
        temps[temps.len() - 1]
    );
    let mid = grid.n_nodes() / 2;
    println!(
        "{name}: midpoint switches total={} in[0,2.6]={}",
        switching_count_between(&grid, &traj, mid, f64::NEG_INFINITY, f64::INFINITY),
        switching_count_between(&grid, &traj, mid, 0.0, 2.6)
    );
    let bk0 = traj.samples[0].energy.block_kinetic;
    let bk_end = traj.samples[traj.samples.len() - 1].energy.block_kinetic;
    println!("{name}: block KE end/start = {:.4}", bk_end / bk0);
    // velocity envelope between zero crossings
    let vels: Vec<f64> = traj.samples.iter().map(|s| s.state.block_velocity()).collect();
    let mut env = vec![];
    let mut seg: Vec<f64> = vec![];
    for &v in &vels {
        if let Some(&last) = seg.last() {
            if v.signum() != last.signum() && v != 0.0 {
                env.push(seg.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs())));
                seg.clear();
            }
        }
        seg.push(v);
    }
    if !seg.is_empty() {
        env.push(seg.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs())));
    }
    let mono = env.windows(2).all(|w| w[1] < w[0]);
    let head: Vec<String> = env.iter().take(12).map(|e| format!("{e:.4}")).collect();
    println!("{name}: envelope n={} monotone={mono}: {:?}", env.len(), head);
    // RMS over [15,20] for exp3
    let tail: Vec<f64> = traj
        .samples
        .iter()
        .filter(|s| s.time >= 15.0)
        .map(|s| s.state.block_velocity())
        .collect();
    if !tail.is_empty() {
        let rms = (tail.iter().map(|v| v * v).sum::<f64>() / tail.len() as f64).sqrt();
        println!("{name}: RMS block vel [15,20] = {rms:.6}");
    }
}
