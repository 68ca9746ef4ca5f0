// temporary probe, not part of the deliverable
use smadamp_core::integrator::{run, JacobianMode, SolverConfig};
use smadamp_core::model::initial_state;
use smadamp_core::scenario::preset;
use smadamp_core::Grid;
use std::time::Instant;

fn main() {
    let cfg = preset("exp1").unwrap();
    let grid = Grid::new(cfg.n_intervals, cfg.rod_length).unwrap();
    for mode in [JacobianMode::ReusePerStep, JacobianMode::FiniteDifference] {
        let solver = SolverConfig {
            jacobian_mode: mode,
            ..cfg.solver
        };
        let initial = initial_state(&grid, cfg.strain0, cfg.theta0, &cfg.block).unwrap();
        let t0 = Instant::now();
        let n_steps = 2000usize;
        let t_end = n_steps as f64 * solver.dt;
        let traj = run(&grid, &cfg.material, &cfg.block, &solver, initial, t_end, 10).unwrap();
        let el = t0.elapsed().as_secs_f64();
        let iters: u64 = traj.newton_iterations.iter().map(|&i| i as u64).sum();
        println!(
            "{mode:?}: {n_steps} steps in {el:.2}s ({:.3} ms/step), newton avg {:.2} max {}",
            1e3 * el / n_steps as f64,
            iters as f64 / n_steps as f64,
            traj.newton_iterations.iter().max().unwrap()
        );
    }
}
