// temporary probe, not part of the deliverable
use nalgebra::{DMatrix, DVector};
use smadamp_core::model::{initial_state, residual, DerivativeStencil};
use smadamp_core::scenario::preset;
use smadamp_core::Grid;
use std::time::Instant;

fn main() {
    let cfg = preset("exp1").unwrap();
    let grid = Grid::new(40, 1.0).unwrap();
    let state = initial_state(&grid, cfg.strain0, cfg.theta0, &cfg.block).unwrap();
    let stencil = DerivativeStencil::bdf1(1e-4, &state);

    let t0 = Instant::now();
    let reps = 2000;
    for _ in 0..reps {
        let r = residual(&grid, &cfg.material, &cfg.block, &state, &stencil).unwrap();
        std::hint::black_box(r);
    }
    println!("residual: {:.1} us", t0.elapsed().as_secs_f64() / reps as f64 * 1e6);

    let n = 123;
    let m = DMatrix::<f64>::from_fn(n, n, |i, j| ((i * 7 + j * 13) % 17) as f64 + if i == j { 50.0 } else { 0.0 });
    let b = DVector::<f64>::from_element(n, 1.0);
    let t0 = Instant::now();
    let reps = 500;
    for _ in 0..reps {
        let lu = m.clone().lu();
        let x = lu.solve(&b).unwrap();
        std::hint::black_box(x);
    }
    println!("LU(123)+solve: {:.1} us", t0.elapsed().as_secs_f64() / reps as f64 * 1e6);
}
