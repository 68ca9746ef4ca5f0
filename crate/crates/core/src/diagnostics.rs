//! Post-processing of states and trajectories: energy partition, phase
//! classification, strain switching counts and hysteresis-loop areas.

use crate::grid::Grid;
use crate::integrator::Trajectory;
use crate::material::MaterialParams;
use crate::model::{BlockParams, RodState};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DiagnosticsError {
    #[error("a hysteresis path needs at least 3 points, got {0}")]
    TooFewPoints(usize),
}

/// Strain sign changes smaller than this magnitude are treated as noise.
pub const SWITCH_DEAD_BAND: f64 = 1e-4;

/// Energy partition of one state, all per unit cross-section area (g/ms^2).
///
/// `potential` is the elastic internal energy
/// `int [F_l - theta dF_l/dtheta + kg/2 (de/dx)^2] dx`; being independent of
/// temperature it makes `total` the quantity the insulated model transports
/// without loss, so drift in `total` measures discretization error only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyReport {
    pub rod_kinetic: f64,
    pub block_kinetic: f64,
    pub potential: f64,
    pub thermal: f64,
    pub avg_temperature: f64,
    pub total: f64,
}

/// Energy partition and average temperature of `state` via the grid
/// quadrature. The state must belong to `grid`.
pub fn energy_report(
    grid: &Grid,
    material: &MaterialParams,
    block: &BlockParams,
    state: &RodState,
) -> EnergyReport {
    let n_end = grid.n_nodes() - 1;
    let eps = grid.d1() * &state.u;
    let eps_x = grid.d2() * &state.u;

    let v_sq = state.v.component_mul(&state.v);
    let rod_kinetic = 0.5 * material.rho * grid.quad_weights().dot(&v_sq);
    let block_kinetic = 0.5 * block.mass_per_area * state.v[n_end] * state.v[n_end];

    let density = nalgebra::DVector::from_fn(grid.n_nodes(), |i, _| {
        material.strain_energy(eps[i]) + 0.5 * material.kg * eps_x[i] * eps_x[i]
    });
    let potential = grid.quad_weights().dot(&density);

    let theta_integral = grid.quad_weights().dot(&state.theta);
    let thermal = material.cv * theta_integral;
    let avg_temperature = theta_integral / grid.length();

    EnergyReport {
        rod_kinetic,
        block_kinetic,
        potential,
        thermal,
        avg_temperature,
        total: rod_kinetic + block_kinetic + potential + thermal,
    }
}

/// Phase label of one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Phase {
    MartensitePlus,
    MartensiteMinus,
    AusteniteLike,
}

/// Per-node phase labels.
pub type PhaseField = Vec<Phase>;

/// Labels each node by comparing its strain against half the positive well
/// strain at the node's temperature: above it martensite plus, below the
/// negative counterpart martensite minus, otherwise austenite-like. Where
/// the potential has no nonzero well the label is austenite-like.
pub fn classify_phases(grid: &Grid, material: &MaterialParams, state: &RodState) -> PhaseField {
    let eps = grid.d1() * &state.u;
    (0..grid.n_nodes())
        .map(|i| {
            let well = material
                .positive_well_strain(state.theta[i])
                .ok()
                .flatten();
            match well {
                Some(w) if eps[i] > 0.5 * w => Phase::MartensitePlus,
                Some(w) if eps[i] < -0.5 * w => Phase::MartensiteMinus,
                _ => Phase::AusteniteLike,
            }
        })
        .collect()
}

/// Counts sign changes of the strain at `node_index` across consecutive
/// trajectory samples. Samples with `|strain| < SWITCH_DEAD_BAND` do not
/// carry a sign and are skipped.
pub fn switching_count(grid: &Grid, trajectory: &Trajectory, node_index: usize) -> usize {
    switching_count_between(grid, trajectory, node_index, f64::NEG_INFINITY, f64::INFINITY)
}

/// As [`switching_count`], restricted to samples with `t_from <= t <= t_to`.
pub fn switching_count_between(
    grid: &Grid,
    trajectory: &Trajectory,
    node_index: usize,
    t_from: f64,
    t_to: f64,
) -> usize {
    let row = grid.d1().row(node_index).into_owned();
    let mut count = 0;
    let mut last_sign = 0i8;
    for sample in &trajectory.samples {
        if sample.time < t_from || sample.time > t_to {
            continue;
        }
        let eps = (&row * &sample.state.u)[(0, 0)];
        if eps.abs() < SWITCH_DEAD_BAND {
            continue;
        }
        let sign = if eps > 0.0 { 1 } else { -1 };
        if last_sign != 0 && sign != last_sign {
            count += 1;
        }
        last_sign = sign;
    }
    count
}

/// Signed area enclosed by a closed strain-stress path (the final point is
/// joined back to the first), by the shoelace rule. Counterclockwise
/// traversal in the `(strain, stress)` plane is positive; the magnitude is
/// the mechanical work converted per cycle.
pub fn loop_dissipation(path: &[(f64, f64)]) -> Result<f64, DiagnosticsError> {
    if path.len() < 3 {
        return Err(DiagnosticsError::TooFewPoints(path.len()));
    }
    let mut twice_area = 0.0;
    for k in 0..path.len() {
        let (x0, y0) = path[k];
        let (x1, y1) = path[(k + 1) % path.len()];
        twice_area += x0 * y1 - x1 * y0;
    }
    Ok(0.5 * twice_area)
}
