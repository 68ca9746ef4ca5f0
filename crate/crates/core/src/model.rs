//! Semi-discrete form of the coupled mechanical/thermal field equations on a
//! collocation grid, including the mass-block coupling at the free end.
//!
//! The unknowns at one time level are the stacked nodal vectors
//! `[u | v | theta]`. The residual rows are ordered the same way:
//!
//! * kinematic rows `0..=N`: `du/dt - v` at every node;
//! * momentum rows `N+1..=2N+1`, with four boundary replacements for the
//!   fourth-order operator: node 0 -> `u(0) = 0`, node 1 -> `de/dx = 0` at
//!   `x = 0`, node N-1 -> `de/dx = 0` at `x = L`, node N -> traction balance
//!   against the block; interior nodes carry
//!   `rho dv/dt - d(sigma*)/dx + kg d4u/dx4`;
//! * thermal rows `2N+2..=3N+2`: insulated ends (`dtheta/dx = 0` at nodes 0
//!   and N), interior nodes carry
//!   `cv dtheta/dt - kappa d2theta/dx2 - k1 theta e de/dt - nu (de/dt)^2`.
//!
//! Time derivatives enter through a [`DerivativeStencil`] supplied by the
//! integrator, so the assembly itself is a pure function.

use crate::grid::Grid;
use crate::material::MaterialParams;
use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("state arrays have {got} entries but the grid has {expected} nodes")]
    SizeMismatch { expected: usize, got: usize },
    #[error("residual contains non-finite entries (diverging iterate?)")]
    NonFiniteResidual,
    #[error("temperature must be positive, got {0} K")]
    NonPositiveTemperature(f64),
}

/// Mass block attached at `x = L`, normalized by the rod cross section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockParams {
    /// Block mass per unit cross-section area `m / beta`, g/cm^2.
    pub mass_per_area: f64,
    /// Friction coefficient per unit area `mu_m / beta`, g/(cm^2 ms).
    pub friction: f64,
    /// Spring stiffness per unit area `k_m / beta`, g/(cm^2 ms^2).
    pub stiffness: f64,
    /// Initial block velocity, cm/ms.
    pub v0: f64,
}

impl BlockParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.mass_per_area > 0.0) || !self.mass_per_area.is_finite() {
            return Err(format!(
                "block mass_per_area must be positive, got {}",
                self.mass_per_area
            ));
        }
        if !(self.friction >= 0.0) || !self.friction.is_finite() {
            return Err(format!("block friction must be >= 0, got {}", self.friction));
        }
        if !(self.stiffness >= 0.0) || !self.stiffness.is_finite() {
            return Err(format!(
                "block stiffness must be >= 0, got {}",
                self.stiffness
            ));
        }
        if !self.v0.is_finite() {
            return Err(format!("block v0 must be finite, got {}", self.v0));
        }
        Ok(())
    }
}

/// Nodal displacement, velocity and temperature at one time level. The block
/// state is embedded through the right-end values: its position is
/// `L + u[N]` and its velocity `v[N]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RodState {
    pub u: DVector<f64>,
    pub v: DVector<f64>,
    pub theta: DVector<f64>,
    /// Simulation time, ms.
    pub time: f64,
}

impl RodState {
    /// Stacks the fields into one `[u | v | theta]` unknown vector.
    pub fn stacked(&self) -> DVector<f64> {
        let n = self.u.len();
        let mut x = DVector::zeros(3 * n);
        x.rows_mut(0, n).copy_from(&self.u);
        x.rows_mut(n, n).copy_from(&self.v);
        x.rows_mut(2 * n, n).copy_from(&self.theta);
        x
    }

    /// Rebuilds a state from a stacked unknown vector.
    pub fn from_stacked(x: &DVector<f64>, time: f64) -> Self {
        debug_assert_eq!(x.len() % 3, 0);
        let n = x.len() / 3;
        RodState {
            u: x.rows(0, n).into_owned(),
            v: x.rows(n, n).into_owned(),
            theta: x.rows(2 * n, n).into_owned(),
            time,
        }
    }

    /// Velocity of the attached block, `v(L)`.
    pub fn block_velocity(&self) -> f64 {
        self.v[self.v.len() - 1]
    }

    /// Displacement of the rod end, `u(L)`; block position is `L + u(L)`.
    pub fn end_displacement(&self) -> f64 {
        self.u[self.u.len() - 1]
    }
}

/// Discrete first time-derivative operator for one implicit step:
/// `dy/dt ~= scale * y_new - shift`. The integrator fills `shift` from the
/// backward-differentiation history; `frozen` (all zero) makes every time
/// derivative vanish, which is convenient for equilibrium checks.
#[derive(Debug, Clone)]
pub struct DerivativeStencil {
    pub scale: f64,
    pub shift_u: DVector<f64>,
    pub shift_v: DVector<f64>,
    pub shift_theta: DVector<f64>,
}

impl DerivativeStencil {
    /// First-order backward difference: `dy/dt ~= (y_new - y_cur) / dt`.
    pub fn bdf1(dt: f64, current: &RodState) -> Self {
        DerivativeStencil {
            scale: 1.0 / dt,
            shift_u: &current.u / dt,
            shift_v: &current.v / dt,
            shift_theta: &current.theta / dt,
        }
    }

    /// Second-order backward difference:
    /// `dy/dt ~= (3 y_new - 4 y_cur + y_prev) / (2 dt)`.
    pub fn bdf2(dt: f64, current: &RodState, previous: &RodState) -> Self {
        let combine = |c: &DVector<f64>, p: &DVector<f64>| (c * 2.0 - p * 0.5) / dt;
        DerivativeStencil {
            scale: 1.5 / dt,
            shift_u: combine(&current.u, &previous.u),
            shift_v: combine(&current.v, &previous.v),
            shift_theta: combine(&current.theta, &previous.theta),
        }
    }

    /// Stencil whose derivatives are identically zero.
    pub fn frozen(n_nodes: usize) -> Self {
        DerivativeStencil {
            scale: 0.0,
            shift_u: DVector::zeros(n_nodes),
            shift_v: DVector::zeros(n_nodes),
            shift_theta: DVector::zeros(n_nodes),
        }
    }
}

/// State with uniform strain `strain0`, uniform temperature `theta0` and a
/// linear velocity ramp from the fixed end to the block velocity, which
/// reconciles `u(0) = 0` with `v(L) = v0` at `t = 0`.
pub fn initial_state(
    grid: &Grid,
    strain0: f64,
    theta0: f64,
    block: &BlockParams,
) -> Result<RodState, ModelError> {
    if !(theta0 > 0.0) {
        return Err(ModelError::NonPositiveTemperature(theta0));
    }
    let x = grid.nodes();
    Ok(RodState {
        u: x * strain0,
        v: x * (block.v0 / grid.length()),
        theta: DVector::from_element(grid.n_nodes(), theta0),
        time: 0.0,
    })
}

/// Nodal strain `e = du/dx`.
pub fn strain(grid: &Grid, state: &RodState) -> Result<DVector<f64>, ModelError> {
    check_state(grid, state)?;
    Ok(grid.d1() * &state.u)
}

/// Nodal strain rate `de/dt = dv/dx`.
pub fn strain_rate(grid: &Grid, state: &RodState) -> Result<DVector<f64>, ModelError> {
    check_state(grid, state)?;
    Ok(grid.d1() * &state.v)
}

fn check_state(grid: &Grid, state: &RodState) -> Result<(), ModelError> {
    let expected = grid.n_nodes();
    for field in [&state.u, &state.v, &state.theta] {
        if field.len() != expected {
            return Err(ModelError::SizeMismatch {
                expected,
                got: field.len(),
            });
        }
    }
    Ok(())
}

/// Assembles the stacked residual of the implicit system at `state`.
///
/// The traction row balances the effective stress against the block's
/// equation of motion: the rod pulls the block with `-beta sigma*(L)`, so
/// `sigma*(L) + (m/beta) dv(L)/dt + (mu_m/beta) v(L) + (k_m/beta) u(L) = 0`.
pub fn residual(
    grid: &Grid,
    material: &MaterialParams,
    block: &BlockParams,
    state: &RodState,
    stencil: &DerivativeStencil,
) -> Result<DVector<f64>, ModelError> {
    check_state(grid, state)?;
    if stencil.shift_u.len() != grid.n_nodes() {
        return Err(ModelError::SizeMismatch {
            expected: grid.n_nodes(),
            got: stencil.shift_u.len(),
        });
    }

    let n = grid.n_intervals();
    let m = n + 1;
    let d1 = grid.d1();
    let scale = stencil.scale;

    let eps = d1 * &state.u;
    let eps_dot = d1 * &state.v;
    let sigma = DVector::from_fn(m, |i, _| {
        material.effective_stress_raw(eps[i], eps_dot[i], state.theta[i])
    });
    let d1_sigma = d1 * &sigma;
    let d4_u = grid.d4() * &state.u;
    let d2_theta = grid.d2() * &state.theta;

    let mut r = DVector::zeros(3 * m);

    // kinematic rows at every node
    for i in 0..m {
        r[i] = scale * state.u[i] - stencil.shift_u[i] - state.v[i];
    }

    // momentum rows with the four mechanical boundary replacements
    let mom = m;
    r[mom] = state.u[0];
    r[mom + 1] = row_dot(d1, 0, &eps);
    for i in 2..m - 2 {
        let dv = scale * state.v[i] - stencil.shift_v[i];
        r[mom + i] = material.rho * dv - d1_sigma[i] + material.kg * d4_u[i];
    }
    r[mom + n - 1] = row_dot(d1, n, &eps);
    let dv_end = scale * state.v[n] - stencil.shift_v[n];
    r[mom + n] = sigma[n]
        + block.mass_per_area * dv_end
        + block.friction * state.v[n]
        + block.stiffness * state.u[n];

    // thermal rows with insulated ends
    let th = 2 * m;
    r[th] = row_dot(d1, 0, &state.theta);
    for i in 1..n {
        let dtheta = scale * state.theta[i] - stencil.shift_theta[i];
        r[th + i] = material.cv * dtheta
            - material.kappa * d2_theta[i]
            - material.k1 * state.theta[i] * eps[i] * eps_dot[i]
            - material.nu * eps_dot[i] * eps_dot[i];
    }
    r[th + n] = row_dot(d1, n, &state.theta);

    if r.iter().any(|x| !x.is_finite()) {
        return Err(ModelError::NonFiniteResidual);
    }
    Ok(r)
}

fn row_dot(mat: &nalgebra::DMatrix<f64>, row: usize, v: &DVector<f64>) -> f64 {
    (0..v.len()).map(|j| mat[(row, j)] * v[j]).sum()
}
