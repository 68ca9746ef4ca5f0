//! Simulation of macroscale vibration damping by a shape-memory-alloy rod.
//!
//! A mass block is attached to the free end of an SMA rod whose dynamics are
//! governed by a Ginzburg-Landau free energy with a non-convex (double-well)
//! Landau potential, coupled mechanical and thermal fields, strain-gradient
//! (Ginzburg) energy and Rayleigh viscosity. Space is discretized with
//! Chebyshev-Gauss-Lobatto collocation, time with implicit backward
//! differentiation solved by damped Newton iteration.
//!
//! Modules:
//! - [`grid`]: collocation nodes, spectral differentiation, quadrature
//! - [`material`]: Landau energy, constitutive stress law, well structure
//! - [`model`]: semi-discrete residual of the coupled field equations
//! - [`integrator`]: BDF1/BDF2 stepping with Newton-Raphson
//! - [`diagnostics`]: energy accounting, phase labels, hysteresis areas
//! - [`scenario`]: configuration, presets and file output

pub mod diagnostics;
pub mod grid;
pub mod integrator;
pub mod material;
pub mod model;
pub mod scenario;

pub use diagnostics::{EnergyReport, Phase, PhaseField};
pub use grid::{DerivativeOrder, Grid};
pub use integrator::{JacobianMode, SolverConfig, Trajectory};
pub use material::MaterialParams;
pub use model::{BlockParams, RodState};
pub use scenario::ScenarioConfig;
