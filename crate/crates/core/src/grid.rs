//! Chebyshev-Gauss-Lobatto collocation grid on `[0, L]`.
//!
//! Holds the node set, dense spectral differentiation matrices for first,
//! second and fourth derivatives, and Clenshaw-Curtis quadrature weights.
//! The grid is immutable after construction and all operations are pure.

use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;
use thiserror::Error;

/// Errors produced by grid construction and grid operations.
#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("grid needs at least 4 intervals, got {0}")]
    TooFewIntervals(usize),
    #[error("rod length must be positive, got {0}")]
    NonPositiveLength(f64),
    #[error("expected {expected} nodal values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("query point {x} outside the grid domain [0, {length}]")]
    OutOfDomain { x: f64, length: f64 },
}

/// Requested derivative order for [`Grid::differentiate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeOrder {
    First,
    Second,
    Fourth,
}

/// Chebyshev-Gauss-Lobatto grid with `n_intervals + 1` nodes on `[0, length]`.
#[derive(Debug, Clone)]
pub struct Grid {
    n_intervals: usize,
    length: f64,
    nodes: DVector<f64>,
    d1: DMatrix<f64>,
    d2: DMatrix<f64>,
    d4: DMatrix<f64>,
    quad_weights: DVector<f64>,
}

impl Grid {
    /// Builds the grid with nodes `x_i = L (1 - cos(pi i / N)) / 2`, the
    /// first-derivative collocation matrix of the Lagrange interpolants on
    /// those nodes, higher-order operators by repeated multiplication
    /// (`d2 = d1^2`, `d4 = d2^2`) and Clenshaw-Curtis quadrature weights.
    ///
    /// At least 4 intervals are required so that the fourth-derivative
    /// operator is meaningful.
    pub fn new(n_intervals: usize, length: f64) -> Result<Self, GridError> {
        if n_intervals < 4 {
            return Err(GridError::TooFewIntervals(n_intervals));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(GridError::NonPositiveLength(length));
        }
        let n = n_intervals;
        let m = n + 1;

        // sin^2 form of (1 - cos)/2: monotone and exact at both endpoints.
        let nodes = DVector::from_fn(m, |i, _| {
            length * (PI * i as f64 / (2.0 * n as f64)).sin().powi(2)
        });

        // Closed-form entries with endpoint weights c_0 = c_N = 2; the
        // diagonal is the negative row sum, which suppresses round-off.
        let c = |i: usize| if i == 0 || i == n { 2.0 } else { 1.0 };
        let mut d1 = DMatrix::zeros(m, m);
        for i in 0..m {
            let mut diag = 0.0;
            for j in 0..m {
                if i != j {
                    let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                    let entry = c(i) / c(j) * sign / (nodes[i] - nodes[j]);
                    d1[(i, j)] = entry;
                    diag -= entry;
                }
            }
            d1[(i, i)] = diag;
        }
        let d2 = &d1 * &d1;
        let d4 = &d2 * &d2;

        let quad_weights = clenshaw_curtis_weights(n, length);

        Ok(Grid {
            n_intervals,
            length,
            nodes,
            d1,
            d2,
            d4,
            quad_weights,
        })
    }

    pub fn n_intervals(&self) -> usize {
        self.n_intervals
    }

    /// Number of nodes, `n_intervals + 1`.
    pub fn n_nodes(&self) -> usize {
        self.n_intervals + 1
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn nodes(&self) -> &DVector<f64> {
        &self.nodes
    }

    pub fn d1(&self) -> &DMatrix<f64> {
        &self.d1
    }

    pub fn d2(&self) -> &DMatrix<f64> {
        &self.d2
    }

    pub fn d4(&self) -> &DMatrix<f64> {
        &self.d4
    }

    pub fn quad_weights(&self) -> &DVector<f64> {
        &self.quad_weights
    }

    /// Applies the selected differentiation matrix to nodal values.
    pub fn differentiate(
        &self,
        values: &DVector<f64>,
        order: DerivativeOrder,
    ) -> Result<DVector<f64>, GridError> {
        self.check_len(values)?;
        let op = match order {
            DerivativeOrder::First => &self.d1,
            DerivativeOrder::Second => &self.d2,
            DerivativeOrder::Fourth => &self.d4,
        };
        Ok(op * values)
    }

    /// Evaluates the interpolating polynomial of the nodal values at `x`
    /// using the barycentric form. At a node the nodal value is returned
    /// exactly; points outside `[0, length]` are rejected (no extrapolation).
    pub fn interpolate(&self, values: &DVector<f64>, x: f64) -> Result<f64, GridError> {
        self.check_len(values)?;
        if !(0.0..=self.length).contains(&x) {
            return Err(GridError::OutOfDomain {
                x,
                length: self.length,
            });
        }
        let n = self.n_intervals;
        // Barycentric weights of CGL nodes up to a common factor: (-1)^j,
        // halved at the endpoints. Affine mapping leaves the ratios intact.
        let weight = |j: usize| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == n {
                0.5 * sign
            } else {
                sign
            }
        };
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..=n {
            let dx = x - self.nodes[j];
            if dx == 0.0 {
                return Ok(values[j]);
            }
            let t = weight(j) / dx;
            num += t * values[j];
            den += t;
        }
        Ok(num / den)
    }

    /// Quadrature of nodal values: dot product with the Clenshaw-Curtis
    /// weights. Exact for polynomials of degree <= N.
    pub fn integrate(&self, values: &DVector<f64>) -> Result<f64, GridError> {
        self.check_len(values)?;
        Ok(self.quad_weights.dot(values))
    }

    fn check_len(&self, values: &DVector<f64>) -> Result<(), GridError> {
        if values.len() != self.n_nodes() {
            return Err(GridError::LengthMismatch {
                expected: self.n_nodes(),
                got: values.len(),
            });
        }
        Ok(())
    }
}

/// Clenshaw-Curtis weights for the CGL nodes, scaled to `[0, length]`.
/// They integrate every polynomial of degree <= N exactly.
fn clenshaw_curtis_weights(n: usize, length: f64) -> DVector<f64> {
    let m = n + 1;
    let nf = n as f64;
    let mut w = DVector::zeros(m);
    let end = if n % 2 == 0 {
        1.0 / (nf * nf - 1.0)
    } else {
        1.0 / (nf * nf)
    };
    w[0] = end;
    w[n] = end;
    for i in 1..n {
        let theta = PI * i as f64 / nf;
        let mut v = 1.0;
        if n % 2 == 0 {
            for k in 1..n / 2 {
                let kf = k as f64;
                v -= 2.0 * (2.0 * kf * theta).cos() / (4.0 * kf * kf - 1.0);
            }
            v -= (nf * theta).cos() / (nf * nf - 1.0);
        } else {
            for k in 1..=(n - 1) / 2 {
                let kf = k as f64;
                v -= 2.0 * (2.0 * kf * theta).cos() / (4.0 * kf * kf - 1.0);
            }
        }
        w[i] = 2.0 * v / nf;
    }
    w * (length / 2.0)
}
