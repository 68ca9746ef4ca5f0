//! Constitutive model of the SMA: Landau free energy with a
//! temperature-dependent quadratic term, the stress law derived from it,
//! viscous (Rayleigh) augmentation and the well structure of the potential.
//!
//! Unit system is g/cm/ms/K throughout, matching the material constants of
//! the Au23Cu30Zn47 alloy used by all presets.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MaterialError {
    #[error("temperature must be positive, got {0} K")]
    NonPositiveTemperature(f64),
    #[error("material parameter {name} must be {requirement}, got {value}")]
    InvalidParameter {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },
}

/// Material constants of the thermo-mechanical model.
///
/// `Default` yields the Au23Cu30Zn47 set used by every preset scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialParams {
    /// Density, g/cm^3.
    pub rho: f64,
    /// Coefficient of the temperature-dependent quadratic term, g/(ms^2 cm K).
    pub k1: f64,
    /// Quartic coefficient, g/(ms^2 cm).
    pub k2: f64,
    /// Sextic coefficient, g/(ms^2 cm).
    pub k3: f64,
    /// Reference transformation temperature, K.
    pub theta1: f64,
    /// Volumetric heat capacitance, g/(ms^2 cm K).
    pub cv: f64,
    /// Heat conductance, cm g/(ms^3 K).
    pub kappa: f64,
    /// Non-local (strain-gradient) coefficient, g cm/ms^2.
    pub kg: f64,
    /// Viscosity, g/(ms cm).
    pub nu: f64,
}

impl Default for MaterialParams {
    fn default() -> Self {
        MaterialParams {
            rho: 11.1,
            k1: 480.0,
            k2: 6.0e6,
            k3: 4.5e8,
            theta1: 208.0,
            cv: 3.1274,
            kappa: 1.9e-2,
            kg: 5.0,
            nu: 10.0,
        }
    }
}

impl MaterialParams {
    /// Checks the admissible ranges: every constant strictly positive except
    /// `kg` and `nu`, which may be zero. Configuration loading calls this;
    /// direct field manipulation (e.g. disabling terms in experiments) is
    /// deliberately unchecked.
    pub fn validate(&self) -> Result<(), MaterialError> {
        let strict = [
            ("rho", self.rho),
            ("k1", self.k1),
            ("k2", self.k2),
            ("k3", self.k3),
            ("theta1", self.theta1),
            ("cv", self.cv),
            ("kappa", self.kappa),
        ];
        for (name, value) in strict {
            if !(value > 0.0) || !value.is_finite() {
                return Err(MaterialError::InvalidParameter {
                    name,
                    requirement: "strictly positive",
                    value,
                });
            }
        }
        for (name, value) in [("kg", self.kg), ("nu", self.nu)] {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(MaterialError::InvalidParameter {
                    name,
                    requirement: "non-negative",
                    value,
                });
            }
        }
        Ok(())
    }

    /// Landau free energy density
    /// `F_l = k1 (theta - theta1)/2 e^2 - k2/4 e^4 + k3/6 e^6`.
    ///
    /// The quartic term is negative so that the potential develops the two
    /// symmetric martensite wells below the transformation temperature.
    pub fn landau_energy(&self, strain: f64, theta: f64) -> Result<f64, MaterialError> {
        check_theta(theta)?;
        Ok(self.landau_energy_raw(strain, theta))
    }

    /// Constitutive stress `sigma = dF_l/de = k1 (theta - theta1) e - k2 e^3 + k3 e^5`.
    pub fn stress(&self, strain: f64, theta: f64) -> Result<f64, MaterialError> {
        check_theta(theta)?;
        Ok(self.stress_raw(strain, theta))
    }

    /// Effective stress including the viscous contribution,
    /// `sigma* = sigma + nu de/dt`.
    pub fn effective_stress(
        &self,
        strain: f64,
        strain_rate: f64,
        theta: f64,
    ) -> Result<f64, MaterialError> {
        check_theta(theta)?;
        Ok(self.effective_stress_raw(strain, strain_rate, theta))
    }

    /// Temperature-independent elastic part of the internal energy density,
    /// `F_l - theta dF_l/dtheta = -k1 theta1/2 e^2 - k2/4 e^4 + k3/6 e^6`.
    ///
    /// Together with `cv * theta` this is the quantity the coupled field
    /// equations transport without loss; the energy reports build on it.
    pub fn strain_energy(&self, strain: f64) -> f64 {
        let e2 = strain * strain;
        e2 * (-0.5 * self.k1 * self.theta1 + e2 * (-0.25 * self.k2 + e2 * self.k3 / 6.0))
    }

    pub(crate) fn landau_energy_raw(&self, strain: f64, theta: f64) -> f64 {
        let e2 = strain * strain;
        e2 * (0.5 * self.k1 * (theta - self.theta1) + e2 * (-0.25 * self.k2 + e2 * self.k3 / 6.0))
    }

    pub(crate) fn stress_raw(&self, strain: f64, theta: f64) -> f64 {
        let e2 = strain * strain;
        strain * (self.k1 * (theta - self.theta1) + e2 * (-self.k2 + e2 * self.k3))
    }

    pub(crate) fn effective_stress_raw(&self, strain: f64, strain_rate: f64, theta: f64) -> f64 {
        self.stress_raw(strain, theta) + self.nu * strain_rate
    }

    /// Second strain derivative of the Landau energy; classifies stationary
    /// points.
    fn landau_energy_dd(&self, strain: f64, theta: f64) -> f64 {
        let e2 = strain * strain;
        self.k1 * (theta - self.theta1) + e2 * (-3.0 * self.k2 + 5.0 * e2 * self.k3)
    }

    /// All real stationary points of the Landau energy at temperature
    /// `theta`, i.e. the roots of `stress(e, theta) = 0`, sorted ascending.
    ///
    /// Besides `e = 0` the roots come from the quadratic in `z = e^2`,
    /// `k3 z^2 - k2 z + k1 (theta - theta1) = 0`, solved in closed form.
    pub fn stationary_strains(&self, theta: f64) -> Result<Vec<StationaryPoint>, MaterialError> {
        check_theta(theta)?;
        let mut strains = vec![0.0];
        let a = self.k3;
        let b = -self.k2;
        let c = self.k1 * (theta - self.theta1);
        let disc = b * b - 4.0 * a * c;
        if disc >= 0.0 {
            // stable quadratic roots: q = -(b + sign(b) sqrt(disc)) / 2
            let q = -0.5 * (b + b.signum() * disc.sqrt());
            for z in [q / a, if q != 0.0 { c / q } else { 0.0 }] {
                if z > 0.0 {
                    let e = z.sqrt();
                    strains.push(e);
                    strains.push(-e);
                }
            }
        }
        strains.sort_by(|x, y| x.partial_cmp(y).unwrap());
        strains.dedup();
        Ok(strains
            .into_iter()
            .map(|strain| StationaryPoint {
                strain,
                kind: self.classify_stationary(strain, theta),
            })
            .collect())
    }

    fn classify_stationary(&self, strain: f64, theta: f64) -> StationaryKind {
        let dd = self.landau_energy_dd(strain, theta);
        if dd > 0.0 {
            StationaryKind::Minimum
        } else if dd < 0.0 {
            StationaryKind::Maximum
        } else {
            // Degenerate second derivative. At e = 0 with theta = theta1 the
            // quartic term decides (negative, hence a maximum); a vanishing
            // second derivative at nonzero strain is a fold point.
            let fourth = -6.0 * self.k2 + 60.0 * self.k3 * strain * strain;
            if strain == 0.0 {
                if fourth < 0.0 {
                    StationaryKind::Maximum
                } else {
                    StationaryKind::Minimum
                }
            } else {
                StationaryKind::Inflection
            }
        }
    }

    /// Largest strain among the minima of the potential at `theta`, i.e. the
    /// positive martensite well, when one exists.
    pub fn positive_well_strain(&self, theta: f64) -> Result<Option<f64>, MaterialError> {
        Ok(self
            .stationary_strains(theta)?
            .into_iter()
            .filter(|p| p.kind == StationaryKind::Minimum && p.strain > 0.0)
            .map(|p| p.strain)
            .next_back())
    }
}

fn check_theta(theta: f64) -> Result<(), MaterialError> {
    if !(theta > 0.0) {
        return Err(MaterialError::NonPositiveTemperature(theta));
    }
    Ok(())
}

/// One root of `stress = 0` with its curvature classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub strain: f64,
    pub kind: StationaryKind,
}

/// Sign of the second strain derivative of the Landau energy at a
/// stationary point. `Inflection` only occurs at exact fold degeneracies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StationaryKind {
    Minimum,
    Maximum,
    Inflection,
}
