//! Plant parameters and state for the two-mass quarter-car model.
//!
//! All quantities are SI. Displacements are measured from static
//! equilibrium, so gravity never appears.

use serde::{Deserialize, Serialize};

use crate::error::ParamError;

/// Masses, stiffnesses and damping coefficients of the 2-DOF plant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuarterCarParams {
    /// Sprung (body) mass [kg].
    pub m_s: f64,
    /// Unsprung (axle + wheel) mass [kg].
    pub m_u: f64,
    /// Suspension stiffness [N/m].
    pub k_s: f64,
    /// Tire stiffness [N/m].
    pub k_u: f64,
    /// Suspension damping [N·s/m].
    pub c_s: f64,
    /// Tire damping [N·s/m].
    pub c_u: f64,
}

impl Default for QuarterCarParams {
    fn default() -> Self {
        Self {
            m_s: 2500.0,
            m_u: 320.0,
            k_s: 80000.0,
            k_u: 500000.0,
            c_s: 320.0,
            c_u: 15020.0,
        }
    }
}

impl QuarterCarParams {
    /// Returns `self` unchanged when every field is finite and strictly positive.
    pub fn validate(self) -> Result<Self, ParamError> {
        let fields = [
            ("m_s", self.m_s),
            ("m_u", self.m_u),
            ("k_s", self.k_s),
            ("k_u", self.k_u),
            ("c_s", self.c_s),
            ("c_u", self.c_u),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(ParamError::NonFinite(name));
            }
            if value <= 0.0 {
                return Err(ParamError::NonPositiveParameter(name));
            }
        }
        Ok(self)
    }
}

/// Free function form of [`QuarterCarParams::validate`].
pub fn validate_params(p: QuarterCarParams) -> Result<QuarterCarParams, ParamError> {
    p.validate()
}

/// Positions and velocities of both masses. Accelerations are not stored.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlantState {
    pub z_s: f64,
    pub dz_s: f64,
    pub z_u: f64,
    pub dz_u: f64,
}

impl PlantState {
    pub const ZERO: Self = Self {
        z_s: 0.0,
        dz_s: 0.0,
        z_u: 0.0,
        dz_u: 0.0,
    };

    pub fn new(z_s: f64, dz_s: f64, z_u: f64, dz_u: f64) -> Self {
        Self { z_s, dz_s, z_u, dz_u }
    }

    pub fn is_finite(&self) -> bool {
        self.z_s.is_finite() && self.dz_s.is_finite() && self.z_u.is_finite() && self.dz_u.is_finite()
    }

    pub(crate) fn from_slice(x: &[f64]) -> Self {
        Self::new(x[0], x[1], x[2], x[3])
    }

    /// Kinetic plus elastic energy stored in the plant, relative to a
    /// stationary road at zero.
    pub fn mechanical_energy(&self, p: &QuarterCarParams) -> f64 {
        let stroke = self.z_s - self.z_u;
        0.5 * p.m_s * self.dz_s * self.dz_s
            + 0.5 * p.m_u * self.dz_u * self.dz_u
            + 0.5 * p.k_s * stroke * stroke
            + 0.5 * p.k_u * self.z_u * self.z_u
    }
}
