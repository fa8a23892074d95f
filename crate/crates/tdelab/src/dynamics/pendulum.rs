//! Point-mass pendulum: the constant-inertia testbed.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

use super::Workspace;

/// Parameters of a point-mass pendulum.
///
/// Angle is measured from the hanging rest pose, so `g(0) = 0` and the
/// potential minimum sits at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PendulumParams {
    /// Bob mass (kg).
    pub m_kg: f64,
    /// Rod length (m).
    pub l_m: f64,
    /// Viscous damping coefficient (N m s/rad).
    pub b_nms: f64,
    /// Gravitational acceleration (m/s^2); zero gives a gravity-free joint.
    pub gravity_m_s2: f64,
}

impl PendulumParams {
    pub fn new(m_kg: f64, l_m: f64, b_nms: f64, gravity_m_s2: f64) -> Self {
        Self { m_kg, l_m, b_nms, gravity_m_s2 }
    }

    pub(super) fn validate(&self) -> Result<()> {
        if !(self.m_kg > 0.0) {
            return Err(Error::NonPhysical(format!("pendulum mass m_kg = {}", self.m_kg)));
        }
        if !(self.l_m > 0.0) {
            return Err(Error::NonPhysical(format!("pendulum length l_m = {}", self.l_m)));
        }
        if !(self.b_nms >= 0.0) {
            return Err(Error::NonPhysical(format!("pendulum damping b_nms = {}", self.b_nms)));
        }
        if !(self.gravity_m_s2 >= 0.0) {
            return Err(Error::NonPhysical(format!(
                "gravity gravity_m_s2 = {}",
                self.gravity_m_s2
            )));
        }
        Ok(())
    }

    pub(super) fn mass_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_element(1, 1, self.m_kg * self.l_m * self.l_m)
    }

    pub(super) fn gravity(&self, q: &DVector<f64>) -> DVector<f64> {
        DVector::from_element(1, self.m_kg * self.gravity_m_s2 * self.l_m * q[0].sin())
    }

    pub(super) fn damping(&self, qd: &DVector<f64>) -> DVector<f64> {
        DVector::from_element(1, self.b_nms * qd[0])
    }

    pub(super) fn potential_energy(&self, q: &DVector<f64>) -> f64 {
        self.m_kg * self.gravity_m_s2 * self.l_m * (1.0 - q[0].cos())
    }

    pub(super) fn workspace(&self) -> Workspace {
        Workspace {
            q_max: DVector::from_element(1, std::f64::consts::PI),
            qd_max: DVector::from_element(1, 10.0),
        }
    }
}
