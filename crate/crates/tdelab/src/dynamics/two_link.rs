//! Planar two-link arm with point masses: the varying-inertia testbed.
//!
//! Joint 1 is measured from the horizontal `+x` axis, joint 2 relative to
//! link 1; gravity acts along `-y`. Masses are concentrated at the link tips,
//! giving the standard closed forms
//!
//! ```text
//! M11 = (m1 + m2) l1^2 + m2 l2^2 + 2 m2 l1 l2 cos(q2)
//! M12 = m2 l2^2 + m2 l1 l2 cos(q2)        M22 = m2 l2^2
//! ```
//!
//! with the Christoffel Coriolis matrix built from `h = -m2 l1 l2 sin(q2)`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

use super::Workspace;

/// Parameters of the planar two-link arm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoLinkParams {
    /// Mass at tip of link 1 (kg).
    pub m1_kg: f64,
    /// Mass at tip of link 2 (kg).
    pub m2_kg: f64,
    /// Length of link 1 (m).
    pub l1_m: f64,
    /// Length of link 2 (m).
    pub l2_m: f64,
    /// Viscous damping at joint 1 (N m s/rad).
    pub b1_nms: f64,
    /// Viscous damping at joint 2 (N m s/rad).
    pub b2_nms: f64,
    /// Gravitational acceleration (m/s^2).
    pub gravity_m_s2: f64,
}

impl TwoLinkParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        m1_kg: f64,
        m2_kg: f64,
        l1_m: f64,
        l2_m: f64,
        b1_nms: f64,
        b2_nms: f64,
        gravity_m_s2: f64,
    ) -> Self {
        Self { m1_kg, m2_kg, l1_m, l2_m, b1_nms, b2_nms, gravity_m_s2 }
    }

    pub(super) fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("m1_kg", self.m1_kg),
            ("m2_kg", self.m2_kg),
            ("l1_m", self.l1_m),
            ("l2_m", self.l2_m),
        ] {
            if !(v > 0.0) {
                return Err(Error::NonPhysical(format!("two-link {name} = {v}")));
            }
        }
        for (name, v) in [
            ("b1_nms", self.b1_nms),
            ("b2_nms", self.b2_nms),
            ("gravity_m_s2", self.gravity_m_s2),
        ] {
            if !(v >= 0.0) {
                return Err(Error::NonPhysical(format!("two-link {name} = {v}")));
            }
        }
        Ok(())
    }

    pub(super) fn mass_matrix(&self, q: &DVector<f64>) -> DMatrix<f64> {
        let c2 = q[1].cos();
        let a = self.m2_kg * self.l1_m * self.l2_m;
        let m22 = self.m2_kg * self.l2_m * self.l2_m;
        let m12 = m22 + a * c2;
        let m11 = (self.m1_kg + self.m2_kg) * self.l1_m * self.l1_m + m22 + 2.0 * a * c2;
        DMatrix::from_row_slice(2, 2, &[m11, m12, m12, m22])
    }

    pub(super) fn coriolis_matrix(&self, q: &DVector<f64>, qd: &DVector<f64>) -> DMatrix<f64> {
        let h = -self.m2_kg * self.l1_m * self.l2_m * q[1].sin();
        DMatrix::from_row_slice(
            2,
            2,
            &[h * qd[1], h * (qd[0] + qd[1]), -h * qd[0], 0.0],
        )
    }

    pub(super) fn mass_matrix_rate(&self, q: &DVector<f64>, qd: &DVector<f64>) -> DMatrix<f64> {
        // dM/dt = dM/dq2 * qd2; only the cos(q2) entries vary.
        let s2 = q[1].sin();
        let a = self.m2_kg * self.l1_m * self.l2_m;
        let d11 = -2.0 * a * s2 * qd[1];
        let d12 = -a * s2 * qd[1];
        DMatrix::from_row_slice(2, 2, &[d11, d12, d12, 0.0])
    }

    pub(super) fn gravity(&self, q: &DVector<f64>) -> DVector<f64> {
        let g = self.gravity_m_s2;
        let c1 = q[0].cos();
        let c12 = (q[0] + q[1]).cos();
        DVector::from_row_slice(&[
            (self.m1_kg + self.m2_kg) * g * self.l1_m * c1 + self.m2_kg * g * self.l2_m * c12,
            self.m2_kg * g * self.l2_m * c12,
        ])
    }

    pub(super) fn damping(&self, qd: &DVector<f64>) -> DVector<f64> {
        DVector::from_row_slice(&[self.b1_nms * qd[0], self.b2_nms * qd[1]])
    }

    pub(super) fn potential_energy(&self, q: &DVector<f64>) -> f64 {
        // Heights of the two point masses; zero level at q = 0 would leave an
        // offset, so measure from the joint plane y = 0 instead.
        let y1 = self.l1_m * q[0].sin();
        let y2 = y1 + self.l2_m * (q[0] + q[1]).sin();
        self.gravity_m_s2 * (self.m1_kg * y1 + self.m2_kg * y2)
    }

    pub(super) fn workspace(&self) -> Workspace {
        Workspace {
            q_max: DVector::from_element(2, std::f64::consts::PI),
            qd_max: DVector::from_element(2, 5.0),
        }
    }
}
