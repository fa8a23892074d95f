//! Manipulator and port-Hamiltonian testbed models.
//!
//! Robot models expose the terms of the joint-space equation
//!
//! ```text
//! M(q) qdd + C(q, qd) qd + g(q) + f(q, qd) + d = tau
//! ```
//!
//! with `M` symmetric positive definite, `C` built from Christoffel symbols
//! (so `Mdot - 2C` is exactly skew-symmetric and `Mdot = C + C^T`), gravity
//! `g = grad U`, and viscous damping `f = B qd` with constant diagonal
//! `B >= 0`. Each model declares a workspace box in `(q, qd)` over which the
//! structural invariants are sampled.

mod pendulum;
mod ph;
mod two_link;

pub use pendulum::PendulumParams;
pub use ph::{PhModel, PhPendulumParams};
pub use two_link::TwoLinkParams;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg;
use crate::Result;

/// Condition-number limit beyond which a mass matrix is rejected.
pub const MASS_CONDITION_LIMIT: f64 = 1e12;

/// Joint-space state at a time instant.
#[derive(Debug, Clone, PartialEq)]
pub struct RobotState {
    /// Time (s).
    pub t: f64,
    /// Joint positions (rad).
    pub q: DVector<f64>,
    /// Joint velocities (rad/s).
    pub qd: DVector<f64>,
}

impl RobotState {
    pub fn new(t: f64, q: DVector<f64>, qd: DVector<f64>) -> Self {
        Self { t, q, qd }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && linalg::all_finite(&self.q) && linalg::all_finite(&self.qd)
    }
}

/// All four dynamics terms evaluated at one state.
#[derive(Debug, Clone)]
pub struct DynamicsTerms {
    pub mass: DMatrix<f64>,
    pub coriolis: DMatrix<f64>,
    pub gravity: DVector<f64>,
    pub damping: DVector<f64>,
}

/// Box in `(q, qd)` over which invariants are sampled; symmetric about zero.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub q_max: DVector<f64>,
    pub qd_max: DVector<f64>,
}

impl Workspace {
    /// Draw a uniform sample `(q, qd)` from the box.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> (DVector<f64>, DVector<f64>) {
        let q = self.q_max.map(|m| rng.random_range(-m..=m));
        let qd = self.qd_max.map(|m| rng.random_range(-m..=m));
        (q, qd)
    }
}

/// Built-in manipulator models.
///
/// Serialized form carries only the physical parameters, so a scenario file
/// reproduces the model exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RobotModel {
    /// Point-mass pendulum, 1 DOF. Constant inertia, zero Coriolis.
    Pendulum(PendulumParams),
    /// Planar two-link arm with point masses at the link tips, 2 DOF.
    TwoLink(TwoLinkParams),
}

impl RobotModel {
    pub fn dof(&self) -> usize {
        match self {
            RobotModel::Pendulum(_) => 1,
            RobotModel::TwoLink(_) => 2,
        }
    }

    /// Inertia matrix `M(q)` (kg m^2).
    pub fn mass_matrix(&self, q: &DVector<f64>) -> DMatrix<f64> {
        match self {
            RobotModel::Pendulum(p) => p.mass_matrix(),
            RobotModel::TwoLink(p) => p.mass_matrix(q),
        }
    }

    /// Coriolis/centrifugal matrix `C(q, qd)` from Christoffel symbols.
    pub fn coriolis_matrix(&self, q: &DVector<f64>, qd: &DVector<f64>) -> DMatrix<f64> {
        match self {
            RobotModel::Pendulum(_) => DMatrix::zeros(1, 1),
            RobotModel::TwoLink(p) => p.coriolis_matrix(q, qd),
        }
    }

    /// Gravity torque vector `g(q) = grad U(q)` (N m).
    pub fn gravity(&self, q: &DVector<f64>) -> DVector<f64> {
        match self {
            RobotModel::Pendulum(p) => p.gravity(q),
            RobotModel::TwoLink(p) => p.gravity(q),
        }
    }

    /// Viscous damping torque `f = B qd` (N m).
    pub fn damping(&self, _q: &DVector<f64>, qd: &DVector<f64>) -> DVector<f64> {
        match self {
            RobotModel::Pendulum(p) => p.damping(qd),
            RobotModel::TwoLink(p) => p.damping(qd),
        }
    }

    /// Time derivative of the inertia matrix along the state, `dM/dt`.
    pub fn mass_matrix_rate(&self, q: &DVector<f64>, qd: &DVector<f64>) -> DMatrix<f64> {
        match self {
            RobotModel::Pendulum(_) => DMatrix::zeros(1, 1),
            RobotModel::TwoLink(p) => p.mass_matrix_rate(q, qd),
        }
    }

    /// Gravitational potential energy `U(q)` (J), zero at the rest pose.
    pub fn potential_energy(&self, q: &DVector<f64>) -> f64 {
        match self {
            RobotModel::Pendulum(p) => p.potential_energy(q),
            RobotModel::TwoLink(p) => p.potential_energy(q),
        }
    }

    /// Total mechanical energy `T + U` (J).
    pub fn total_energy(&self, state: &RobotState) -> f64 {
        let m = self.mass_matrix(&state.q);
        0.5 * state.qd.dot(&(&m * &state.qd)) + self.potential_energy(&state.q)
    }

    pub fn workspace(&self) -> Workspace {
        match self {
            RobotModel::Pendulum(p) => p.workspace(),
            RobotModel::TwoLink(p) => p.workspace(),
        }
    }

    /// Evaluate all dynamics terms at a state.
    pub fn eval_terms(&self, state: &RobotState) -> Result<DynamicsTerms> {
        self.check_dims(state)?;
        let terms = DynamicsTerms {
            mass: self.mass_matrix(&state.q),
            coriolis: self.coriolis_matrix(&state.q, &state.qd),
            gravity: self.gravity(&state.q),
            damping: self.damping(&state.q, &state.qd),
        };
        if !linalg::all_finite_mat(&terms.mass) || !linalg::all_finite_mat(&terms.coriolis) {
            return Err(Error::NonFinite { what: "dynamics matrix" });
        }
        if !linalg::all_finite(&terms.gravity) || !linalg::all_finite(&terms.damping) {
            return Err(Error::NonFinite { what: "dynamics vector" });
        }
        Ok(terms)
    }

    /// Forward dynamics: `qdd = M^-1 (tau - C qd - g - f - d)`.
    pub fn forward_dynamics(
        &self,
        state: &RobotState,
        tau: &DVector<f64>,
        d: &DVector<f64>,
    ) -> Result<DVector<f64>> {
        let n = self.dof();
        if tau.len() != n {
            return Err(Error::DimensionMismatch { what: "tau", expected: n, got: tau.len() });
        }
        if d.len() != n {
            return Err(Error::DimensionMismatch { what: "d", expected: n, got: d.len() });
        }
        let terms = self.eval_terms(state)?;
        let (lo, hi) = linalg::symmetric_eigen_range(&terms.mass);
        if !(lo > 0.0) || hi / lo > MASS_CONDITION_LIMIT {
            return Err(Error::IllConditioned {
                what: "mass matrix",
                cond: if lo > 0.0 { hi / lo } else { f64::INFINITY },
                limit: MASS_CONDITION_LIMIT,
            });
        }
        let rhs = tau - &terms.coriolis * &state.qd - &terms.gravity - &terms.damping - d;
        let chol = terms
            .mass
            .clone()
            .cholesky()
            .ok_or(Error::IllConditioned { what: "mass matrix", cond: f64::INFINITY, limit: MASS_CONDITION_LIMIT })?;
        let qdd = chol.solve(&rhs);
        if !linalg::all_finite(&qdd) {
            return Err(Error::NonFinite { what: "acceleration" });
        }
        Ok(qdd)
    }

    /// Inverse dynamics: `tau = M qdd + C qd + g + f + d`.
    pub fn inverse_dynamics(
        &self,
        state: &RobotState,
        qdd: &DVector<f64>,
        d: &DVector<f64>,
    ) -> Result<DVector<f64>> {
        let n = self.dof();
        if qdd.len() != n {
            return Err(Error::DimensionMismatch { what: "qdd", expected: n, got: qdd.len() });
        }
        let terms = self.eval_terms(state)?;
        let tau = &terms.mass * qdd + &terms.coriolis * &state.qd + &terms.gravity + &terms.damping + d;
        if !linalg::all_finite(&tau) {
            return Err(Error::NonFinite { what: "torque" });
        }
        Ok(tau)
    }

    /// Skew-symmetry residual `x^T (Mdot - 2C) x`; zero up to rounding.
    pub fn skew_symmetry_residual(&self, state: &RobotState, x: &DVector<f64>) -> f64 {
        let mdot = self.mass_matrix_rate(&state.q, &state.qd);
        let c = self.coriolis_matrix(&state.q, &state.qd);
        x.dot(&((mdot - 2.0 * c) * x))
    }

    /// Upper bound on `||g(q)||` by grid maximization over the workspace.
    ///
    /// This is the gravity bound `kappa` consumed by the bounded-gravity
    /// tracking law; `points_per_axis` grid points per joint are evaluated
    /// and the maximum is inflated by 1% to absorb off-grid peaks.
    pub fn gravity_norm_bound(&self, points_per_axis: usize) -> f64 {
        let n = self.dof();
        let ws = self.workspace();
        let mut max_norm: f64 = 0.0;
        let total = points_per_axis.pow(n as u32);
        let mut q = DVector::zeros(n);
        for flat in 0..total {
            let mut rem = flat;
            for j in 0..n {
                let i = rem % points_per_axis;
                rem /= points_per_axis;
                let frac = if points_per_axis > 1 {
                    i as f64 / (points_per_axis - 1) as f64
                } else {
                    0.5
                };
                q[j] = -ws.q_max[j] + 2.0 * ws.q_max[j] * frac;
            }
            max_norm = max_norm.max(self.gravity(&q).norm());
        }
        max_norm * 1.01
    }

    /// Sampled extremes of the mass-matrix spectrum over the workspace.
    ///
    /// Returns `(lambda_min, lambda_max)` over `samples` uniformly drawn
    /// configurations, deflated/inflated by 1% so downstream bounds stay on
    /// the safe side of the true extremes.
    pub fn mass_eigen_range<R: Rng>(&self, samples: usize, rng: &mut R) -> (f64, f64) {
        let ws = self.workspace();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for _ in 0..samples {
            let (q, _) = ws.sample(rng);
            let (l, h) = linalg::symmetric_eigen_range(&self.mass_matrix(&q));
            lo = lo.min(l);
            hi = hi.max(h);
        }
        (lo * 0.99, hi * 1.01)
    }

    fn check_dims(&self, state: &RobotState) -> Result<()> {
        let n = self.dof();
        if state.q.len() != n {
            return Err(Error::DimensionMismatch { what: "q", expected: n, got: state.q.len() });
        }
        if state.qd.len() != n {
            return Err(Error::DimensionMismatch { what: "qd", expected: n, got: state.qd.len() });
        }
        Ok(())
    }
}

/// Build a point-mass pendulum model.
pub fn make_pendulum(params: PendulumParams) -> Result<RobotModel> {
    params.validate()?;
    Ok(RobotModel::Pendulum(params))
}

/// Build a planar two-link arm model.
pub fn make_two_link(params: TwoLinkParams) -> Result<RobotModel> {
    params.validate()?;
    Ok(RobotModel::TwoLink(params))
}

/// Build a damped pendulum in port-Hamiltonian form.
pub fn make_ph_pendulum(params: PhPendulumParams) -> Result<PhModel> {
    params.validate()?;
    Ok(PhModel::DampedPendulum(params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pendulum() -> RobotModel {
        make_pendulum(PendulumParams::new(1.0, 1.0, 0.1, 9.81)).unwrap()
    }

    fn two_link() -> RobotModel {
        make_two_link(TwoLinkParams::new(1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 9.81)).unwrap()
    }

    fn state(model: &RobotModel, q: &[f64], qd: &[f64]) -> RobotState {
        let _ = model;
        RobotState::new(0.0, DVector::from_row_slice(q), DVector::from_row_slice(qd))
    }

    #[test]
    fn pendulum_terms_at_equilibrium() {
        let m = pendulum();
        let s = state(&m, &[0.0], &[0.0]);
        let t = m.eval_terms(&s).unwrap();
        assert_relative_eq!(t.mass[(0, 0)], 1.0, epsilon = 1e-12);
        assert_eq!(t.coriolis[(0, 0)], 0.0);
        assert_eq!(t.gravity[0], 0.0);
        assert_eq!(t.damping[0], 0.0);
    }

    #[test]
    fn pendulum_gravity_at_horizontal() {
        let m = pendulum();
        let s = state(&m, &[std::f64::consts::FRAC_PI_2], &[0.0]);
        assert_relative_eq!(m.gravity(&s.q)[0], 9.81, epsilon = 1e-12);
    }

    #[test]
    fn forward_dynamics_torque_balance_gives_zero_accel() {
        let m = two_link();
        let s = state(&m, &[0.4, -0.7], &[0.5, 0.2]);
        let d = DVector::from_row_slice(&[0.3, -0.1]);
        let terms = m.eval_terms(&s).unwrap();
        let tau = &terms.coriolis * &s.qd + &terms.gravity + &terms.damping + &d;
        let qdd = m.forward_dynamics(&s, &tau, &d).unwrap();
        assert!(qdd.norm() < 1e-12);
    }

    #[test]
    fn forward_dynamics_newton_law_for_point_mass() {
        // M = 2 (m l^2 with m=2, l=1), no gravity/damping: tau = 4 -> qdd = 2.
        let m = make_pendulum(PendulumParams::new(2.0, 1.0, 0.0, 0.0)).unwrap();
        let s = state(&m, &[0.3], &[0.0]);
        let qdd = m
            .forward_dynamics(&s, &DVector::from_row_slice(&[4.0]), &DVector::zeros(1))
            .unwrap();
        assert_relative_eq!(qdd[0], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn two_link_free_fall_matches_gravity_column() {
        let m = two_link();
        let s = state(&m, &[0.0, 0.0], &[0.0, 0.0]);
        let qdd = m.forward_dynamics(&s, &DVector::zeros(2), &DVector::zeros(2)).unwrap();
        let expect = -m
            .mass_matrix(&s.q)
            .cholesky()
            .unwrap()
            .solve(&m.gravity(&s.q));
        assert_relative_eq!(qdd[0], expect[0], epsilon = 1e-12);
        assert_relative_eq!(qdd[1], expect[1], epsilon = 1e-12);
    }

    #[test]
    fn inverse_dynamics_static_equilibrium_is_gravity() {
        let m = two_link();
        let s = state(&m, &[0.8, -0.4], &[0.0, 0.0]);
        let tau = m.inverse_dynamics(&s, &DVector::zeros(2), &DVector::zeros(2)).unwrap();
        let g = m.gravity(&s.q);
        assert_relative_eq!(tau[0], g[0], epsilon = 1e-12);
        assert_relative_eq!(tau[1], g[1], epsilon = 1e-12);
    }

    #[test]
    fn forward_inverse_round_trip() {
        let m = two_link();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ws = m.workspace();
        for _ in 0..200 {
            let (q, qd) = ws.sample(&mut rng);
            let s = RobotState::new(0.0, q, qd);
            let qdd = DVector::from_fn(2, |_, _| rng.random_range(-3.0..3.0));
            let d = DVector::from_fn(2, |_, _| rng.random_range(-1.0..1.0));
            let tau = m.inverse_dynamics(&s, &qdd, &d).unwrap();
            let back = m.forward_dynamics(&s, &tau, &d).unwrap();
            assert!((&back - &qdd).norm() <= 1e-10 * (1.0 + qdd.norm()));
        }
    }

    #[test]
    fn skew_symmetry_residual_zero_for_constant_inertia() {
        let m = pendulum();
        let s = state(&m, &[0.9], &[2.0]);
        let x = DVector::from_row_slice(&[1.7]);
        assert_eq!(m.skew_symmetry_residual(&s, &x), 0.0);
    }

    #[test]
    fn skew_symmetry_residual_small_on_two_link() {
        let m = two_link();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ws = m.workspace();
        for _ in 0..1000 {
            let (q, qd) = ws.sample(&mut rng);
            let s = RobotState::new(0.0, q, qd);
            let x = DVector::from_fn(2, |_, _| rng.random_range(-2.0..2.0));
            let r = m.skew_symmetry_residual(&s, &x);
            assert!(r.abs() <= 1e-9 * (1.0 + x.norm_squared()));
        }
    }

    #[test]
    fn skew_symmetry_residual_zero_vector() {
        let m = two_link();
        let s = state(&m, &[0.3, 0.4], &[1.0, -1.0]);
        assert_eq!(m.skew_symmetry_residual(&s, &DVector::zeros(2)), 0.0);
    }

    #[test]
    fn mass_matrix_rate_equals_christoffel_sum() {
        // Mdot = C + C^T holds for the Christoffel factorization.
        let m = two_link();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ws = m.workspace();
        for _ in 0..200 {
            let (q, qd) = ws.sample(&mut rng);
            let mdot = m.mass_matrix_rate(&q, &qd);
            let c = m.coriolis_matrix(&q, &qd);
            let residual = (&mdot - (&c + c.transpose())).amax();
            assert!(residual <= 1e-12 * (1.0 + mdot.amax()));
        }
    }

    #[test]
    fn mass_matrix_spd_over_workspace() {
        for model in [pendulum(), two_link()] {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let ws = model.workspace();
            for _ in 0..1000 {
                let (q, _) = ws.sample(&mut rng);
                let (lo, _) = linalg::symmetric_eigen_range(&model.mass_matrix(&q));
                assert!(lo > 0.0);
            }
        }
    }

    #[test]
    fn two_link_mass_matrix_dominant_entry_at_folded_config() {
        let m = two_link();
        let mm = m.mass_matrix(&DVector::from_row_slice(&[0.3, 0.0]));
        assert_relative_eq!(mm[(0, 0)], 5.0, epsilon = 1e-12);
        assert!(mm[(0, 0)] > mm[(0, 1)].abs() + 1.0);
        assert!(mm[(0, 0)] > mm[(1, 1)]);
    }

    #[test]
    fn gravity_norm_bound_covers_samples() {
        let m = two_link();
        let kappa = m.gravity_norm_bound(41);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let ws = m.workspace();
        for _ in 0..2000 {
            let (q, _) = ws.sample(&mut rng);
            assert!(m.gravity(&q).norm() <= kappa);
        }
        // (m1 + m2) g l1 + m2 g l2 bounds the first component alone.
        assert!(kappa <= 1.02 * ((2.0 * 9.81 + 9.81_f64).powi(2) + 9.81_f64.powi(2)).sqrt());
    }

    #[test]
    fn mass_eigen_range_brackets_known_extremes() {
        let m = two_link();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let (lo, hi) = m.mass_eigen_range(10_000, &mut rng);
        // Analytic extremes at cos(q2) = 1: 3 +- 2 sqrt(2).
        let exact_lo = 3.0 - 2.0 * 2.0_f64.sqrt();
        let exact_hi = 3.0 + 2.0 * 2.0_f64.sqrt();
        assert!(lo <= exact_lo && lo >= exact_lo * 0.97);
        assert!(hi >= exact_hi && hi <= exact_hi * 1.03);
    }

    #[test]
    fn rejects_non_physical_parameters() {
        assert!(make_pendulum(PendulumParams::new(-1.0, 1.0, 0.1, 9.81)).is_err());
        assert!(make_pendulum(PendulumParams::new(1.0, 0.0, 0.1, 9.81)).is_err());
        assert!(make_two_link(TwoLinkParams::new(1.0, -1.0, 1.0, 1.0, 0.0, 0.0, 9.81)).is_err());
        assert!(make_pendulum(PendulumParams::new(1.0, 1.0, -0.1, 9.81)).is_err());
    }

    #[test]
    fn gravity_is_gradient_of_potential() {
        // Central difference of U reproduces g; independent of the closed forms.
        let m = two_link();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let ws = m.workspace();
        let h = 1e-6;
        for _ in 0..100 {
            let (q, _) = ws.sample(&mut rng);
            let g = m.gravity(&q);
            for j in 0..2 {
                let mut qp = q.clone();
                let mut qm = q.clone();
                qp[j] += h;
                qm[j] -= h;
                let fd = (m.potential_energy(&qp) - m.potential_energy(&qm)) / (2.0 * h);
                assert_relative_eq!(g[j], fd, epsilon = 1e-6, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn models_are_shareable_across_threads() {
        let m = std::sync::Arc::new(two_link());
        let mut handles = Vec::new();
        for k in 0..4 {
            let m = m.clone();
            handles.push(std::thread::spawn(move || {
                let q = DVector::from_row_slice(&[0.1 * k as f64, -0.2]);
                m.mass_matrix(&q)[(0, 0)]
            }));
        }
        for h in handles {
            assert!(h.join().unwrap() > 0.0);
        }
    }
}
