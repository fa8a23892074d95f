//! Simulation and analysis lab for time-delay-estimation (TDE) robot control.
//!
//! The crate simulates manipulator and port-Hamiltonian closed loops in which
//! the unknown part of the dynamics is reconstructed from one-delay-old torque
//! and acceleration samples, and provides the numerical machinery to check the
//! resulting stability claims:
//!
//! - [`dynamics`]: built-in manipulator and port-Hamiltonian testbed models
//!   with verifiable structural properties (SPD inertia, skew-symmetry).
//! - [`tde`]: the delay estimator, its second-difference acceleration variant,
//!   and the exact error recursion `e = D e(t-rho) + xi`.
//! - [`controllers`]: tracking/regulation torque laws with delay-based
//!   disturbance feedforward, the super-twisting closed-loop fields, and the
//!   port-Hamiltonian damping-injection law.
//! - [`analysis`]: Lyapunov values, ultimate-bound formulas, definiteness
//!   probes, and bound verdicts against simulated trajectories.
//! - [`sim`]: fixed-step, delay-aligned RK4 closed-loop simulation.
//! - [`cli`] / [`report`] / [`suite`]: scenario files, CSV/JSON outputs, and
//!   the bundled claim-by-claim verification suite.

pub mod analysis;
pub mod cli;
pub mod controllers;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod report;
pub mod scenarios;
pub mod sim;
pub mod suite;
pub mod tde;

pub use error::Error;

/// Crate result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Tool version embedded in run reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
