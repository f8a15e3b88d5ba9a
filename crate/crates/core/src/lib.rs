//! Analysis library for a six-servo rescue-robot arm.
//!
//! The crate covers the arm's descriptive model and the numeric analyses
//! built on top of it:
//!
//! - [`arm_model`] — joint/link/servo description and config ingestion
//! - [`mobility`] — Grübler/Kutzbach degree-of-freedom counting
//! - [`spatial`] — rotation matrices and ZYX Euler conversion
//! - [`kinematics`] — closed-form and elastic inverse kinematics
//! - [`actuation`] — servo torque, power, current, and endurance budgeting
//! - [`oscillation`] — second-order step-response simulation and damping metrics
//!
//! Angles are radians everywhere in this crate; degree conversion happens at
//! I/O boundaries only.

pub mod actuation;
pub mod arm_model;
pub mod kinematics;
pub mod mobility;
pub mod oscillation;
pub mod spatial;

pub use arm_model::{ArmDescription, JointKind, LinkSpec, ServoSpec};
pub use kinematics::{IkSolution, TargetPoint};
pub use spatial::{EulerZyx, RotationMatrix};
