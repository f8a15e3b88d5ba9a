//! Grübler/Kutzbach mobility counting.
//!
//! The degree-of-freedom count of a linkage with `n` links (ground included),
//! motion parameter λ (3 planar, 6 spatial), and joints of freedom `f_i` is
//!
//! ```text
//! dof = λ(n − 1) − Σ (λ − f_i)
//! ```
//!
//! The formula is applied as written; over-constrained mechanisms yield
//! negative counts and are returned as-is.

use thiserror::Error;

use crate::arm_model::ArmDescription;

/// Workspace motion parameter: 3 for planar mechanisms, 6 for spatial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotionSpace {
    Planar,
    Spatial,
}

impl MotionSpace {
    pub fn parameter(self) -> i64 {
        match self {
            MotionSpace::Planar => 3,
            MotionSpace::Spatial => 6,
        }
    }

    /// Parse from the numeric λ used at CLI boundaries.
    pub fn from_parameter(lambda: i64) -> Result<Self, MobilityError> {
        match lambda {
            3 => Ok(MotionSpace::Planar),
            6 => Ok(MotionSpace::Spatial),
            other => Err(MobilityError::UnsupportedLambda(other)),
        }
    }
}

/// Link/joint topology of a mechanism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MechanismTopology {
    space: MotionSpace,
    n_links: u32,
    joint_freedoms: Vec<u32>,
}

#[derive(Debug, Error)]
pub enum MobilityError {
    #[error("lambda must be 3 (planar) or 6 (spatial), got {0}")]
    UnsupportedLambda(i64),
    #[error("n_links must be at least 2 (ground included), got {0}")]
    TooFewLinks(u32),
    #[error("joint {index}: freedom count {freedom} outside 1..=lambda ({lambda})")]
    BadJointFreedom { index: usize, freedom: u32, lambda: i64 },
}

impl MechanismTopology {
    pub fn new(
        space: MotionSpace,
        n_links: u32,
        joint_freedoms: Vec<u32>,
    ) -> Result<Self, MobilityError> {
        if n_links < 2 {
            return Err(MobilityError::TooFewLinks(n_links));
        }
        let lambda = space.parameter();
        for (index, &freedom) in joint_freedoms.iter().enumerate() {
            if freedom < 1 || i64::from(freedom) > lambda {
                return Err(MobilityError::BadJointFreedom {
                    index,
                    freedom,
                    lambda,
                });
            }
        }
        Ok(Self {
            space,
            n_links,
            joint_freedoms,
        })
    }

    /// Topology of a serial arm: one link per joint plus ground, freedoms
    /// taken from each declared joint kind.
    pub fn from_arm(arm: &ArmDescription, space: MotionSpace) -> Result<Self, MobilityError> {
        let freedoms = arm.joint_freedoms();
        let n_links = arm.joints.len() as u32 + 1;
        Self::new(space, n_links, freedoms)
    }

    pub fn space(&self) -> MotionSpace {
        self.space
    }

    pub fn joint_freedoms(&self) -> &[u32] {
        &self.joint_freedoms
    }

    /// True when every joint has the full λ freedoms, i.e. no joint constrains
    /// the mechanism and the count degenerates to λ(n − 1).
    pub fn all_joints_unconstrained(&self) -> bool {
        let lambda = self.space.parameter();
        !self.joint_freedoms.is_empty()
            && self
                .joint_freedoms
                .iter()
                .all(|&f| i64::from(f) == lambda)
    }
}

/// Degree-of-freedom count, exact integer arithmetic.
pub fn grubler_dof(topology: &MechanismTopology) -> i64 {
    let lambda = topology.space.parameter();
    let n = i64::from(topology.n_links);
    let constraint_sum: i64 = topology
        .joint_freedoms
        .iter()
        .map(|&f| lambda - i64::from(f))
        .sum();
    lambda * (n - 1) - constraint_sum
}
