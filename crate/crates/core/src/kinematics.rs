//! Closed-form and elastic inverse kinematics for the two-link arm.
//!
//! Two separate chain models live here, mirroring how the arm is analyzed:
//!
//! * **Spatial rigid chain** — a base yaw plus a two-link chain in the
//!   vertical plane through the target. [`ik`] solves it in closed form,
//!   [`fk`] is the verification route back to Cartesian space. The shoulder
//!   angle is elevation from horizontal; the elbow angle is the deviation
//!   from full extension (0 = straight, measured so the second link's
//!   absolute elevation is `shoulder − elbow`).
//!
//! * **Planar elastic chain** — two links in a plane with small per-link
//!   deflections ([`DeflectionVector`]) applied to first order.
//!   [`elastic_fk`] evaluates the deflected chain; [`elastic_ik`] inverts it
//!   by Newton iteration seeded with the rigid closed form.
//!
//! All reachability checks use an absolute tolerance of [`REACH_TOL`] on the
//! target distance, and arc-cosine arguments are clamped afterwards so exact
//! boundary targets (full extension, full fold) solve without error.

use thiserror::Error;

/// Absolute slack, in meters, on the reachability annulus check.
pub const REACH_TOL: f64 = 1e-9;

/// Residual norm below which the elastic Newton iteration is converged.
pub const NEWTON_TOL: f64 = 1e-10;

/// Iteration cap for [`elastic_ik`].
pub const MAX_NEWTON_ITERS: usize = 100;

/// Deflection angles at or above this magnitude leave the first-order regime.
pub const MAX_DEFLECTION_ANGLE: f64 = 0.1;

/// Cartesian target in the base frame (z up, x forward), meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl TargetPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// In-plane radial coordinate √(x² + y²).
    pub fn radial(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Which of the two mirror-image planar solutions to return.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElbowBranch {
    Up,
    Down,
}

/// Closed-form solution of the spatial rigid chain, radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IkSolution {
    /// Base yaw about z.
    pub base_yaw: f64,
    /// Shoulder elevation from horizontal.
    pub shoulder: f64,
    /// Elbow deviation from full extension.
    pub elbow: f64,
    pub branch: ElbowBranch,
}

/// Point in the elastic chain's plane, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Joint angles of the planar elastic chain, radians; `theta2` is measured
/// relative to the first link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointVector {
    pub theta1: f64,
    pub theta2: f64,
}

impl JointVector {
    pub fn new(theta1: f64, theta2: f64) -> Self {
        Self { theta1, theta2 }
    }
}

/// Small elastic deflections of the two links: per-link translation offsets
/// (meters, link-local) and twist angles (radians), applied to first order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeflectionVector {
    pub dx1: f64,
    pub dy1: f64,
    pub dphi1: f64,
    pub dx2: f64,
    pub dy2: f64,
    pub dphi2: f64,
}

impl DeflectionVector {
    pub const ZERO: Self = Self {
        dx1: 0.0,
        dy1: 0.0,
        dphi1: 0.0,
        dx2: 0.0,
        dy2: 0.0,
        dphi2: 0.0,
    };

    /// Build a deflection vector, rejecting twist angles outside the
    /// first-order regime (|dphi| < [`MAX_DEFLECTION_ANGLE`]).
    pub fn new(
        dx1: f64,
        dy1: f64,
        dphi1: f64,
        dx2: f64,
        dy2: f64,
        dphi2: f64,
    ) -> Result<Self, KinematicsError> {
        for (axis, value) in [("dphi1", dphi1), ("dphi2", dphi2)] {
            if !value.is_finite() || value.abs() >= MAX_DEFLECTION_ANGLE {
                return Err(KinematicsError::DeflectionOutOfRange { axis, value });
            }
        }
        for (axis, value) in [("dx1", dx1), ("dy1", dy1), ("dx2", dx2), ("dy2", dy2)] {
            if !value.is_finite() {
                return Err(KinematicsError::DeflectionOutOfRange { axis, value });
            }
        }
        Ok(Self {
            dx1,
            dy1,
            dphi1,
            dx2,
            dy2,
            dphi2,
        })
    }
}

#[derive(Debug, Error)]
pub enum KinematicsError {
    #[error(
        "target ({x:.6}, {y:.6}, {z:.6}) unreachable: planar distance {distance:.9} m outside [{min_reach:.9}, {max_reach:.9}] m"
    )]
    UnreachableTarget {
        x: f64,
        y: f64,
        z: f64,
        distance: f64,
        min_reach: f64,
        max_reach: f64,
    },
    #[error(
        "unreachable: distance {distance:.9} m outside reach annulus [{min_reach:.9}, {max_reach:.9}] m"
    )]
    Unreachable {
        distance: f64,
        min_reach: f64,
        max_reach: f64,
    },
    #[error("target coincides with the shoulder pivot; joint angles are indeterminate")]
    IndeterminateTarget,
    #[error("link lengths must be positive and finite (got {l_ab}, {l_bc})")]
    BadLinkLengths { l_ab: f64, l_bc: f64 },
    #[error("{what} must be finite")]
    NonFinite { what: &'static str },
    #[error("deflection {axis} = {value} outside the first-order regime")]
    DeflectionOutOfRange { axis: &'static str, value: f64 },
    #[error(
        "elastic IK did not converge after {iterations} iterations; residual {residual:.3e} m"
    )]
    NonConvergence { iterations: usize, residual: f64 },
}

fn check_links(l_ab: f64, l_bc: f64) -> Result<(), KinematicsError> {
    if l_ab.is_finite() && l_bc.is_finite() && l_ab > 0.0 && l_bc > 0.0 {
        Ok(())
    } else {
        Err(KinematicsError::BadLinkLengths { l_ab, l_bc })
    }
}

fn check_reach(distance: f64, l_ab: f64, l_bc: f64) -> Result<(), KinematicsError> {
    let min_reach = (l_ab - l_bc).abs();
    let max_reach = l_ab + l_bc;
    if distance > max_reach + REACH_TOL || distance < min_reach - REACH_TOL {
        return Err(KinematicsError::Unreachable {
            distance,
            min_reach,
            max_reach,
        });
    }
    Ok(())
}

/// Base yaw toward the target: `atan2(y, x)`.
///
/// A target on the base axis (x = y = 0) accepts any yaw; 0 is returned.
pub fn solve_base_angle(target: &TargetPoint) -> f64 {
    if target.x == 0.0 && target.y == 0.0 {
        return 0.0;
    }
    target.y.atan2(target.x)
}

/// Solve the two-link chain in the vertical plane for in-plane radius `r` and
/// height `z`; returns `(shoulder, elbow)` on the elbow-up branch.
pub fn solve_planar_2link(
    r: f64,
    z: f64,
    l_ab: f64,
    l_bc: f64,
) -> Result<(f64, f64), KinematicsError> {
    solve_planar_2link_branch(r, z, l_ab, l_bc, ElbowBranch::Up)
}

/// As [`solve_planar_2link`] with an explicit branch choice; the down branch
/// mirrors the chain (shoulder takes the `−arccos` term, elbow is negated).
pub fn solve_planar_2link_branch(
    r: f64,
    z: f64,
    l_ab: f64,
    l_bc: f64,
    branch: ElbowBranch,
) -> Result<(f64, f64), KinematicsError> {
    check_links(l_ab, l_bc)?;
    if !r.is_finite() || !z.is_finite() {
        return Err(KinematicsError::NonFinite {
            what: "planar target",
        });
    }
    let distance = r.hypot(z);
    if distance == 0.0 {
        if (l_ab - l_bc).abs() > 0.0 {
            return Err(KinematicsError::Unreachable {
                distance,
                min_reach: (l_ab - l_bc).abs(),
                max_reach: l_ab + l_bc,
            });
        }
        return Err(KinematicsError::IndeterminateTarget);
    }
    check_reach(distance, l_ab, l_bc)?;

    let d_sq = distance * distance;
    let shoulder_arg =
        ((l_ab * l_ab - l_bc * l_bc + d_sq) / (2.0 * l_ab * distance)).clamp(-1.0, 1.0);
    let elbow_arg =
        ((l_ab * l_ab + l_bc * l_bc - d_sq) / (2.0 * l_ab * l_bc)).clamp(-1.0, 1.0);
    let lift = shoulder_arg.acos();
    let interior_complement = std::f64::consts::PI - elbow_arg.acos();
    let base = z.atan2(r);
    Ok(match branch {
        ElbowBranch::Up => (base + lift, interior_complement),
        ElbowBranch::Down => (base - lift, -interior_complement),
    })
}

/// Full closed-form IK: base yaw from (x, y), then the planar solve in the
/// (radial, z) plane. Elbow-up branch.
pub fn ik(target: &TargetPoint, l_ab: f64, l_bc: f64) -> Result<IkSolution, KinematicsError> {
    ik_with_branch(target, l_ab, l_bc, ElbowBranch::Up)
}

/// Closed-form IK with an explicit branch choice.
pub fn ik_with_branch(
    target: &TargetPoint,
    l_ab: f64,
    l_bc: f64,
    branch: ElbowBranch,
) -> Result<IkSolution, KinematicsError> {
    if !(target.x.is_finite() && target.y.is_finite() && target.z.is_finite()) {
        return Err(KinematicsError::NonFinite { what: "target" });
    }
    let base_yaw = solve_base_angle(target);
    let (shoulder, elbow) = solve_planar_2link_branch(target.radial(), target.z, l_ab, l_bc, branch)
        .map_err(|e| annotate_with_target(e, target))?;
    Ok(IkSolution {
        base_yaw,
        shoulder,
        elbow,
        branch,
    })
}

fn annotate_with_target(err: KinematicsError, target: &TargetPoint) -> KinematicsError {
    match err {
        KinematicsError::Unreachable {
            distance,
            min_reach,
            max_reach,
        } => KinematicsError::UnreachableTarget {
            x: target.x,
            y: target.y,
            z: target.z,
            distance,
            min_reach,
            max_reach,
        },
        other => other,
    }
}

/// Forward kinematics of the spatial rigid chain; the verification route for
/// [`ik`].
pub fn fk(solution: &IkSolution, l_ab: f64, l_bc: f64) -> TargetPoint {
    let radial = l_ab * solution.shoulder.cos() + l_bc * (solution.shoulder - solution.elbow).cos();
    let z = l_ab * solution.shoulder.sin() + l_bc * (solution.shoulder - solution.elbow).sin();
    TargetPoint {
        x: radial * solution.base_yaw.cos(),
        y: radial * solution.base_yaw.sin(),
        z,
    }
}

// Effective chain coefficients of the first-order deflected links: link i
// contributes (a_i, b_i) in its own frame, with second-order products of
// deflection terms dropped (sin dphi -> dphi, cos dphi -> 1).
fn deflected_coefficients(eps: &DeflectionVector, l1: f64, l2: f64) -> (f64, f64, f64, f64) {
    let a1 = l1 + eps.dx1;
    let b1 = eps.dy1;
    let a2 = l2 + eps.dx2;
    let b2 = l2 * eps.dphi1 + eps.dy2;
    (a1, b1, a2, b2)
}

/// First-order forward kinematics of the deflected planar chain.
///
/// With `eps = 0` this reduces term-for-term to the rigid planar chain
/// `(l1·cos θ1 + l2·cos(θ1+θ2), l1·sin θ1 + l2·sin(θ1+θ2))`.
pub fn elastic_fk(q: &JointVector, eps: &DeflectionVector, l1: f64, l2: f64) -> PlanarPoint {
    let (a1, b1, a2, b2) = deflected_coefficients(eps, l1, l2);
    let (s1, c1) = q.theta1.sin_cos();
    let (s12, c12) = (q.theta1 + q.theta2).sin_cos();
    PlanarPoint {
        x: a1 * c1 - b1 * s1 + a2 * c12 - b2 * s12,
        y: a1 * s1 + b1 * c1 + a2 * s12 + b2 * c12,
    }
}

/// Analytic Jacobian of [`elastic_fk`] with respect to `(theta1, theta2)`,
/// row-major `[[dx/dθ1, dx/dθ2], [dy/dθ1, dy/dθ2]]`.
pub fn elastic_jacobian(
    q: &JointVector,
    eps: &DeflectionVector,
    l1: f64,
    l2: f64,
) -> [[f64; 2]; 2] {
    let (a1, b1, a2, b2) = deflected_coefficients(eps, l1, l2);
    let (s1, c1) = q.theta1.sin_cos();
    let (s12, c12) = (q.theta1 + q.theta2).sin_cos();
    let dx_dt2 = -(a2 * s12 + b2 * c12);
    let dy_dt2 = a2 * c12 - b2 * s12;
    [
        [-(a1 * s1 + b1 * c1) + dx_dt2, dx_dt2],
        [(a1 * c1 - b1 * s1) + dy_dt2, dy_dt2],
    ]
}

/// Rigid closed-form IK of the planar chain, used to seed [`elastic_ik`].
///
/// Returns the principal branch with `theta2 = +arccos(...) ∈ [0, π]`.
pub fn planar_rigid_ik(
    p: &PlanarPoint,
    l1: f64,
    l2: f64,
) -> Result<JointVector, KinematicsError> {
    check_links(l1, l2)?;
    if !(p.x.is_finite() && p.y.is_finite()) {
        return Err(KinematicsError::NonFinite {
            what: "planar target",
        });
    }
    let distance = p.x.hypot(p.y);
    check_reach(distance, l1, l2)?;
    let elbow_cos =
        ((distance * distance - l1 * l1 - l2 * l2) / (2.0 * l1 * l2)).clamp(-1.0, 1.0);
    let theta2 = elbow_cos.acos();
    let theta1 = p.y.atan2(p.x) - (l2 * theta2.sin()).atan2(l1 + l2 * theta2.cos());
    Ok(JointVector { theta1, theta2 })
}

/// Invert the deflected planar chain by Newton iteration.
///
/// Seeded with the rigid closed form of `p` (falling back to a stretched pose
/// when `p` lies just beyond rigid reach, which the deflections may cover);
/// converges when the position residual drops below [`NEWTON_TOL`]. When the
/// iteration lands on the mirrored (negative-elbow) preimage it is re-run
/// from the reflected seed, so the principal branch is returned whenever it
/// exists.
pub fn elastic_ik(
    p: &PlanarPoint,
    eps: &DeflectionVector,
    l1: f64,
    l2: f64,
) -> Result<JointVector, KinematicsError> {
    let seed = match planar_rigid_ik(p, l1, l2) {
        Ok(seed) => seed,
        Err(KinematicsError::Unreachable { .. }) => JointVector {
            theta1: p.y.atan2(p.x),
            theta2: 0.1,
        },
        Err(other) => return Err(other),
    };

    let q = canonical_joints(newton_solve(p, eps, l1, l2, seed)?);
    if q.theta2 >= 0.0 {
        return Ok(q);
    }
    // Mirror preimage: for the rigid chain (theta1, theta2) and
    // (2*gamma - theta1, -theta2) reach the same point; use the reflection
    // as a seed for the principal branch.
    let gamma = p.y.atan2(p.x);
    let mirrored = JointVector {
        theta1: 2.0 * gamma - q.theta1,
        theta2: -q.theta2,
    };
    match newton_solve(p, eps, l1, l2, mirrored) {
        Ok(principal) => {
            let principal = canonical_joints(principal);
            if principal.theta2 >= -NEWTON_TOL {
                Ok(principal)
            } else {
                Ok(q)
            }
        }
        Err(_) => Ok(q),
    }
}

/// Wrap both joint angles into (−π, π]; the chain position is invariant
/// under full turns of either joint.
fn canonical_joints(q: JointVector) -> JointVector {
    let wrap = |angle: f64| {
        let wrapped = (angle + std::f64::consts::PI).rem_euclid(2.0 * std::f64::consts::PI)
            - std::f64::consts::PI;
        if wrapped == -std::f64::consts::PI {
            std::f64::consts::PI
        } else {
            wrapped
        }
    };
    JointVector {
        theta1: wrap(q.theta1),
        theta2: wrap(q.theta2),
    }
}

fn newton_solve(
    p: &PlanarPoint,
    eps: &DeflectionVector,
    l1: f64,
    l2: f64,
    seed: JointVector,
) -> Result<JointVector, KinematicsError> {
    let mut q = seed;
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_NEWTON_ITERS {
        let f = elastic_fk(&q, eps, l1, l2);
        let rx = p.x - f.x;
        let ry = p.y - f.y;
        residual = rx.hypot(ry);
        if residual < NEWTON_TOL {
            return Ok(q);
        }
        let j = elastic_jacobian(&q, eps, l1, l2);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-14 * (l1 * l2).max(1.0) {
            // Singular at full extension/fold; nudge the elbow and retry.
            q.theta2 += 1e-6;
            continue;
        }
        q.theta1 += (rx * j[1][1] - ry * j[0][1]) / det;
        q.theta2 += (ry * j[0][0] - rx * j[1][0]) / det;
    }
    Err(KinematicsError::NonConvergence {
        iterations: MAX_NEWTON_ITERS,
        residual,
    })
}
