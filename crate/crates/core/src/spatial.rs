//! Rotation matrices and ZYX Euler angles.
//!
//! Convention: yaw φ about z, then pitch θ about y, then roll ψ about x,
//! composed as `R = Rz(φ)·Ry(θ)·Rx(ψ)`. Extraction inverts the composition;
//! at pitch ±90° yaw and roll are indistinguishable (gimbal lock) and the
//! result is flagged, with yaw fixed to 0 and roll absorbing the remainder.

use thiserror::Error;

/// Per-entry tolerance for the orthonormality and determinant checks.
pub const ORTHONORMALITY_TOL: f64 = 1e-12;

/// Below this |cos pitch| the ZYX parameterization is treated as gimbal-locked.
pub const GIMBAL_LOCK_TOL: f64 = 1e-9;

/// Proper orthonormal 3×3 rotation, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix([[f64; 3]; 3]);

/// ZYX Euler angles, radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerZyx {
    /// φ, rotation about z.
    pub yaw: f64,
    /// θ, rotation about y.
    pub pitch: f64,
    /// ψ, rotation about x.
    pub roll: f64,
}

impl EulerZyx {
    pub fn new(yaw: f64, pitch: f64, roll: f64) -> Self {
        Self { yaw, pitch, roll }
    }
}

/// Euler extraction result; `gimbal_lock` marks the degenerate pitch = ±90°
/// case where the returned split of yaw/roll is one of infinitely many valid
/// preimages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerExtraction {
    pub angles: EulerZyx,
    pub gimbal_lock: bool,
}

#[derive(Debug, Error)]
pub enum SpatialError {
    #[error("angle must be finite (got {0})")]
    NonFiniteAngle(f64),
    #[error("matrix entry ({row},{col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("matrix is not orthonormal: |(RᵀR − I)[{row}][{col}]| = {deviation:e}")]
    NotOrthonormal {
        row: usize,
        col: usize,
        deviation: f64,
    },
    #[error("matrix determinant {det} is not +1 (improper rotation or reflection)")]
    BadDeterminant { det: f64 },
}

impl RotationMatrix {
    /// Validate a raw 3×3 array as a proper rotation (RᵀR = I and det = 1,
    /// both within `ORTHONORMALITY_TOL` per entry).
    pub fn from_rows(rows: [[f64; 3]; 3]) -> Result<Self, SpatialError> {
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(SpatialError::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                // (RᵀR)[i][j] = column i · column j
                let dot: f64 = (0..3).map(|k| rows[k][i] * rows[k][j]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                let deviation = (dot - expected).abs();
                if deviation > ORTHONORMALITY_TOL {
                    return Err(SpatialError::NotOrthonormal {
                        row: i,
                        col: j,
                        deviation,
                    });
                }
            }
        }
        let det = det3(&rows);
        if (det - 1.0).abs() > ORTHONORMALITY_TOL {
            return Err(SpatialError::BadDeterminant { det });
        }
        Ok(Self(rows))
    }

    pub fn identity() -> Self {
        Self([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    /// Entry r_ij, zero-indexed.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.0[row][col]
    }

    pub fn rows(&self) -> &[[f64; 3]; 3] {
        &self.0
    }
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn check_finite(angle: f64) -> Result<(), SpatialError> {
    if angle.is_finite() {
        Ok(())
    } else {
        Err(SpatialError::NonFiniteAngle(angle))
    }
}

/// Elementary rotation about x.
pub fn rot_x(angle: f64) -> Result<RotationMatrix, SpatialError> {
    check_finite(angle)?;
    let (s, c) = angle.sin_cos();
    Ok(RotationMatrix([
        [1.0, 0.0, 0.0],
        [0.0, c, -s],
        [0.0, s, c],
    ]))
}

/// Elementary rotation about y.
pub fn rot_y(angle: f64) -> Result<RotationMatrix, SpatialError> {
    check_finite(angle)?;
    let (s, c) = angle.sin_cos();
    Ok(RotationMatrix([
        [c, 0.0, s],
        [0.0, 1.0, 0.0],
        [-s, 0.0, c],
    ]))
}

/// Elementary rotation about z.
pub fn rot_z(angle: f64) -> Result<RotationMatrix, SpatialError> {
    check_finite(angle)?;
    let (s, c) = angle.sin_cos();
    Ok(RotationMatrix([
        [c, -s, 0.0],
        [s, c, 0.0],
        [0.0, 0.0, 1.0],
    ]))
}

/// Compose `Rz(yaw)·Ry(pitch)·Rx(roll)` via the explicit entrywise expansion.
pub fn compose_zyx(euler: &EulerZyx) -> Result<RotationMatrix, SpatialError> {
    check_finite(euler.yaw)?;
    check_finite(euler.pitch)?;
    check_finite(euler.roll)?;
    let (sy, cy) = euler.yaw.sin_cos();
    let (sp, cp) = euler.pitch.sin_cos();
    let (sr, cr) = euler.roll.sin_cos();
    Ok(RotationMatrix([
        [cp * cy, sr * sp * cy - cr * sy, cr * sp * cy + sr * sy],
        [cp * sy, sr * sp * sy + cr * cy, cr * sp * sy - sr * cy],
        [-sp, sr * cp, cr * cp],
    ]))
}

/// Recover ZYX Euler angles from a rotation matrix.
///
/// pitch = −asin(r31) with r31 clamped to [−1, 1]; away from gimbal lock
/// yaw = atan2(r21, r11) and roll = atan2(r32, r33). Composing the result
/// reproduces the input matrix (within 1e-9) in all cases, including lock.
pub fn extract_euler(r: &RotationMatrix) -> EulerExtraction {
    let m = r.rows();
    let pitch = (-m[2][0].clamp(-1.0, 1.0)).asin();
    if pitch.cos().abs() < GIMBAL_LOCK_TOL {
        // Yaw and roll act about the same axis; fix yaw = 0 and absorb the
        // remaining rotation into roll.
        let roll = if pitch > 0.0 {
            m[0][1].atan2(m[0][2])
        } else {
            (-m[0][1]).atan2(-m[0][2])
        };
        return EulerExtraction {
            angles: EulerZyx::new(0.0, pitch, canonical_pi_range(roll)),
            gimbal_lock: true,
        };
    }
    let yaw = m[1][0].atan2(m[0][0]);
    let roll = m[2][1].atan2(m[2][2]);
    EulerExtraction {
        angles: EulerZyx::new(canonical_pi_range(yaw), pitch, canonical_pi_range(roll)),
        gimbal_lock: false,
    }
}

/// Map the closed-open atan2 range [−π, π] onto the canonical (−π, π].
fn canonical_pi_range(angle: f64) -> f64 {
    if angle == -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        angle
    }
}
