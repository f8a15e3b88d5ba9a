//! Arm description: joints, links, servos, and config ingestion.
//!
//! The config format is a JSON document (schema below); [`load_arm`] parses and
//! validates it into an immutable [`ArmDescription`]. Validation errors carry
//! the offending field path so a bad document can be fixed without guesswork.
//!
//! ```json
//! {
//!   "name": "...",
//!   "gravity_mps2": 9.80665,
//!   "battery": { "capacity_mah": 20000.0, "voltage_v": 24.0 },
//!   "joints": [
//!     {
//!       "name": "Base",
//!       "kind": "planar",
//!       "link": { "length_m": 0.065, "mass_kg": 0.56 },
//!       "servo": {
//!         "rated_torque_nm": 1.3056,
//!         "max_speed_rpm": 87.0,
//!         "rotation_range_deg": 355.0,
//!         "deg_per_pulse": 25.0,
//!         "voltage_v": 24.0
//!       }
//!     }
//!   ]
//! }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Standard gravity, m/s²; used when a config omits `gravity_mps2`.
pub const STANDARD_GRAVITY: f64 = 9.80665;

/// Kinematic pair classification of a joint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JointKind {
    Planar,
    Cylindrical,
    Prismatic,
    Revolute,
}

/// Freedom count of a single joint of the given kind.
///
/// Planar pairs allow two in-plane translations plus one rotation; cylindrical
/// pairs one rotation plus one translation along the same axis; prismatic and
/// revolute pairs a single translation or rotation.
pub fn joint_freedoms(kind: JointKind) -> u32 {
    match kind {
        JointKind::Planar => 3,
        JointKind::Cylindrical => 2,
        JointKind::Prismatic => 1,
        JointKind::Revolute => 1,
    }
}

/// Servo motor ratings for one joint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ServoSpec {
    /// Rated torque, N·m (> 0).
    pub rated_torque_nm: f64,
    /// Maximum speed, RPM (> 0).
    pub max_speed_rpm: f64,
    /// Usable rotation range, degrees in (0, 360].
    pub rotation_range_deg: f64,
    /// Rotation produced by one command pulse, degrees (> 0, ≤ range).
    pub deg_per_pulse: f64,
    /// Supply voltage, volts (> 0).
    pub voltage_v: f64,
}

/// Rigid link carried by one joint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkSpec {
    /// Link length, meters (≥ 0).
    pub length_m: f64,
    /// Lumped mass, kilograms (≥ 0).
    pub mass_kg: f64,
}

/// Battery pack feeding the servos.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatterySpec {
    /// Capacity, mAh (> 0).
    pub capacity_mah: f64,
    /// Nominal voltage, volts (> 0).
    pub voltage_v: f64,
}

/// One joint entry: name, pair kind, attached link, and driving servo.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointEntry {
    pub name: String,
    pub kind: JointKind,
    pub link: LinkSpec,
    pub servo: ServoSpec,
}

/// Complete, validated arm description.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmDescription {
    pub name: String,
    #[serde(default = "default_gravity")]
    pub gravity_mps2: f64,
    pub battery: BatterySpec,
    pub joints: Vec<JointEntry>,
}

fn default_gravity() -> f64 {
    STANDARD_GRAVITY
}

impl ArmDescription {
    /// Freedom count of each joint, in declaration order.
    pub fn joint_freedoms(&self) -> Vec<u32> {
        self.joints.iter().map(|j| joint_freedoms(j.kind)).collect()
    }

    /// Serialize back to the config JSON schema (pretty-printed).
    pub fn to_config_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("arm description serializes")
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("{path}: non-positive physical quantity ({value})")]
    NonPositive { path: String, value: f64 },
    #[error("{path}: negative physical quantity ({value})")]
    Negative { path: String, value: f64 },
    #[error("{path}: value must be finite")]
    NonFinite { path: String },
    #[error("{path}: rotation_range_deg must be in (0, 360] (got {value})")]
    RangeOutOfBounds { path: String, value: f64 },
    #[error("{path}: deg_per_pulse ({deg_per_pulse}) exceeds rotation_range_deg ({range})")]
    PulseExceedsRange {
        path: String,
        deg_per_pulse: f64,
        range: f64,
    },
    #[error("joints[{index}].name: duplicate joint name \"{name}\"")]
    DuplicateJointName { index: usize, name: String },
    #[error("joints: at least one joint is required")]
    NoJoints,
}

/// Parse and validate an arm config document.
///
/// Accepted documents round-trip: serializing the result and parsing it again
/// yields an equal [`ArmDescription`]. Key order in the document is irrelevant.
pub fn load_arm(config_text: &str) -> Result<ArmDescription, ConfigError> {
    let mut de = serde_json::Deserializer::from_str(config_text);
    let arm: ArmDescription = serde_path_to_error::deserialize(&mut de)
        .map_err(|e| ConfigError::Parse(format!("{}: {}", e.path(), e.inner())))?;
    validate(&arm)?;
    Ok(arm)
}

fn validate(arm: &ArmDescription) -> Result<(), ConfigError> {
    require_positive("gravity_mps2", arm.gravity_mps2)?;
    require_positive("battery.capacity_mah", arm.battery.capacity_mah)?;
    require_positive("battery.voltage_v", arm.battery.voltage_v)?;

    if arm.joints.is_empty() {
        return Err(ConfigError::NoJoints);
    }
    for (i, joint) in arm.joints.iter().enumerate() {
        if arm.joints[..i].iter().any(|other| other.name == joint.name) {
            return Err(ConfigError::DuplicateJointName {
                index: i,
                name: joint.name.clone(),
            });
        }
        let p = |field: &str| format!("joints[{i}].{field}");
        require_non_negative(&p("link.length_m"), joint.link.length_m)?;
        require_non_negative(&p("link.mass_kg"), joint.link.mass_kg)?;

        let s = &joint.servo;
        require_positive(&p("servo.rated_torque_nm"), s.rated_torque_nm)?;
        require_positive(&p("servo.max_speed_rpm"), s.max_speed_rpm)?;
        require_positive(&p("servo.deg_per_pulse"), s.deg_per_pulse)?;
        require_positive(&p("servo.voltage_v"), s.voltage_v)?;
        if !s.rotation_range_deg.is_finite() {
            return Err(ConfigError::NonFinite {
                path: p("servo.rotation_range_deg"),
            });
        }
        if s.rotation_range_deg <= 0.0 || s.rotation_range_deg > 360.0 {
            return Err(ConfigError::RangeOutOfBounds {
                path: p("servo.rotation_range_deg"),
                value: s.rotation_range_deg,
            });
        }
        if s.deg_per_pulse > s.rotation_range_deg {
            return Err(ConfigError::PulseExceedsRange {
                path: p("servo.deg_per_pulse"),
                deg_per_pulse: s.deg_per_pulse,
                range: s.rotation_range_deg,
            });
        }
    }
    Ok(())
}

fn require_positive(path: &str, value: f64) -> Result<(), ConfigError> {
    if !value.is_finite() {
        return Err(ConfigError::NonFinite { path: path.into() });
    }
    if value <= 0.0 {
        return Err(ConfigError::NonPositive {
            path: path.into(),
            value,
        });
    }
    Ok(())
}

fn require_non_negative(path: &str, value: f64) -> Result<(), ConfigError> {
    if !value.is_finite() {
        return Err(ConfigError::NonFinite { path: path.into() });
    }
    if value < 0.0 {
        return Err(ConfigError::Negative {
            path: path.into(),
            value,
        });
    }
    Ok(())
}
