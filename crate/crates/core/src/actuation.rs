//! Servo torque, power, current, and endurance budgeting.
//!
//! Torque equilibrium splits into a gravity moment `m·g·l·cos θ`, a friction
//! term `b_c + b_v·θ̇`, and a minimum lift requirement `m·l²·(ω/t) + m·g·l`.
//! Power comes in two conventions (see [`PowerConvention`]); battery endurance
//! is plain energy bookkeeping.

use std::f64::consts::PI;

use thiserror::Error;

use crate::arm_model::{ArmDescription, ServoSpec};

pub mod reference;

/// How servo speed enters the power product `P = τ·ω`.
///
/// `Paper` keeps the speed in RPM and multiplies by π directly — the
/// convention behind the stock arm's quoted power figures. `Si` converts the
/// speed to rad/s (`ω = π·n/30`) first and is dimensionally consistent.
/// For all inputs `Paper` is exactly 30 × `Si`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerConvention {
    Paper,
    Si,
}

/// Joint friction model: constant Coulomb torque plus a rate-proportional
/// viscous torque.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrictionCoeffs {
    /// Coulomb torque, N·m.
    pub coulomb: f64,
    /// Viscous coefficient, N·m·s/rad.
    pub viscous: f64,
}

impl FrictionCoeffs {
    pub const NONE: Self = Self {
        coulomb: 0.0,
        viscous: 0.0,
    };

    pub fn new(coulomb: f64, viscous: f64) -> Result<Self, ActuationError> {
        if !(coulomb.is_finite() && viscous.is_finite() && coulomb >= 0.0 && viscous >= 0.0) {
            return Err(ActuationError::NegativeFriction { coulomb, viscous });
        }
        Ok(Self { coulomb, viscous })
    }
}

/// Torque budget for one joint at one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorqueBreakdown {
    /// Gravity moment, N·m.
    pub gravity: f64,
    /// Friction torque, N·m.
    pub friction: f64,
    /// Equilibrium total, N·m; always exactly `gravity + friction`.
    pub total: f64,
    /// Minimum lift torque, N·m.
    pub minimum: f64,
}

impl TorqueBreakdown {
    pub fn new(gravity: f64, friction: f64, minimum: f64) -> Self {
        Self {
            gravity,
            friction,
            total: gravity + friction,
            minimum,
        }
    }
}

/// Power draw of one servo.
#[derive(Debug, Clone, PartialEq)]
pub struct ServoPower {
    pub name: String,
    pub power_w: f64,
    pub current_ma: f64,
}

/// Whole-arm power budget; `total_power_w` is the sum of the per-servo rows.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerBudget {
    pub per_servo: Vec<ServoPower>,
    pub total_power_w: f64,
    pub convention: PowerConvention,
}

#[derive(Debug, Error)]
pub enum ActuationError {
    #[error("ramp time must be positive (got {0})")]
    NonPositiveTime(f64),
    #[error("voltage must be positive (got {0})")]
    NonPositiveVoltage(f64),
    #[error("{what} must be positive (got {value})")]
    NonPositive { what: &'static str, value: f64 },
    #[error("duty cycle must be in (0, 1] (got {0})")]
    BadDuty(f64),
    #[error("friction coefficients must be non-negative (got b_c = {coulomb}, b_v = {viscous})")]
    NegativeFriction { coulomb: f64, viscous: f64 },
}

/// Gravity moment `m·g·l·cos θ` about a horizontal joint axis.
pub fn gravity_torque(mass: f64, length: f64, theta: f64, gravity: f64) -> f64 {
    mass * gravity * length * theta.cos()
}

/// Friction torque `b_c + b_v·θ̇`.
pub fn friction_torque(coeffs: &FrictionCoeffs, theta_dot: f64) -> f64 {
    coeffs.coulomb + coeffs.viscous * theta_dot
}

/// Minimum torque to spin the link mass up to `omega` rad/s in `ramp_time`
/// seconds while holding against gravity: `m·l²·(ω/t) + m·g·l`.
pub fn min_torque(
    mass: f64,
    length: f64,
    omega: f64,
    ramp_time: f64,
    gravity: f64,
) -> Result<f64, ActuationError> {
    if !(ramp_time.is_finite() && ramp_time > 0.0) {
        return Err(ActuationError::NonPositiveTime(ramp_time));
    }
    Ok(mass * length * length * (omega / ramp_time) + mass * gravity * length)
}

/// Full torque budget at one operating point.
pub fn torque_breakdown(
    mass: f64,
    length: f64,
    theta: f64,
    gravity: f64,
    coeffs: &FrictionCoeffs,
    theta_dot: f64,
    omega: f64,
    ramp_time: f64,
) -> Result<TorqueBreakdown, ActuationError> {
    Ok(TorqueBreakdown::new(
        gravity_torque(mass, length, theta, gravity),
        friction_torque(coeffs, theta_dot),
        min_torque(mass, length, omega, ramp_time, gravity)?,
    ))
}

/// Servo power at torque `tau` (N·m) and speed `rpm`.
pub fn servo_power(tau: f64, rpm: f64, convention: PowerConvention) -> f64 {
    let si_watts = tau * (PI * rpm / 30.0);
    match convention {
        PowerConvention::Si => si_watts,
        PowerConvention::Paper => 30.0 * si_watts,
    }
}

/// Current draw in milliamperes for `power_w` watts at `voltage_v` volts.
pub fn current_draw(power_w: f64, voltage_v: f64) -> Result<f64, ActuationError> {
    if !(voltage_v.is_finite() && voltage_v > 0.0) {
        return Err(ActuationError::NonPositiveVoltage(voltage_v));
    }
    Ok(1000.0 * power_w / voltage_v)
}

/// Angular acceleration reached when ramping to `rpm` over `ramp_time`
/// seconds: `π·n / (30·t)`, rad/s².
pub fn angular_acceleration(rpm: f64, ramp_time: f64) -> Result<f64, ActuationError> {
    if !(ramp_time.is_finite() && ramp_time > 0.0) {
        return Err(ActuationError::NonPositiveTime(ramp_time));
    }
    Ok(PI * rpm / (30.0 * ramp_time))
}

/// Per-servo power and current for a whole arm, each servo at its rated
/// torque and maximum speed.
pub fn arm_power_budget(arm: &ArmDescription, convention: PowerConvention) -> PowerBudget {
    let per_servo: Vec<ServoPower> = arm
        .joints
        .iter()
        .map(|joint| {
            let power_w = servo_power(
                joint.servo.rated_torque_nm,
                joint.servo.max_speed_rpm,
                convention,
            );
            // servo voltage is validated positive at config load
            let current_ma = current_draw(power_w, joint.servo.voltage_v)
                .expect("validated servo voltage");
            ServoPower {
                name: joint.name.clone(),
                power_w,
                current_ma,
            }
        })
        .collect();
    let total_power_w = per_servo.iter().map(|s| s.power_w).sum();
    PowerBudget {
        per_servo,
        total_power_w,
        convention,
    }
}

/// Battery endurance in hours: `(capacity·V/1000) / (P·duty)`.
pub fn endurance(
    capacity_mah: f64,
    voltage_v: f64,
    total_power_w: f64,
    duty: f64,
) -> Result<f64, ActuationError> {
    for (what, value) in [
        ("battery capacity", capacity_mah),
        ("battery voltage", voltage_v),
        ("total power", total_power_w),
    ] {
        if !(value.is_finite() && value > 0.0) {
            return Err(ActuationError::NonPositive { what, value });
        }
    }
    if !(duty.is_finite() && duty > 0.0 && duty <= 1.0) {
        return Err(ActuationError::BadDuty(duty));
    }
    Ok((capacity_mah / 1000.0 * voltage_v) / (total_power_w * duty))
}

/// Commanded angle after `pulses` pulses: quantized by the servo's per-pulse
/// step and clamped to its rotation range. Degrees.
pub fn pulse_to_angle(servo: &ServoSpec, pulses: u32) -> f64 {
    (f64::from(pulses) * servo.deg_per_pulse).min(servo.rotation_range_deg)
}
