//! Second-order damped-oscillation simulation and damping metrics.
//!
//! The plant is the canonical unit-gain second-order system
//! `x¨ + 2ζω_n x˙ + ω_n² x = ω_n² u` driven by a step of configurable
//! amplitude, integrated with fixed-step RK4 for bit-deterministic output.
//! From the trajectory the usual step-response metrics are extracted:
//! overshoot, settling time, a log-decrement damping estimate, and the
//! per-cycle amplitude decay implied by that estimate.

use thiserror::Error;

/// Band used for the settling-time metric when no other is requested (2%).
pub const DEFAULT_SETTLING_BAND: f64 = 0.02;

/// Parameters of one step-response experiment.
///
/// Validated on construction: everything finite, `omega_n > 0`, `zeta ≥ 0`,
/// nonzero step, `dt > 0`, and `dt ≤ duration/100` so the trajectory resolves
/// the response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondOrderParams {
    omega_n: f64,
    zeta: f64,
    step_amplitude: f64,
    dt: f64,
    duration: f64,
}

impl SecondOrderParams {
    pub fn new(
        omega_n: f64,
        zeta: f64,
        step_amplitude: f64,
        dt: f64,
        duration: f64,
    ) -> Result<Self, OscillationError> {
        if !(omega_n.is_finite() && omega_n > 0.0) {
            return Err(OscillationError::NonPositive {
                what: "natural frequency",
                value: omega_n,
            });
        }
        if !(zeta.is_finite() && zeta >= 0.0) {
            return Err(OscillationError::BadDampingRatio(zeta));
        }
        if !(step_amplitude.is_finite() && step_amplitude != 0.0) {
            return Err(OscillationError::BadStepAmplitude(step_amplitude));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(OscillationError::NonPositive {
                what: "dt",
                value: dt,
            });
        }
        if !(duration.is_finite() && duration > 0.0) {
            return Err(OscillationError::NonPositive {
                what: "duration",
                value: duration,
            });
        }
        if dt > duration / 100.0 {
            return Err(OscillationError::DtTooCoarse { dt, duration });
        }
        Ok(Self {
            omega_n,
            zeta,
            step_amplitude,
            dt,
            duration,
        })
    }

    pub fn omega_n(&self) -> f64 {
        self.omega_n
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn step_amplitude(&self) -> f64 {
        self.step_amplitude
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }
}

/// Simulated trajectory plus the metrics extracted from it.
///
/// Metrics that are undefined for the trajectory (no settling within the
/// duration, too few peaks for a damping estimate) are `None`; the
/// corresponding standalone functions report the precise error.
#[derive(Debug, Clone, PartialEq)]
pub struct StepResponse {
    /// (t, x) samples, strictly increasing in t.
    pub samples: Vec<(f64, f64)>,
    /// Steady-state target (the step amplitude).
    pub final_value: f64,
    pub overshoot_pct: f64,
    pub settling_time_s: Option<f64>,
    pub zeta_estimate: Option<f64>,
    pub per_cycle_decay_pct: Option<f64>,
}

#[derive(Debug, Error)]
pub enum OscillationError {
    #[error("{what} must be positive and finite (got {value})")]
    NonPositive { what: &'static str, value: f64 },
    #[error("damping ratio must be non-negative and finite (got {0})")]
    BadDampingRatio(f64),
    #[error("step amplitude must be nonzero and finite (got {0})")]
    BadStepAmplitude(f64),
    #[error("dt = {dt} is too coarse for duration {duration}; need dt <= duration/100")]
    DtTooCoarse { dt: f64, duration: f64 },
    #[error("feedback gain must be non-negative and finite (got {0})")]
    BadFeedbackGain(f64),
    #[error("settling band must be in (0, 1) (got {0})")]
    BadBand(f64),
    #[error("response has no samples")]
    EmptyResponse,
    #[error("final value is zero; overshoot percentage undefined")]
    ZeroFinalValue,
    #[error("response never settles into the {band_pct}% band within the simulated duration")]
    NeverSettles { band_pct: f64 },
    #[error("insufficient peaks: need two successive maxima above the final value for a log-decrement estimate")]
    InsufficientPeaks,
    #[error("per-cycle decay is defined for 0 <= zeta < 1 (got {0})")]
    DecayUndefined(f64),
}

fn rk4_step(x: f64, v: f64, dt: f64, accel: impl Fn(f64, f64) -> f64) -> (f64, f64) {
    let k1x = v;
    let k1v = accel(x, v);
    let k2x = v + 0.5 * dt * k1v;
    let k2v = accel(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v);
    let k3x = v + 0.5 * dt * k2v;
    let k3v = accel(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v);
    let k4x = v + dt * k3v;
    let k4v = accel(x + dt * k3x, v + dt * k3v);
    (
        x + dt * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0,
        v + dt * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0,
    )
}

/// Integrate the step response from rest and extract metrics.
///
/// Fixed-step RK4 from `x(0) = x˙(0) = 0`; identical parameters produce
/// bit-identical output.
pub fn simulate_step(params: &SecondOrderParams) -> StepResponse {
    let omega_sq = params.omega_n * params.omega_n;
    let two_zeta_omega = 2.0 * params.zeta * params.omega_n;
    let u = params.step_amplitude;
    let accel = |x: f64, v: f64| omega_sq * (u - x) - two_zeta_omega * v;

    let steps = (params.duration / params.dt).round() as usize;
    let mut samples = Vec::with_capacity(steps + 1);
    let (mut x, mut v) = (0.0, 0.0);
    samples.push((0.0, x));
    for k in 1..=steps {
        (x, v) = rk4_step(x, v, params.dt, accel);
        samples.push((k as f64 * params.dt, x));
    }

    let mut resp = StepResponse {
        samples,
        final_value: u,
        overshoot_pct: 0.0,
        settling_time_s: None,
        zeta_estimate: None,
        per_cycle_decay_pct: None,
    };
    resp.overshoot_pct = overshoot(&resp).expect("nonzero step amplitude");
    resp.settling_time_s = settling_time(&resp, DEFAULT_SETTLING_BAND).ok();
    resp.zeta_estimate = log_decrement_zeta(&resp).ok();
    resp.per_cycle_decay_pct = resp.zeta_estimate.and_then(|z| per_cycle_decay(z).ok());
    resp
}

/// Peak excess over the final value, percent: `100·max(0, max x − x_f)/x_f`.
pub fn overshoot(resp: &StepResponse) -> Result<f64, OscillationError> {
    if resp.samples.is_empty() {
        return Err(OscillationError::EmptyResponse);
    }
    if resp.final_value == 0.0 {
        return Err(OscillationError::ZeroFinalValue);
    }
    let max_x = resp
        .samples
        .iter()
        .map(|&(_, x)| x)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(100.0 * (max_x - resp.final_value).max(0.0) / resp.final_value)
}

/// First time after which every remaining sample stays within
/// `band·|x_f|` of the final value.
pub fn settling_time(resp: &StepResponse, band: f64) -> Result<f64, OscillationError> {
    if resp.samples.is_empty() {
        return Err(OscillationError::EmptyResponse);
    }
    if !(band.is_finite() && band > 0.0 && band < 1.0) {
        return Err(OscillationError::BadBand(band));
    }
    let tol = band * resp.final_value.abs();
    let mut last_outside = None;
    for (i, &(_, x)) in resp.samples.iter().enumerate() {
        if (x - resp.final_value).abs() > tol {
            last_outside = Some(i);
        }
    }
    match last_outside {
        None => Ok(0.0),
        Some(i) if i + 1 == resp.samples.len() => Err(OscillationError::NeverSettles {
            band_pct: band * 100.0,
        }),
        Some(i) => Ok(resp.samples[i + 1].0),
    }
}

/// Damping ratio identified from the first two same-side peaks:
/// `δ = ln(A_k/A_{k+1})`, `ζ = δ/√(4π² + δ²)`.
pub fn log_decrement_zeta(resp: &StepResponse) -> Result<f64, OscillationError> {
    if resp.samples.is_empty() {
        return Err(OscillationError::EmptyResponse);
    }
    let mut amplitudes = Vec::new();
    for window in resp.samples.windows(3) {
        let (x_prev, x, x_next) = (window[0].1, window[1].1, window[2].1);
        if x > x_prev && x > x_next && x > resp.final_value {
            amplitudes.push(x - resp.final_value);
            if amplitudes.len() == 2 {
                break;
            }
        }
    }
    if amplitudes.len() < 2 {
        return Err(OscillationError::InsufficientPeaks);
    }
    let delta = (amplitudes[0] / amplitudes[1]).ln();
    Ok(delta / (4.0 * std::f64::consts::PI.powi(2) + delta * delta).sqrt())
}

/// Amplitude lost per oscillation cycle at damping ratio `zeta`, percent:
/// `100·(1 − exp(−2πζ/√(1−ζ²)))`.
pub fn per_cycle_decay(zeta: f64) -> Result<f64, OscillationError> {
    if !(zeta.is_finite() && (0.0..1.0).contains(&zeta)) {
        return Err(OscillationError::DecayUndefined(zeta));
    }
    let delta = 2.0 * std::f64::consts::PI * zeta / (1.0 - zeta * zeta).sqrt();
    Ok(100.0 * (1.0 - (-delta).exp()))
}

/// Model of acceleration-signal feedback as an added damping channel:
/// returns the same plant with `ζ' = ζ + gain·ω_n`. `gain = 0` is the
/// identity.
pub fn apply_accel_feedback(
    params: &SecondOrderParams,
    gain: f64,
) -> Result<SecondOrderParams, OscillationError> {
    if !(gain.is_finite() && gain >= 0.0) {
        return Err(OscillationError::BadFeedbackGain(gain));
    }
    SecondOrderParams::new(
        params.omega_n,
        params.zeta + gain * params.omega_n,
        params.step_amplitude,
        params.dt,
        params.duration,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params(zeta: f64) -> SecondOrderParams {
        SecondOrderParams::new(2.0 * PI, zeta, 1.0, 1e-4, 10.0).unwrap()
    }

    /// Closed-form overshoot of the underdamped second-order step response.
    fn overshoot_formula(zeta: f64) -> f64 {
        100.0 * (-PI * zeta / (1.0 - zeta * zeta).sqrt()).exp()
    }

    #[test]
    fn params_validation() {
        assert!(SecondOrderParams::new(0.0, 0.5, 1.0, 1e-4, 10.0).is_err());
        assert!(SecondOrderParams::new(1.0, -0.1, 1.0, 1e-4, 10.0).is_err());
        assert!(SecondOrderParams::new(1.0, 0.5, 0.0, 1e-4, 10.0).is_err());
        assert!(matches!(
            SecondOrderParams::new(1.0, 0.5, 1.0, 0.5, 10.0),
            Err(OscillationError::DtTooCoarse { .. })
        ));
    }

    #[test]
    fn overshoot_tracks_closed_form_at_half_damping() {
        let resp = simulate_step(&params(0.5));
        assert!(
            (resp.overshoot_pct - overshoot_formula(0.5)).abs() < 0.5,
            "simulated {} vs formula {}",
            resp.overshoot_pct,
            overshoot_formula(0.5)
        );
        assert!((resp.overshoot_pct - 16.30).abs() < 0.5);
    }

    #[test]
    fn overdamped_response_never_crosses_final_value() {
        let resp = simulate_step(&params(1.5));
        assert!(resp.overshoot_pct <= 1e-7, "overshoot {}", resp.overshoot_pct);
    }

    #[test]
    fn undamped_oscillation_conserves_amplitude() {
        let p = SecondOrderParams::new(2.0 * PI, 0.0, 1.0, 1e-4, 20.0).unwrap();
        let resp = simulate_step(&p);
        // collect peak amplitudes above the final value
        let peaks: Vec<f64> = resp
            .samples
            .windows(3)
            .filter(|w| w[1].1 > w[0].1 && w[1].1 > w[2].1)
            .map(|w| w[1].1 - resp.final_value)
            .collect();
        assert!(peaks.len() >= 15);
        let (first, last) = (peaks[0], *peaks.last().unwrap());
        assert!(
            ((first - last) / first).abs() < 1e-3,
            "first {first} vs last {last}"
        );
        assert!(matches!(
            settling_time(&resp, DEFAULT_SETTLING_BAND),
            Err(OscillationError::NeverSettles { .. })
        ));
    }

    #[test]
    fn critical_damping_settles_faster_than_heavy_overdamping() {
        let s1 = simulate_step(&params(1.0)).settling_time_s.unwrap();
        let s3 = simulate_step(&params(3.0)).settling_time_s.unwrap();
        assert!(s1 < s3, "zeta=1 settles in {s1}, zeta=3 in {s3}");
    }

    #[test]
    fn constant_trace_settles_immediately() {
        let resp = StepResponse {
            samples: vec![(0.0, 1.0), (0.1, 1.0), (0.2, 1.0)],
            final_value: 1.0,
            overshoot_pct: 0.0,
            settling_time_s: None,
            zeta_estimate: None,
            per_cycle_decay_pct: None,
        };
        assert_eq!(settling_time(&resp, DEFAULT_SETTLING_BAND).unwrap(), 0.0);
        assert_eq!(overshoot(&resp).unwrap(), 0.0);
    }

    #[test]
    fn overshoot_is_plain_peak_arithmetic() {
        let resp = StepResponse {
            samples: vec![(0.0, 0.0), (1.0, 1.163), (2.0, 1.0)],
            final_value: 1.0,
            overshoot_pct: 0.0,
            settling_time_s: None,
            zeta_estimate: None,
            per_cycle_decay_pct: None,
        };
        assert!((overshoot(&resp).unwrap() - 16.3).abs() < 1e-12);

        let zeroed = StepResponse {
            final_value: 0.0,
            ..resp
        };
        assert!(matches!(
            overshoot(&zeroed),
            Err(OscillationError::ZeroFinalValue)
        ));
    }

    #[test]
    fn log_decrement_recovers_simulated_damping() {
        for zeta in [0.1, 0.5] {
            let est = simulate_step(&params(zeta)).zeta_estimate.unwrap();
            assert!(
                (est - zeta).abs() / zeta < 0.02,
                "zeta {zeta} estimated as {est}"
            );
        }
        let est = simulate_step(&params(0.1)).zeta_estimate.unwrap();
        assert!((0.098..=0.102).contains(&est));
    }

    #[test]
    fn log_decrement_needs_two_peaks() {
        assert!(matches!(
            log_decrement_zeta(&simulate_step(&params(1.5))),
            Err(OscillationError::InsufficientPeaks)
        ));
    }

    #[test]
    fn per_cycle_decay_values() {
        assert_eq!(per_cycle_decay(0.0).unwrap(), 0.0);
        // zeta consistent with a 2.1% per-cycle amplitude loss
        assert!((per_cycle_decay(0.003378).unwrap() - 2.1).abs() < 0.01);
        assert!((per_cycle_decay(0.5).unwrap() - 97.34200665235805).abs() < 1e-9);
        assert!(per_cycle_decay(1.0).is_err());
        assert!(per_cycle_decay(-0.1).is_err());
    }

    #[test]
    fn feedback_gain_zero_is_identity() {
        let p = params(0.3);
        let same = apply_accel_feedback(&p, 0.0).unwrap();
        assert_eq!(p, same);
        assert!(apply_accel_feedback(&p, -0.1).is_err());
    }

    #[test]
    fn feedback_raises_damping_and_cuts_overshoot() {
        let base = params(0.1);
        let mut previous = f64::INFINITY;
        for gain in [0.0, 0.02, 0.04] {
            let boosted = apply_accel_feedback(&base, gain).unwrap();
            assert!((boosted.zeta() - (0.1 + gain * base.omega_n())).abs() < 1e-15);
            let ov = simulate_step(&boosted).overshoot_pct;
            assert!(ov < previous, "gain {gain}: overshoot {ov} !< {previous}");
            previous = ov;
        }
    }

    #[test]
    fn damping_regime_transition_reduces_oscillation() {
        // Slow overdamped creep versus the underdamped retuning: the
        // underdamped run settles sooner and accumulates less absolute
        // deviation, at the cost of a finite overshoot.
        let overdamped = simulate_step(&params(2.0));
        let underdamped = simulate_step(&params(0.4));
        let iae = |resp: &StepResponse| -> f64 {
            resp.samples
                .iter()
                .map(|&(_, x)| (x - resp.final_value).abs() * 1e-4)
                .sum()
        };
        assert!(underdamped.settling_time_s.unwrap() < overdamped.settling_time_s.unwrap());
        assert!(iae(&underdamped) < iae(&overdamped));
        assert_eq!(overdamped.overshoot_pct, 0.0);
        assert!(underdamped.overshoot_pct > 20.0);
    }

    #[test]
    fn simulation_is_bit_deterministic() {
        let a = simulate_step(&params(0.37));
        let b = simulate_step(&params(0.37));
        assert_eq!(a.samples, b.samples);
        assert_eq!(a.overshoot_pct, b.overshoot_pct);
    }

    #[test]
    fn halving_dt_barely_moves_the_overshoot() {
        let coarse = simulate_step(&SecondOrderParams::new(2.0 * PI, 0.5, 1.0, 1e-4, 10.0).unwrap());
        let fine = simulate_step(&SecondOrderParams::new(2.0 * PI, 0.5, 1.0, 5e-5, 10.0).unwrap());
        assert!(
            (coarse.overshoot_pct - fine.overshoot_pct).abs() < 1e-6,
            "coarse {} vs fine {}",
            coarse.overshoot_pct,
            fine.overshoot_pct
        );
    }
}
