//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured figures (visible with `--nocapture`).

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sigma_arm::actuation::{
    endurance, min_torque, reference, servo_power, PowerConvention,
};
use sigma_arm::kinematics::{
    elastic_fk, elastic_ik, elastic_jacobian, fk, ik, DeflectionVector, JointVector, TargetPoint,
};
use sigma_arm::mobility::{grubler_dof, MechanismTopology, MotionSpace};
use sigma_arm::oscillation::{
    apply_accel_feedback, per_cycle_decay, simulate_step, SecondOrderParams,
};
use sigma_arm::spatial::{compose_zyx, extract_euler, EulerZyx};

fn wrap_angle_diff(a: f64, b: f64) -> f64 {
    (a - b + PI).rem_euclid(2.0 * PI) - PI
}

/// Criterion 1: 10,000 uniformly sampled reachable targets over random link
/// lengths in [0.1, 2] m close the fk∘ik loop within 1e-9·(L_AB+L_BC), in
/// under 5 seconds.
#[test]
fn criterion_1_ik_round_trip() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA1);
    let mut worst_ratio: f64 = 0.0;
    let mut accepted = 0usize;
    while accepted < 10_000 {
        let l_ab: f64 = rng.random_range(0.1..2.0);
        let l_bc: f64 = rng.random_range(0.1..2.0);
        let reach = l_ab + l_bc;
        let min_reach = (l_ab - l_bc).abs();
        // uniform over the reachable annulus shell by cube rejection
        let x: f64 = rng.random_range(-reach..reach);
        let y: f64 = rng.random_range(-reach..reach);
        let z: f64 = rng.random_range(-reach..reach);
        let d = (x * x + y * y + z * z).sqrt();
        if d < min_reach.max(1e-6) || d > reach {
            continue;
        }
        accepted += 1;
        let target = TargetPoint::new(x, y, z);
        let solution = ik(&target, l_ab, l_bc).expect("sampled target is reachable");
        let back = fk(&solution, l_ab, l_bc);
        let residual = ((back.x - x).powi(2) + (back.y - y).powi(2) + (back.z - z).powi(2)).sqrt();
        let ratio = residual / (1e-9 * reach);
        assert!(
            ratio <= 1.0,
            "residual {residual} exceeds 1e-9*reach for links ({l_ab}, {l_bc})"
        );
        worst_ratio = worst_ratio.max(ratio);
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 1 PASS: 10000 ik/fk round trips, worst residual {:.2e} of budget, {:.2} s",
        worst_ratio,
        elapsed.as_secs_f64()
    );
}

/// Criterion 2: composed rotations orthonormal to 1e-12; angle round trip to
/// 1e-9 away from gimbal lock over 10,000 samples; matrix round trip to 1e-9
/// including forced gimbal lock.
#[test]
fn criterion_2_rotation_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA2);
    let mut worst_ortho: f64 = 0.0;
    let mut worst_angle: f64 = 0.0;
    let mut worst_matrix: f64 = 0.0;

    for sample in 0..10_000 {
        let yaw = rng.random_range(-PI + 1e-6..PI - 1e-6);
        let pitch = rng.random_range(-FRAC_PI_2 + 0.01..FRAC_PI_2 - 0.01);
        let roll = rng.random_range(-PI + 1e-6..PI - 1e-6);
        let r = compose_zyx(&EulerZyx::new(yaw, pitch, roll)).unwrap();

        // orthonormality and determinant, checked from scratch
        let m = r.rows();
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| m[k][i] * m[k][j]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                worst_ortho = worst_ortho.max((dot - expected).abs());
            }
        }
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        worst_ortho = worst_ortho.max((det - 1.0).abs());

        // angle round trip away from lock
        let e = extract_euler(&r);
        assert!(!e.gimbal_lock, "sample {sample} flagged as locked");
        worst_angle = worst_angle
            .max((e.angles.yaw - yaw).abs())
            .max((e.angles.pitch - pitch).abs())
            .max((e.angles.roll - roll).abs());

        // matrix round trip, alternating between free and forced-lock pitch
        let pitch_rt = if sample % 2 == 0 {
            FRAC_PI_2.copysign(pitch)
        } else {
            rng.random_range(-FRAC_PI_2..FRAC_PI_2)
        };
        let locked = compose_zyx(&EulerZyx::new(yaw, pitch_rt, roll)).unwrap();
        let back = compose_zyx(&extract_euler(&locked).angles).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                worst_matrix = worst_matrix.max((back.rows()[i][j] - locked.rows()[i][j]).abs());
            }
        }
    }
    assert!(worst_ortho <= 1e-12, "orthonormality deviation {worst_ortho:e}");
    assert!(worst_angle <= 1e-9, "angle round-trip error {worst_angle:e}");
    assert!(worst_matrix <= 1e-9, "matrix round-trip error {worst_matrix:e}");
    println!(
        "ACCEPTANCE 2 PASS: orthonormality {worst_ortho:.2e}, angle round trip {worst_angle:.2e}, matrix round trip {worst_matrix:.2e}"
    );
}

/// Criterion 3: mobility regression values exact; algebraic identity over
/// 1,000 random topologies.
#[test]
fn criterion_3_mobility_regression() {
    let four_bar = MechanismTopology::new(MotionSpace::Planar, 4, vec![1; 4]).unwrap();
    assert_eq!(grubler_dof(&four_bar), 1);

    let serial_6r = MechanismTopology::new(MotionSpace::Spatial, 7, vec![1; 6]).unwrap();
    assert_eq!(grubler_dof(&serial_6r), 6);

    let free_joints = MechanismTopology::new(MotionSpace::Spatial, 5, vec![6; 5]).unwrap();
    assert_eq!(grubler_dof(&free_joints), 24);

    let mut rng = ChaCha8Rng::seed_from_u64(0xA3);
    for _ in 0..1_000 {
        let space = if rng.random_bool(0.5) {
            MotionSpace::Planar
        } else {
            MotionSpace::Spatial
        };
        let lambda = space.parameter();
        let n_links = rng.random_range(2u32..50);
        let k = rng.random_range(0usize..15);
        let freedoms: Vec<u32> = (0..k)
            .map(|_| rng.random_range(1..=lambda as u32))
            .collect();
        let f_sum: i64 = freedoms.iter().map(|&f| i64::from(f)).sum();
        let topology = MechanismTopology::new(space, n_links, freedoms).unwrap();
        let direct = grubler_dof(&topology);
        let alternate = lambda * (i64::from(n_links) - 1 - k as i64) + f_sum;
        assert_eq!(direct, alternate);
    }
    println!("ACCEPTANCE 3 PASS: four-bar=1, serial 6R=6, five free joints=24, identity over 1000 topologies");
}

/// Criterion 4: elastic_fk(q, 0) is exactly the rigid planar chain; elastic
/// round trip within 1e-8 for |eps| <= 0.01; analytic Jacobian matches
/// central differences within 1e-6 relative at 100 random points.
#[test]
fn criterion_4_elastic_kinematics() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA4);

    for _ in 0..1_000 {
        let q = JointVector::new(rng.random_range(-PI..PI), rng.random_range(-PI..PI));
        let (l1, l2) = (rng.random_range(0.1..2.0), rng.random_range(0.1..2.0));
        let elastic = elastic_fk(&q, &DeflectionVector::ZERO, l1, l2);
        let rigid_x = l1 * q.theta1.cos() + l2 * (q.theta1 + q.theta2).cos();
        let rigid_y = l1 * q.theta1.sin() + l2 * (q.theta1 + q.theta2).sin();
        assert_eq!(elastic.x, rigid_x);
        assert_eq!(elastic.y, rigid_y);
    }

    let mut worst_round_trip: f64 = 0.0;
    for _ in 0..1_000 {
        let q_true = JointVector::new(
            rng.random_range(-PI..PI),
            rng.random_range(0.05..PI - 0.05),
        );
        let eps = DeflectionVector::new(
            rng.random_range(-0.01..0.01),
            rng.random_range(-0.01..0.01),
            rng.random_range(-0.01..0.01),
            rng.random_range(-0.01..0.01),
            rng.random_range(-0.01..0.01),
            rng.random_range(-0.01..0.01),
        )
        .unwrap();
        let (l1, l2) = (rng.random_range(0.5..2.0), rng.random_range(0.5..2.0));
        let p = elastic_fk(&q_true, &eps, l1, l2);
        let q = elastic_ik(&p, &eps, l1, l2).expect("target built by elastic_fk");
        let err = wrap_angle_diff(q.theta1, q_true.theta1)
            .abs()
            .max(wrap_angle_diff(q.theta2, q_true.theta2).abs());
        assert!(err <= 1e-8, "round-trip error {err:e} at q = {q_true:?}");
        worst_round_trip = worst_round_trip.max(err);
    }

    let mut worst_jacobian: f64 = 0.0;
    let h = 1e-6;
    for _ in 0..100 {
        let q = JointVector::new(rng.random_range(-PI..PI), rng.random_range(-PI..PI));
        let eps = DeflectionVector::new(
            rng.random_range(-0.01..0.01),
            rng.random_range(-0.01..0.01),
            rng.random_range(-0.05..0.05),
            rng.random_range(-0.01..0.01),
            rng.random_range(-0.01..0.01),
            rng.random_range(-0.05..0.05),
        )
        .unwrap();
        let (l1, l2) = (rng.random_range(0.5..1.5), rng.random_range(0.5..1.5));
        let analytic = elastic_jacobian(&q, &eps, l1, l2);
        let scale = analytic
            .iter()
            .flatten()
            .fold(1.0f64, |acc, v| acc.max(v.abs()));
        for col in 0..2 {
            let (mut plus, mut minus) = (q, q);
            if col == 0 {
                plus.theta1 += h;
                minus.theta1 -= h;
            } else {
                plus.theta2 += h;
                minus.theta2 -= h;
            }
            let fp = elastic_fk(&plus, &eps, l1, l2);
            let fm = elastic_fk(&minus, &eps, l1, l2);
            let fd = [(fp.x - fm.x) / (2.0 * h), (fp.y - fm.y) / (2.0 * h)];
            for row in 0..2 {
                let rel = (analytic[row][col] - fd[row]).abs() / scale;
                assert!(rel <= 1e-6, "Jacobian mismatch {rel:e}");
                worst_jacobian = worst_jacobian.max(rel);
            }
        }
    }
    println!(
        "ACCEPTANCE 4 PASS: zero-deflection identity exact, round trip worst {worst_round_trip:.2e} rad, Jacobian worst {worst_jacobian:.2e} rel"
    );
}

/// Criterion 5: actuation numerics, including the documented deltas against
/// the quoted figures.
#[test]
fn criterion_5_actuation_numerics() {
    let torque = min_torque(0.5, 0.2, 2.0, 1.0, 9.81).unwrap();
    assert!((torque - 1.021).abs() <= 1e-12, "min torque {torque}");

    let base_paper_w = servo_power(1.3056, 87.0, PowerConvention::Paper);
    assert!(
        (base_paper_w - 356.85).abs() <= 0.01,
        "base servo power {base_paper_w}"
    );
    let quoted_base = reference::quoted_power_w("Base").unwrap();
    let delta_vs_quoted = base_paper_w - quoted_base;

    // convention ratio bit-exact across a sampled grid
    let mut rng = ChaCha8Rng::seed_from_u64(0xA5);
    for _ in 0..1_000 {
        let tau = rng.random_range(0.0..50.0);
        let rpm = rng.random_range(0.0..500.0);
        assert_eq!(
            servo_power(tau, rpm, PowerConvention::Paper),
            30.0 * servo_power(tau, rpm, PowerConvention::Si),
        );
    }

    let quoted_sum: f64 = reference::QUOTED_POWER_W.iter().map(|&(_, w)| w).sum();
    assert!((quoted_sum - 1174.40).abs() <= 0.01, "quoted sum {quoted_sum}");
    let aggregate_gap = (quoted_sum - reference::QUOTED_TOTAL_POWER_W).abs()
        / reference::QUOTED_TOTAL_POWER_W;
    assert!(aggregate_gap <= 0.003, "aggregate gap {aggregate_gap}");

    let hours = endurance(20_000.0, 24.0, 1174.4, 1.0).unwrap();
    assert!((hours - 0.4087).abs() <= 1e-3, "endurance {hours}");
    assert!(
        hours < reference::QUOTED_ENDURANCE_HOURS,
        "endurance must document the contradiction with the quoted 4 h figure"
    );

    println!(
        "ACCEPTANCE 5 PASS: min torque {torque:.12}, base power {base_paper_w:.2} W (delta {delta_vs_quoted:+.2} W vs quoted {quoted_base:.2}), ratio 30 exact, quoted sum {quoted_sum:.2} W, endurance {hours:.4} h vs quoted {} h",
        reference::QUOTED_ENDURANCE_HOURS
    );
}

/// Criterion 6: damping suite against the closed-form overshoot oracle, the
/// log-decrement recovery band, the 2.1% per-cycle figure, and feedback
/// monotonicity; under 30 seconds.
#[test]
fn criterion_6_damping_suite() {
    let started = Instant::now();
    let omega_n = 2.0 * PI;

    // overshoot vs 100*exp(-pi*zeta/sqrt(1-zeta^2))
    let mut worst_overshoot_gap: f64 = 0.0;
    for k in 1..=9 {
        let zeta = f64::from(k) / 10.0;
        let params = SecondOrderParams::new(omega_n, zeta, 1.0, 1e-4, 10.0).unwrap();
        let simulated = simulate_step(&params).overshoot_pct;
        let formula = 100.0 * (-PI * zeta / (1.0 - zeta * zeta).sqrt()).exp();
        let gap = (simulated - formula).abs();
        assert!(gap < 0.5, "zeta {zeta}: simulated {simulated} vs formula {formula}");
        worst_overshoot_gap = worst_overshoot_gap.max(gap);
    }

    for zeta in [1.0, 1.5, 3.0] {
        let params = SecondOrderParams::new(omega_n, zeta, 1.0, 1e-4, 10.0).unwrap();
        let overshoot = simulate_step(&params).overshoot_pct;
        assert!(overshoot <= 1e-7, "zeta {zeta} overshoot {overshoot:e}");
    }

    let mut worst_zeta_rel: f64 = 0.0;
    for zeta in [0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7] {
        let params = SecondOrderParams::new(omega_n, zeta, 1.0, 1e-4, 10.0).unwrap();
        let estimate = simulate_step(&params)
            .zeta_estimate
            .expect("underdamped response has peaks");
        let rel = (estimate - zeta).abs() / zeta;
        assert!(rel < 0.02, "zeta {zeta} estimated {estimate}");
        worst_zeta_rel = worst_zeta_rel.max(rel);
    }

    let decay = per_cycle_decay(0.003378).unwrap();
    assert!((decay - 2.1).abs() <= 0.01, "per-cycle decay {decay}");

    // 10-point gain sweep: added damping strictly lowers overshoot
    let base = SecondOrderParams::new(omega_n, 0.1, 1.0, 1e-4, 10.0).unwrap();
    let mut previous = f64::INFINITY;
    for k in 0..10 {
        let gain = f64::from(k) * 0.01;
        let boosted = apply_accel_feedback(&base, gain).unwrap();
        assert!(boosted.zeta() < 1.0);
        let overshoot = simulate_step(&boosted).overshoot_pct;
        assert!(
            overshoot < previous,
            "gain {gain}: overshoot {overshoot} did not decrease (previous {previous})"
        );
        previous = overshoot;
    }

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 6 PASS: overshoot oracle gap {worst_overshoot_gap:.3}%, zeta recovery worst {:.2}%, per-cycle decay {decay:.3}%, monotone gain sweep, {:.2} s",
        100.0 * worst_zeta_rel,
        elapsed.as_secs_f64()
    );
}
