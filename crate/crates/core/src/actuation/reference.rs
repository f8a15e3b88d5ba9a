//! Quoted figures for the stock Sigma-3 six-servo arm.
//!
//! These are the nameplate numbers shipped with the arm, kept verbatim so the
//! budget reports can print computed-vs-quoted deltas instead of silently
//! reconciling them. They are internally inconsistent: the per-servo powers
//! do not follow from the rated torques and speeds under either power
//! convention, their sum (1174.40 W) differs slightly from the quoted
//! aggregate (~1172 W), and the quoted endurance figures contradict the
//! battery capacity at that power level.

/// Quoted per-servo power draw, watts.
pub const QUOTED_POWER_W: [(&str, f64); 6] = [
    ("Base", 366.66),
    ("Shoulder", 263.10),
    ("Elbow", 181.45),
    ("Wrist", 160.77),
    ("Waist", 128.15),
    ("Claw", 74.27),
];

/// Quoted aggregate power for all six servos, watts.
pub const QUOTED_TOTAL_POWER_W: f64 = 1172.0;

/// Quoted minimum operating time on the 20 Ah / 24 V battery, hours.
pub const QUOTED_ENDURANCE_HOURS: f64 = 4.0;

/// Operating time listed on the arm's spec sheet (both drive modes), hours.
pub const QUOTED_OPERATING_TIME_HOURS: f64 = 0.75;

/// Quoted power for one servo by joint name, if it is one of the stock six.
pub fn quoted_power_w(name: &str) -> Option<f64> {
    QUOTED_POWER_W
        .iter()
        .find(|(quoted_name, _)| *quoted_name == name)
        .map(|&(_, watts)| watts)
}
