use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use sigma_arm::actuation::{
    arm_power_budget, endurance, reference, torque_breakdown, FrictionCoeffs, PowerConvention,
};
use sigma_arm::arm_model::{load_arm, ArmDescription, STANDARD_GRAVITY};
use sigma_arm::kinematics::{
    fk, ik_with_branch, ElbowBranch, IkSolution, KinematicsError, TargetPoint,
};
use sigma_arm::mobility::{grubler_dof, MechanismTopology, MotionSpace};
use sigma_arm::oscillation::{
    apply_accel_feedback, settling_time, simulate_step, OscillationError, SecondOrderParams,
    StepResponse, DEFAULT_SETTLING_BAND,
};
use sigma_arm::spatial::{compose_zyx, extract_euler, EulerZyx, RotationMatrix};

use crate::fmt::{sig6, sig6_opt};
use crate::report::{error_report, parse_pairs_csv};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Parser)]
#[command(
    name = "sigma-arm",
    version,
    about = "Rescue-arm analysis: mobility counting, Euler conversion, inverse kinematics,\nservo torque/power budgeting, and oscillation-damping simulation.\nAngles are degrees at this interface; output is fixed to six significant digits."
)]
struct Cli {
    /// Arm config JSON (consumed by dof, power, endurance)
    #[arg(long, global = true, value_name = "PATH")]
    arm: Option<PathBuf>,

    /// Write the command's CSV payload to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,

    /// Speed handling in power figures: quoted-style (paper) or strict rad/s (si)
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::Paper)]
    convention: ConventionArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Paper,
    Si,
}

impl ConventionArg {
    fn to_lib(self) -> PowerConvention {
        match self {
            ConventionArg::Paper => PowerConvention::Paper,
            ConventionArg::Si => PowerConvention::Si,
        }
    }

    fn label(self) -> &'static str {
        match self {
            ConventionArg::Paper => "paper",
            ConventionArg::Si => "si",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Up,
    Down,
}

impl BranchArg {
    fn to_lib(self) -> ElbowBranch {
        match self {
            BranchArg::Up => ElbowBranch::Up,
            BranchArg::Down => ElbowBranch::Down,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count mechanism degrees of freedom
    Dof {
        /// Motion parameter: 3 (planar) or 6 (spatial)
        #[arg(long, default_value_t = 6)]
        lambda: i64,
        /// Number of links, ground included
        #[arg(long)]
        links: Option<u32>,
        /// Per-joint freedom counts, comma-separated (e.g. 1,1,1,1)
        #[arg(long, allow_hyphen_values = true)]
        freedoms: Option<String>,
    },
    /// Compose or extract ZYX Euler angles (degrees)
    Euler {
        /// yaw,pitch,roll in degrees: print the 3x3 rotation matrix
        #[arg(long, value_name = "Y,P,R", allow_hyphen_values = true)]
        compose: Option<String>,
        /// Nine matrix entries, row-major: print angles and the gimbal-lock flag
        #[arg(long, value_name = "R11,..,R33", allow_hyphen_values = true)]
        extract: Option<String>,
    },
    /// Solve inverse kinematics for a Cartesian target
    Ik {
        /// Target x,y,z in meters
        #[arg(long, value_name = "X,Y,Z", allow_hyphen_values = true)]
        target: Option<String>,
        /// Shoulder-to-elbow link length, meters
        #[arg(long)]
        lab: f64,
        /// Elbow-to-effector link length, meters
        #[arg(long)]
        lbc: f64,
        #[arg(long, value_enum, default_value_t = BranchArg::Up)]
        branch: BranchArg,
        /// Batch mode: CSV of x,y,z rows
        #[arg(long, value_name = "PATH")]
        targets_csv: Option<PathBuf>,
    },
    /// Forward kinematics of a joint-angle triple
    Fk {
        /// base,shoulder,elbow angles in degrees
        #[arg(long, value_name = "B,S,E", allow_hyphen_values = true)]
        angles: String,
        #[arg(long)]
        lab: f64,
        #[arg(long)]
        lbc: f64,
    },
    /// Torque budget for one joint at one operating point
    Torque {
        /// Lumped mass, kg
        #[arg(long)]
        mass: f64,
        /// Link length, m
        #[arg(long)]
        length: f64,
        /// Link elevation, degrees
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        /// Target speed for the minimum-torque term, deg/s
        #[arg(long, allow_negative_numbers = true)]
        omega: f64,
        /// Time to reach the target speed, s
        #[arg(long)]
        ramp_time: f64,
        /// Coulomb friction torque, N·m
        #[arg(long, default_value_t = 0.0)]
        bc: f64,
        /// Viscous friction coefficient, N·m·s/rad
        #[arg(long, default_value_t = 0.0)]
        bv: f64,
        /// Joint rate for the friction term, deg/s
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta_dot: f64,
        /// Gravity, m/s²
        #[arg(long, default_value_t = STANDARD_GRAVITY)]
        gravity: f64,
    },
    /// Per-servo power/current budget for an arm config
    Power,
    /// Battery endurance for an arm config
    Endurance {
        /// Duty cycle in (0, 1]
        #[arg(long)]
        duty: f64,
    },
    /// Step-response simulation of the damped oscillation model
    Damping {
        /// Damping ratio (required unless --zeta-sweep)
        #[arg(long)]
        zeta: Option<f64>,
        /// Natural frequency, rad/s
        #[arg(long)]
        omega_n: f64,
        /// Integration step, s
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
        /// Simulated duration, s
        #[arg(long, default_value_t = 10.0)]
        duration: f64,
        /// Step amplitude
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        step_amplitude: f64,
        /// Acceleration-feedback gain (adds gain·omega_n to the damping ratio)
        #[arg(long, default_value_t = 0.0)]
        feedback_gain: f64,
        /// Settling band as a fraction of the final value
        #[arg(long, default_value_t = DEFAULT_SETTLING_BAND)]
        band: f64,
        /// Sweep mode: start:end:step damping ratios, one metrics row each
        #[arg(long, value_name = "A:B:STEP")]
        zeta_sweep: Option<String>,
    },
    /// Relative-error report for theoretical vs measured rotations
    Report {
        /// CSV of name,theoretical_deg,measured_deg rows
        #[arg(long, value_name = "PATH")]
        table6: PathBuf,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

fn usage(msg: impl ToString) -> CliError {
    CliError::Usage(msg.to_string())
}

/// Unreachable targets, non-convergence, and indeterminate poses are domain
/// failures (exit 2); everything else is bad input (exit 1).
fn kinematics_error(e: KinematicsError) -> CliError {
    match e {
        KinematicsError::UnreachableTarget { .. }
        | KinematicsError::Unreachable { .. }
        | KinematicsError::IndeterminateTarget
        | KinematicsError::NonConvergence { .. } => CliError::Domain(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn oscillation_error(e: OscillationError) -> CliError {
    match e {
        OscillationError::NeverSettles { .. } => CliError::Domain(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Dof {
            lambda,
            links,
            freedoms,
        } => run_dof(cli, *lambda, *links, freedoms.as_deref()),
        Command::Euler { compose, extract } => run_euler(compose.as_deref(), extract.as_deref()),
        Command::Ik {
            target,
            lab,
            lbc,
            branch,
            targets_csv,
        } => run_ik(
            cli,
            target.as_deref(),
            *lab,
            *lbc,
            branch.to_lib(),
            targets_csv.as_deref(),
        ),
        Command::Fk { angles, lab, lbc } => run_fk(angles, *lab, *lbc),
        Command::Torque {
            mass,
            length,
            theta,
            omega,
            ramp_time,
            bc,
            bv,
            theta_dot,
            gravity,
        } => run_torque(
            *mass, *length, *theta, *omega, *ramp_time, *bc, *bv, *theta_dot, *gravity,
        ),
        Command::Power => run_power(cli),
        Command::Endurance { duty } => run_endurance(cli, *duty),
        Command::Damping {
            zeta,
            omega_n,
            dt,
            duration,
            step_amplitude,
            feedback_gain,
            band,
            zeta_sweep,
        } => run_damping(
            cli,
            *zeta,
            *omega_n,
            *dt,
            *duration,
            *step_amplitude,
            *feedback_gain,
            *band,
            zeta_sweep.as_deref(),
        ),
        Command::Report { table6 } => run_report(cli, table6),
    }
}

fn parse_numbers(what: &str, text: &str, expected: usize) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != expected {
        return Err(usage(format!(
            "{what}: expected {expected} comma-separated numbers, got {}",
            parts.len()
        )));
    }
    let mut values = Vec::with_capacity(expected);
    for part in parts {
        let v: f64 = part
            .parse()
            .map_err(|e| usage(format!("{what}: bad number \"{part}\": {e}")))?;
        if !v.is_finite() {
            return Err(usage(format!("{what}: value \"{part}\" is not finite")));
        }
        values.push(v);
    }
    Ok(values)
}

fn read_file(path: &std::path::Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_arm_config(cli: &Cli, command: &str) -> Result<ArmDescription, CliError> {
    let path = cli
        .arm
        .as_ref()
        .ok_or_else(|| usage(format!("{command}: --arm <config> is required")))?;
    let text = read_file(path)?;
    load_arm(&text).map_err(|e| usage(e))
}

/// True when the config describes the stock six-servo arm, i.e. every joint
/// has a quoted power figure.
fn is_stock_arm(arm: &ArmDescription) -> bool {
    arm.joints.len() == reference::QUOTED_POWER_W.len()
        && arm
            .joints
            .iter()
            .all(|j| reference::quoted_power_w(&j.name).is_some())
}

/// Write CSV lines to `--csv <file>` when given (summary lines still go to
/// stdout), otherwise print everything to stdout.
fn emit_csv(cli: &Cli, lines: &[String], summary: &[String]) -> Result<(), CliError> {
    if let Some(path) = &cli.csv {
        let mut payload = lines.join("\n");
        payload.push('\n');
        fs::write(path, payload)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    } else {
        for line in lines {
            println!("{line}");
        }
    }
    for line in summary {
        println!("{line}");
    }
    Ok(())
}

fn run_dof(
    cli: &Cli,
    lambda: i64,
    links: Option<u32>,
    freedoms: Option<&str>,
) -> Result<(), CliError> {
    let space = MotionSpace::from_parameter(lambda).map_err(usage)?;
    let topology = if cli.arm.is_some() {
        let arm = load_arm_config(cli, "dof")?;
        MechanismTopology::from_arm(&arm, space).map_err(usage)?
    } else {
        let links =
            links.ok_or_else(|| usage("dof: provide --links and --freedoms, or --arm <config>"))?;
        let freedoms_text = freedoms
            .ok_or_else(|| usage("dof: provide --links and --freedoms, or --arm <config>"))?;
        let mut counts = Vec::new();
        for part in freedoms_text.split(',') {
            let f: u32 = part
                .trim()
                .parse()
                .map_err(|e| usage(format!("dof: bad freedom count \"{part}\": {e}")))?;
            counts.push(f);
        }
        MechanismTopology::new(space, links, counts).map_err(usage)?
    };
    if topology.all_joints_unconstrained() {
        eprintln!(
            "note: every joint carries the full {lambda} freedoms, so none constrains the \
             mechanism and the count degenerates to lambda*(n-1); counting a serial arm with \
             one freedom per actuated joint (n = k+1, f_i = 1) gives k instead"
        );
    }
    println!("{}", grubler_dof(&topology));
    Ok(())
}

fn run_euler(compose: Option<&str>, extract: Option<&str>) -> Result<(), CliError> {
    match (compose, extract) {
        (Some(angles_text), None) => {
            let a = parse_numbers("--compose", angles_text, 3)?;
            let euler = EulerZyx::new(
                a[0].to_radians(),
                a[1].to_radians(),
                a[2].to_radians(),
            );
            let r = compose_zyx(&euler).map_err(usage)?;
            for row in r.rows() {
                println!("{} {} {}", sig6(row[0]), sig6(row[1]), sig6(row[2]));
            }
            Ok(())
        }
        (None, Some(entries_text)) => {
            let e = parse_numbers("--extract", entries_text, 9)?;
            let r = RotationMatrix::from_rows([
                [e[0], e[1], e[2]],
                [e[3], e[4], e[5]],
                [e[6], e[7], e[8]],
            ])
            .map_err(usage)?;
            let extraction = extract_euler(&r);
            println!("yaw_deg {}", sig6(extraction.angles.yaw.to_degrees()));
            println!("pitch_deg {}", sig6(extraction.angles.pitch.to_degrees()));
            println!("roll_deg {}", sig6(extraction.angles.roll.to_degrees()));
            println!("gimbal_lock {}", extraction.gimbal_lock);
            Ok(())
        }
        _ => Err(usage("euler: provide exactly one of --compose or --extract")),
    }
}

fn ik_residual(solution: &IkSolution, target: &TargetPoint, lab: f64, lbc: f64) -> f64 {
    let back = fk(solution, lab, lbc);
    ((back.x - target.x).powi(2) + (back.y - target.y).powi(2) + (back.z - target.z).powi(2))
        .sqrt()
}

fn run_ik(
    cli: &Cli,
    target: Option<&str>,
    lab: f64,
    lbc: f64,
    branch: ElbowBranch,
    targets_csv: Option<&std::path::Path>,
) -> Result<(), CliError> {
    if let Some(path) = targets_csv {
        return run_ik_batch(cli, path, lab, lbc, branch);
    }
    let target_text =
        target.ok_or_else(|| usage("ik: provide --target x,y,z or --targets-csv <file>"))?;
    let t = parse_numbers("--target", target_text, 3)?;
    let point = TargetPoint::new(t[0], t[1], t[2]);
    let solution = ik_with_branch(&point, lab, lbc, branch).map_err(kinematics_error)?;
    println!("base_deg {}", sig6(solution.base_yaw.to_degrees()));
    println!("shoulder_deg {}", sig6(solution.shoulder.to_degrees()));
    println!("elbow_deg {}", sig6(solution.elbow.to_degrees()));
    println!(
        "branch {}",
        match solution.branch {
            ElbowBranch::Up => "up",
            ElbowBranch::Down => "down",
        }
    );
    println!("residual_m {}", sig6(ik_residual(&solution, &point, lab, lbc)));
    Ok(())
}

fn run_ik_batch(
    cli: &Cli,
    path: &std::path::Path,
    lab: f64,
    lbc: f64,
    branch: ElbowBranch,
) -> Result<(), CliError> {
    let text = read_file(path)?;
    let mut lines = vec!["x,y,z,base_deg,shoulder_deg,elbow_deg,branch,residual_m,status".to_string()];
    let mut first_line = true;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed = parse_numbers("targets row", line, 3);
        let t = match parsed {
            Ok(t) => t,
            Err(e) => {
                if first_line {
                    first_line = false;
                    continue; // header row
                }
                return Err(usage(format!("{}:{}: {}", path.display(), idx + 1, e.message())));
            }
        };
        first_line = false;
        let point = TargetPoint::new(t[0], t[1], t[2]);
        let row = match ik_with_branch(&point, lab, lbc, branch) {
            Ok(solution) => format!(
                "{},{},{},{},{},{},{},{},ok",
                sig6(point.x),
                sig6(point.y),
                sig6(point.z),
                sig6(solution.base_yaw.to_degrees()),
                sig6(solution.shoulder.to_degrees()),
                sig6(solution.elbow.to_degrees()),
                match solution.branch {
                    ElbowBranch::Up => "up",
                    ElbowBranch::Down => "down",
                },
                sig6(ik_residual(&solution, &point, lab, lbc)),
            ),
            Err(KinematicsError::UnreachableTarget { .. })
            | Err(KinematicsError::Unreachable { .. }) => format!(
                "{},{},{},,,,,,unreachable",
                sig6(point.x),
                sig6(point.y),
                sig6(point.z)
            ),
            Err(KinematicsError::IndeterminateTarget) => format!(
                "{},{},{},,,,,,indeterminate",
                sig6(point.x),
                sig6(point.y),
                sig6(point.z)
            ),
            Err(other) => return Err(kinematics_error(other)),
        };
        lines.push(row);
    }
    emit_csv(cli, &lines, &[])
}

fn run_fk(angles: &str, lab: f64, lbc: f64) -> Result<(), CliError> {
    let a = parse_numbers("--angles", angles, 3)?;
    let solution = IkSolution {
        base_yaw: a[0].to_radians(),
        shoulder: a[1].to_radians(),
        elbow: a[2].to_radians(),
        branch: ElbowBranch::Up,
    };
    let p = fk(&solution, lab, lbc);
    println!("x_m {}", sig6(p.x));
    println!("y_m {}", sig6(p.y));
    println!("z_m {}", sig6(p.z));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_torque(
    mass: f64,
    length: f64,
    theta_deg: f64,
    omega_deg_s: f64,
    ramp_time: f64,
    bc: f64,
    bv: f64,
    theta_dot_deg_s: f64,
    gravity: f64,
) -> Result<(), CliError> {
    for (name, v) in [("--mass", mass), ("--length", length), ("--gravity", gravity)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(usage(format!("torque: {name} must be non-negative (got {v})")));
        }
    }
    let coeffs = FrictionCoeffs::new(bc, bv).map_err(usage)?;
    let breakdown = torque_breakdown(
        mass,
        length,
        theta_deg.to_radians(),
        gravity,
        &coeffs,
        theta_dot_deg_s.to_radians(),
        omega_deg_s.to_radians(),
        ramp_time,
    )
    .map_err(usage)?;
    println!("gravity_nm {}", sig6(breakdown.gravity));
    println!("friction_nm {}", sig6(breakdown.friction));
    println!("total_nm {}", sig6(breakdown.total));
    println!("minimum_nm {}", sig6(breakdown.minimum));
    Ok(())
}

fn run_power(cli: &Cli) -> Result<(), CliError> {
    let arm = load_arm_config(cli, "power")?;
    let budget = arm_power_budget(&arm, cli.convention.to_lib());
    let mut lines = vec!["servo,torque_nm,rpm,power_w,current_ma,quoted_power_w,delta_w".to_string()];
    for (joint, servo_power) in arm.joints.iter().zip(&budget.per_servo) {
        let quoted = reference::quoted_power_w(&joint.name);
        lines.push(format!(
            "{},{},{},{},{},{},{}",
            servo_power.name,
            sig6(joint.servo.rated_torque_nm),
            sig6(joint.servo.max_speed_rpm),
            sig6(servo_power.power_w),
            sig6(servo_power.current_ma),
            quoted.map(sig6).unwrap_or_default(),
            quoted
                .map(|q| sig6(servo_power.power_w - q))
                .unwrap_or_default(),
        ));
    }
    let mut summary = vec![
        format!("# convention {}", cli.convention.label()),
        format!("# total_power_w {}", sig6(budget.total_power_w)),
    ];
    if is_stock_arm(&arm) {
        let quoted_sum: f64 = reference::QUOTED_POWER_W.iter().map(|&(_, w)| w).sum();
        summary.push(format!("# quoted_power_sum_w {}", sig6(quoted_sum)));
        summary.push(format!(
            "# quoted_total_power_w {}",
            sig6(reference::QUOTED_TOTAL_POWER_W)
        ));
        summary.push(
            "# note: computed power does not reproduce the quoted per-servo figures under \
             either convention; see delta_w"
                .to_string(),
        );
        summary.push(
            "# note: the quoted per-servo figures sum to 1174.40 W, 0.2% above the quoted \
             ~1172 W aggregate"
                .to_string(),
        );
    }
    emit_csv(cli, &lines, &summary)
}

fn run_endurance(cli: &Cli, duty: f64) -> Result<(), CliError> {
    let arm = load_arm_config(cli, "endurance")?;
    let budget = arm_power_budget(&arm, cli.convention.to_lib());
    let hours = endurance(
        arm.battery.capacity_mah,
        arm.battery.voltage_v,
        budget.total_power_w,
        duty,
    )
    .map_err(usage)?;
    println!("endurance_hours {}", sig6(hours));
    println!(
        "# battery_wh {}",
        sig6(arm.battery.capacity_mah / 1000.0 * arm.battery.voltage_v)
    );
    println!("# total_power_w {}", sig6(budget.total_power_w));
    println!("# duty {}", sig6(duty));
    if is_stock_arm(&arm) {
        let quoted_sum: f64 = reference::QUOTED_POWER_W.iter().map(|&(_, w)| w).sum();
        if let Ok(quoted_hours) = endurance(
            arm.battery.capacity_mah,
            arm.battery.voltage_v,
            quoted_sum,
            duty,
        ) {
            println!("# endurance_at_quoted_power_hours {}", sig6(quoted_hours));
        }
        println!(
            "# quoted_endurance_hours {}",
            sig6(reference::QUOTED_ENDURANCE_HOURS)
        );
        println!(
            "# quoted_operating_time_hours {}",
            sig6(reference::QUOTED_OPERATING_TIME_HOURS)
        );
        println!(
            "# note: at the quoted 1174.40 W the 480 Wh battery lasts ~0.41 h, which \
             contradicts both the quoted 4 h endurance and the 45-minute spec-sheet figure"
        );
    }
    Ok(())
}

struct DampingMetrics {
    zeta_effective: f64,
    response: StepResponse,
    settling: Result<f64, OscillationError>,
}

fn simulate_damping(
    omega_n: f64,
    zeta: f64,
    step_amplitude: f64,
    dt: f64,
    duration: f64,
    feedback_gain: f64,
    band: f64,
) -> Result<DampingMetrics, CliError> {
    let params =
        SecondOrderParams::new(omega_n, zeta, step_amplitude, dt, duration).map_err(usage)?;
    let params = apply_accel_feedback(&params, feedback_gain).map_err(usage)?;
    let response = simulate_step(&params);
    let settling = settling_time(&response, band);
    Ok(DampingMetrics {
        zeta_effective: params.zeta(),
        response,
        settling,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_damping(
    cli: &Cli,
    zeta: Option<f64>,
    omega_n: f64,
    dt: f64,
    duration: f64,
    step_amplitude: f64,
    feedback_gain: f64,
    band: f64,
    zeta_sweep: Option<&str>,
) -> Result<(), CliError> {
    if let Some(sweep_text) = zeta_sweep {
        return run_damping_sweep(
            cli,
            sweep_text,
            omega_n,
            dt,
            duration,
            step_amplitude,
            feedback_gain,
            band,
        );
    }
    let zeta = zeta.ok_or_else(|| usage("damping: provide --zeta or --zeta-sweep a:b:step"))?;
    let metrics = simulate_damping(
        omega_n,
        zeta,
        step_amplitude,
        dt,
        duration,
        feedback_gain,
        band,
    )?;
    let settling = metrics.settling.map_err(oscillation_error)?;
    println!("zeta {}", sig6(metrics.zeta_effective));
    println!("overshoot_pct {}", sig6(metrics.response.overshoot_pct));
    println!("settling_time_s {}", sig6(settling));
    println!("zeta_estimate {}", sig6_opt(metrics.response.zeta_estimate));
    println!(
        "per_cycle_decay_pct {}",
        sig6_opt(metrics.response.per_cycle_decay_pct)
    );
    if let Some(path) = &cli.csv {
        let mut payload = String::from("t_s,x\n");
        for &(t, x) in &metrics.response.samples {
            payload.push_str(&format!("{},{}\n", sig6(t), sig6(x)));
        }
        fs::write(path, payload)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_damping_sweep(
    cli: &Cli,
    sweep_text: &str,
    omega_n: f64,
    dt: f64,
    duration: f64,
    step_amplitude: f64,
    feedback_gain: f64,
    band: f64,
) -> Result<(), CliError> {
    let parts: Vec<&str> = sweep_text.split(':').collect();
    if parts.len() != 3 {
        return Err(usage("damping: --zeta-sweep expects start:end:step"));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|e| usage(format!("damping: bad sweep start: {e}")))?;
    let end: f64 = parts[1]
        .parse()
        .map_err(|e| usage(format!("damping: bad sweep end: {e}")))?;
    let step: f64 = parts[2]
        .parse()
        .map_err(|e| usage(format!("damping: bad sweep step: {e}")))?;
    if !(start.is_finite() && end.is_finite() && step.is_finite() && step > 0.0 && end >= start) {
        return Err(usage("damping: sweep needs start <= end and step > 0"));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    let mut lines =
        vec!["zeta,overshoot_pct,settling_time_s,zeta_estimate,per_cycle_decay_pct".to_string()];
    for k in 0..count {
        let zeta = start + k as f64 * step;
        let metrics = simulate_damping(
            omega_n,
            zeta,
            step_amplitude,
            dt,
            duration,
            feedback_gain,
            band,
        )?;
        lines.push(format!(
            "{},{},{},{},{}",
            sig6(metrics.zeta_effective),
            sig6(metrics.response.overshoot_pct),
            metrics.settling.map(sig6).unwrap_or_default(),
            metrics.response.zeta_estimate.map(sig6).unwrap_or_default(),
            metrics
                .response
                .per_cycle_decay_pct
                .map(sig6)
                .unwrap_or_default(),
        ));
    }
    emit_csv(cli, &lines, &[])
}

fn run_report(cli: &Cli, table_path: &std::path::Path) -> Result<(), CliError> {
    let text = read_file(table_path)?;
    let pairs = parse_pairs_csv(&text).map_err(usage)?;
    let report = error_report(&pairs).map_err(usage)?;
    let mut lines = vec!["joint,theoretical_deg,measured_deg,rel_error_pct".to_string()];
    for row in &report.rows {
        lines.push(format!(
            "{},{},{},{}",
            row.name,
            sig6(row.theoretical_deg),
            sig6(row.measured_deg),
            sig6(row.rel_error_pct),
        ));
    }
    let summary = vec![
        format!("# mean_error_pct {}", sig6(report.mean_error_pct)),
        format!("# max_error_pct {}", sig6(report.max_error_pct)),
        format!(
            "# note: quoted hands-on accuracy is {}-{}% error; not reproducible from these rows",
            crate::report::QUOTED_HANDS_ON_ERROR_PCT.0 as i64,
            crate::report::QUOTED_HANDS_ON_ERROR_PCT.1 as i64,
        ),
        format!(
            "# note: the quoted final error rate is below {}%; also not reproducible from these rows",
            crate::report::QUOTED_FINAL_ERROR_PCT as i64,
        ),
    ];
    emit_csv(cli, &lines, &summary)
}
