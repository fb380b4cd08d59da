//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 degenerate geometry, 3 failed
//! theorem checks in `verify-paper`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curve::{parse_curve_spec, to_curve_spec, ParamCurve};
use crate::error::Error;
use crate::fixtures;
use crate::frenet::{frame_at, FrenetFrame};
use crate::helix::{classify, lancret_test, HelixClassification};
use crate::lift::{lift_literal, lift_unit_speed, AxisMode, LiftSpec};
use crate::tolerances::Tolerances;
use crate::verify::run_reference_suite;
use crate::Vec3;

#[derive(Debug, Parser)]
#[command(name = "curvelift", version, about = "Frenet frames, helix tests and helix lifts of space curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a curve as general, circular and/or slant helix.
    Classify {
        /// Curve-spec file or fixture (paper_cubic, twisted_cubic, circular_helix:a,b).
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Relative-deviation tolerance for constancy tests.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Frenet frame, curvature and torsion at one parameter.
    Frenet {
        #[arg(long)]
        spec: String,
        #[arg(long, allow_negative_numbers = true)]
        at: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the helix lift of a general helix and print its curve spec.
    Lift {
        #[arg(long)]
        spec: String,
        /// Lift angle in radians, or `auto` for the curve's own helix angle.
        #[arg(long, default_value = "auto")]
        theta: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        s0: f64,
        /// `unit`, `paper` (twice the unit axis) or an explicit `x,y,z`.
        #[arg(long, default_value = "unit", allow_hyphen_values = true)]
        axis: String,
        /// Constant offset `x,y,z` added to the lift.
        #[arg(long, allow_hyphen_values = true)]
        offset: Option<String>,
        /// Lift in the curve's own parameter instead of arc length.
        #[arg(long)]
        literal: bool,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Unit-vector tolerance (also bounds the unit-speed check).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Sample a curve on a uniform grid as comma-separated values.
    Sample {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: usize,
        /// Include the Frenet frame, curvature and torsion.
        #[arg(long)]
        frames: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Reproduce the worked cubic example and check the lift theorems.
    VerifyPaper {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Unit-vector tolerance used for agreement and theorem checks.
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Degenerate(String),
    Theorem(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Degenerate(_) => 2,
            Failure::Theorem(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Degenerate(m) | Failure::Theorem(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_degenerate() {
            Failure::Degenerate(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the command line against the process's standard streams.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_cli_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run_cli`] with explicit output and diagnostic streams.
pub fn run_cli_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Classify { spec, samples, tol, out: path, format } => {
            let curve = load_curve(&spec)?;
            let mut tolerances = Tolerances::default();
            if let Some(t) = tol {
                tolerances.constancy = t;
            }
            let grid = check_grid(samples)?;
            tolerances.validate()?;
            let result = classify(&curve, grid, &tolerances)?;
            let text = match format {
                Format::Json => json(&result),
                Format::Csv => classification_csv(&result),
            };
            emit(out, path.as_deref(), &text)
        }
        Command::Frenet { spec, at, out: path } => {
            let curve = load_curve(&spec)?;
            let frame = frame_at(&curve, at, &Tolerances::default())?;
            emit(out, path.as_deref(), &json(&FrameAt { t: at, frame }))
        }
        Command::Lift { spec, theta, s0, axis, offset, literal, samples, tol, emit: path } => {
            let curve = load_curve(&spec)?;
            let grid = check_grid(samples)?;
            let mut tolerances = Tolerances::default();
            if let Some(t) = tol {
                tolerances.vector = t;
            }
            tolerances.validate()?;
            let theta = match theta.as_str() {
                "auto" => lancret_test(&curve, grid, &tolerances)?.theta,
                s => parse_number("theta", s)?,
            };
            let lift = LiftSpec {
                theta,
                s0,
                offset: match offset {
                    Some(o) => parse_vec3("offset", &o)?,
                    None => Vec3::zeros(),
                },
                axis_mode: parse_axis_mode(&axis)?,
            };
            let lifted = if literal {
                lift_literal(&curve, &lift, grid, &tolerances)?
            } else {
                lift_unit_speed(&curve, &lift, grid, &tolerances)?.0
            };
            emit(out, path.as_deref(), &to_curve_spec(&lifted))
        }
        Command::Sample { spec, n, frames, csv } => {
            let curve = load_curve(&spec)?;
            let table = export_samples(&curve, n, frames)?;
            emit(out, csv.as_deref(), &table)
        }
        Command::VerifyPaper { out: path, samples, tol } => {
            let grid = check_grid(samples)?;
            let mut tolerances = Tolerances::default();
            if let Some(t) = tol {
                tolerances.vector = t;
            }
            tolerances.validate()?;
            let report = run_reference_suite(&tolerances, grid);
            emit(out, path.as_deref(), &report.to_json())?;
            if report.theorems_pass() {
                Ok(())
            } else {
                Err(Failure::Theorem("theorem checks failed".into()))
            }
        }
    }
}

#[derive(Serialize)]
struct FrameAt {
    t: f64,
    #[serde(flatten)]
    frame: FrenetFrame,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) if p.as_os_str().is_empty() => Err(Failure::Input("output path is empty".into())),
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn check_grid(n: usize) -> CliResult<usize> {
    if n < 2 {
        return Err(Failure::Input(format!("sample count {n} must be at least 2")));
    }
    Ok(n)
}

/// A fixture name or the path of a curve-spec document.
fn load_curve(spec: &str) -> CliResult<ParamCurve> {
    if let Some(curve) = fixtures::by_name(spec) {
        return Ok(curve?);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Failure::Input(format!("{spec}: {e}")))?;
    Ok(parse_curve_spec(&text)?)
}

fn parse_number(field: &'static str, s: &str) -> CliResult<f64> {
    match f64::from_str(s.trim()) {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(Error::InvalidField { field, reason: format!("`{s}` is not a finite number") }.into()),
    }
}

fn parse_vec3(field: &'static str, s: &str) -> CliResult<Vec3> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidField { field, reason: format!("`{s}` is not of the form x,y,z") }.into());
    }
    Ok(Vec3::new(parse_number(field, parts[0])?, parse_number(field, parts[1])?, parse_number(field, parts[2])?))
}

fn parse_axis_mode(s: &str) -> CliResult<AxisMode> {
    match s {
        "unit" => Ok(AxisMode::Unit),
        "paper" => Ok(AxisMode::Doubled),
        _ => Ok(AxisMode::Explicit(parse_vec3("axis", s)?)),
    }
}

fn classification_csv(c: &HelixClassification) -> String {
    let flag = |b: bool| if b { "true" } else { "false" };
    let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
    let mut s = String::from("field,value\n");
    let rows = [
        ("general_helix", flag(c.is_general_helix).to_string()),
        ("circular_helix", flag(c.is_circular_helix).to_string()),
        ("slant_helix", flag(c.is_slant_helix).to_string()),
        ("theta", opt(c.theta)),
        ("axis_x", opt(c.axis.map(|a| a.x))),
        ("axis_y", opt(c.axis.map(|a| a.y))),
        ("axis_z", opt(c.axis.map(|a| a.z))),
        ("ratio_rel_dev", num(c.ratio_stat.rel_dev)),
        ("sigma_rel_dev", num(c.sigma_stat.rel_dev)),
        ("kappa_rel_dev", num(c.kappa_stat.rel_dev)),
        ("tau_rel_dev", num(c.tau_stat.rel_dev)),
    ];
    for (k, v) in rows {
        let _ = writeln!(s, "{k},{v}");
    }
    s
}

/// 17 significant digits, locale independent.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Samples `curve` at `n` uniform parameters as a comma-separated table.
///
/// With `with_frames`, points without a Frenet frame get empty frame fields
/// and `degenerate = 1`.
pub fn export_samples(curve: &ParamCurve, n: usize, with_frames: bool) -> crate::error::Result<String> {
    if n < 2 {
        return Err(Error::InvalidField { field: "n", reason: format!("{n} rows requested, need at least 2") });
    }
    let tol = Tolerances::default();
    let mut s = String::from("t,x,y,z");
    if with_frames {
        s.push_str(",Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau,degenerate");
    }
    s.push('\n');
    for t in curve.domain().grid(n) {
        let p = curve.position(t)?;
        let _ = write!(s, "{},{},{},{}", num(t), num(p.x), num(p.y), num(p.z));
        if with_frames {
            match frame_at(curve, t, &tol) {
                Ok(f) => {
                    for v in [f.tangent, f.normal, f.binormal] {
                        let _ = write!(s, ",{},{},{}", num(v.x), num(v.y), num(v.z));
                    }
                    let _ = write!(s, ",{},{},0", num(f.kappa), num(f.tau));
                }
                Err(Error::DegenerateFrame { .. } | Error::ZeroSpeed { .. }) => s.push_str(",,,,,,,,,,,,1"),
                Err(e) => return Err(e),
            }
        }
        s.push('\n');
    }
    Ok(s)
}
