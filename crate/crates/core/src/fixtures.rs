//! Named test curves, also addressable from the command line.

use std::f64::consts::{FRAC_PI_4, TAU};

use crate::curve::{Derivatives, Domain, ParamCurve};
use crate::error::{Error, Result};
use crate::lift::{lift_curve, lift_literal, AxisMode, LiftSpec};
use crate::tolerances::Tolerances;
use crate::Vec3;

fn domain(lo: f64, hi: f64) -> Domain {
    Domain::new(lo, hi).expect("fixture domains are valid")
}

/// `(6s, 3s^2, s^3)` on `[-3, 3]`: a general helix with `kappa = tau`.
pub fn reference_cubic() -> ParamCurve {
    ParamCurve::polynomial([vec![0.0, 6.0], vec![0.0, 0.0, 3.0], vec![0.0, 0.0, 0.0, 1.0]], domain(-3.0, 3.0))
        .expect("valid polynomial")
}

/// `(a cos t, a sin t, b t)` over one turn.
pub fn circular_helix(radius: f64, pitch: f64) -> ParamCurve {
    ParamCurve::circular_helix(radius, pitch, domain(0.0, TAU)).expect("positive radius")
}

/// `(t, t^2, t^3)` on `[-1, 1]`: twisted, but neither a general nor a slant helix.
pub fn twisted_cubic() -> ParamCurve {
    ParamCurve::polynomial([vec![0.0, 1.0], vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 0.0, 1.0]], domain(-1.0, 1.0))
        .expect("valid polynomial")
}

/// `(t, t^2, t^4)` on `[0.5, 1.5]`, where the torsion stays positive.
pub fn quartic() -> ParamCurve {
    ParamCurve::polynomial([vec![0.0, 1.0], vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 0.0, 0.0, 1.0]], domain(0.5, 1.5))
        .expect("valid polynomial")
}

pub fn planar_circle(radius: f64) -> ParamCurve {
    circular_helix(radius, 0.0)
}

pub fn line() -> ParamCurve {
    ParamCurve::polynomial([vec![1.0, 1.0], vec![0.0, 2.0], vec![-1.0, -1.0]], domain(0.0, 1.0))
        .expect("valid polynomial")
}

/// Resolves `paper_cubic`, `twisted_cubic` or `circular_helix:a,b`.
pub fn by_name(name: &str) -> Option<Result<ParamCurve>> {
    match name {
        "paper_cubic" => Some(Ok(reference_cubic())),
        "twisted_cubic" => Some(Ok(twisted_cubic())),
        _ => {
            let args = name.strip_prefix("circular_helix:")?;
            Some(parse_helix_args(args))
        }
    }
}

fn parse_helix_args(args: &str) -> Result<ParamCurve> {
    let parts: Vec<&str> = args.split(',').collect();
    let [a, b] = parts.as_slice() else {
        return Err(Error::Parse(format!("expected circular_helix:a,b, got `{args}`")));
    };
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("`{s}`: {e}")));
    ParamCurve::circular_helix(parse(a)?, parse(b)?, domain(0.0, TAU))
}

/// One curve of every kind, for serialization tests.
pub fn all_kinds() -> Vec<ParamCurve> {
    let tol = Tolerances::default();
    let unit_helix = ParamCurve::circular_helix(0.6, 0.8, domain(0.0, 6.0)).expect("valid helix");
    let theta = (0.6f64 / 0.8).atan();
    let spec = |axis_mode| LiftSpec { theta, s0: 0.5, offset: Vec3::new(1.0, -2.0, 0.5), axis_mode };
    let polyline = ParamCurve::polyline(
        vec![Vec3::new(0.0, 0.0, 0.0), Vec3::new(1.0, 0.5, 0.2), Vec3::new(2.0, 0.1, 0.9), Vec3::new(3.5, -1.0, 1.0)],
        vec![0.0, 1.0, 2.5, 3.0],
        None,
    )
    .expect("valid polyline");
    vec![
        reference_cubic(),
        reference_cubic().with_derivatives(Derivatives::FiniteDifference { step: 1e-4 }).expect("positive step"),
        circular_helix(2.0, 1.0),
        polyline.clone(),
        polyline.restricted(domain(0.5, 2.75)).expect("inside knot span"),
        lift_curve(&unit_helix, &spec(AxisMode::Unit), 64, &tol).expect("unit-speed helix"),
        lift_curve(&unit_helix, &spec(AxisMode::Doubled), 64, &tol).expect("unit-speed helix"),
        lift_literal(
            &twisted_cubic(),
            &LiftSpec {
                theta: FRAC_PI_4,
                s0: 0.0,
                offset: Vec3::zeros(),
                axis_mode: AxisMode::Explicit(Vec3::new(0.0, 0.6, 0.8)),
            },
            64,
            &tol,
        )
        .expect("explicit axis needs no helix"),
        crate::frenet::reparam_by_arclength(&reference_cubic(), 16).expect("regular cubic"),
    ]
}
