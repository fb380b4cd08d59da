#![allow(dead_code)]

use curvelift::curve::CurveKind;
use curvelift::frenet::frame_at;
use curvelift::helix::{classify, helix_axis, lancret_test, HelixClassification};
use curvelift::lift::{lift_curve, LiftSpec};
use curvelift::verify::{compare_frames, oracle_frame};
use curvelift::{fixtures, reparam_by_arclength, Domain, ParamCurve, Tolerances, Vec3};
use nalgebra::{Rotation3, Unit};

pub fn tol() -> Tolerances {
    Tolerances::default()
}

/// Regular twisted curves given in their own parameter.
pub fn direct_fixtures() -> Vec<(&'static str, ParamCurve)> {
    vec![
        ("cubic", fixtures::reference_cubic()),
        ("twisted_cubic", fixtures::twisted_cubic()),
        ("quartic", fixtures::quartic()),
        ("helix(1,1)", fixtures::circular_helix(1.0, 1.0)),
        ("helix(2,1)", fixtures::circular_helix(2.0, 1.0)),
        ("helix(1,3)", fixtures::circular_helix(1.0, 3.0)),
    ]
}

/// Arc-length reparameterizations of the direct fixtures.
pub fn unit_speed_fixtures() -> Vec<(&'static str, ParamCurve)> {
    direct_fixtures()
        .into_iter()
        .map(|(name, c)| (name, reparam_by_arclength(&c, 256).expect("regular fixture")))
        .collect()
}

/// Every frame-bearing fixture: direct, finite-difference, arc-length and lifted.
pub fn all_fixtures() -> Vec<(String, ParamCurve)> {
    let tol = tol();
    let mut out: Vec<(String, ParamCurve)> = direct_fixtures().into_iter().map(|(n, c)| (n.to_string(), c)).collect();
    out.push(("cubic (fd)".into(), fixtures::reference_cubic().finite_difference(&tol)));
    for (name, c) in unit_speed_fixtures() {
        out.push((format!("{name} (arc length)"), c));
    }
    let alpha = reparam_by_arclength(&fixtures::reference_cubic(), 256).unwrap();
    let lifted = lift_curve(&alpha, &LiftSpec::with_theta(std::f64::consts::FRAC_PI_4), 256, &tol).unwrap();
    out.push(("cubic lift".into(), lifted));
    out
}

/// `m R p + shift` applied to a polynomial curve.
pub fn transform(curve: &ParamCurve, rot: &Rotation3<f64>, shift: Vec3, m: f64) -> ParamCurve {
    let CurveKind::Polynomial { coeffs } = curve.kind() else { panic!("transform needs a polynomial curve") };
    let len = coeffs.iter().map(Vec::len).max().unwrap();
    let at = |c: &Vec<f64>, k: usize| c.get(k).copied().unwrap_or(0.0);
    let moved: Vec<Vec3> = (0..len)
        .map(|k| {
            let v = rot * Vec3::new(at(&coeffs[0], k), at(&coeffs[1], k), at(&coeffs[2], k)) * m;
            if k == 0 {
                v + shift
            } else {
                v
            }
        })
        .collect();
    let component = |i: usize| moved.iter().map(|v| v[i]).collect::<Vec<f64>>();
    ParamCurve::polynomial([component(0), component(1), component(2)], curve.domain()).unwrap()
}

pub fn rotation(axis: Vec3, angle: f64) -> Rotation3<f64> {
    Rotation3::from_axis_angle(&Unit::new_normalize(axis), angle)
}

/// Largest orthonormality defect of the exact frames on an `n`-point grid.
pub fn max_orthonormality_defect(curve: &ParamCurve, n: usize) -> f64 {
    let tol = tol();
    curve
        .domain()
        .grid(n)
        .into_iter()
        .map(|t| {
            let f = frame_at(curve, t, &tol).unwrap();
            f.orthonormality_defect().max((f.binormal - f.tangent.cross(&f.normal)).norm())
        })
        .fold(0.0, f64::max)
}

/// Largest `|s' - 1|` of a curve on an `n`-point grid.
pub fn max_speed_defect(curve: &ParamCurve, n: usize) -> f64 {
    curve.domain().grid(n).into_iter().map(|s| (curve.eval(s, 1).unwrap().norm() - 1.0).abs()).fold(0.0, f64::max)
}

/// Relative residuals of `T' = kappa N` and `B' = -tau N` along a unit-speed
/// curve, with `T'` and `B'` from central differences of step `h`.
pub fn frenet_residuals(curve: &ParamCurve, n: usize, h: f64) -> (f64, f64) {
    let tol = tol();
    let d = curve.domain();
    let inner = Domain::new(d.lo + h, d.hi - h).unwrap();
    let (mut rt, mut rb) = (0.0f64, 0.0f64);
    for s in inner.grid(n) {
        let f = frame_at(curve, s, &tol).unwrap();
        let (fp, fm) = (frame_at(curve, s + h, &tol).unwrap(), frame_at(curve, s - h, &tol).unwrap());
        let dt = (fp.tangent - fm.tangent) / (2.0 * h);
        let db = (fp.binormal - fm.binormal) / (2.0 * h);
        rt = rt.max((dt - f.normal * f.kappa).norm() / f.kappa.abs());
        rb = rb.max((db + f.normal * f.tau).norm() / f.tau.abs());
    }
    (rt, rb)
}

/// Max oracle error against exact frames on an `n`-point inset grid, at step `h`.
pub fn oracle_error(curve: &ParamCurve, n: usize, h: f64) -> f64 {
    let tol = tol();
    curve
        .domain()
        .inset_grid(n, 2.0 * 1e-2 * (1.0 + 1e-9))
        .into_iter()
        .map(|t| {
            let d = compare_frames(&oracle_frame(curve, t, h).unwrap(), &frame_at(curve, t, &tol).unwrap(), &tol);
            d.max_direction().max(d.d_kappa).max(d.d_tau)
        })
        .fold(0.0, f64::max)
}

/// Error ratio when the oracle step halves from `1e-2`.
pub fn oracle_convergence(curve: &ParamCurve, n: usize) -> f64 {
    oracle_error(curve, n, 1e-2) / oracle_error(curve, n, 5e-3)
}

/// Whether two classifications agree on every flag and on the helix angle.
pub fn same_classification(a: &HelixClassification, b: &HelixClassification, theta_tol: f64) -> bool {
    let theta_ok = match (a.theta, b.theta) {
        (Some(x), Some(y)) => (x - y).abs() <= theta_tol,
        (None, None) => true,
        _ => false,
    };
    a.is_general_helix == b.is_general_helix
        && a.is_circular_helix == b.is_circular_helix
        && a.is_slant_helix == b.is_slant_helix
        && theta_ok
}

/// Classification invariance under a fixed set of rigid motions and scalings.
pub fn classification_invariant(curve: &ParamCurve, n: usize) -> bool {
    let tol = tol();
    let base = classify(curve, n, &tol).unwrap();
    let motions = [
        (rotation(Vec3::new(1.0, 2.0, 3.0), 0.7), Vec3::new(5.0, -3.0, 2.0), 1.0),
        (rotation(Vec3::new(-1.0, 0.0, 1.0), 2.4), Vec3::new(0.0, 1.0, 0.0), 0.25),
        (rotation(Vec3::new(0.0, 1.0, 0.0), -1.1), Vec3::new(-7.0, 0.5, 3.0), 4.0),
    ];
    motions
        .iter()
        .all(|(r, t, m)| same_classification(&base, &classify(&transform(curve, r, *t, *m), n, &tol).unwrap(), 1e-6))
}

pub fn unit_axis(curve: &ParamCurve, n: usize) -> Vec3 {
    helix_axis(curve, n, &tol()).unwrap().0
}

pub fn helix_angle(curve: &ParamCurve, n: usize) -> f64 {
    lancret_test(curve, n, &tol()).unwrap().theta
}
