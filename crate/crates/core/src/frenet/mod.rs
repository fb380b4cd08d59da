//! Frenet apparatus, arc length and arc-length reparameterization.

mod arclength;

use serde::Serialize;

pub use self::arclength::{ArcLengthCurve, ArcLengthMap};
use crate::curve::ParamCurve;
use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;
use crate::tolerances::Tolerances;
use crate::Vec3;

/// Orthonormal moving frame with curvature, torsion and parametric speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetFrame {
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    pub kappa: f64,
    pub tau: f64,
    pub speed: f64,
}

impl FrenetFrame {
    /// Assembles the frame from the first three derivatives at a point.
    ///
    /// `N = B x T` with `B` along `a' x a''`, so `(T, N, B)` is right-handed and
    /// the torsion sign follows `det(a', a'', a''')`.
    pub fn from_derivatives(t: f64, d1: Vec3, d2: Vec3, d3: Vec3, tol: &Tolerances) -> Result<Self> {
        let speed = d1.norm();
        if speed.is_nan() || speed <= tol.speed {
            return Err(Error::ZeroSpeed { t });
        }
        let cross = d1.cross(&d2);
        let cross_norm = cross.norm();
        if cross_norm.is_nan() || cross_norm <= tol.cross {
            return Err(Error::DegenerateFrame { t, cross_norm });
        }
        let tangent = d1 / speed;
        let binormal = cross / cross_norm;
        let normal = binormal.cross(&tangent);
        Ok(Self {
            tangent,
            normal,
            binormal,
            kappa: cross_norm / (speed * speed * speed),
            tau: cross.dot(&d3) / (cross_norm * cross_norm),
            speed,
        })
    }

    /// Largest violation of orthonormality and of `B = T x N`.
    pub fn orthonormality_defect(&self) -> f64 {
        let (t, n, b) = (self.tangent, self.normal, self.binormal);
        [
            (t.norm() - 1.0).abs(),
            (n.norm() - 1.0).abs(),
            (b.norm() - 1.0).abs(),
            t.dot(&n).abs(),
            t.dot(&b).abs(),
            n.dot(&b).abs(),
            (t.cross(&n) - b).amax(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn frame_at(curve: &ParamCurve, t: f64, tol: &Tolerances) -> Result<FrenetFrame> {
    let d1 = curve.eval(t, 1)?;
    let d2 = curve.eval(t, 2)?;
    let d3 = curve.eval(t, 3)?;
    FrenetFrame::from_derivatives(t, d1, d2, d3, tol)
}

/// Curvature alone; defined wherever the curve is regular.
pub fn curvature(curve: &ParamCurve, t: f64) -> Result<f64> {
    let tol = Tolerances::default();
    let d1 = curve.eval(t, 1)?;
    let speed = d1.norm();
    if speed.is_nan() || speed <= tol.speed {
        return Err(Error::ZeroSpeed { t });
    }
    Ok(d1.cross(&curve.eval(t, 2)?).norm() / speed.powi(3))
}

/// `(kappa, tau)` at `t` for an arbitrary regular parameterization.
pub fn curvature_torsion(curve: &ParamCurve, t: f64) -> Result<(f64, f64)> {
    let frame = frame_at(curve, t, &Tolerances::default())?;
    Ok((frame.kappa, frame.tau))
}

/// Length of the curve between `t0 <= t1`.
pub fn arc_length(curve: &ParamCurve, t0: f64, t1: f64) -> Result<f64> {
    let d = curve.domain();
    let (t0, t1) = (d.check(t0)?, d.check(t1)?);
    if t1 < t0 {
        return Err(Error::InvalidField { field: "t1", reason: format!("t1 = {t1} precedes t0 = {t0}") });
    }
    let speed = |t: f64| curve.eval(t, 1).map(|v| v.norm());
    let rough = adaptive_simpson(speed, t0, t1, f64::INFINITY)?;
    adaptive_simpson(speed, t0, t1, 1e-10 * rough.abs().max(1.0))
}

/// The same point set traced at unit speed over `[0, L]`.
pub fn reparam_by_arclength(curve: &ParamCurve, grid_size: usize) -> Result<ParamCurve> {
    Ok(ArcLengthCurve::new(curve.clone(), grid_size)?.into_curve())
}
