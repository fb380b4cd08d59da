//! Frames from position samples only, for cross-checking analytic derivatives.

use serde::Serialize;

use crate::curve::ParamCurve;
use crate::error::{Error, Result};
use crate::frenet::FrenetFrame;
use crate::tolerances::Tolerances;

/// Frenet frame from a 5-point position stencil of half-width `2h`.
///
/// Derivatives are second-order central differences; the frame is assembled
/// by Gram-Schmidt (`N` from the part of `a''` normal to `a'`), a different
/// route from the cross-product assembly of [`crate::frenet::frame_at`].
pub fn oracle_frame(curve: &ParamCurve, t: f64, h: f64) -> Result<FrenetFrame> {
    let d = curve.domain();
    if h.is_nan() || h <= 0.0 || !d.contains(t - 2.0 * h) || !d.contains(t + 2.0 * h) {
        return Err(Error::StencilOutOfDomain { t, h });
    }
    let p = |k: f64| curve.position(d.check(t + k * h)?);
    let (m2, m1, p0, p1, p2) = (p(-2.0)?, p(-1.0)?, p(0.0)?, p(1.0)?, p(2.0)?);
    let d1 = (p1 - m1) / (2.0 * h);
    let d2 = (p1 - p0 * 2.0 + m1) / (h * h);
    let d3 = (p2 - p1 * 2.0 + m1 * 2.0 - m2) / (2.0 * h * h * h);

    let tol = Tolerances::default();
    let speed = d1.norm();
    if speed.is_nan() || speed <= tol.speed {
        return Err(Error::ZeroSpeed { t });
    }
    let tangent = d1 / speed;
    let normal_part = d2 - tangent * d2.dot(&tangent);
    let perp = normal_part.norm();
    if (speed * perp).is_nan() || speed * perp <= tol.cross {
        return Err(Error::DegenerateFrame { t, cross_norm: speed * perp });
    }
    let normal = normal_part / perp;
    let binormal = tangent.cross(&normal);
    Ok(FrenetFrame {
        tangent,
        normal,
        binormal,
        kappa: perp / (speed * speed),
        tau: binormal.dot(&d3) / (speed * perp),
        speed,
    })
}

/// Differences between two frames after sign alignment of `(N, B)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameDelta {
    pub d_t: f64,
    pub d_n: f64,
    pub d_b: f64,
    /// Relative.
    pub d_kappa: f64,
    /// Relative.
    pub d_tau: f64,
}

impl FrameDelta {
    pub fn max_direction(&self) -> f64 {
        self.d_t.max(self.d_n).max(self.d_b)
    }

    pub fn within(&self, tol: f64) -> bool {
        [self.d_t, self.d_n, self.d_b, self.d_kappa, self.d_tau].iter().all(|d| *d <= tol)
    }
}

fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Compares `b` against `a`, flipping `b`'s normal and binormal together when
/// its normal points the other way.
pub fn compare_frames(a: &FrenetFrame, b: &FrenetFrame, _tol: &Tolerances) -> FrameDelta {
    let sign = if a.normal.dot(&b.normal) < 0.0 { -1.0 } else { 1.0 };
    FrameDelta {
        d_t: (a.tangent - b.tangent).amax(),
        d_n: (a.normal - b.normal * sign).amax(),
        d_b: (a.binormal - b.binormal * sign).amax(),
        d_kappa: rel_diff(a.kappa, b.kappa),
        d_tau: rel_diff(a.tau, b.tau),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Domain;
    use crate::fixtures;
    use crate::frenet::frame_at;
    use crate::Vec3;
    use approx::assert_abs_diff_eq;

    #[test]
    fn reference_cubic_oracle() {
        let c = fixtures::reference_cubic();
        let f = oracle_frame(&c, 1.0, 1e-3).unwrap();
        assert_abs_diff_eq!(f.tangent, Vec3::new(2.0, 2.0, 1.0) / 3.0, epsilon = 1e-6);
        let f = oracle_frame(&c, 0.0, 1e-3).unwrap();
        assert_abs_diff_eq!(f.normal, Vec3::y(), epsilon = 1e-6);
    }

    #[test]
    fn constant_curve_has_no_oracle_frame() {
        let point = ParamCurve::polynomial([vec![1.0], vec![1.0], vec![1.0]], Domain::new(0.0, 1.0).unwrap()).unwrap();
        assert!(matches!(oracle_frame(&point, 0.5, 1e-3), Err(Error::ZeroSpeed { .. })));
        assert!(matches!(oracle_frame(&fixtures::line(), 0.5, 1e-3), Err(Error::DegenerateFrame { .. })));
    }

    #[test]
    fn stencil_must_fit() {
        let c = fixtures::reference_cubic();
        assert!(matches!(oracle_frame(&c, 3.0, 1e-3), Err(Error::StencilOutOfDomain { .. })));
        assert!(matches!(oracle_frame(&c, 0.0, 0.0), Err(Error::StencilOutOfDomain { .. })));
        assert!(oracle_frame(&c, 3.0 - 2e-3, 1e-3).is_ok());
    }

    #[test]
    fn self_comparison() {
        let tol = Tolerances::default();
        let f = frame_at(&fixtures::reference_cubic(), 0.7, &tol).unwrap();
        let d = compare_frames(&f, &f, &tol);
        assert_eq!(d, FrameDelta { d_t: 0.0, d_n: 0.0, d_b: 0.0, d_kappa: 0.0, d_tau: 0.0 });
        let flipped = FrenetFrame { normal: -f.normal, binormal: -f.binormal, ..f };
        let d = compare_frames(&f, &flipped, &tol);
        assert_eq!(d.max_direction(), 0.0);
    }

    #[test]
    fn exact_and_oracle_agree() {
        let tol = Tolerances::default();
        let c = fixtures::reference_cubic();
        let exact = frame_at(&c, 1.0, &tol).unwrap();
        let oracle = oracle_frame(&c, 1.0, 1e-3).unwrap();
        let d = compare_frames(&exact, &oracle, &tol);
        assert!(d.within(1e-6), "{d:?}");
    }

    #[test]
    fn oracle_converges_at_second_order() {
        let tol = Tolerances::default();
        for curve in [fixtures::reference_cubic(), fixtures::twisted_cubic()] {
            for t in curve.domain().inset_grid(7, 0.1) {
                let exact = frame_at(&curve, t, &tol).unwrap();
                let err = |h: f64| compare_frames(&exact, &oracle_frame(&curve, t, h).unwrap(), &tol).max_direction();
                let (e1, e2) = (err(1e-2), err(5e-3));
                assert!(e1 / e2 >= 3.5, "t = {t}: {e1:e} -> {e2:e}");
            }
        }
    }
}
