//! Classification of general, circular and slant helices and Bertrand pairs.

use serde::Serialize;

use crate::curve::{fd, ParamCurve};
use crate::error::{Error, Result};
use crate::frenet::{frame_at, FrenetFrame};
use crate::tolerances::Tolerances;
use crate::Vec3;

/// Denominator floor of [`ConstancyStat::rel_dev`] for generic quantities.
pub const DEFAULT_FLOOR: f64 = 1e-12;

/// Denominator floor for the slant-helix invariant `sigma`.
///
/// `sigma` is dimensionless and vanishes identically on general helices, where the
/// sampled values are pure round-off of size ~1e-11. Deviations are therefore
/// measured against at least this absolute scale.
pub const SIGMA_FLOOR: f64 = 1e-6;

/// How constant a sampled quantity is.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstancyStat {
    pub mean: f64,
    pub max_abs_dev: f64,
    /// `max_abs_dev / max(|mean|, floor)`.
    pub rel_dev: f64,
    pub grid_size: usize,
}

impl ConstancyStat {
    pub fn from_samples(samples: &[f64], floor: f64) -> Self {
        let n = samples.len().max(1) as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let max_abs_dev = samples.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max);
        Self { mean, max_abs_dev, rel_dev: max_abs_dev / mean.abs().max(floor), grid_size: samples.len() }
    }

    pub fn is_constant(&self, tol: f64) -> bool {
        self.rel_dev <= tol
    }
}

fn frames(curve: &ParamCurve, grid: &[f64], tol: &Tolerances) -> Result<Vec<FrenetFrame>> {
    grid.iter().map(|&t| frame_at(curve, t, tol)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LancretResult {
    pub is_general_helix: bool,
    /// Helix angle in `(0, pi/2)`: `tan(theta) = |kappa / tau|`.
    pub theta: f64,
    /// Sign of the mean torsion; the binormal term of the axis carries it.
    pub tau_sign: f64,
    pub stat: ConstancyStat,
}

/// Lancret's test: a twisted curve is a general helix iff `kappa / tau` is constant.
pub fn lancret_test(curve: &ParamCurve, grid_size: usize, tol: &Tolerances) -> Result<LancretResult> {
    let grid = curve.domain().grid(grid_size);
    let frames = frames(curve, &grid, tol)?;
    let mut ratios = Vec::with_capacity(frames.len());
    for (f, &t) in frames.iter().zip(&grid) {
        // a planar point: the ratio is unbounded there
        if f.tau.abs() <= 1e-12 * f.kappa {
            return Err(Error::DegenerateFrame { t, cross_norm: f.tau.abs() });
        }
        ratios.push(f.kappa / f.tau);
    }
    let stat = ConstancyStat::from_samples(&ratios, DEFAULT_FLOOR);
    Ok(LancretResult {
        is_general_helix: stat.is_constant(tol.constancy),
        theta: stat.mean.abs().atan(),
        tau_sign: stat.mean.signum(),
        stat,
    })
}

/// Axis of a general helix, `cos(theta) T + sin(theta) B`, averaged over the grid.
///
/// The returned stat measures the largest distance of a per-sample axis from the
/// mean direction.
pub fn helix_axis(curve: &ParamCurve, grid_size: usize, tol: &Tolerances) -> Result<(Vec3, ConstancyStat)> {
    let lancret = lancret_test(curve, grid_size, tol)?;
    if !lancret.is_general_helix {
        return Err(Error::NotAHelix(format!("kappa/tau varies (rel. dev. {:e})", lancret.stat.rel_dev)));
    }
    let grid = curve.domain().grid(grid_size);
    let (sin, cos) = lancret.theta.sin_cos();
    let samples: Vec<Vec3> =
        frames(curve, &grid, tol)?.iter().map(|f| f.tangent * cos + f.binormal * (lancret.tau_sign * sin)).collect();
    let sum: Vec3 = samples.iter().sum();
    let mean = sum / samples.len() as f64;
    let axis = mean.normalize();
    let max_abs_dev = samples.iter().map(|a| (a - axis).norm()).fold(0.0, f64::max);
    let stat = ConstancyStat { mean: mean.norm(), max_abs_dev, rel_dev: max_abs_dev, grid_size: samples.len() };
    if !stat.is_constant(tol.constancy) {
        return Err(Error::NotAHelix(format!("axis direction drifts by {max_abs_dev:e}")));
    }
    Ok((axis, stat))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlantResult {
    pub is_slant: bool,
    pub stat: ConstancyStat,
}

/// Geodesic curvature of the principal-normal indicatrix,
/// `sigma = kappa^2 / (kappa^2 + tau^2)^(3/2) * d/ds (tau / kappa)`.
pub fn slant_sigma(curve: &ParamCurve, t: f64, tol: &Tolerances) -> Result<f64> {
    let frame = frame_at(curve, t, tol)?;
    let d = curve.domain();
    let h = tol.step_for(d.width());
    let ratio = |x: f64| frame_at(curve, x, tol).map(|f| f.tau / f.kappa);
    let d_ratio_dt = fd::derivative(ratio, t, 1, h, d.lo, d.hi)?;
    let (k, tau) = (frame.kappa, frame.tau);
    Ok(k * k / (k * k + tau * tau).powf(1.5) * d_ratio_dt / frame.speed)
}

/// A curve is a slant helix iff `sigma` is constant.
pub fn slant_test(curve: &ParamCurve, grid_size: usize, tol: &Tolerances) -> Result<SlantResult> {
    let sigma: Vec<f64> =
        curve.domain().grid(grid_size).into_iter().map(|t| slant_sigma(curve, t, tol)).collect::<Result<_>>()?;
    let stat = ConstancyStat::from_samples(&sigma, SIGMA_FLOOR);
    Ok(SlantResult { is_slant: stat.is_constant(tol.constancy), stat })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BertrandResult {
    pub is_bertrand: bool,
    /// Smallest `|N_a . N_b|` over the grid.
    pub min_alignment: f64,
    pub stat: ConstancyStat,
}

/// Same-parameter Bertrand test: principal normals parallel at every sample.
pub fn bertrand_test(a: &ParamCurve, b: &ParamCurve, grid_size: usize, tol: &Tolerances) -> Result<BertrandResult> {
    let (da, db) = (a.domain(), b.domain());
    let scale = da.width().max(1.0);
    if (da.lo - db.lo).abs() > 1e-12 * scale || (da.hi - db.hi).abs() > 1e-12 * scale {
        return Err(Error::DomainMismatch);
    }
    let grid = da.grid(grid_size);
    let alignment: Vec<f64> = frames(a, &grid, tol)?
        .iter()
        .zip(frames(b, &grid, tol)?)
        .map(|(fa, fb)| fa.normal.dot(&fb.normal).abs().min(1.0))
        .collect();
    let min_alignment = alignment.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(BertrandResult {
        is_bertrand: min_alignment >= 1.0 - tol.vector,
        min_alignment,
        stat: ConstancyStat::from_samples(&alignment, DEFAULT_FLOOR),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HelixClassification {
    #[serde(rename = "general_helix")]
    pub is_general_helix: bool,
    #[serde(rename = "circular_helix")]
    pub is_circular_helix: bool,
    #[serde(rename = "slant_helix")]
    pub is_slant_helix: bool,
    pub theta: Option<f64>,
    pub axis: Option<Vec3>,
    pub ratio_stat: ConstancyStat,
    pub sigma_stat: ConstancyStat,
    pub kappa_stat: ConstancyStat,
    pub tau_stat: ConstancyStat,
}

pub fn classify(curve: &ParamCurve, grid_size: usize, tol: &Tolerances) -> Result<HelixClassification> {
    let lancret = lancret_test(curve, grid_size, tol)?;
    let grid = curve.domain().grid(grid_size);
    let frames = frames(curve, &grid, tol)?;
    let kappa: Vec<f64> = frames.iter().map(|f| f.kappa).collect();
    let tau: Vec<f64> = frames.iter().map(|f| f.tau).collect();
    let kappa_stat = ConstancyStat::from_samples(&kappa, DEFAULT_FLOOR);
    let tau_stat = ConstancyStat::from_samples(&tau, DEFAULT_FLOOR);
    let slant = slant_test(curve, grid_size, tol)?;
    let axis = if lancret.is_general_helix {
        match helix_axis(curve, grid_size, tol) {
            Ok((axis, _)) => Some(axis),
            Err(Error::NotAHelix(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let is_general_helix = lancret.is_general_helix && axis.is_some();
    Ok(HelixClassification {
        is_general_helix,
        is_circular_helix: is_general_helix
            && kappa_stat.is_constant(tol.constancy)
            && tau_stat.is_constant(tol.constancy),
        is_slant_helix: slant.is_slant,
        theta: is_general_helix.then_some(lancret.theta),
        axis,
        ratio_stat: lancret.stat,
        sigma_stat: slant.stat,
        kappa_stat,
        tau_stat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::frenet::{curvature_torsion, reparam_by_arclength};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use nalgebra::Rotation3;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

    const GRID: usize = 64;

    #[test]
    fn constancy_stat() {
        let s = ConstancyStat::from_samples(&[1.0, 1.0, 1.0], DEFAULT_FLOOR);
        assert_eq!((s.mean, s.max_abs_dev, s.rel_dev, s.grid_size), (1.0, 0.0, 0.0, 3));
        let s = ConstancyStat::from_samples(&[2.0, 4.0], DEFAULT_FLOOR);
        assert_eq!((s.mean, s.max_abs_dev, s.rel_dev), (3.0, 1.0, 1.0 / 3.0));
        let s = ConstancyStat::from_samples(&[0.0, 0.0], DEFAULT_FLOOR);
        assert_eq!(s.rel_dev, 0.0);
    }

    #[test]
    fn reference_cubic_is_general_helix() {
        let r = lancret_test(&fixtures::reference_cubic(), GRID, &Tolerances::default()).unwrap();
        assert!(r.is_general_helix);
        assert_abs_diff_eq!(r.theta, FRAC_PI_4, epsilon = 1e-12);
        assert!(r.stat.rel_dev < 1e-10);
    }

    #[test]
    fn circular_helix_angle() {
        for (a, b) in [(1.0, 1.0), (2.0, 1.0), (1.0, 3.0)] {
            let helix = fixtures::circular_helix(a, b);
            let r = lancret_test(&helix, GRID, &Tolerances::default()).unwrap();
            // oracle: kappa/tau from the sampled closed forms a/(a^2+b^2), b/(a^2+b^2)
            let (k, t) = curvature_torsion(&helix, 1.0).unwrap();
            assert_relative_eq!(k / t, a / b, max_relative = 1e-13);
            assert!(r.is_general_helix);
            assert_abs_diff_eq!(r.theta, (a / b).atan(), epsilon = 1e-12);
        }
    }

    #[test]
    fn quartic_is_not_a_general_helix() {
        let q = fixtures::quartic();
        let r0 = curvature_torsion(&q, 0.5).unwrap();
        let r1 = curvature_torsion(&q, 1.0).unwrap();
        assert!(((r0.0 / r0.1) - (r1.0 / r1.1)).abs() > 1e-2);
        assert!(!lancret_test(&q, GRID, &Tolerances::default()).unwrap().is_general_helix);
        assert!(matches!(helix_axis(&q, GRID, &Tolerances::default()), Err(Error::NotAHelix(_))));
    }

    #[test]
    fn planar_points_are_refused() {
        let circle = fixtures::planar_circle(1.0);
        assert!(matches!(lancret_test(&circle, GRID, &Tolerances::default()), Err(Error::DegenerateFrame { .. })));
        // (t, t^2, t^4) has zero torsion at t = 0, which the odd grid hits
        let wide = ParamCurve::polynomial(
            [vec![0.0, 1.0], vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 0.0, 0.0, 1.0]],
            crate::curve::Domain::new(-1.0, 1.0).unwrap(),
        )
        .unwrap();
        assert!(matches!(lancret_test(&wide, 65, &Tolerances::default()), Err(Error::DegenerateFrame { .. })));
    }

    #[test]
    fn axes() {
        let tol = Tolerances::default();
        let (axis, stat) = helix_axis(&fixtures::reference_cubic(), GRID, &tol).unwrap();
        assert_abs_diff_eq!(axis, Vec3::new(FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2), epsilon = 1e-12);
        assert!(stat.max_abs_dev < 1e-6);
        let (axis, stat) = helix_axis(&fixtures::circular_helix(2.0, 1.0), GRID, &tol).unwrap();
        assert_abs_diff_eq!(axis, Vec3::z(), epsilon = 1e-12);
        assert!(stat.max_abs_dev < 1e-6);
        // left-handed helix: negative torsion, same axis line
        let left = fixtures::circular_helix(2.0, -1.0);
        let lancret = lancret_test(&left, GRID, &tol).unwrap();
        assert!(lancret.theta > 0.0 && lancret.theta < PI / 2.0);
        assert_eq!(lancret.tau_sign, -1.0);
        let (axis, _) = helix_axis(&left, GRID, &tol).unwrap();
        assert_abs_diff_eq!(axis, -Vec3::z(), epsilon = 1e-12);
    }

    #[test]
    fn slant_helices() {
        let tol = Tolerances::default();
        for curve in [fixtures::circular_helix(1.0, 1.0), fixtures::reference_cubic()] {
            let r = slant_test(&curve, GRID, &tol).unwrap();
            assert!(r.is_slant, "{:?}", r.stat);
            assert_abs_diff_eq!(r.stat.mean, 0.0, epsilon = 1e-9);
        }
        let twisted = fixtures::twisted_cubic();
        // oracle values: sigma(0.2) ~ -0.2917 and sigma(1.0) ~ 0.2624
        let s02 = slant_sigma(&twisted, 0.2, &tol).unwrap();
        let s10 = slant_sigma(&twisted, 1.0, &tol).unwrap();
        assert_abs_diff_eq!(s02, -0.291697449807586, epsilon = 1e-6);
        assert_abs_diff_eq!(s10, 0.2624208702960591, epsilon = 1e-6);
        assert!(!slant_test(&twisted, GRID, &tol).unwrap().is_slant);
    }

    #[test]
    fn bertrand_pairs() {
        let tol = Tolerances::default();
        let cubic = fixtures::reference_cubic();
        assert!(bertrand_test(&cubic, &cubic, GRID, &tol).unwrap().is_bertrand);

        let rot = Rotation3::from_axis_angle(&Vec3::x_axis(), PI / 6.0);
        let m = rot.matrix();
        // rows of the rotated coefficient vectors, padded to degree 3
        let basis = [[0.0, 6.0, 0.0, 0.0], [0.0, 0.0, 3.0, 0.0], [0.0, 0.0, 0.0, 1.0]];
        let coeffs: [Vec<f64>; 3] =
            std::array::from_fn(|r| (0..4).map(|k| (0..3).map(|c| m[(r, c)] * basis[c][k]).sum()).collect());
        let rotated = ParamCurve::polynomial(coeffs, cubic.domain()).unwrap();
        let r = bertrand_test(&cubic, &rotated, GRID, &tol).unwrap();
        assert!(!r.is_bertrand);
        assert!(r.min_alignment < 1.0 - tol.vector);
        let back = bertrand_test(&rotated, &cubic, GRID, &tol).unwrap();
        assert_eq!(back.min_alignment, r.min_alignment);

        let unit = reparam_by_arclength(&cubic, 64).unwrap();
        assert_eq!(bertrand_test(&cubic, &unit, GRID, &tol), Err(Error::DomainMismatch));
    }

    #[test]
    fn classification() {
        let tol = Tolerances::default();
        let c = classify(&fixtures::circular_helix(1.0, 3.0), GRID, &tol).unwrap();
        assert!(c.is_general_helix && c.is_circular_helix && c.is_slant_helix);
        let c = classify(&fixtures::reference_cubic(), GRID, &tol).unwrap();
        assert!(c.is_general_helix && !c.is_circular_helix && c.is_slant_helix);
        assert_abs_diff_eq!(c.theta.unwrap(), FRAC_PI_4, epsilon = 1e-12);
        let c = classify(&fixtures::twisted_cubic(), GRID, &tol).unwrap();
        assert!(!c.is_general_helix && !c.is_circular_helix && !c.is_slant_helix);
        assert!(c.theta.is_none() && c.axis.is_none());
    }
}
