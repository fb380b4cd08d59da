//! The helix lift `s -> offset + sin(theta) alpha(s) + a (s - s0) cos(theta)` and
//! the closed-form coefficients of the lifted frame in the base frame.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::curve::{CurveKind, ParamCurve};
use crate::error::{Error, Result};
use crate::frenet::reparam_by_arclength;
use crate::helix::{helix_axis, lancret_test};
use crate::tolerances::Tolerances;
use crate::Vec3;

/// Where the constant direction `a` of the lift comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisMode {
    /// The unit helix axis `cos(theta) T + sin(theta) B` of the base curve.
    Unit,
    /// Twice the unit axis (the convention of the worked cubic example).
    Doubled,
    Explicit(Vec3),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftSpec {
    /// Radians, in `[0, pi/2]`; the endpoints are degenerate.
    pub theta: f64,
    pub s0: f64,
    /// The constant vector added to every point.
    pub offset: Vec3,
    pub axis_mode: AxisMode,
}

impl LiftSpec {
    /// Unit axis, `s0 = 0`, no offset.
    pub fn with_theta(theta: f64) -> Self {
        Self { theta, s0: 0.0, offset: Vec3::zeros(), axis_mode: AxisMode::Unit }
    }

    pub fn is_degenerate(&self) -> bool {
        self.theta <= 0.0 || self.theta >= FRAC_PI_2
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=FRAC_PI_2).contains(&self.theta) {
            return Err(Error::InvalidField { field: "theta", reason: format!("{} is outside [0, pi/2]", self.theta) });
        }
        if !self.s0.is_finite() || !self.offset.iter().all(|c| c.is_finite()) {
            return Err(Error::InvalidField { field: "offset", reason: "s0 and offset must be finite".into() });
        }
        Ok(())
    }
}

/// A lifted curve; its derivatives follow from the base's.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedCurve {
    base: ParamCurve,
    spec: LiftSpec,
    axis: Vec3,
}

impl LiftedCurve {
    pub(crate) fn new(base: ParamCurve, spec: LiftSpec, axis: Vec3) -> Self {
        Self { base, spec, axis }
    }

    pub fn base(&self) -> &ParamCurve {
        &self.base
    }

    pub fn spec(&self) -> &LiftSpec {
        &self.spec
    }

    /// The effective (possibly non-unit) direction `a`.
    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    pub(crate) fn eval(&self, s: f64, order: usize) -> Result<Vec3> {
        let (sin, cos) = self.spec.theta.sin_cos();
        let base = self.base.eval(s, order)?;
        Ok(match order {
            0 => self.spec.offset + base * sin + self.axis * ((s - self.spec.s0) * cos),
            1 => base * sin + self.axis * cos,
            _ => base * sin,
        })
    }
}

/// Effective lift direction for `spec` over `base`.
pub fn resolve_axis(base: &ParamCurve, spec: &LiftSpec, grid_size: usize, tol: &Tolerances) -> Result<Vec3> {
    spec.validate()?;
    let scale = match spec.axis_mode {
        AxisMode::Explicit(axis) => {
            if !axis.iter().all(|c| c.is_finite()) {
                return Err(Error::InvalidField { field: "axis", reason: "must be finite".into() });
            }
            return Ok(axis);
        }
        AxisMode::Unit => 1.0,
        AxisMode::Doubled => 2.0,
    };
    let lancret = lancret_test(base, grid_size, tol)?;
    if !lancret.is_general_helix {
        return Err(Error::NotAHelix(format!("kappa/tau varies (rel. dev. {:e})", lancret.stat.rel_dev)));
    }
    if !spec.is_degenerate() && (spec.theta - lancret.theta).abs() > tol.vector {
        return Err(Error::ThetaMismatch { requested: spec.theta, helix: lancret.theta });
    }
    let (axis, _) = helix_axis(base, grid_size, tol)?;
    Ok(axis * scale)
}

fn max_speed_deviation(curve: &ParamCurve, grid_size: usize) -> Result<f64> {
    curve
        .domain()
        .grid(grid_size)
        .into_iter()
        .map(|s| curve.eval(s, 1).map(|d| (d.norm() - 1.0).abs()))
        .try_fold(0.0_f64, |acc, d| d.map(|d| acc.max(d)))
}

/// Lifts a unit-speed base curve.
pub fn lift_curve(alpha: &ParamCurve, spec: &LiftSpec, grid_size: usize, tol: &Tolerances) -> Result<ParamCurve> {
    let max_dev = max_speed_deviation(alpha, grid_size)?;
    if max_dev > tol.vector {
        return Err(Error::NotUnitSpeed { max_dev });
    }
    lift_literal(alpha, spec, grid_size, tol)
}

/// Lifts `alpha` in whatever parameter it carries (no unit-speed check).
pub fn lift_literal(alpha: &ParamCurve, spec: &LiftSpec, grid_size: usize, tol: &Tolerances) -> Result<ParamCurve> {
    let axis = resolve_axis(alpha, spec, grid_size, tol)?;
    Ok(ParamCurve::from_parts(
        CurveKind::Lifted(Box::new(LiftedCurve::new(alpha.clone(), *spec, axis))),
        alpha.domain(),
    ))
}

/// Lifts `alpha`, first reparameterizing it by arc length when it is not unit
/// speed. The flag reports whether that substitution happened.
pub fn lift_unit_speed(
    alpha: &ParamCurve,
    spec: &LiftSpec,
    grid_size: usize,
    tol: &Tolerances,
) -> Result<(ParamCurve, bool)> {
    if max_speed_deviation(alpha, grid_size)? <= tol.vector {
        return Ok((lift_curve(alpha, spec, grid_size, tol)?, false));
    }
    let unit = reparam_by_arclength(alpha, grid_size)?;
    Ok((lift_curve(&unit, spec, grid_size, tol)?, true))
}

/// Closed-form coefficients of the lifted frame as functions of the base
/// curvature, torsion and the lift angle:
///
/// ```text
/// Tbar = tbar_t T + tbar_b B
/// Bbar = bbar_t T + bbar_b B
/// Nbar = c N
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormFrame {
    pub lambda: f64,
    pub mu: f64,
    pub c: f64,
    pub tbar_t_coeff: f64,
    pub tbar_b_coeff: f64,
    pub bbar_t_coeff: f64,
    pub bbar_b_coeff: f64,
}

impl ClosedFormFrame {
    pub fn tbar(&self, t: Vec3, b: Vec3) -> Vec3 {
        t * self.tbar_t_coeff + b * self.tbar_b_coeff
    }

    pub fn bbar(&self, t: Vec3, b: Vec3) -> Vec3 {
        t * self.bbar_t_coeff + b * self.bbar_b_coeff
    }

    pub fn nbar(&self, n: Vec3) -> Vec3 {
        n * self.c
    }
}

/// Denominator of the tangent coefficients, `sqrt(1 + cos(theta) sin(2 theta))`.
pub fn tangent_norm(theta: f64) -> f64 {
    (1.0 + theta.cos() * (2.0 * theta).sin()).sqrt()
}

pub fn closed_form_lift_frame(kappa: f64, tau: f64, theta: f64) -> Result<ClosedFormFrame> {
    let (sin, cos) = theta.sin_cos();
    let root = tangent_norm(theta);
    let tbar_t_coeff = (sin + cos * cos) / root;
    let tbar_b_coeff = cos * sin / root;
    let lambda = cos * sin * sin + cos.powi(3) * sin;
    let mu = (sin + cos * cos) * kappa - lambda * tau;
    let norm_sq = lambda * lambda + mu * mu;
    if norm_sq.is_nan() || norm_sq <= 1e-24 {
        return Err(Error::DegenerateDenominator(norm_sq));
    }
    let norm = norm_sq.sqrt();
    let (bbar_t_coeff, bbar_b_coeff) = (lambda / norm, mu / norm);
    Ok(ClosedFormFrame {
        lambda,
        mu,
        c: bbar_b_coeff * tbar_t_coeff - bbar_t_coeff * tbar_b_coeff,
        tbar_t_coeff,
        tbar_b_coeff,
        bbar_t_coeff,
        bbar_b_coeff,
    })
}

/// The factor `c` of `Nbar = c N`.
pub fn c_factor(kappa: f64, tau: f64, theta: f64) -> Result<f64> {
    closed_form_lift_frame(kappa, tau, theta).map(|f| f.c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Domain;
    use crate::fixtures;
    use crate::frenet::{curvature_torsion, frame_at};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, SQRT_2};

    const GRID: usize = 64;

    fn unit_helix() -> ParamCurve {
        ParamCurve::circular_helix(0.6, 0.8, Domain::new(0.0, 6.0).unwrap()).unwrap()
    }

    fn helix_theta() -> f64 {
        (0.6f64 / 0.8).atan()
    }

    #[test]
    fn right_angle_is_a_translation() {
        let tol = Tolerances::default();
        let base = unit_helix();
        let offset = Vec3::new(1.0, 2.0, 3.0);
        let spec = LiftSpec { theta: FRAC_PI_2, s0: 0.3, offset, axis_mode: AxisMode::Unit };
        let lifted = lift_curve(&base, &spec, GRID, &tol).unwrap();
        for s in base.domain().grid(11) {
            assert_abs_diff_eq!(lifted.position(s).unwrap(), offset + base.position(s).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn zero_angle_is_a_line() {
        let tol = Tolerances::default();
        let base = unit_helix();
        let offset = Vec3::new(-1.0, 0.5, 0.0);
        let spec = LiftSpec { theta: 0.0, s0: 1.0, offset, axis_mode: AxisMode::Unit };
        let lifted = lift_curve(&base, &spec, GRID, &tol).unwrap();
        for s in base.domain().grid(11) {
            assert_abs_diff_eq!(lifted.position(s).unwrap(), offset + Vec3::z() * (s - 1.0), epsilon = 1e-12);
        }
        assert!(matches!(frame_at(&lifted, 2.0, &tol), Err(Error::DegenerateFrame { .. })));
    }

    #[test]
    fn reference_example_components() {
        let tol = Tolerances::default();
        let spec = LiftSpec { theta: FRAC_PI_4, s0: 0.0, offset: Vec3::zeros(), axis_mode: AxisMode::Doubled };
        let lifted = lift_literal(&fixtures::reference_cubic(), &spec, GRID, &tol).unwrap();
        let CurveKind::Lifted(inner) = lifted.kind() else { panic!("lifted kind") };
        assert_abs_diff_eq!(inner.axis(), Vec3::new(SQRT_2, 0.0, SQRT_2), epsilon = 1e-12);
        for s in [0.5, 1.0, 2.0] {
            let p = lifted.position(s).unwrap();
            let s2 = s * s;
            // the rational first component factors as (3 sqrt2 + 1) s
            let rational = ((3.0 * SQRT_2 + 1.0) * s.powi(3) + (6.0 * SQRT_2 + 2.0) * s) / (s2 + 2.0);
            assert_relative_eq!(rational, (3.0 * SQRT_2 + 1.0) * s, max_relative = 1e-14);
            assert_relative_eq!(p.x, rational, max_relative = 1e-12);
            assert_relative_eq!(p.y, 1.5 * SQRT_2 * s2, max_relative = 1e-12);
            let third = (SQRT_2 / 2.0 * s.powi(5) + (SQRT_2 + 1.0) * s.powi(3) + 2.0 * s) / (s2 + 2.0);
            assert_relative_eq!(p.z, third, max_relative = 1e-12);
        }
        // the literal path is not unit speed, so the strict lift refuses it
        assert!(matches!(lift_curve(&fixtures::reference_cubic(), &spec, GRID, &tol), Err(Error::NotUnitSpeed { .. })));
    }

    #[test]
    fn precondition_errors() {
        let tol = Tolerances::default();
        let twisted = reparam_by_arclength(&fixtures::twisted_cubic(), GRID).unwrap();
        assert!(matches!(lift_curve(&twisted, &LiftSpec::with_theta(0.5), GRID, &tol), Err(Error::NotAHelix(_))));
        assert!(matches!(
            lift_curve(&unit_helix(), &LiftSpec::with_theta(FRAC_PI_6), GRID, &tol),
            Err(Error::ThetaMismatch { .. })
        ));
        assert!(matches!(
            lift_curve(&unit_helix(), &LiftSpec::with_theta(2.0), GRID, &tol),
            Err(Error::InvalidField { field: "theta", .. })
        ));
        // an explicit axis skips the helix requirement
        let spec = LiftSpec { axis_mode: AxisMode::Explicit(Vec3::x()), ..LiftSpec::with_theta(0.5) };
        assert!(lift_curve(&twisted, &spec, GRID, &tol).is_ok());
    }

    #[test]
    fn unit_speed_path_reparameterizes_when_needed() {
        let tol = Tolerances::default();
        let (lifted, substituted) =
            lift_unit_speed(&fixtures::reference_cubic(), &LiftSpec::with_theta(FRAC_PI_4), GRID, &tol).unwrap();
        assert!(substituted);
        assert_relative_eq!(lifted.domain().hi, 90.0, max_relative = 1e-12);
        let theta = helix_theta();
        let (_, substituted) = lift_unit_speed(&unit_helix(), &LiftSpec::with_theta(theta), GRID, &tol).unwrap();
        assert!(!substituted);
    }

    #[test]
    fn lambda_and_tangent_prefactor_at_quarter_turn() {
        let f = closed_form_lift_frame(0.3, 0.3, FRAC_PI_4).unwrap();
        // cos sin^2 = sqrt2/4, cos^3 sin = 1/4
        assert_relative_eq!(f.lambda, SQRT_2 / 4.0 + 0.25, max_relative = 1e-15);
        let root = tangent_norm(FRAC_PI_4);
        assert_relative_eq!(root, (1.0 + SQRT_2 / 2.0).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(1.0 / root, 2.0 / (4.0 + 2.0 * SQRT_2).sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn c_is_constant_for_constant_curvatures() {
        let helix = fixtures::circular_helix(2.0, 1.0);
        let theta = 0.9;
        let (k1, t1) = curvature_torsion(&helix, 0.2).unwrap();
        let (k2, t2) = curvature_torsion(&helix, 4.1).unwrap();
        let (c1, c2) = (c_factor(k1, t1, theta).unwrap(), c_factor(k2, t2, theta).unwrap());
        assert_relative_eq!(c1, c2, max_relative = 1e-12);
        let c = c_factor(0.25, 0.25, FRAC_PI_4).unwrap();
        assert!(c.is_finite());
    }

    #[test]
    fn degenerate_denominator() {
        // lambda = 0 at theta = 0, and mu = kappa = 0
        assert!(matches!(closed_form_lift_frame(0.0, 1.0, 0.0), Err(Error::DegenerateDenominator(_))));
    }

    #[test]
    fn closed_form_tangent_matches_lifted_curve() {
        let tol = Tolerances::default();
        for base in [unit_helix(), reparam_by_arclength(&fixtures::reference_cubic(), GRID).unwrap()] {
            let theta = lancret_test(&base, GRID, &tol).unwrap().theta;
            let lifted = lift_curve(&base, &LiftSpec::with_theta(theta), GRID, &tol).unwrap();
            for s in base.domain().grid(50) {
                let f = frame_at(&base, s, &tol).unwrap();
                let cf = closed_form_lift_frame(f.kappa, f.tau, theta).unwrap();
                let tbar = frame_at(&lifted, s, &tol).unwrap().tangent;
                assert_abs_diff_eq!(tbar, cf.tbar(f.tangent, f.binormal), epsilon = 1e-9);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn tangent_coefficients_are_unit(theta in 1e-9f64..(FRAC_PI_2 - 1e-9)) {
            let (sin, cos) = theta.sin_cos();
            let lhs = (sin + cos * cos).powi(2) + (cos * sin).powi(2);
            prop_assert!((lhs - (1.0 + cos * (2.0 * theta).sin())).abs() <= 1e-12);
            let f = closed_form_lift_frame(1.0, 0.5, theta).unwrap();
            prop_assert!((f.tbar_t_coeff.powi(2) + f.tbar_b_coeff.powi(2) - 1.0).abs() <= 1e-12);
            prop_assert!((f.bbar_t_coeff.powi(2) + f.bbar_b_coeff.powi(2) - 1.0).abs() <= 1e-12);
        }
    }
}
