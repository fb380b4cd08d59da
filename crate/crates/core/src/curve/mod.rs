//! Curve representations, derivative evaluation and regularity checks.

pub mod fd;
mod spec;
mod spline;

use serde::{Deserialize, Serialize};

pub use self::spec::{parse_curve_spec, to_curve_spec};
pub use self::spline::CubicSpline;
use crate::error::{Error, Result};
use crate::frenet::ArcLengthCurve;
use crate::lift::LiftedCurve;
use crate::tolerances::Tolerances;
use crate::Vec3;

/// Closed parameter interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidField {
                field: "domain",
                reason: format!("need finite lo < hi, got [{lo}, {hi}]"),
            });
        }
        Ok(Self { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    fn slack(&self) -> f64 {
        1e-12 * self.width().max(1.0)
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.lo - self.slack() && t <= self.hi + self.slack()
    }

    /// Snaps `t` into the domain, failing when it is farther out than rounding slack.
    pub fn check(&self, t: f64) -> Result<f64> {
        if self.contains(t) {
            Ok(t.clamp(self.lo, self.hi))
        } else {
            Err(Error::OutOfDomain { t, lo: self.lo, hi: self.hi })
        }
    }

    /// `n` uniform samples including both ends (`n` is raised to 2).
    pub fn grid(&self, n: usize) -> Vec<f64> {
        uniform(self.lo, self.hi, n)
    }

    /// `n` uniform samples on `[lo + margin, hi - margin]`.
    pub fn inset_grid(&self, n: usize, margin: f64) -> Vec<f64> {
        uniform(self.lo + margin, self.hi - margin, n)
    }
}

fn uniform(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { hi } else { lo + i as f64 * step }).collect()
}

/// How derivatives of order 1..=3 are obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Derivatives {
    /// Closed form (or chain rule through closed forms).
    Exact,
    /// Central differences of positions with base step `step`. Order `k`
    /// uses `step * 10^(k-1)` to keep round-off below truncation error.
    FiniteDifference { step: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurveKind {
    /// Per-component polynomials, coefficients in ascending degree.
    Polynomial {
        coeffs: [Vec<f64>; 3],
    },
    /// `(r cos t, r sin t, p t)`.
    CircularHelix {
        radius: f64,
        pitch: f64,
    },
    Polyline(CubicSpline),
    Lifted(Box<LiftedCurve>),
    ArcLength(Box<ArcLengthCurve>),
}

/// An immutable space curve over a closed parameter interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamCurve {
    kind: CurveKind,
    domain: Domain,
    derivatives: Derivatives,
}

impl ParamCurve {
    pub fn polynomial(coeffs: [Vec<f64>; 3], domain: Domain) -> Result<Self> {
        if coeffs.iter().any(|c| c.is_empty()) {
            return Err(Error::InvalidField {
                field: "coeffs",
                reason: "every component needs at least one coefficient".into(),
            });
        }
        if coeffs.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidField { field: "coeffs", reason: "non-finite coefficient".into() });
        }
        Ok(Self::from_parts(CurveKind::Polynomial { coeffs }, domain))
    }

    pub fn circular_helix(radius: f64, pitch: f64, domain: Domain) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidField { field: "radius", reason: format!("must be > 0, got {radius}") });
        }
        if !pitch.is_finite() {
            return Err(Error::InvalidField { field: "pitch", reason: "must be finite".into() });
        }
        Ok(Self::from_parts(CurveKind::CircularHelix { radius, pitch }, domain))
    }

    /// Polyline smoothed by a natural cubic spline. `domain` defaults to the knot span.
    pub fn polyline(points: Vec<Vec3>, knots: Vec<f64>, domain: Option<Domain>) -> Result<Self> {
        let spline = CubicSpline::new(points, knots)?;
        let span = Domain::new(spline.knots()[0], spline.knots()[spline.knots().len() - 1])?;
        let domain = domain.unwrap_or(span);
        if domain.lo < span.lo || domain.hi > span.hi {
            return Err(Error::InvalidField {
                field: "domain",
                reason: format!("[{}, {}] exceeds knot span [{}, {}]", domain.lo, domain.hi, span.lo, span.hi),
            });
        }
        Ok(Self::from_parts(CurveKind::Polyline(spline), domain))
    }

    pub(crate) fn from_parts(kind: CurveKind, domain: Domain) -> Self {
        Self { kind, domain, derivatives: Derivatives::Exact }
    }

    /// Switches the derivative strategy.
    pub fn with_derivatives(mut self, derivatives: Derivatives) -> Result<Self> {
        if let Derivatives::FiniteDifference { step } = derivatives {
            if !(step.is_finite() && step > 0.0) {
                return Err(Error::InvalidField { field: "fd_step", reason: format!("must be > 0, got {step}") });
            }
        }
        self.derivatives = derivatives;
        Ok(self)
    }

    /// Same curve with central finite differences at the default step
    /// (`fd_step` times the domain width).
    pub fn finite_difference(self, tol: &Tolerances) -> Self {
        let step = tol.step_for(self.domain.width());
        Self { derivatives: Derivatives::FiniteDifference { step }, ..self }
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn derivatives(&self) -> Derivatives {
        self.derivatives
    }

    /// Restricts the parameter interval (must stay inside the current one).
    pub fn restricted(&self, domain: Domain) -> Result<Self> {
        if !(self.domain.contains(domain.lo) && self.domain.contains(domain.hi)) {
            return Err(Error::InvalidField {
                field: "domain",
                reason: "restriction must lie inside the original domain".into(),
            });
        }
        Ok(Self { domain, ..self.clone() })
    }

    /// The `order`-th derivative at `t`.
    pub fn eval(&self, t: f64, order: usize) -> Result<Vec3> {
        if order > 3 {
            return Err(Error::UnsupportedOrder(order));
        }
        let t = self.domain.check(t)?;
        match self.derivatives {
            Derivatives::FiniteDifference { step } if order > 0 => {
                let h = step * 10f64.powi(order as i32 - 1);
                fd::derivative(|x| self.eval_kind(x, 0), t, order, h, self.domain.lo, self.domain.hi)
            }
            _ => self.eval_kind(t, order),
        }
    }

    pub fn position(&self, t: f64) -> Result<Vec3> {
        self.eval(t, 0)
    }

    fn eval_kind(&self, t: f64, order: usize) -> Result<Vec3> {
        match &self.kind {
            CurveKind::Polynomial { coeffs } => {
                Ok(Vec3::new(poly(&coeffs[0], t, order), poly(&coeffs[1], t, order), poly(&coeffs[2], t, order)))
            }
            CurveKind::CircularHelix { radius, pitch } => {
                let (s, c) = t.sin_cos();
                let r = *radius;
                Ok(match order {
                    0 => Vec3::new(r * c, r * s, pitch * t),
                    1 => Vec3::new(-r * s, r * c, *pitch),
                    2 => Vec3::new(-r * c, -r * s, 0.0),
                    _ => Vec3::new(r * s, -r * c, 0.0),
                })
            }
            CurveKind::Polyline(spline) => Ok(spline.eval(t, order)),
            CurveKind::Lifted(lifted) => lifted.eval(t, order),
            CurveKind::ArcLength(curve) => curve.eval(t, order),
        }
    }
}

/// `order`-th derivative of an ascending-degree polynomial (Horner).
fn poly(coeffs: &[f64], t: f64, order: usize) -> f64 {
    let mut acc = 0.0;
    for (i, &c) in coeffs.iter().enumerate().skip(order).rev() {
        let falling: f64 = ((i - order + 1)..=i).map(|k| k as f64).product();
        acc = acc * t + c * falling;
    }
    acc
}

/// Minima of speed and `|a' x a''|` over a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularityReport {
    pub min_speed: f64,
    pub min_speed_at: f64,
    pub min_cross_norm: f64,
    pub min_cross_at: f64,
    pub is_regular: bool,
    pub is_twisted: bool,
    pub grid_size: usize,
}

pub fn regularity_check(curve: &ParamCurve, grid_size: usize, tol: &Tolerances) -> RegularityReport {
    let grid = curve.domain().grid(grid_size);
    let mut report = RegularityReport {
        min_speed: f64::INFINITY,
        min_speed_at: grid[0],
        min_cross_norm: f64::INFINITY,
        min_cross_at: grid[0],
        is_regular: false,
        is_twisted: false,
        grid_size: grid.len(),
    };
    for &t in &grid {
        let (speed, cross) = match (curve.eval(t, 1), curve.eval(t, 2)) {
            (Ok(d1), Ok(d2)) => (d1.norm(), d1.cross(&d2).norm()),
            _ => (0.0, 0.0),
        };
        let (speed, cross) = (nan_to_zero(speed), nan_to_zero(cross));
        if speed < report.min_speed {
            report.min_speed = speed;
            report.min_speed_at = t;
        }
        if cross < report.min_cross_norm {
            report.min_cross_norm = cross;
            report.min_cross_at = t;
        }
    }
    report.is_regular = report.min_speed > tol.speed;
    report.is_twisted = report.min_cross_norm > tol.cross;
    report
}

fn nan_to_zero(x: f64) -> f64 {
    if x.is_nan() {
        0.0
    } else {
        x
    }
}
