use crate::error::{Error, Result};
use crate::Vec3;

/// Natural cubic spline through 3-D points at strictly increasing knots.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    knots: Vec<f64>,
    points: Vec<Vec3>,
    /// Second derivatives at the knots.
    moments: Vec<Vec3>,
}

impl CubicSpline {
    pub fn new(points: Vec<Vec3>, knots: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidField { field: "points", reason: "a polyline needs at least two points".into() });
        }
        if points.len() != knots.len() {
            return Err(Error::InvalidField {
                field: "knots",
                reason: format!("{} knots for {} points", knots.len(), points.len()),
            });
        }
        if knots.iter().any(|k| !k.is_finite()) || points.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
            return Err(Error::InvalidField { field: "points", reason: "non-finite value".into() });
        }
        if knots.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidField { field: "knots", reason: "knots must be strictly increasing".into() });
        }
        let moments = natural_moments(&points, &knots);
        Ok(Self { knots, points, moments })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    /// `order`-th derivative at `t` (orders above 3 vanish).
    pub fn eval(&self, t: f64, order: usize) -> Vec3 {
        let n = self.knots.len();
        let i = self.knots.partition_point(|&k| k <= t).saturating_sub(1).min(n - 2);
        let h = self.knots[i + 1] - self.knots[i];
        let u = t - self.knots[i];
        let (y0, y1) = (self.points[i], self.points[i + 1]);
        let (m0, m1) = (self.moments[i], self.moments[i + 1]);
        let b = (y1 - y0) / h - (m0 * 2.0 + m1) * (h / 6.0);
        let c = m0 * 0.5;
        let d = (m1 - m0) / (6.0 * h);
        match order {
            0 => y0 + b * u + c * (u * u) + d * (u * u * u),
            1 => b + c * (2.0 * u) + d * (3.0 * u * u),
            2 => c * 2.0 + d * (6.0 * u),
            3 => d * 6.0,
            _ => Vec3::zeros(),
        }
    }
}

fn natural_moments(points: &[Vec3], knots: &[f64]) -> Vec<Vec3> {
    let n = points.len();
    let mut moments = vec![Vec3::zeros(); n];
    if n < 3 {
        return moments;
    }
    let h: Vec<f64> = knots.windows(2).map(|w| w[1] - w[0]).collect();
    // Thomas algorithm on the interior system
    let m = n - 2;
    let mut diag = vec![0.0; m];
    let mut rhs = vec![Vec3::zeros(); m];
    for k in 0..m {
        let i = k + 1;
        diag[k] = 2.0 * (h[i - 1] + h[i]);
        rhs[k] = ((points[i + 1] - points[i]) / h[i] - (points[i] - points[i - 1]) / h[i - 1]) * 6.0;
    }
    for k in 1..m {
        let w = h[k] / diag[k - 1];
        diag[k] -= w * h[k];
        let prev = rhs[k - 1];
        rhs[k] -= prev * w;
    }
    moments[m] = rhs[m - 1] / diag[m - 1];
    for k in (0..m - 1).rev() {
        moments[k + 1] = (rhs[k] - moments[k + 2] * h[k + 1]) / diag[k];
    }
    moments
}
