use crate::curve::{regularity_check, CurveKind, Domain, ParamCurve};
use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;
use crate::tolerances::Tolerances;
use crate::Vec3;

/// Relative accuracy of the cell integrals behind the inverse map.
const CELL_RTOL: f64 = 1e-14;
const MAX_NEWTON: usize = 80;

/// Cumulative arc length of a regular curve tabulated on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcLengthMap {
    source: ParamCurve,
    params: Vec<f64>,
    cumulative: Vec<f64>,
}

impl ArcLengthMap {
    /// Tabulates `grid_size` cells (at least one).
    pub fn build(source: ParamCurve, grid_size: usize) -> Result<Self> {
        let grid_size = grid_size.max(1);
        let tol = Tolerances::default();
        let report = regularity_check(&source, 4 * grid_size + 1, &tol);
        if !report.is_regular {
            return Err(Error::ZeroSpeed { t: report.min_speed_at });
        }
        let params = source.domain().grid(grid_size + 1);
        let mut cumulative = Vec::with_capacity(params.len());
        cumulative.push(0.0);
        for w in params.windows(2) {
            let cell = cell_length(&source, w[0], w[1])?;
            let prev = cumulative[cumulative.len() - 1];
            if cell <= 0.0 {
                return Err(Error::ZeroSpeed { t: w[0] });
            }
            cumulative.push(prev + cell);
        }
        Ok(Self { source, params, cumulative })
    }

    pub fn source(&self) -> &ParamCurve {
        &self.source
    }

    pub fn grid_size(&self) -> usize {
        self.params.len() - 1
    }

    pub fn table(&self) -> (&[f64], &[f64]) {
        (&self.params, &self.cumulative)
    }

    pub fn total_length(&self) -> f64 {
        self.cumulative[self.cumulative.len() - 1]
    }

    fn cell_of_param(&self, t: f64) -> usize {
        self.params.partition_point(|&p| p <= t).saturating_sub(1).min(self.params.len() - 2)
    }

    /// Arc length from the start of the domain to `t`.
    pub fn length_at(&self, t: f64) -> Result<f64> {
        let t = self.source.domain().check(t)?;
        let i = self.cell_of_param(t);
        Ok(self.cumulative[i] + cell_length(&self.source, self.params[i], t)?)
    }

    /// Source parameter at which the arc length equals `s`.
    pub fn param_at(&self, s: f64) -> Result<f64> {
        let total = self.total_length();
        let s = Domain { lo: 0.0, hi: total }.check(s)?;
        let last = self.params.len() - 1;
        if s <= 0.0 {
            return Ok(self.params[0]);
        }
        if s >= total {
            return Ok(self.params[last]);
        }
        let i = self.cumulative.partition_point(|&c| c <= s).saturating_sub(1).min(last - 1);
        let (mut a, mut b) = (self.params[i], self.params[i + 1]);
        let (ca, cb) = (self.cumulative[i], self.cumulative[i + 1]);
        let target = s - ca;
        let mut t = a + (b - a) * target / (cb - ca);
        for _ in 0..MAX_NEWTON {
            let g = cell_length(&self.source, self.params[i], t)? - target;
            if g > 0.0 {
                b = t;
            } else {
                a = t;
            }
            let speed = self.source.eval(t, 1)?.norm();
            let mut next = t - g / speed;
            if !(next > a && next < b) {
                next = 0.5 * (a + b);
            }
            let done = (next - t).abs() <= 4.0 * f64::EPSILON * t.abs().max(b - a).max(1e-300);
            t = next;
            if done || b - a <= 2.0 * f64::EPSILON * t.abs().max(1.0) {
                break;
            }
        }
        Ok(t)
    }
}

fn cell_length(curve: &ParamCurve, a: f64, b: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let speed = |t: f64| curve.eval(t, 1).map(|d| d.norm());
    let rough = 0.5 * (b - a) * (speed(a)? + speed(b)?);
    adaptive_simpson(speed, a, b, CELL_RTOL * rough.abs())
}

/// A regular curve reparameterized by its own arc length, `s -> source(phi(s))`.
///
/// Derivatives go through the chain rule with `phi' = 1 / |a'|`, so they are as
/// exact as the source's derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcLengthCurve {
    map: ArcLengthMap,
}

impl ArcLengthCurve {
    pub fn new(source: ParamCurve, grid_size: usize) -> Result<Self> {
        Ok(Self { map: ArcLengthMap::build(source, grid_size)? })
    }

    pub fn map(&self) -> &ArcLengthMap {
        &self.map
    }

    pub fn into_curve(self) -> ParamCurve {
        let domain = Domain { lo: 0.0, hi: self.map.total_length() };
        ParamCurve::from_parts(CurveKind::ArcLength(Box::new(self)), domain)
    }

    pub(crate) fn eval(&self, s: f64, order: usize) -> Result<Vec3> {
        let t = self.map.param_at(s)?;
        let src = &self.map.source;
        if order == 0 {
            return src.eval(t, 0);
        }
        let d1 = src.eval(t, 1)?;
        let v = d1.norm();
        let p1 = 1.0 / v;
        if order == 1 {
            return Ok(d1 * p1);
        }
        let d2 = src.eval(t, 2)?;
        let v2 = v * v;
        let dot12 = d1.dot(&d2);
        let p2 = -dot12 / (v2 * v2);
        if order == 2 {
            return Ok(d2 * (p1 * p1) + d1 * p2);
        }
        let d3 = src.eval(t, 3)?;
        let p3 = p1 * (-(d2.norm_squared() + d1.dot(&d3)) / (v2 * v2) + 4.0 * dot12 * dot12 / (v2 * v2 * v2));
        Ok(d3 * (p1 * p1 * p1) + d2 * (3.0 * p1 * p2) + d1 * p3)
    }
}
