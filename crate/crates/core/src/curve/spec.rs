//! Curve-spec documents (JSON).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{CurveKind, Derivatives, Domain, ParamCurve};
use crate::error::{Error, Result};
use crate::frenet::ArcLengthCurve;
use crate::lift::{resolve_axis, AxisMode, LiftSpec, LiftedCurve};
use crate::tolerances::Tolerances;
use crate::Vec3;

const KINDS: [&str; 5] = ["polynomial", "circular_helix", "polyline", "lifted", "arc_length"];

/// Grid used to estimate a helix axis when a lifted spec omits `axis`.
const AXIS_GRID: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum AxisModeDoc {
    Unit,
    PaperPrinted,
    Explicit,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum CurveDoc {
    Polynomial {
        domain: [f64; 2],
        coeffs: [Vec<f64>; 3],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fd_step: Option<f64>,
    },
    CircularHelix {
        domain: [f64; 2],
        radius: f64,
        pitch: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fd_step: Option<f64>,
    },
    Polyline {
        #[serde(default)]
        domain: Option<[f64; 2]>,
        points: Vec<[f64; 3]>,
        knots: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fd_step: Option<f64>,
    },
    Lifted {
        #[serde(default)]
        domain: Option<[f64; 2]>,
        base: Box<CurveDoc>,
        theta: f64,
        s0: f64,
        axis_mode: AxisModeDoc,
        #[serde(default)]
        axis: Option<[f64; 3]>,
        #[serde(default)]
        offset: Option<[f64; 3]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fd_step: Option<f64>,
    },
    ArcLength {
        #[serde(default)]
        domain: Option<[f64; 2]>,
        base: Box<CurveDoc>,
        grid_size: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fd_step: Option<f64>,
    },
}

/// Parses a curve-spec document.
pub fn parse_curve_spec(text: &str) -> Result<ParamCurve> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    check_kinds(&value)?;
    let doc: CurveDoc = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    from_doc(doc)
}

/// Renders a curve as a curve-spec document.
pub fn to_curve_spec(curve: &ParamCurve) -> String {
    serde_json::to_string_pretty(&to_doc(curve)).expect("curve documents always serialize")
}

fn check_kinds(value: &Value) -> Result<()> {
    let Some(obj) = value.as_object() else {
        return Err(Error::Parse("curve spec must be an object".into()));
    };
    match obj.get("kind") {
        Some(Value::String(kind)) if KINDS.contains(&kind.as_str()) => {}
        Some(Value::String(kind)) => return Err(Error::UnknownKind(kind.clone())),
        Some(_) => return Err(Error::Parse("`kind` must be a string".into())),
        None => return Err(Error::Parse("missing `kind`".into())),
    }
    match obj.get("base") {
        Some(base) => check_kinds(base),
        None => Ok(()),
    }
}

fn vec3(a: [f64; 3]) -> Vec3 {
    Vec3::new(a[0], a[1], a[2])
}

fn arr(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

fn domain(d: [f64; 2]) -> Result<Domain> {
    Domain::new(d[0], d[1])
}

fn finite(field: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidField { field, reason: "must be finite".into() })
    }
}

fn from_doc(doc: CurveDoc) -> Result<ParamCurve> {
    let (curve, fd_step) = match doc {
        CurveDoc::Polynomial { domain: d, coeffs, fd_step } => (ParamCurve::polynomial(coeffs, domain(d)?)?, fd_step),
        CurveDoc::CircularHelix { domain: d, radius, pitch, fd_step } => {
            (ParamCurve::circular_helix(radius, pitch, domain(d)?)?, fd_step)
        }
        CurveDoc::Polyline { domain: d, points, knots, fd_step } => {
            let d = d.map(domain).transpose()?;
            (ParamCurve::polyline(points.into_iter().map(vec3).collect(), knots, d)?, fd_step)
        }
        CurveDoc::Lifted { domain: d, base, theta, s0, axis_mode, axis, offset, fd_step } => {
            let base = from_doc(*base)?;
            let axis_given = axis.map(vec3);
            let mode = match axis_mode {
                AxisModeDoc::Unit => AxisMode::Unit,
                AxisModeDoc::PaperPrinted => AxisMode::Doubled,
                AxisModeDoc::Explicit => AxisMode::Explicit(axis_given.ok_or(Error::InvalidField {
                    field: "axis",
                    reason: "explicit axis mode requires `axis`".into(),
                })?),
            };
            let spec = LiftSpec {
                theta: finite("theta", theta)?,
                s0: finite("s0", s0)?,
                offset: offset.map(vec3).unwrap_or_else(Vec3::zeros),
                axis_mode: mode,
            };
            if !spec.offset.iter().all(|c| c.is_finite()) {
                return Err(Error::InvalidField { field: "offset", reason: "must be finite".into() });
            }
            let axis = match axis_given {
                Some(a) => {
                    check_axis_norm(&mode, &a)?;
                    a
                }
                None => resolve_axis(&base, &spec, AXIS_GRID, &Tolerances::default())?,
            };
            let base_domain = base.domain();
            let lifted =
                ParamCurve::from_parts(CurveKind::Lifted(Box::new(LiftedCurve::new(base, spec, axis))), base_domain);
            (restrict_to(lifted, d)?, fd_step)
        }
        CurveDoc::ArcLength { domain: d, base, grid_size, fd_step } => {
            let base = from_doc(*base)?;
            let curve = ArcLengthCurve::new(base, grid_size)?.into_curve();
            if let Some(d) = d {
                let dom = curve.domain();
                let scale = dom.width().max(1.0);
                if (d[0] - dom.lo).abs() > 1e-9 * scale || (d[1] - dom.hi).abs() > 1e-9 * scale {
                    return Err(Error::InvalidField {
                        field: "domain",
                        reason: format!(
                            "arc-length domain is [{}, {}], document says [{}, {}]",
                            dom.lo, dom.hi, d[0], d[1]
                        ),
                    });
                }
            }
            (curve, fd_step)
        }
    };
    match fd_step {
        Some(step) => curve.with_derivatives(Derivatives::FiniteDifference { step }),
        None => Ok(curve),
    }
}

fn check_axis_norm(mode: &AxisMode, axis: &Vec3) -> Result<()> {
    let expected = match mode {
        AxisMode::Unit => 1.0,
        AxisMode::Doubled => 2.0,
        AxisMode::Explicit(_) => return Ok(()),
    };
    if !axis.iter().all(|c| c.is_finite()) || (axis.norm() - expected).abs() > 1e-6 {
        return Err(Error::InvalidField {
            field: "axis",
            reason: format!("axis norm {} does not match mode (expected {expected})", axis.norm()),
        });
    }
    Ok(())
}

fn restrict_to(curve: ParamCurve, d: Option<[f64; 2]>) -> Result<ParamCurve> {
    match d {
        Some(d) => curve.restricted(domain(d)?),
        None => Ok(curve),
    }
}

fn to_doc(curve: &ParamCurve) -> CurveDoc {
    let d = curve.domain();
    let dom = [d.lo, d.hi];
    let fd_step = match curve.derivatives() {
        Derivatives::Exact => None,
        Derivatives::FiniteDifference { step } => Some(step),
    };
    match curve.kind() {
        CurveKind::Polynomial { coeffs } => CurveDoc::Polynomial { domain: dom, coeffs: coeffs.clone(), fd_step },
        CurveKind::CircularHelix { radius, pitch } => {
            CurveDoc::CircularHelix { domain: dom, radius: *radius, pitch: *pitch, fd_step }
        }
        CurveKind::Polyline(spline) => CurveDoc::Polyline {
            domain: Some(dom),
            points: spline.points().iter().map(arr).collect(),
            knots: spline.knots().to_vec(),
            fd_step,
        },
        CurveKind::Lifted(lifted) => {
            let spec = lifted.spec();
            CurveDoc::Lifted {
                domain: Some(dom),
                base: Box::new(to_doc(lifted.base())),
                theta: spec.theta,
                s0: spec.s0,
                axis_mode: match spec.axis_mode {
                    AxisMode::Unit => AxisModeDoc::Unit,
                    AxisMode::Doubled => AxisModeDoc::PaperPrinted,
                    AxisMode::Explicit(_) => AxisModeDoc::Explicit,
                },
                axis: Some(arr(&lifted.axis())),
                offset: Some(arr(&spec.offset)),
                fd_step,
            }
        }
        CurveKind::ArcLength(arc) => CurveDoc::ArcLength {
            domain: Some(dom),
            base: Box::new(to_doc(arc.map().source())),
            grid_size: arc.map().grid_size(),
            fd_step,
        },
    }
}
