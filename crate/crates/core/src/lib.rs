//! Frenet apparatus, helix classification and the helix lift for space curves.
//!
//! Curves are [`ParamCurve`] values over a closed parameter interval. From a
//! curve one can compute its [`FrenetFrame`] pointwise, reparameterize it by
//! arc length, test it for general / slant / Bertrand helix properties and
//! lift a general helix `alpha` with angle `theta` to
//!
//! ```text
//! alpha_bar(s) = offset + sin(theta) alpha(s) + (s - s0) cos(theta) a
//! ```
//!
//! where `a` is the helix axis. The [`verify`] module checks the lift
//! properties numerically against an independent finite-difference oracle.

pub mod cli;
pub mod curve;
pub mod error;
pub mod fixtures;
pub mod frenet;
pub mod helix;
pub mod lift;
mod quad;
pub mod tolerances;
pub mod verify;

pub use curve::{parse_curve_spec, to_curve_spec};
pub use curve::{regularity_check, CurveKind, Derivatives, Domain, ParamCurve, RegularityReport};
pub use error::{Error, Result};
pub use frenet::{arc_length, curvature, curvature_torsion, frame_at, reparam_by_arclength, FrenetFrame};
pub use helix::{bertrand_test, classify, helix_axis, lancret_test, slant_test, HelixClassification};
pub use lift::{lift_curve, lift_literal, lift_unit_speed, AxisMode, LiftSpec};
pub use tolerances::Tolerances;

/// Points and vectors in Euclidean 3-space.
pub type Vec3 = nalgebra::Vector3<f64>;
