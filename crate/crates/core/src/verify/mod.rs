//! Numerical verification of the lift theorems and of the worked cubic example.

mod errata;
mod oracle;

use serde::Serialize;

pub use self::errata::{reference_errata, run_reference_suite, ErrataEntry, SAMPLE_PARAMS};
pub use self::oracle::{compare_frames, oracle_frame, FrameDelta};
use crate::curve::ParamCurve;
use crate::error::{Error, Result};
use crate::frenet::frame_at;
use crate::helix::{helix_axis, lancret_test, slant_test, ConstancyStat, DEFAULT_FLOOR};
use crate::lift::{lift_curve, tangent_norm, LiftSpec};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub pass: bool,
    pub residual: f64,
    /// The sampled quantity the check is about (mean inner product, minimum alignment, ...).
    pub value: f64,
    pub detail: String,
}

impl TheoremCheck {
    fn skipped(reason: &str) -> Self {
        Self { pass: true, residual: 0.0, value: f64::NAN, detail: format!("skipped: {reason}") }
    }

    fn failed(err: &Error) -> Self {
        Self { pass: false, residual: f64::INFINITY, value: f64::NAN, detail: format!("error: {err}") }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub grid_size: usize,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem1: TheoremCheck,
    pub theorem2: TheoremCheck,
    pub theorem3: TheoremCheck,
    pub example_checks: Vec<ErrataEntry>,
    pub config: ConfigEcho,
}

impl VerificationReport {
    pub fn theorems_pass(&self) -> bool {
        self.theorem1.pass && self.theorem2.pass && self.theorem3.pass
    }

    pub fn entry(&self, claim_id: &str) -> Option<&ErrataEntry> {
        self.example_checks.iter().find(|e| e.claim_id == claim_id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// `cos(theta) (1 + sin(theta)) / sqrt(1 + cos(theta) sin(2 theta))`: the angle
/// between the unit axis and the lifted tangent when the lift angle is the helix angle.
pub fn expected_axis_tangent_product(theta: f64) -> f64 {
    theta.cos() * (1.0 + theta.sin()) / tangent_norm(theta)
}

/// Lifts the unit-speed general helix `alpha` and checks, with oracle frames
/// of the lifted curve:
///
/// 1. the lifted tangent keeps a constant angle with the unit axis of `alpha`;
/// 2. `alpha` and its lift agree on being slant helices;
/// 3. the principal normals of `alpha` and its lift are parallel.
pub fn run_theorem_checks(
    alpha: &ParamCurve,
    spec: &LiftSpec,
    grid_size: usize,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let config = ConfigEcho { grid_size, tolerances: *tol };
    let lancret = lancret_test(alpha, grid_size, tol)?;
    if !lancret.is_general_helix {
        return Err(Error::NotAHelix(format!("kappa/tau varies (rel. dev. {:e})", lancret.stat.rel_dev)));
    }
    let lifted = lift_curve(alpha, spec, grid_size, tol)?;
    if spec.is_degenerate() {
        let reason = "lift angle is 0 or pi/2";
        return Ok(VerificationReport {
            theorem1: TheoremCheck::skipped(reason),
            theorem2: TheoremCheck::skipped(reason),
            theorem3: TheoremCheck::skipped(reason),
            example_checks: Vec::new(),
            config,
        });
    }
    let (unit_axis, _) = helix_axis(alpha, grid_size, tol)?;
    let h = tol.oracle_step;
    let grid = alpha.domain().inset_grid(grid_size, 2.0 * h * (1.0 + 1e-9));

    let mut products = Vec::with_capacity(grid.len());
    let mut min_alignment = f64::INFINITY;
    for &s in &grid {
        let lifted_frame = oracle_frame(&lifted, s, h)?;
        let base_frame = frame_at(alpha, s, tol)?;
        products.push(unit_axis.dot(&lifted_frame.tangent));
        min_alignment = min_alignment.min(lifted_frame.normal.dot(&base_frame.normal).abs());
    }
    let stat = ConstancyStat::from_samples(&products, DEFAULT_FLOOR);
    let theorem1 = TheoremCheck {
        pass: stat.rel_dev <= tol.vector,
        residual: stat.rel_dev,
        value: stat.mean,
        detail: format!(
            "<a, Tbar> over {} samples; closed form at the lift angle: {:.9}",
            grid.len(),
            expected_axis_tangent_product(spec.theta)
        ),
    };
    let theorem3 = TheoremCheck {
        pass: 1.0 - min_alignment <= tol.vector,
        residual: 1.0 - min_alignment,
        value: min_alignment,
        detail: "min |Nbar . N|".into(),
    };
    let theorem2 = match (slant_test(alpha, grid_size, tol), slant_test(&lifted, grid_size, tol)) {
        (Ok(base), Ok(lift)) => TheoremCheck {
            pass: base.is_slant == lift.is_slant,
            residual: base.stat.rel_dev.max(lift.stat.rel_dev),
            value: lift.stat.mean,
            detail: format!("base slant: {}, lift slant: {}", base.is_slant, lift.is_slant),
        },
        (Err(e), _) | (_, Err(e)) => TheoremCheck::failed(&e),
    };
    Ok(VerificationReport { theorem1, theorem2, theorem3, example_checks: Vec::new(), config })
}
