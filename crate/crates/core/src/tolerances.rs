use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds shared by every check in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Finite-difference step as a fraction of the domain width.
    pub fd_step: f64,
    /// Absolute step of the position-only oracle stencil.
    pub oracle_step: f64,
    /// Unit-vector and orthogonality tolerance.
    pub vector: f64,
    /// Relative deviation below which a sampled quantity counts as constant.
    pub constancy: f64,
    /// Minimum speed of a regular curve.
    pub speed: f64,
    /// Minimum |a' x a''| of a twisted (frame-bearing) point.
    pub cross: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { fd_step: 1e-5, oracle_step: 1e-3, vector: 1e-6, constancy: 1e-4, speed: 1e-9, cross: 1e-9 }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("fd_step", self.fd_step),
            ("oracle_step", self.oracle_step),
            ("vector", self.vector),
            ("constancy", self.constancy),
            ("speed", self.speed),
            ("cross", self.cross),
        ];
        for (field, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidField { field, reason: format!("tolerance must be positive, got {value}") });
            }
        }
        Ok(())
    }

    /// Absolute finite-difference step for a domain of the given width.
    pub fn step_for(&self, width: f64) -> f64 {
        self.fd_step * width
    }
}
