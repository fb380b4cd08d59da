use thiserror::Error;

/// Everything that can go wrong while evaluating, classifying or lifting a curve.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter {t} outside domain [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },

    #[error("derivative order {0} not supported (0..=3)")]
    UnsupportedOrder(usize),

    #[error("zero speed at t = {t}")]
    ZeroSpeed { t: f64 },

    #[error("degenerate frame at t = {t}: |a' x a''| = {cross_norm:e}")]
    DegenerateFrame { t: f64, cross_norm: f64 },

    #[error("finite-difference stencil at t = {t} with step {h} leaves the domain")]
    StencilOutOfDomain { t: f64, h: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown curve kind `{0}`")]
    UnknownKind(String),

    #[error("invalid field `{field}`: {reason}")]
    InvalidField { field: &'static str, reason: String },

    #[error("not a general helix: {0}")]
    NotAHelix(String),

    #[error("base curve is not unit speed (max |speed - 1| = {max_dev:e})")]
    NotUnitSpeed { max_dev: f64 },

    #[error("lift angle {requested} does not match helix angle {helix}")]
    ThetaMismatch { requested: f64, helix: f64 },

    #[error("curves have different parameter domains")]
    DomainMismatch,

    #[error("degenerate denominator: lambda^2 + mu^2 = {0:e}")]
    DegenerateDenominator(f64),
}

impl Error {
    /// True for failures caused by the geometry of a valid input rather than
    /// by a malformed request.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Error::ZeroSpeed { .. }
                | Error::DegenerateFrame { .. }
                | Error::StencilOutOfDomain { .. }
                | Error::NotAHelix(_)
                | Error::NotUnitSpeed { .. }
                | Error::ThetaMismatch { .. }
                | Error::DegenerateDenominator(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
