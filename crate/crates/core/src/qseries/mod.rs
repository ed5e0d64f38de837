//! Exact truncated q-series kernel.
//!
//! Series live on the lattice `q^{n/24}` with rational coefficients; see
//! [`FormalSeries`]. Constructors cover η, θ₂, θ₃, θ₄, the Eisenstein
//! series `L`, and the Lambert/double-sum expansions the identity checks
//! compare against.

mod constructors;
mod curve;
mod identity;
mod series;

pub use constructors::{
    chi4, chi_series_lemma_lhs, chi_series_lemma_rhs, coeff_at_q, eisenstein_l, eta,
    eta_cubed_series, lambert_theta2sq, lambert_theta3sq, theta, twist_by_i, ThetaKind,
};
pub use curve::{cuspform_coeffs, CurveSpec, RealPeriod};
pub use identity::{identity_equal, IdentityCheck};
pub use series::{FormalSeries, DENOM};

use thiserror::Error;

use crate::qexpr::EvalError;

/// Default verification depth: `q^200`.
pub const DEFAULT_ORDER24: i64 = 4800;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series vanishes through order {order}/24 and has no inverse")]
    NotInvertible { order: i64 },
    #[error("series known only through {have}/24, need {needed}/24")]
    InsufficientOrder { needed: i64, have: i64 },
    #[error("cusp form coefficient a_{n} is not an integer")]
    NonIntegral { n: i64 },
    #[error("cusp form is not normalized: leading term must be 1*q")]
    NotNormalized,
    #[error(transparent)]
    Eval(#[from] EvalError),
}
