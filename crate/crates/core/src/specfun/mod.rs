//! Floating-point special functions: gamma and beta, the ₂F₁ modulus map,
//! ₃F₂ at unit argument with its Thomae transformation, the regulator
//! function `F̃`, incomplete gamma and theta/eta at a real nome.

mod expint;
mod gamma;
mod hyp;
pub mod theta;

pub use crate::qseries::chi4;
pub use expint::{exp_integral_e1, upper_gamma2};
pub use gamma::{beta, gamma, ln_gamma, pochhammer};
pub use hyp::{
    ftilde, ftilde_via_dixon, hyp2f1_half, hyp3f2_unit, hyp3f2_unit_with, nome_y, thomae,
    FtildeParams, Hyp3f2Config, HypParams, HypValue, Z_WINDOW,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecFunError {
    #[error("{name} needs a positive argument, got {x}")]
    NonPositiveArgument { name: &'static str, x: f64 },
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("series diverges at unit argument (s = {s})")]
    Divergent { s: f64 },
    #[error("x = {x} lies outside the evaluation window")]
    OutOfWindow { x: f64 },
}
