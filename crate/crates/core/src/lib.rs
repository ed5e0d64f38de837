//! Verification engine for CM elliptic curves of conductor 27, 32 and 64.
//!
//! The crate computes both sides of each identity independently and
//! reports the discrepancy:
//!
//! - [`qexpr`]: a small DSL for eta/theta/Eisenstein product expressions.
//! - [`qseries`]: exact truncated q-series in `q^{1/24}` with rational coefficients.
//! - [`specfun`]: Gamma, Beta, `₂F₁`, `₃F₂(1)` with tail acceleration, Thomae, `F̃`, `E₁`.
//! - [`lseries`]: `L(E, 2)` by the approximate functional equation and by a theta integral.
//! - [`verify`]: the named check registry and its reports.

pub mod lseries;
pub mod qexpr;
pub mod qseries;
pub mod specfun;
pub mod verify;
