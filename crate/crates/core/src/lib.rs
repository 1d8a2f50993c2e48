//! Generalized Gegenbauer polynomials on `[-1, 1]`.
//!
//! The crate is split by concern:
//!
//! * [`specfun`]: Jacobi and generalized Gegenbauer polynomials, raw and
//!   orthonormal, plus the log-gamma machinery behind their constants.
//! * [`quadrature`]: Gauss–Jacobi rules (Golub–Welsch) and the mapped rule
//!   for the weight `|t|^{2μ}(1-t²)^{λ-1/2}`.
//! * [`transform`]: expansion coefficients, partial sums and weighted `L_p` norms.
//! * [`inequalities`]: Paley, Hausdorff–Young and Hausdorff–Young–Paley
//!   functionals, the `M_ω` weight condition, the layer-cake identity and
//!   interpolation exponents.
//! * [`asymptotics`]: sup-norm scans and log-log growth fits.
//! * [`report`]: CSV / JSON serialization shared by the CLI and bindings.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod family;
pub mod inequalities;
pub mod quadrature;
pub mod report;
pub mod specfun;
pub mod transform;

pub use error::{Error, Result};
pub use specfun::GegenParams;
