//! Exact q-calculus and higher-order q-Genocchi polynomials.
//!
//! The exact side ([`qcore`], [`series`], [`qpoly`], [`genocchi`]) works over
//! arbitrary-precision rationals at a fixed rational `q`, so every identity is
//! checked with zero tolerance. The analytic side ([`qgamma`], [`qzeta`])
//! evaluates the q-Gamma function, q-Mellin transforms and the alternating
//! q-Hurwitz-type zeta sum in multiprecision floating point. [`verify`] runs
//! all of it as one batch report.

pub mod classical;
pub mod error;
pub mod genocchi;
pub mod qcore;
pub mod qgamma;
pub mod qpoly;
pub mod qzeta;
pub mod real;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use genocchi::{GenocchiTable, TableJson};
pub use qcore::{QContext, Rational};
pub use qgamma::{Evaluation, GammaMethod, PartialFractionSeries};
pub use qpoly::QPolynomial;
pub use qzeta::ZetaReport;
pub use real::{FloatContext, Real};
pub use series::PowerSeries;
pub use verify::{Suite, VerifyConfig, VerifyReport};
