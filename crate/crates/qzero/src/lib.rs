//! High-precision q-series evaluation, certified zero localization, and
//! Polya-frequency testing.
//!
//! The crate evaluates the entire functions built from q-Pochhammer-weighted
//! coefficient families, certifies where their zeros sit (negative or
//! positive real axis) by combining argument-principle winding counts with
//! real-axis bracketing, tests Polya-frequency sequences through totally
//! positive Toeplitz minors, and numerically verifies the identities,
//! bounds, and limits the underlying proofs rely on.
//!
//! Layering:
//! - [`precision`]: working-precision policy ([`PrecisionContext`])
//! - [`qcore`]: q-Pochhammer symbols, rising factorials, Gaussian binomials
//! - [`series`]: coefficient families, certified truncation, evaluation,
//!   Rogers-Szego / Stieltjes-Wigert polynomials, entire-function order
//! - [`totalpos`]: Toeplitz minor enumeration and the root oracle
//! - [`zeros`]: winding counts, bracketing, axis confinement, Theorem-2 K0
//! - [`identities`]: the identity/bound/limit checks
//! - [`suites`]: the named verification suites behind `verify`
//! - [`report`]: JSON/CSV serialization with decimal-string numerics

pub mod error;
pub mod identities;
pub mod poly;
pub mod precision;
pub mod qcore;
pub mod report;
pub mod series;
pub mod suites;
pub mod totalpos;
pub mod zeros;

pub use error::{Error, Result};
pub use precision::PrecisionContext;
pub use qcore::QParameter;
pub use series::CoefficientFamily;
