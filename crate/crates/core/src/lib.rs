//! Exact construction of the Siegel family of totally positive algebraic
//! integers, the coefficient curves `L`, `ℓ` and `K_v`, and numerical checks of
//! the Siegel-type coefficient inequalities.
//!
//! The crate is split the way the work is split:
//!
//! - [`exactpoly`]: arbitrary-precision integer polynomials, Chebyshev
//!   polynomials, shifts and Sturm chains.
//! - [`siegel`]: the polynomials `g_p`, their absolute traces and normalized
//!   coefficient points.
//! - [`curves`]: the limit curve, the proven lower curve, the constant `ϑ` and
//!   areas between curves.
//! - [`bounds`]: `P(t)`, `Q_k(t)`, `μ₀` and the inequality verifiers.
//! - [`format`]: number formatting shared by the CSV writers.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod curves;
mod error;
pub mod exactpoly;
pub mod format;
pub mod numeric;
pub mod siegel;

pub use error::{Error, Result};

pub use bounds::{Theorem2Report, Theorem2Row, TupleInstance};
pub use curves::{CurveKind, CurveTable, ThetaSolution};
pub use exactpoly::{Endpoint, IntPoly, SturmChain};
pub use siegel::{NormalizedPoint, PointRecord, SiegelPoly};
