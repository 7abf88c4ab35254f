//! Exact continued-fraction tools for studying the irrationality type
//! `tau(alpha) = limsup log k_{n+1} / log k_n`.
//!
//! * [`cf`]: expansions, convergents, value intervals, heads and tails.
//! * [`metrics`]: theta sequences, windowed type estimates and
//!   nearest-integer-distance oracles.
//! * [`trail`]: the graph on vertices `(x, y)`, `x < y`, with edges
//!   `(x, y) -> (y, a*y + x)`, the targeting step and prescribed-type trails.
//! * [`moebius`]: the action `alpha -> (a alpha + b)/(c alpha + d)` on expansions.
//! * [`reductions`]: finite-prefix stream reductions and the limsup builder.
//!
//! Every order decision is made with exact integer arithmetic; floating
//! point values appear only for display.

pub mod cf;
pub mod error;
pub mod exact;
pub mod metrics;
pub mod moebius;
pub mod reductions;
pub mod scalar;
pub mod trail;

pub use error::{Error, Result};
pub use scalar::CfInt;

use num_bigint::BigInt;

/// Expansion over arbitrary-precision integers.
pub type Expansion = cf::PartialQuotients<BigInt>;
/// Convergents over arbitrary-precision integers.
pub type BigConvergents = cf::ConvergentSeq<BigInt>;
/// Exact rational interval over arbitrary-precision integers.
pub type BigInterval = cf::RationalInterval<BigInt>;
/// Exact rational.
pub type BigRational = num_rational::Ratio<BigInt>;
/// Integer Moebius matrix over arbitrary-precision integers.
pub type Moebius = moebius::MoebiusMatrix<BigInt>;

/// Default decimal digit budget for trail construction.
pub const DEFAULT_DIGIT_BUDGET: u64 = 1_000_000;
