//! Exact-arithmetic laboratory for Diophantine approximation experiments.
//!
//! Everything numerical is certified: real numbers are continued fractions
//! with rational brackets, magnitudes are compared through exact rational
//! intervals, and floating point appears only in padded log enclosures at
//! the reporting layer.
//!
//! Module map:
//! - [`interval`], [`dyadic`], [`logs`] — rational intervals, fixed-point
//!   dyadic intervals for hot enumeration loops, padded log reporting.
//! - [`cf`], [`construct`] — continued fraction numbers and the special
//!   classes (`Bw`, strong Liouville) built on them.
//! - [`poly`], [`witness`] — integer polynomials, root isolation,
//!   irreducibility, nearest-root witnesses.
//! - [`primefilter`] — linear-factor filtering of the pencils `Q + pP`,
//!   `P + pQ` over primes, and irreducible combinations.
//! - [`minima`] — parametric successive minima, psi trajectories, duality
//!   residuals.
//! - [`exponents`] — approximation records and exponent estimators, the
//!   quadratic-witness search, inhomogeneous estimates, relation reports.

pub mod cf;
pub mod construct;
pub mod dyadic;
pub mod error;
pub mod exponents;
pub mod interval;
pub mod logs;
pub mod minima;
pub mod poly;
pub mod primefilter;
pub mod primes;
pub mod witness;

pub use cf::CFNumber;
pub use error::{Error, Result};
pub use interval::{Interval, Rational};
pub use poly::IntPoly;
