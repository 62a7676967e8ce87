//! Padded logarithm enclosures for the reporting layer.
//!
//! Certified comparisons never go through here; these enclosures only feed
//! slope and trajectory reports, where a generous absolute pad on an f64
//! logarithm is sound and cheap. The pad covers the <= 3 ulp error of the
//! mantissa log plus the rounding of the bit-shift decomposition.

use crate::interval::{Interval, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

const LOG_PAD: f64 = 1e-9;
const LN_2: f64 = core::f64::consts::LN_2;

/// `[lo, hi]` enclosure of `ln(n)` for a positive integer.
fn ln_bigint(n: &BigInt) -> (f64, f64) {
    assert!(n.is_positive(), "ln of non-positive integer");
    let bits = n.bits();
    if bits <= 53 {
        let v = (n.to_f64().unwrap()).ln();
        return (v - LOG_PAD, v + LOG_PAD);
    }
    // n = m * 2^shift with m holding the top 53 bits exactly.
    let shift = bits - 53;
    let m = (n >> shift).to_f64().unwrap();
    // m * 2^shift <= n < (m+1) * 2^shift
    let lo = m.ln() + shift as f64 * LN_2 - LOG_PAD;
    let hi = (m + 1.0).ln() + shift as f64 * LN_2 + LOG_PAD;
    (lo, hi)
}

/// `[lo, hi]` enclosure of `ln(x)` for a positive rational.
pub fn ln_rational(x: &Rational) -> (f64, f64) {
    assert!(x.is_positive(), "ln of non-positive rational");
    let (nl, nh) = ln_bigint(x.numer());
    let (dl, dh) = ln_bigint(x.denom());
    (nl - dh, nh - dl)
}

/// Enclosure of `ln(x)` over a positive interval.
pub fn ln_interval(x: &Interval) -> Option<(f64, f64)> {
    if !x.lo().is_positive() {
        return None;
    }
    let (lo, _) = ln_rational(x.lo());
    let (_, hi) = ln_rational(x.hi());
    Some((lo, hi))
}

/// Enclosure of `log_b(x)` with base interval `b` (all of `b` must be > 1)
/// and `x` a positive interval. Used for the psi trajectories.
pub fn log_base_interval(x: &Interval, base: &Rational) -> Option<(f64, f64)> {
    let (xl, xh) = ln_interval(x)?;
    let (bl, bh) = ln_rational(base);
    if bl <= 0.0 {
        return None;
    }
    // x may be < 1 (negative log); pick denominators by sign for outward rounding.
    let lo = if xl >= 0.0 { xl / bh } else { xl / bl };
    let hi = if xh >= 0.0 { xh / bl } else { xh / bh };
    Some((lo, hi))
}

/// Outward-rounded `-ln(v)/ln(h)` for rational `v in (0,1]`-ish values and
/// heights `h > 1`: the slope of an approximation record.
pub fn slope_enclosure(value: &Interval, height: &Rational) -> Option<(f64, f64)> {
    if !value.lo().is_positive() {
        return None;
    }
    let (vl, vh) = ln_interval(value)?;
    let (hl, hh) = ln_rational(height);
    if hl <= 0.0 {
        return None;
    }
    let a = -vh;
    let b = -vl;
    // slope interval = [a, b] / ln(h), a <= b
    let lo = if a >= 0.0 { a / hh } else { a / hl };
    let hi = if b >= 0.0 { b / hl } else { b / hh };
    Some((lo, hi))
}

/// Decimal rendering of a rational at 12 significant digits (CSV layer).
pub fn decimal12(x: &Rational) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let f = rational_to_f64(x);
    format!("{:.12e}", f)
}

/// Nearest-ish f64 for reporting; fine for display, never for decisions.
pub fn rational_to_f64(x: &Rational) -> f64 {
    let num = x.numer();
    let den = x.denom();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // scale both into f64 range
    let shift = (nb.max(db) - 900).max(0) as u64;
    let n = (num >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
    if d == 0.0 {
        return f64::NAN;
    }
    n / d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;
    use num_bigint::BigInt;

    #[test]
    fn ln_encloses_known_values() {
        let (lo, hi) = ln_rational(&rat(1, 5));
        let truth = (0.2f64).ln();
        assert!(lo <= truth && truth <= hi);
        let big = BigInt::from(10).pow(50);
        let (lo, hi) = ln_bigint(&big);
        let truth = 50.0 * (10f64).ln();
        assert!(lo <= truth && truth <= hi);
        assert!(hi - lo < 1e-6);
    }

    #[test]
    fn slope_of_bracketed_record() {
        // |P(zeta)| in (1/740, 1/731), H = 9 -> slope near 3
        let v = Interval::new(rat(1, 740), rat(1, 731));
        let (lo, hi) = slope_enclosure(&v, &rat(9, 1)).unwrap();
        assert!(lo < 3.01 && hi > 2.99);
        assert!(lo <= hi);
    }
}
