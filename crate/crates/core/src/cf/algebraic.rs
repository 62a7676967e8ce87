//! Exact continued fraction expansion of a real algebraic number.
//!
//! The generator keeps a polynomial together with an isolating interval for
//! the current tail of the expansion. Each step extracts the integer part by
//! sign-tested bisection and applies the inversion `x -> 1/(x - a)` to the
//! polynomial (a Taylor shift followed by coefficient reversal), so every
//! partial quotient is produced by exact integer arithmetic.

use super::{CfContext, QuotientRule, RuleStep};
use crate::error::{Error, Result};
use crate::interval::{rat_int, Interval, Rational};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub struct AlgebraicRule {
    poly: IntPoly,
    lo: Rational,
    hi: Rational,
    sign_lo: i8,
}

fn sign_of(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// `P(T + a)` by the nested Horner shift.
fn taylor_shift(p: &IntPoly, a: &BigInt) -> IntPoly {
    let mut c: Vec<BigInt> = p.coeffs().to_vec();
    if c.is_empty() {
        return IntPoly::zero();
    }
    let n = c.len() - 1;
    for i in 0..n {
        for j in (i..n).rev() {
            let add = a * &c[j + 1];
            c[j] += add;
        }
    }
    IntPoly::new(c)
}

/// `T^deg * P(1/T)`: coefficient reversal.
fn reverse(p: &IntPoly) -> IntPoly {
    let mut c: Vec<BigInt> = p.coeffs().to_vec();
    c.reverse();
    IntPoly::new(c)
}

impl AlgebraicRule {
    /// `poly` must have exactly one root in the open interval, the endpoint
    /// values must be nonzero with opposite signs, and the root must be a
    /// nonnegative irrational number.
    pub fn new(poly: &IntPoly, ivl: &Interval) -> Result<Self> {
        let p = poly.primitive_part();
        if p.degree().map_or(true, |d| d < 2) {
            return Err(Error::InvalidInput(
                "algebraic expansion needs degree >= 2 (rationals take the Euclid path)".into(),
            ));
        }
        let vlo = p.eval_rational(ivl.lo());
        let vhi = p.eval_rational(ivl.hi());
        if vlo.is_zero() || vhi.is_zero() || vlo.is_positive() == vhi.is_positive() {
            return Err(Error::InvalidInput(
                "isolating interval must have a sign change with nonzero endpoints".into(),
            ));
        }
        if ivl.lo().is_negative() {
            // the root itself must be >= 0; tighten the left end to 0 if valid
            let at0 = p.eval_rational(&Rational::zero());
            if at0.is_zero() || at0.is_positive() == vhi.is_positive() {
                return Err(Error::InvalidInput(
                    "expansion requires a nonnegative root".into(),
                ));
            }
        }
        let lo = if ivl.lo().is_negative() {
            Rational::zero()
        } else {
            ivl.lo().clone()
        };
        let sign_lo = sign_of(&p.eval_rational(&lo));
        Ok(AlgebraicRule {
            poly: p,
            lo,
            hi: ivl.hi().clone(),
            sign_lo,
        })
    }

    /// One bisection step toward the root, keeping the sign invariant.
    fn bisect(&mut self) {
        let mid = (&self.lo + &self.hi) / rat_int(2);
        let v = self.poly.eval_rational(&mid);
        debug_assert!(!v.is_zero(), "irrational root cannot hit a rational midpoint");
        if sign_of(&v) == self.sign_lo {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Integer part of the root, by narrowing until one integer remains.
    fn extract_floor(&mut self) -> BigInt {
        loop {
            let fl = self.lo.floor().to_integer();
            // root < hi, so when hi is an exact integer the candidate range
            // still ends below it
            let fh = {
                let c = self.hi.ceil().to_integer();
                c - 1
            };
            if fl == fh {
                return fl;
            }
            // test the integers in (lo, hi): root >= a+1 iff sign at a+1
            // matches the lo side
            if &fh - &fl <= BigInt::from(2) {
                let mut a = fl.clone();
                let mut probe: BigInt = &fl + 1;
                while probe <= fh {
                    let v = self.poly.eval_rational(&Rational::from(probe.clone()));
                    debug_assert!(!v.is_zero());
                    if sign_of(&v) == self.sign_lo {
                        a = probe.clone();
                    } else {
                        break;
                    }
                    probe += 1;
                }
                return a;
            }
            self.bisect();
        }
    }
}

impl QuotientRule for AlgebraicRule {
    fn next(&mut self, ctx: &CfContext<'_>) -> RuleStep {
        if self.poly.height().bits() > ctx.bit_limit {
            return RuleStep::Budget;
        }
        let a = self.extract_floor();
        // tail = 1/(x - a) with x in (lo, hi); refine until lo > a so the
        // inversion maps to a bounded interval
        let a_rat = Rational::from(a.clone());
        while self.lo <= a_rat {
            self.bisect();
        }
        debug_assert!(self.hi > a_rat);
        let shifted = taylor_shift(&self.poly, &a);
        let next_poly = reverse(&shifted).primitive_part();
        let new_lo = (&self.hi - &a_rat).recip();
        let new_hi = (&self.lo - &a_rat).recip();
        debug_assert!(new_lo < new_hi);
        let vlo = next_poly.eval_rational(&new_lo);
        let vhi = next_poly.eval_rational(&new_hi);
        debug_assert!(
            !vlo.is_zero() && !vhi.is_zero() && vlo.is_positive() != vhi.is_positive(),
            "inversion must preserve the isolating bracket"
        );
        self.poly = next_poly;
        self.lo = new_lo;
        self.hi = new_hi;
        self.sign_lo = sign_of(&vlo);
        RuleStep::Term(a)
    }

    fn describe(&self) -> String {
        format!("algebraic root of {}", self.poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn shift_and_reverse() {
        // P = T^2 - 2, shift by 1: (T+1)^2 - 2 = T^2 + 2T - 1
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let s = taylor_shift(&p, &BigInt::from(1));
        assert_eq!(s, IntPoly::from_i64(&[-1, 2, 1]));
        let r = reverse(&s);
        assert_eq!(r, IntPoly::from_i64(&[1, 2, -1]));
    }

    #[test]
    fn rejects_bad_bracket() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        assert!(AlgebraicRule::new(&p, &Interval::new(rat(2, 1), rat(3, 1))).is_err());
    }
}
