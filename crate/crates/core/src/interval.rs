//! Closed intervals with exact rational endpoints.
//!
//! Every magnitude comparison in the toolkit routes through these intervals;
//! floating point only ever appears at the reporting layer (see [`crate::logs`]).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (maintained by `num-rational`).
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from(BigInt::from(n))
}

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    /// Interval from two endpoints in either order.
    pub fn hull_of(a: Rational, b: Rational) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn point(v: Rational) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn zero() -> Self {
        Interval::point(Rational::zero())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Largest absolute value attained on the interval.
    pub fn mag_hi(&self) -> Rational {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a >= b {
            a
        } else {
            b
        }
    }

    /// Smallest absolute value attained on the interval (0 if it straddles 0).
    pub fn mag_lo(&self) -> Rational {
        if self.contains_zero() {
            Rational::zero()
        } else {
            let a = self.lo.abs();
            let b = self.hi.abs();
            if a <= b {
                a
            } else {
                b
            }
        }
    }

    /// Enclosure of `|x|` for `x` in the interval.
    pub fn abs(&self) -> Interval {
        Interval {
            lo: self.mag_lo(),
            hi: self.mag_hi(),
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: if self.lo <= other.lo {
                self.lo.clone()
            } else {
                other.lo.clone()
            },
            hi: if self.hi >= other.hi {
                self.hi.clone()
            } else {
                other.hi.clone()
            },
        }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        Interval::hull_of(a, b)
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat_int(2)
    }

    /// `x^k` enclosure by monotonicity / even-power case analysis.
    pub fn pow(&self, k: u32) -> Interval {
        if k == 0 {
            return Interval::point(Rational::one());
        }
        let pl = pow_rat(&self.lo, k);
        let ph = pow_rat(&self.hi, k);
        if k % 2 == 1 {
            Interval::new(pl, ph)
        } else if !self.contains_zero() {
            Interval::hull_of(pl, ph)
        } else {
            let hi = if pl >= ph { pl } else { ph };
            Interval::new(Rational::zero(), hi)
        }
    }

    /// True when every point of `self` is strictly below every point of `other`.
    pub fn strictly_below(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }
}

pub fn pow_rat(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut base = x.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Interval { lo, hi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_covers_sign_cases() {
        let a = Interval::new(rat(-1, 2), rat(3, 1));
        let b = Interval::new(rat(-2, 1), rat(1, 3));
        let p = &a * &b;
        // extremes: (-1/2)(-2)=1 and 3*(-2)=-6
        assert_eq!(*p.lo(), rat(-6, 1));
        assert_eq!(*p.hi(), rat(1, 1));
    }

    #[test]
    fn pow_even_straddling_zero() {
        let a = Interval::new(rat(-2, 1), rat(1, 1));
        let p = a.pow(2);
        assert_eq!(*p.lo(), rat(0, 1));
        assert_eq!(*p.hi(), rat(4, 1));
    }

    #[test]
    fn mag_bounds() {
        let a = Interval::new(rat(-3, 1), rat(2, 1));
        assert_eq!(a.mag_hi(), rat(3, 1));
        assert_eq!(a.mag_lo(), rat(0, 1));
        let b = Interval::new(rat(1, 4), rat(2, 1));
        assert_eq!(b.mag_lo(), rat(1, 4));
    }
}
