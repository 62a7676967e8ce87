//! Fixed-point dyadic intervals: `[lo, hi] / 2^bits` with integer endpoints.
//!
//! Multiplying a dyadic enclosure by an integer is pure integer arithmetic
//! with no gcd normalization, which is what the lattice enumeration loops
//! need. Conversions to and from rational intervals round outward.

use crate::interval::{Interval, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicIvl {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

/// `floor(x * 2^bits)` for rational x.
pub fn floor_scaled(x: &Rational, bits: u32) -> BigInt {
    let scaled = (x.numer() << bits).div_floor(x.denom());
    scaled
}

/// `ceil(x * 2^bits)` for rational x.
pub fn ceil_scaled(x: &Rational, bits: u32) -> BigInt {
    (x.numer() << bits).div_ceil(x.denom())
}

impl DyadicIvl {
    pub fn from_interval(ivl: &Interval, bits: u32) -> Self {
        let lo = floor_scaled(ivl.lo(), bits);
        let hi = ceil_scaled(ivl.hi(), bits);
        DyadicIvl { lo, hi, bits }
    }

    pub fn from_rational(x: &Rational, bits: u32) -> Self {
        DyadicIvl::from_interval(&Interval::point(x.clone()), bits)
    }

    pub fn to_interval(&self) -> Interval {
        let d = BigInt::one() << self.bits;
        Interval::new(
            Rational::new(self.lo.clone(), d.clone()),
            Rational::new(self.hi.clone(), d),
        )
    }

    pub fn point_int(v: &BigInt, bits: u32) -> Self {
        DyadicIvl {
            lo: v << bits,
            hi: v << bits,
            bits,
        }
    }

    /// Outward product, result at the same precision.
    pub fn mul(&self, other: &DyadicIvl) -> DyadicIvl {
        assert_eq!(self.bits, other.bits);
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        DyadicIvl {
            lo: lo >> self.bits,
            hi: (hi >> self.bits) + 1,
            bits: self.bits,
        }
    }

    /// Scale by an exact integer.
    pub fn scale_int(&self, k: &BigInt) -> DyadicIvl {
        let a = &self.lo * k;
        let b = &self.hi * k;
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        DyadicIvl {
            lo,
            hi,
            bits: self.bits,
        }
    }

    pub fn add(&self, other: &DyadicIvl) -> DyadicIvl {
        assert_eq!(self.bits, other.bits);
        DyadicIvl {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            bits: self.bits,
        }
    }

    pub fn abs(&self) -> DyadicIvl {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            DyadicIvl {
                lo: -self.hi.clone(),
                hi: -self.lo.clone(),
                bits: self.bits,
            }
        } else {
            DyadicIvl {
                lo: BigInt::zero(),
                hi: self.lo.abs().max(self.hi.abs()),
                bits: self.bits,
            }
        }
    }

    /// Successive powers `x^0 .. x^n` at shared precision.
    pub fn powers(&self, n: usize) -> Vec<DyadicIvl> {
        let mut out = vec![DyadicIvl::point_int(&BigInt::one(), self.bits)];
        for _ in 1..=n {
            let next = out.last().unwrap().mul(self);
            out.push(next);
        }
        out
    }
}

/// Dyadic enclosure of `x^(1/n)` for rational `x > 0`.
///
/// Uses the exact integer n-th root of `x * 2^(n*bits)` rounded outward.
pub fn nth_root_enclosure(x: &Rational, n: u32, bits: u32) -> DyadicIvl {
    assert!(x.is_positive() && n >= 1);
    // floor( (num * 2^(n*bits) / den)^(1/n) ) bounds the root from below
    let scaled = (x.numer() << (n as usize * bits as usize)).div_floor(x.denom());
    let root = scaled.nth_root(n);
    DyadicIvl {
        lo: root.clone(),
        hi: root + 1,
        bits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn round_trip_contains() {
        let ivl = Interval::new(rat(1, 3), rat(2, 3));
        let d = DyadicIvl::from_interval(&ivl, 20);
        let back = d.to_interval();
        assert!(ivl.subset_of(&back));
        assert!(back.width() < rat(1, 100_000));
    }

    #[test]
    fn product_encloses() {
        let a = DyadicIvl::from_interval(&Interval::new(rat(-1, 3), rat(1, 2)), 30);
        let b = DyadicIvl::from_interval(&Interval::new(rat(2, 7), rat(3, 7)), 30);
        let p = a.mul(&b).to_interval();
        let exact = &Interval::new(rat(-1, 3), rat(1, 2)) * &Interval::new(rat(2, 7), rat(3, 7));
        assert!(exact.subset_of(&p));
    }

    #[test]
    fn sqrt_enclosure() {
        let d = nth_root_enclosure(&rat(2, 1), 2, 40);
        let ivl = d.to_interval();
        // sqrt(2) = 1.41421356...
        assert!(ivl.contains(&rat(141421356237, 100000000000)));
        assert!(ivl.width() < rat(1, 1_000_000));
    }

    #[test]
    fn powers_contain_truth() {
        let x = rat(5, 7);
        let d = DyadicIvl::from_rational(&x, 40);
        let pows = d.powers(4);
        let mut acc = rat(1, 1);
        for p in &pows {
            assert!(p.to_interval().contains(&acc));
            acc *= &x;
        }
    }
}
