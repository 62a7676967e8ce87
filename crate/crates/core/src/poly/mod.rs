//! Dense integer polynomials with arbitrary-precision coefficients.
//!
//! Coefficients are stored constant term first; the JSON wire format is the
//! same integer array (`[-1, 1, 2]` is `2T^2 + T - 1`).

mod factor;
mod roots;

pub use factor::{
    divisor_count, factor_height_bound, factor_into_irreducibles, has_linear_factor,
    is_irreducible, positive_divisors, rational_roots,
};
pub use roots::{isolate_real_roots, refine_root, root_count_in};

use crate::interval::{Interval, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer polynomial. The zero polynomial has an empty coefficient
/// vector; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial `c * T^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Height `H(P)`: maximum absolute value among the coefficients.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Greatest common divisor of the coefficients (positive), 0 for zero poly.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one()
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Interval Horner evaluation: encloses `{P(x) : x in ivl}`.
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let mut acc = Interval::zero();
        for c in self.coeffs.iter().rev() {
            let c_ivl = Interval::point(Rational::from(c.clone()));
            acc = &(&acc * x) + &c_ivl;
        }
        acc
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        IntPoly::new(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `T^k`.
    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Exact product.
    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }

    /// Exact division over the integers: returns `self / divisor` when the
    /// division is exact (including content), `None` otherwise.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = divisor.degree().unwrap();
        let nd = self.degree().unwrap();
        if nd < dd {
            return None;
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            quot[k] = q.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    /// How many low-order zero coefficients (power of `T` dividing `P`).
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// JSON wire form: integer array, constant term first.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| {
                    serde_json::Value::Number(
                        serde_json::Number::from_string_unchecked(c.to_string()),
                    )
                })
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> crate::error::Result<IntPoly> {
        let arr = v.as_array().ok_or_else(|| {
            crate::error::Error::InvalidInput("polynomial must be a JSON array".into())
        })?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for item in arr {
            let n = item.as_number().ok_or_else(|| {
                crate::error::Error::InvalidInput("polynomial entries must be integers".into())
            })?;
            let c: BigInt = n.to_string().parse().map_err(|_| {
                crate::error::Error::InvalidInput(format!("bad integer coefficient {n}"))
            })?;
            coeffs.push(c);
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "T")?,
                _ => write!(f, "T^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn product_examples() {
        // (T+1)(T-1) = T^2 - 1
        let p = IntPoly::from_i64(&[1, 1]).mul(&IntPoly::from_i64(&[-1, 1]));
        assert_eq!(p, IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(p.height(), BigInt::from(1));
        // (2T+3)(3T+2) = 6T^2 + 13T + 6, height 13 vs 3*3=9
        let p = IntPoly::from_i64(&[3, 2]).mul(&IntPoly::from_i64(&[2, 3]));
        assert_eq!(p, IntPoly::from_i64(&[6, 13, 6]));
        assert_eq!(p.height(), BigInt::from(13));
        // (T-1)^2 = T^2 - 2T + 1, height 2 vs 1
        let p = IntPoly::from_i64(&[-1, 1]).mul(&IntPoly::from_i64(&[-1, 1]));
        assert_eq!(p, IntPoly::from_i64(&[1, -2, 1]));
        assert_eq!(p.height(), BigInt::from(2));
    }

    #[test]
    fn division_round_trip() {
        let a = IntPoly::from_i64(&[-1, 2, 3]);
        let b = IntPoly::from_i64(&[5, -7, 1, 2]);
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(p.add(&IntPoly::one()).div_exact(&a), None);
    }

    #[test]
    fn interval_eval_contains_rational_eval() {
        let p = IntPoly::from_i64(&[1, -3, 0, 2]);
        let x = Interval::new(rat(1, 3), rat(1, 2));
        let at = p.eval_rational(&rat(2, 5));
        assert!(p.eval_interval(&x).contains(&at));
    }

    #[test]
    fn primitive_part_sign() {
        let p = IntPoly::from_i64(&[4, -6]).primitive_part();
        assert_eq!(p, IntPoly::from_i64(&[-2, 3]));
        assert!(p.leading() > BigInt::zero());
    }
}
