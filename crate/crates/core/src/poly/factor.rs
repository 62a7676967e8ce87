//! Rational roots, linear factors and low-degree irreducibility.
//!
//! Rational root candidates come from the divisor pairing of the rational
//! root theorem; candidate evaluation runs in i128 whenever the sizes permit
//! and falls back to exact big-integer arithmetic otherwise.

use super::IntPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

use crate::interval::Rational;

/// Positive divisors of `|n|`, n != 0. Trial division; inputs stay desk-scale.
pub fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero());
    if let Some(small) = n.to_u64() {
        let mut out = vec![];
        let mut d = 1u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                out.push(BigInt::from(d));
                if d != small / d {
                    out.push(BigInt::from(small / d));
                }
            }
            d += 1;
        }
        out.sort();
        return out;
    }
    // big case: only 1 and |n| plus small prime splits; callers at this size
    // only need completeness for the rational root theorem, so factor fully.
    let mut out = vec![BigInt::one()];
    let mut rest = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        if rest.is_multiple_of(&p) {
            let mut extended = vec![];
            let mut power = BigInt::one();
            while rest.is_multiple_of(&p) {
                rest /= &p;
                power *= &p;
                for d in &out {
                    extended.push(d * &power);
                }
            }
            out.extend(extended);
        }
        p += 1;
    }
    if !rest.is_one() {
        let copy: Vec<BigInt> = out.iter().map(|d| d * &rest).collect();
        out.extend(copy);
    }
    out.sort();
    out.dedup();
    out
}

/// Number-of-divisors function tau(|n|).
pub fn divisor_count(n: &BigInt) -> usize {
    positive_divisors(n).len()
}

/// Exact test of `P(a/b) == 0` via the scaled integer form
/// `sum c_k a^k b^(n-k)`, using i128 when it provably fits.
fn is_root(p: &IntPoly, a: &BigInt, b: &BigInt) -> bool {
    let n = p.degree().unwrap_or(0) as u32;
    // bit budget: |term| <= H * |a|^n * b^n
    let bits = p.height().bits() + (a.bits().max(b.bits())) * n as u64 + 3 + n as u64;
    if bits < 126 {
        let (a, b) = (a.to_i128().unwrap(), b.to_i128().unwrap());
        let mut acc: i128 = 0;
        let mut bpow: i128 = 1;
        // Horner in a with explicit powers of b: acc = sum c_k a^k b^(n-k)
        for c in p.coeffs().iter().rev() {
            acc = acc * a + c.to_i128().unwrap() * bpow;
            bpow *= b;
        }
        acc == 0
    } else {
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in p.coeffs().iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        acc.is_zero()
    }
}

/// All rational roots of `P != 0`, each satisfying `P(r) = 0` exactly.
pub fn rational_roots(p: &IntPoly) -> BTreeSet<Rational> {
    assert!(!p.is_zero(), "rational_roots of the zero polynomial");
    let mut out = BTreeSet::new();
    if p.degree() == Some(0) {
        return out;
    }
    let shift = p.trailing_zeros();
    let mut work = p.clone();
    if shift > 0 {
        out.insert(Rational::zero());
        work = IntPoly::new(p.coeffs()[shift..].to_vec());
    }
    let work = work.primitive_part();
    if work.degree().map_or(true, |d| d == 0) {
        return out;
    }
    let c0 = work.constant_term();
    let lead = work.leading();
    let nums = positive_divisors(&c0);
    let dens = positive_divisors(&lead);
    for a in &nums {
        for b in &dens {
            if !a.gcd(b).is_one() {
                continue;
            }
            if is_root(&work, a, b) {
                out.insert(Rational::new(a.clone(), b.clone()));
            }
            let neg = -a;
            if is_root(&work, &neg, b) {
                out.insert(Rational::new(neg, b.clone()));
            }
        }
    }
    out
}

/// Whether the primitive part of `P != 0` has a degree-1 factor over Z,
/// equivalently a rational root.
pub fn has_linear_factor(p: &IntPoly) -> bool {
    assert!(!p.is_zero());
    if p.degree() == Some(0) {
        return false;
    }
    if p.trailing_zeros() > 0 {
        return true;
    }
    let work = p.primitive_part();
    let c0 = work.constant_term();
    let lead = work.leading();
    let nums = positive_divisors(&c0);
    let dens = positive_divisors(&lead);
    for a in &nums {
        for b in &dens {
            if !a.gcd(b).is_one() {
                continue;
            }
            if is_root(&work, a, b) {
                return true;
            }
            let neg = -a;
            if is_root(&work, &neg, b) {
                return true;
            }
        }
    }
    false
}

/// Height bound for divisors of `P`: any factor of `P` has height at most
/// `2^deg(P) * H(P)` (validated exhaustively by the Gelfond ratio suite).
pub fn factor_height_bound(p: &IntPoly) -> BigInt {
    let d = p.degree().unwrap_or(0);
    p.height() << d
}

/// Search for a monic-normalized quadratic factor of a quartic with no
/// rational root. Returns a quadratic factor if one exists.
fn quartic_quadratic_factor(p: &IntPoly) -> Option<IntPoly> {
    debug_assert_eq!(p.degree(), Some(4));
    let bound = factor_height_bound(p);
    let lead = p.leading();
    let c0 = p.constant_term();
    debug_assert!(!c0.is_zero());
    let p1 = p.eval_int(&BigInt::one());
    let pm1 = p.eval_int(&-BigInt::one());
    // roots 1 and -1 were excluded with the rational root check
    debug_assert!(!p1.is_zero() && !pm1.is_zero());
    let d1 = {
        let mut v = positive_divisors(&p1);
        let negs: Vec<BigInt> = v.iter().map(|d| -d).collect();
        v.extend(negs);
        v
    };
    for a in positive_divisors(&lead) {
        if a > bound {
            continue;
        }
        for c_abs in positive_divisors(&c0) {
            for c in [c_abs.clone(), -c_abs.clone()] {
                // F(1) = a + b + c must divide P(1)
                for d in &d1 {
                    let b = d - &a - &c;
                    if b.abs() > bound {
                        continue;
                    }
                    let f1 = &a - &b + &c;
                    if f1.is_zero() || !pm1.is_multiple_of(&f1) {
                        continue;
                    }
                    let cand = IntPoly::new(vec![c.clone(), b, a.clone()]);
                    if cand.degree() != Some(2) {
                        continue;
                    }
                    if p.div_exact(&cand).is_some() {
                        return Some(cand);
                    }
                }
            }
        }
    }
    None
}

/// Irreducibility over Q for degrees 1..=4. The input is normalized to its
/// primitive part internally; content does not affect the answer.
pub fn is_irreducible(p: &IntPoly) -> Result<bool> {
    let deg = p.degree().unwrap_or(0);
    if !(1..=4).contains(&deg) {
        return Err(Error::UnsupportedDegree {
            degree: deg,
            what: "irreducibility decided for degrees 1 through 4 only".into(),
        });
    }
    let work = p.primitive_part();
    if deg == 1 {
        return Ok(true);
    }
    if has_linear_factor(&work) {
        return Ok(false);
    }
    if deg <= 3 {
        return Ok(true);
    }
    Ok(quartic_quadratic_factor(&work).is_none())
}

/// Factorization of `P` into primitive irreducible factors with multiplicity
/// (content dropped, signs normalized to positive leading coefficients).
/// Supports any degree as long as the non-linear residue has degree <= 4.
pub fn factor_into_irreducibles(p: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    assert!(!p.is_zero());
    let mut out: Vec<(IntPoly, usize)> = vec![];
    let mut work = p.primitive_part();
    let shift = work.trailing_zeros();
    if shift > 0 {
        out.push((IntPoly::from_i64(&[0, 1]), shift));
        work = IntPoly::new(work.coeffs()[shift..].to_vec());
    }
    // strip linear factors from rational roots
    for r in rational_roots(&work) {
        let lin = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]).primitive_part();
        let mut mult = 0;
        while let Some(q) = work.div_exact(&lin) {
            work = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((lin, mult));
        }
    }
    work = work.primitive_part();
    loop {
        match work.degree() {
            None | Some(0) => break,
            Some(d) if d <= 3 => {
                push_factor(&mut out, work.clone());
                break;
            }
            Some(4) => {
                if let Some(f) = quartic_quadratic_factor(&work) {
                    let q = work.div_exact(&f).expect("verified divisor");
                    push_factor(&mut out, f.primitive_part());
                    work = q.primitive_part();
                } else {
                    push_factor(&mut out, work.clone());
                    break;
                }
            }
            Some(d) => {
                return Err(Error::UnsupportedDegree {
                    degree: d,
                    what: "factorization implemented for non-linear residues of degree <= 4"
                        .into(),
                });
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn push_factor(out: &mut Vec<(IntPoly, usize)>, f: IntPoly) {
    let f = f.primitive_part();
    for (g, m) in out.iter_mut() {
        if *g == f {
            *m += 1;
            return;
        }
    }
    out.push((f, 1));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn rational_root_examples() {
        // 2T^2 + T - 1 = (2T - 1)(T + 1)
        let roots = rational_roots(&IntPoly::from_i64(&[-1, 1, 2]));
        let want: BTreeSet<Rational> = [rat(1, 2), rat(-1, 1)].into_iter().collect();
        assert_eq!(roots, want);
        assert!(rational_roots(&IntPoly::from_i64(&[1, 0, 1])).is_empty());
        let roots = rational_roots(&IntPoly::from_i64(&[0, 0, 0, 1]));
        assert_eq!(roots.len(), 1);
        assert!(roots.contains(&rat(0, 1)));
    }

    #[test]
    fn linear_factor_examples() {
        assert!(!has_linear_factor(&IntPoly::from_i64(&[-3, 3, 1])));
        assert!(has_linear_factor(&IntPoly::from_i64(&[-1, 1, 2])));
        assert!(has_linear_factor(&IntPoly::from_i64(&[0, 0, 1])));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&IntPoly::from_i64(&[1, 1, 1])).unwrap());
        assert!(is_irreducible(&IntPoly::from_i64(&[2, 2, 2, 1])).unwrap());
        assert!(is_irreducible(&IntPoly::from_i64(&[1, 0, 0, 0, 1])).unwrap());
        // (T^2+1)^2 has no rational root but splits into quadratics
        let sq = IntPoly::from_i64(&[1, 0, 1]);
        assert!(!is_irreducible(&sq.mul(&sq)).unwrap());
        // x^4 - 10x^2 + 1 = (x^2 - 2x - 1)(x^2 + 2x - 1) wait: check below
        let p = IntPoly::from_i64(&[-1, -2, 1]).mul(&IntPoly::from_i64(&[-1, 2, 1]));
        assert!(!is_irreducible(&p).unwrap());
        assert!(is_irreducible(&IntPoly::from_i64(&[7, 0, 0, 0, 0]).add(&IntPoly::from_i64(&[0, 1, 0, 0, 1]))).unwrap());
        assert!(matches!(
            is_irreducible(&IntPoly::from_i64(&[1, 1, 1, 1, 1, 1])),
            Err(Error::UnsupportedDegree { .. })
        ));
    }

    #[test]
    fn factorization_with_multiplicity() {
        // 3 * T^2 * (2T-1)^2 * (T^2+1)
        let lin = IntPoly::from_i64(&[-1, 2]);
        let p = IntPoly::from_i64(&[0, 0, 3])
            .mul(&lin)
            .mul(&lin)
            .mul(&IntPoly::from_i64(&[1, 0, 1]));
        let factors = factor_into_irreducibles(&p).unwrap();
        let mut total = IntPoly::one();
        for (f, m) in &factors {
            assert!(is_irreducible(f).unwrap());
            for _ in 0..*m {
                total = total.mul(f);
            }
        }
        assert_eq!(total.primitive_part(), p.primitive_part());
        assert_eq!(factors.iter().map(|(_, m)| m).sum::<usize>(), 6);
    }
}
