//! Real root isolation through Sturm sequences, exact over the rationals.

use super::IntPoly;
use crate::interval::{rat_int, Interval, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

type QPoly = Vec<Rational>;

fn q_from_int(p: &IntPoly) -> QPoly {
    p.coeffs()
        .iter()
        .map(|c| Rational::from(c.clone()))
        .collect()
}

fn q_trim(p: &mut QPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn q_eval(p: &QPoly, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn q_derivative(p: &QPoly) -> QPoly {
    if p.len() <= 1 {
        return vec![];
    }
    p[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| c * Rational::from(BigInt::from(i + 1)))
        .collect()
}

/// Remainder of polynomial division over Q.
fn q_rem(num: &QPoly, den: &QPoly) -> QPoly {
    let mut rem = num.clone();
    q_trim(&mut rem);
    let lead = den.last().unwrap().clone();
    while rem.len() >= den.len() && !rem.is_empty() {
        let k = rem.len() - den.len();
        let factor = rem.last().unwrap() / &lead;
        for (i, c) in den.iter().enumerate() {
            let v = &factor * c;
            rem[k + i] -= v;
        }
        // the leading term cancels exactly
        rem.pop();
        q_trim(&mut rem);
    }
    rem
}

/// Sturm chain of a squarefree polynomial.
fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![p.clone(), q_derivative(p)];
    q_trim(&mut chain[1]);
    while chain.last().map_or(false, |c| !c.is_empty()) {
        let n = chain.len();
        let r = q_rem(&chain[n - 2], &chain[n - 1]);
        let neg: QPoly = r.iter().map(|c| -c.clone()).collect();
        if neg.is_empty() {
            break;
        }
        chain.push(neg);
    }
    chain
}

fn sign_variations(chain: &[QPoly], x: &Rational) -> usize {
    let mut variations = 0;
    let mut last = 0i8;
    for p in chain {
        if p.is_empty() {
            continue;
        }
        let v = q_eval(p, x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                variations += 1;
            }
            last = s;
        }
    }
    variations
}

/// Squarefree part of `p` (primitive, positive leading coefficient).
pub(crate) fn squarefree_part(p: &IntPoly) -> IntPoly {
    if p.degree().map_or(true, |d| d <= 1) {
        return p.primitive_part();
    }
    let g = int_gcd(p, &p.derivative());
    match g.degree() {
        Some(d) if d >= 1 => p.div_exact(&g).map(|q| q.primitive_part()).unwrap_or_else(|| p.primitive_part()),
        _ => p.primitive_part(),
    }
}

/// Gcd over Z (primitive, positive leading coefficient) via the rational
/// Euclidean algorithm plus content bookkeeping.
pub(crate) fn int_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    let mut f = q_from_int(&a.primitive_part());
    let mut g = q_from_int(&b.primitive_part());
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = q_rem(&f, &g);
        if r.is_empty() {
            break;
        }
        f = g;
        g = r;
    }
    // clear denominators, take primitive part
    let mut den = BigInt::one();
    for c in &g {
        den = num_integer::lcm(den.clone(), c.denom().clone());
    }
    IntPoly::new(
        g.iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect::<Vec<_>>(),
    )
    .primitive_part()
}

/// Number of distinct real roots of (the squarefree part of) `p` in `(a, b]`.
pub fn root_count_in(p: &IntPoly, a: &Rational, b: &Rational) -> usize {
    let s = squarefree_part(p);
    if s.degree().map_or(true, |d| d == 0) {
        return 0;
    }
    let chain = sturm_chain(&q_from_int(&s));
    sign_variations(&chain, a) - sign_variations(&chain, b)
}

/// Cauchy root bound: all real roots lie strictly inside `(-B, B)`.
fn cauchy_bound(p: &IntPoly) -> Rational {
    let lead = p.leading().abs();
    let mx = p.height();
    Rational::from(mx) / Rational::from(lead) + rat_int(2)
}

/// Isolating intervals for all distinct real roots.
///
/// Each returned interval contains exactly one real root of `p`; intervals
/// are pairwise disjoint and sorted. Exact rational roots may come back as
/// degenerate point intervals.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<Interval> {
    assert!(!p.is_zero(), "root isolation of the zero polynomial");
    let s = squarefree_part(p);
    let deg = match s.degree() {
        None | Some(0) => return vec![],
        Some(d) => d,
    };
    if deg == 1 {
        let root = -Rational::new(s.coeff(0), s.coeff(1));
        return vec![Interval::point(root)];
    }
    let chain = sturm_chain(&q_from_int(&s));
    let bound = cauchy_bound(&s);
    let a = -bound.clone();
    let b = bound;
    let mut out = vec![];
    isolate_rec(&s, &chain, &a, &b, &mut out);
    out.sort_by(|x, y| x.lo().cmp(y.lo()));
    out
}

fn isolate_rec(s: &IntPoly, chain: &[QPoly], a: &Rational, b: &Rational, out: &mut Vec<Interval>) {
    let count = sign_variations(chain, a) - sign_variations(chain, b);
    match count {
        0 => {}
        1 => out.push(Interval::new(a.clone(), b.clone())),
        _ => {
            let mid = (a + b) / rat_int(2);
            if s.eval_rational(&mid).is_zero() {
                out.push(Interval::point(mid.clone()));
                // shrink around the exact root until it is isolated
                let mut eps = (b - a) / rat_int(4);
                loop {
                    let lo = &mid - &eps;
                    let hi = &mid + &eps;
                    if !s.eval_rational(&lo).is_zero() && !s.eval_rational(&hi).is_zero() {
                        let c = sign_variations(chain, &lo) - sign_variations(chain, &hi);
                        if c == 1 {
                            isolate_rec(s, chain, a, &lo, out);
                            isolate_rec(s, chain, &hi, b, out);
                            return;
                        }
                    }
                    eps /= rat_int(2);
                }
            }
            isolate_rec(s, chain, a, &mid, out);
            isolate_rec(s, chain, &mid, b, out);
        }
    }
}

/// Shrink an isolating interval of a simple root below `tol` width by
/// sign-change bisection. The interval must bracket exactly one root.
pub fn refine_root(p: &IntPoly, ivl: &Interval, tol: &Rational) -> Interval {
    if ivl.is_point() {
        return ivl.clone();
    }
    let s = squarefree_part(p);
    let mut lo = ivl.lo().clone();
    let mut hi = ivl.hi().clone();
    let mut flo = s.eval_rational(&lo);
    if flo.is_zero() {
        return Interval::point(lo);
    }
    let fhi = s.eval_rational(&hi);
    if fhi.is_zero() {
        return Interval::point(hi);
    }
    debug_assert!(
        flo.is_positive() != fhi.is_positive(),
        "refine_root needs a sign change"
    );
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / rat_int(2);
        let fm = s.eval_rational(&mid);
        if fm.is_zero() {
            return Interval::point(mid);
        }
        if fm.is_positive() == flo.is_positive() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Interval::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn isolates_sqrt2() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 2);
        let neg = refine_root(&p, &roots[0], &rat(1, 100));
        let pos = refine_root(&p, &roots[1], &rat(1, 100));
        assert!(neg.subset_of(&Interval::new(rat(-3, 2), rat(-1, 1))));
        assert!(pos.subset_of(&Interval::new(rat(1, 1), rat(3, 2))));
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&IntPoly::from_i64(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn exact_roots_of_t3_minus_t() {
        let p = IntPoly::from_i64(&[0, -1, 0, 1]);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 3);
        for (ivl, want) in roots.iter().zip([rat(-1, 1), rat(0, 1), rat(1, 1)]) {
            assert!(ivl.contains(&want));
            // the other two roots are excluded
            let others = [rat(-1, 1), rat(0, 1), rat(1, 1)];
            let n = others.iter().filter(|r| ivl.contains(r)).count();
            assert_eq!(n, 1);
        }
    }

    #[test]
    fn repeated_roots_are_isolated_once() {
        // (T-1)^2 (T+2)
        let p = IntPoly::from_i64(&[-1, 1]);
        let p = p.mul(&p).mul(&IntPoly::from_i64(&[2, 1]));
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn sturm_count_window() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(root_count_in(&p, &rat(0, 1), &rat(2, 1)), 1);
        assert_eq!(root_count_in(&p, &rat(-2, 1), &rat(2, 1)), 2);
        assert_eq!(root_count_in(&p, &rat(2, 1), &rat(3, 1)), 0);
    }
}
