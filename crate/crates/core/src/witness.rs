//! Algebraic witnesses: nearest real roots of integer polynomials to a
//! continued fraction point, with certified distance intervals, and the
//! conversion from a root witness to a polynomial-value record.

use crate::cf::{eval_poly, CFNumber};
use crate::error::{Error, Result};
use crate::interval::{rat_int, Interval, Rational};
use crate::poly::{factor_into_irreducibles, isolate_real_roots, refine_root, IntPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A real algebraic number presented by its minimal polynomial and an
/// isolating interval.
#[derive(Clone, Debug)]
pub struct AlgebraicWitness {
    /// Primitive, irreducible, positive leading coefficient.
    pub minimal_polynomial: IntPoly,
    pub isolating_interval: Interval,
    pub degree: usize,
    pub height: BigInt,
    pub monic: bool,
}

impl AlgebraicWitness {
    pub fn new(minimal_polynomial: IntPoly, isolating_interval: Interval) -> Self {
        let degree = minimal_polynomial.degree().expect("nonzero polynomial");
        let height = minimal_polynomial.height();
        let monic = minimal_polynomial.is_monic();
        AlgebraicWitness {
            minimal_polynomial,
            isolating_interval,
            degree,
            height,
            monic,
        }
    }

    /// Shrink the isolating interval below `tol`.
    pub fn refine(&mut self, tol: &Rational) {
        self.isolating_interval =
            refine_root(&self.minimal_polynomial, &self.isolating_interval, tol);
    }
}

/// Certified `|zeta - alpha|` enclosure from a bracket of each side.
fn distance_interval(zeta: &Interval, root: &Interval) -> Interval {
    (zeta - root).abs()
}

/// The real root of `P` nearest to `zeta`, with its irreducible factor as
/// minimal polynomial and a distance interval of relative width `<= tol`.
/// Equidistant candidates resolve toward the smaller root.
pub fn nearest_root(
    p: &IntPoly,
    zeta: &CFNumber,
    tol: &Rational,
) -> Result<(AlgebraicWitness, Interval)> {
    assert!(tol.is_positive());
    let factors = factor_into_irreducibles(p)?;
    // candidate roots: (minimal polynomial, refinable isolating interval)
    let mut cands: Vec<(IntPoly, Interval)> = vec![];
    for (f, _) in &factors {
        for ivl in isolate_real_roots(f) {
            cands.push((f.clone(), ivl));
        }
    }
    if cands.is_empty() {
        return Err(Error::NoRealRoots);
    }
    // refine everything together until one candidate is certified nearest
    // or the remaining contenders are exact ties
    let mut prec = rat_int(1) / rat_int(16);
    for _round in 0..200 {
        let z = match zeta.enclose(&prec) {
            Ok(z) => z,
            Err(Error::Budget { best: Some(b), .. }) => b,
            Err(e) => return Err(e),
        };
        let refined: Vec<(IntPoly, Interval)> = cands
            .iter()
            .map(|(f, ivl)| (f.clone(), refine_root(f, ivl, &prec)))
            .collect();
        let dists: Vec<Interval> = refined
            .iter()
            .map(|(_, ivl)| distance_interval(&z, ivl))
            .collect();
        // candidates whose distance interval touches the smallest upper bound
        let min_hi = dists
            .iter()
            .map(|d| d.hi().clone())
            .min()
            .expect("nonempty candidates");
        let alive: Vec<usize> = (0..dists.len())
            .filter(|&i| *dists[i].lo() <= min_hi)
            .collect();
        let winner = if alive.len() == 1 {
            Some(alive[0])
        } else if ties_exact(&refined, &alive, zeta) {
            // exact tie: smaller root wins
            alive
                .iter()
                .copied()
                .min_by(|&a, &b| refined[a].1.lo().cmp(refined[b].1.lo()))
        } else {
            None
        };
        if let Some(w) = winner {
            let d = &dists[w];
            let done = d.is_point()
                || (d.lo().is_positive() && d.width() <= tol * d.mag_lo())
                || d.width() <= tol * tol.clone(); // absolute floor for near-zero distances
            if done {
                let (f, ivl) = refined[w].clone();
                return Ok((AlgebraicWitness::new(f, ivl), d.clone()));
            }
        }
        cands = refined;
        prec = prec / rat_int(1 << 8);
    }
    Err(Error::Budget {
        what: "nearest_root could not separate or certify candidates".into(),
        best: None,
    })
}

/// Exact tie test: all alive candidates are equidistant from `zeta`.
/// Distances `|z - a|`, `|z - b|` agree exactly iff `a = b` or `a + b = 2z`.
fn ties_exact(cands: &[(IntPoly, Interval)], alive: &[usize], zeta: &CFNumber) -> bool {
    if alive.len() != 2 {
        return false;
    }
    let (fa, ia) = &cands[alive[0]];
    let (fb, ib) = &cands[alive[1]];
    // sum of two roots is rational only in reach of an exact check when both
    // candidates sit in the same quadratic, or both are rational (degree 1)
    let z = match zeta.exact_value() {
        Some(z) => z,
        None => return false,
    };
    let two_z = &z + &z;
    if fa.degree() == Some(1) && fb.degree() == Some(1) {
        let ra = -Rational::new(fa.coeff(0), fa.coeff(1));
        let rb = -Rational::new(fb.coeff(0), fb.coeff(1));
        return ra + rb == two_z;
    }
    if fa == fb && fa.degree() == Some(2) {
        // conjugate pair: sum = -c1/c2
        let sum = -Rational::new(fa.coeff(1), fa.coeff(2));
        return sum == two_z && *ia != *ib;
    }
    false
}

/// A polynomial approximation record produced from a root witness.
#[derive(Clone, Debug)]
pub struct ConvertedRecord {
    pub poly: IntPoly,
    pub height: BigInt,
    /// Certified `|P(zeta)|` enclosure.
    pub value: Interval,
    /// Certified enclosure of the bound `D H(P) (1 + max(|z|,|a|))^(D-1) |z - a|`.
    pub bound: Interval,
}

/// Convert a root witness into a polynomial record, asserting the certified
/// mean-value bound `|P(z)| <= D H(P) (1 + max(|z|,|a|))^(D-1) |z - a|`.
pub fn witness_convert(
    witness: &AlgebraicWitness,
    zeta: &CFNumber,
    distance: &Interval,
) -> Result<ConvertedRecord> {
    let p = &witness.minimal_polynomial;
    let deg = witness.degree;
    let mut tol_bits = 30u64;
    loop {
        let z = match zeta.enclose_bits(tol_bits) {
            Ok(z) => z,
            Err(Error::Budget { best: Some(b), .. }) => b,
            Err(e) => return Err(e),
        };
        let value = eval_poly(
            p,
            zeta,
            &Rational::new(BigInt::one(), BigInt::from(1 << 20)),
            &smallest_scale(distance),
        )?
        .abs();
        let zmag = z.abs();
        let amag = witness.isolating_interval.abs();
        let m = zmag.hull(&amag);
        let base = &Interval::point(Rational::one()) + &Interval::new(m.mag_lo(), m.mag_hi());
        let factor = Rational::from(BigInt::from(deg)) * Rational::from(witness.height.clone());
        let bound = base.pow(deg as u32 - 1).scale(&factor);
        let bound = &bound * distance;
        // certified inequality: the whole value interval sits at or below
        // the whole bound interval
        if value.hi() <= bound.lo() {
            return Ok(ConvertedRecord {
                poly: p.clone(),
                height: witness.height.clone(),
                value,
                bound,
            });
        }
        if tol_bits > 4000 {
            return Err(Error::Budget {
                what: "witness_convert could not certify the mean-value bound".into(),
                best: Some(value),
            });
        }
        tol_bits *= 2;
    }
}

fn smallest_scale(d: &Interval) -> Rational {
    let w = d.mag_lo();
    if w.is_zero() {
        Rational::new(BigInt::one(), BigInt::one() << 40)
    } else {
        w / rat_int(1 << 20)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn sqrt2_nearest_to_7_over_5() {
        let z = CFNumber::from_rational(&rat(7, 5)).unwrap();
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let (w, d) = nearest_root(&p, &z, &rat(1, 100)).unwrap();
        assert_eq!(w.minimal_polynomial, p);
        // sqrt(2) - 7/5 = 0.0142135...
        assert!(*d.lo() > rat(142, 10000));
        assert!(*d.hi() < rat(143, 10000));
    }

    #[test]
    fn rational_point_exact_distances() {
        let z = CFNumber::from_rational(&rat(2, 5)).unwrap();
        let p = IntPoly::from_i64(&[0, -1, 0, 1]); // T^3 - T: roots -1, 0, 1
        let (w, d) = nearest_root(&p, &z, &rat(1, 100)).unwrap();
        assert_eq!(w.minimal_polynomial, IntPoly::from_i64(&[0, 1]));
        assert!(d.is_point());
        assert_eq!(*d.lo(), rat(2, 5));
    }

    #[test]
    fn tie_breaks_to_smaller_root() {
        let z = CFNumber::from_rational(&rat(2, 1)).unwrap();
        let p = IntPoly::from_i64(&[-1, 1]).mul(&IntPoly::from_i64(&[-3, 1]));
        let (w, d) = nearest_root(&p, &z, &rat(1, 100)).unwrap();
        assert_eq!(w.minimal_polynomial, IntPoly::from_i64(&[-1, 1]));
        assert!(d.is_point());
        assert_eq!(*d.lo(), rat(1, 1));
    }

    #[test]
    fn conjugate_tie_on_quadratic() {
        // zeta = 0 is equidistant from the two roots of T^2 - 2
        let z = CFNumber::from_rational(&rat(0, 1)).unwrap();
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let (w, _) = nearest_root(&p, &z, &rat(1, 1000)).unwrap();
        // smaller root = -sqrt 2
        assert!(w.isolating_interval.hi() < &rat(0, 1));
    }

    #[test]
    fn no_real_roots_error() {
        let z = CFNumber::from_rational(&rat(1, 2)).unwrap();
        let p = IntPoly::from_i64(&[1, 0, 1]);
        assert!(matches!(
            nearest_root(&p, &z, &rat(1, 10)),
            Err(Error::NoRealRoots)
        ));
    }

    #[test]
    fn convert_sqrt2_witness() {
        let z = CFNumber::from_rational(&rat(7, 5)).unwrap();
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let (w, d) = nearest_root(&p, &z, &rat(1, 1000)).unwrap();
        let rec = witness_convert(&w, &z, &d).unwrap();
        // |P(7/5)| = |49/25 - 2| = 1/25
        assert!(rec.value.contains(&rat(1, 25)));
        assert!(rec.value.hi() <= rec.bound.lo());
        // bound is near 0.137, comfortably above 0.04
        assert!(*rec.bound.hi() < rat(15, 100));
    }

    #[test]
    fn convert_golden_witness_vs_3_halves() {
        let z = CFNumber::from_rational(&rat(3, 2)).unwrap();
        let p = IntPoly::from_i64(&[-1, -1, 1]);
        let (w, d) = nearest_root(&p, &z, &rat(1, 1000)).unwrap();
        let rec = witness_convert(&w, &z, &d).unwrap();
        // |P(3/2)| = 1/4
        assert!(rec.value.contains(&rat(1, 4)));
        assert!(rec.value.hi() <= rec.bound.lo());
    }

    #[test]
    fn exact_hit_zero_record() {
        let z = CFNumber::from_rational(&rat(1, 2)).unwrap();
        let p = IntPoly::from_i64(&[-1, 2]);
        let (w, d) = nearest_root(&p, &z, &rat(1, 10)).unwrap();
        assert!(d.is_point() && d.lo().is_zero());
        let rec = witness_convert(&w, &z, &d).unwrap();
        assert!(rec.value.is_point() && rec.value.lo().is_zero());
    }
}
