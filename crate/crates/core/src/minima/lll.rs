//! Small exact LLL reduction (delta = 3/4) over rational arithmetic.
//!
//! Dimensions here never exceed five; this is a seeding device for the
//! enumeration (shorter initial vectors mean tighter initial thresholds),
//! never a source of certified values.

use crate::interval::Rational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_qq(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_zq(a: &[BigInt], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| BigRational::from(x.clone()) * y)
        .sum()
}

/// LLL-reduce `basis` in place; returns the unimodular transform rows, i.e.
/// `reduced[i] = sum_j transform[i][j] * original[j]`.
pub fn reduce(basis: &mut Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = basis.len();
    if n == 0 {
        return vec![];
    }
    let mut transform: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let delta = Rational::new(BigInt::from(3), BigInt::from(4));
    let half = Rational::new(BigInt::one(), BigInt::from(2));

    // rational Gram-Schmidt
    let gs = |basis: &Vec<Vec<BigInt>>| -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>) {
        let mut star: Vec<Vec<BigRational>> = vec![];
        let mut mu: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            let mut v: Vec<BigRational> = basis[i]
                .iter()
                .map(|x| BigRational::from(x.clone()))
                .collect();
            for j in 0..i {
                let denom = dot_qq(&star[j], &star[j]);
                let m = if denom.is_zero() {
                    BigRational::zero()
                } else {
                    dot_zq(&basis[i], &star[j]) / &denom
                };
                mu[i][j] = m.clone();
                for (vk, sk) in v.iter_mut().zip(&star[j]) {
                    *vk -= &m * sk;
                }
            }
            star.push(v);
        }
        (star, mu)
    };

    let mut k = 1usize;
    let mut rounds = 0usize;
    while k < n && rounds < 10_000 {
        rounds += 1;
        let (star, mu) = gs(basis);
        // size reduction of b_k against b_j, j < k
        for j in (0..k).rev() {
            let m = &mu[k][j];
            if m.abs() > half {
                let r = m.round().to_integer();
                for t in 0..basis[k].len() {
                    let sub = &r * &basis[j][t];
                    basis[k][t] -= sub;
                }
                for t in 0..n {
                    let sub = &r * &transform[j][t];
                    transform[k][t] -= sub;
                }
            }
        }
        let (star, mu) = {
            let _ = (star, mu);
            gs(basis)
        };
        // Lovász condition
        let lhs = dot_qq(&star[k], &star[k]);
        let proj = &mu[k][k - 1] * &mu[k][k - 1];
        let rhs = (&delta - proj) * dot_qq(&star[k - 1], &star[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            transform.swap(k, k - 1);
            k = k.max(2) - 1;
        }
    }
    transform
}

/// Squared euclidean length, handy for picking seed candidates.
pub fn norm_sq(v: &[BigInt]) -> BigInt {
    dot(v, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reduces_a_skewed_basis() {
        let mut basis = vec![big(&[1, 1, 1]), big(&[-1, 0, 2]), big(&[3, 5, 6])];
        let before: Vec<BigInt> = basis.iter().map(|b| norm_sq(b)).collect();
        let transform = reduce(&mut basis);
        let after: Vec<BigInt> = basis.iter().map(|b| norm_sq(b)).collect();
        assert!(after.iter().max() <= before.iter().max());
        // transform must be unimodular-ish: it reproduces the reduced rows
        let original = [big(&[1, 1, 1]), big(&[-1, 0, 2]), big(&[3, 5, 6])];
        for (i, row) in transform.iter().enumerate() {
            let mut rebuilt = vec![BigInt::zero(); 3];
            for (c, orig) in row.iter().zip(&original) {
                for (t, o) in rebuilt.iter_mut().zip(orig) {
                    *t += c * o;
                }
            }
            assert_eq!(rebuilt, basis[i]);
        }
    }

    #[test]
    fn finds_short_vector_in_planted_lattice() {
        // rows of a lattice with a very short hidden combination
        let mut basis = vec![big(&[101, 0, 1]), big(&[202, 1, 2]), big(&[303, 0, 3])];
        reduce(&mut basis);
        let shortest = basis.iter().map(norm_sq).min().unwrap();
        assert!(shortest <= BigInt::from(6), "shortest^2 = {shortest}");
    }
}
