//! Deterministic primality and small prime enumeration.
//!
//! Below 2^64 primality is the deterministic Miller-Rabin base set; above
//! it falls back to exact trial division so the contract never weakens
//! silently (inputs that large do not occur at desk scale).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Strong-pseudoprime bases that decide primality for all n < 2^64.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Exact primality for arbitrary-size integers.
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() || n.is_zero() || n.is_one() {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    // trial division; exact but slow, by design only reachable off desk scale
    let mut d = BigInt::from(2);
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            return false;
        }
        d += 1;
    }
    true
}

/// All primes up to `bound` inclusive (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return vec![];
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = vec![];
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// The first `count` primes strictly greater than `start`.
pub fn primes_above(start: &BigInt, count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let mut candidate = start + 1;
    while out.len() < count {
        if is_prime(&candidate) {
            out.push(candidate.clone());
        }
        candidate += 1;
    }
    out
}

/// Prime factors (without multiplicity) of `|n|`, n != 0.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    assert!(!n.is_zero());
    let mut out = vec![];
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            while n.is_multiple_of(&d) {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_matches_miller_rabin() {
        let sieved = primes_up_to(2000);
        for n in 0..=2000u64 {
            assert_eq!(sieved.contains(&n), is_prime_u64(n), "disagree at {n}");
        }
    }

    #[test]
    fn known_primes() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(104729));
        assert!(!is_prime_u64(104731));
        assert!(is_prime_u64(18446744073709551557)); // largest u64 prime
    }

    #[test]
    fn factors_of_composite() {
        let f = prime_factors(&BigInt::from(600));
        let want: Vec<BigInt> = [2, 3, 5].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(f, want);
    }

    #[test]
    fn window_above() {
        let w = primes_above(&BigInt::from(100), 3);
        let want: Vec<BigInt> = [101, 103, 107].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(w, want);
    }
}
