//! Construction of the special continued fractions used throughout:
//! power-recurrence classes `Bw` (rational exponent `w`), strong Liouville
//! numbers `BInfinity`, and membership tags for the derived classes
//! `D_{n,w}` they are known to land in.

use crate::cf::{CFNumber, CfContext, QuotientRule, RuleStep};
use crate::error::{Error, Result};
use crate::interval::{Interval, Rational};
use crate::logs::ln_rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// `floor(q^(a/b))` computed exactly as the integer b-th root of `q^a`.
pub fn floor_pow(q: &BigInt, w_minus_1: &Rational) -> BigInt {
    assert!(q.is_positive(), "floor_pow needs q >= 1");
    assert!(!w_minus_1.is_negative(), "floor_pow needs a nonnegative exponent");
    let a = w_minus_1
        .numer()
        .to_u32()
        .expect("exponent numerator fits u32 at desk scale");
    let b = w_minus_1
        .denom()
        .to_u32()
        .expect("exponent denominator fits u32 at desk scale");
    if a == 0 {
        return BigInt::one();
    }
    q.pow(a).nth_root(b)
}

/// Class tag carried by a constructed number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumberClass {
    /// Partial quotients `a_1 = 2`, `a_{j+1} = M * floor(q_j^(w-1))`.
    Bw { w: Rational, m: BigInt },
    /// Strong Liouville schedule; `schedule` names the rule used.
    BInfinity { schedule: String },
    Custom,
}

/// A constructed number together with its class metadata.
pub struct ConstructedNumber {
    pub value: CFNumber,
    pub class: NumberClass,
    /// `(n, w)` pairs for which membership in `D_{n,w}` is claimed
    /// (populated only when `w >= 2n - 1`).
    pub claimed_dnw: Vec<(u32, Rational)>,
}

struct BwRule {
    w_minus_1: Rational,
    m: BigInt,
    max_terms: usize,
}

impl QuotientRule for BwRule {
    fn next(&mut self, ctx: &CfContext<'_>) -> RuleStep {
        let j = ctx.quotients.len();
        if j >= self.max_terms + 1 {
            return RuleStep::Exhausted;
        }
        match j {
            0 => RuleStep::Term(BigInt::zero()),
            1 => RuleStep::Term(BigInt::from(2)),
            _ => {
                let (_, qj) = &ctx.convergents[j - 1];
                // predicted size of the next a: (w-1) * bits(q_j)
                let wm1_num = self.w_minus_1.numer().to_u64().unwrap_or(u64::MAX);
                let wm1_den = self.w_minus_1.denom().to_u64().unwrap_or(1);
                let predicted = qj.bits().saturating_mul(wm1_num) / wm1_den + qj.bits();
                if predicted > ctx.bit_limit {
                    return RuleStep::Budget;
                }
                // floor_pow >= 1 and M >= 1, so the quotient stays positive
                RuleStep::Term(&self.m * floor_pow(qj, &self.w_minus_1))
            }
        }
    }

    fn describe(&self) -> String {
        format!("Bw rule, w-1 = {}, M = {}", self.w_minus_1, self.m)
    }
}

struct StrongLiouvilleRule {
    max_terms: usize,
}

impl QuotientRule for StrongLiouvilleRule {
    fn next(&mut self, ctx: &CfContext<'_>) -> RuleStep {
        let j = ctx.quotients.len();
        if j >= self.max_terms + 1 {
            return RuleStep::Exhausted;
        }
        match j {
            0 => RuleStep::Term(BigInt::zero()),
            1 => RuleStep::Term(BigInt::from(2)),
            _ => {
                // a_{j+1} = q_j^j, generated at index j+1 = current length
                let exp = (j - 1) as u32;
                let (_, qj) = &ctx.convergents[j - 1];
                if qj.bits().saturating_mul(exp as u64) > ctx.bit_limit {
                    return RuleStep::Budget;
                }
                RuleStep::Term(qj.pow(exp))
            }
        }
    }

    fn describe(&self) -> String {
        "strong Liouville rule a_{j+1} = q_j^j".into()
    }
}

/// Build a `Bw` number with `max_terms` generated partial quotients past
/// `a_0` (so indexes `a_1 ..= a_max_terms`).
pub fn build_bw(w: &Rational, m: &BigInt, max_terms: usize, bit_limit: u64) -> Result<ConstructedNumber> {
    if *w < Rational::one() {
        return Err(Error::InvalidInput("class Bw needs w >= 1".into()));
    }
    if !m.is_positive() {
        return Err(Error::InvalidInput("class Bw needs M >= 1".into()));
    }
    let rule = BwRule {
        w_minus_1: w - Rational::one(),
        m: m.clone(),
        max_terms,
    };
    let value = CFNumber::from_rule(Box::new(rule), bit_limit);
    value.ensure_len(max_terms + 1);
    let mut claimed_dnw = vec![];
    // membership in D_{n,w} holds for any M >= 1 once w >= 2n - 1
    let mut n = 1u32;
    loop {
        let bound = Rational::from(BigInt::from(2 * n - 1));
        if *w >= bound {
            claimed_dnw.push((n, w.clone()));
        } else {
            break;
        }
        n += 1;
    }
    Ok(ConstructedNumber {
        value,
        class: NumberClass::Bw {
            w: w.clone(),
            m: m.clone(),
        },
        claimed_dnw,
    })
}

/// Strong Liouville number with the default schedule `a_{j+1} = q_j^j`.
pub fn build_strong_liouville(max_terms: usize, bit_limit: u64) -> ConstructedNumber {
    let value = CFNumber::from_rule(Box::new(StrongLiouvilleRule { max_terms }), bit_limit);
    value.ensure_len(max_terms + 1);
    ConstructedNumber {
        value,
        class: NumberClass::BInfinity {
            schedule: "q_j^j".into(),
        },
        claimed_dnw: vec![],
    }
}

impl ConstructedNumber {
    /// Padded enclosures of `log a_{j+1} / log a_j` over the generated range
    /// (quotient indices j >= 1).
    pub fn quotient_log_ratios(&self) -> Vec<(usize, f64, f64)> {
        let n = self.value.len_generated();
        let mut out = vec![];
        for j in 1..n.saturating_sub(1) {
            let aj = self.value.quotient(j).unwrap();
            let aj1 = self.value.quotient(j + 1).unwrap();
            if aj <= BigInt::one() {
                continue;
            }
            let (nl, nh) = ln_rational(&Rational::from(aj1));
            let (dl, dh) = ln_rational(&Rational::from(aj));
            out.push((j, nl / dh, nh / dl));
        }
        out
    }

    /// Certified slope bracket of `-log|q_j zeta - p_j| / log q_j`.
    pub fn linear_slope_bracket(&self, j: usize) -> Result<(f64, f64)> {
        let bracket = self.value.linear_form_bracket(j)?;
        let (_, qj) = self.value.convergent_pair(j)?;
        crate::logs::slope_enclosure(&bracket, &Rational::from(qj)).ok_or_else(|| {
            Error::InvalidInput("slope undefined (zero value or unit height)".into())
        })
    }
}

/// JSON construction specification, e.g.
/// `{"class":"Bw","w":"5/1","M":1,"max_terms":8}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "class")]
pub enum ConstructionSpec {
    Bw {
        /// rational, as "a/b"
        w: String,
        #[serde(rename = "M")]
        m: u64,
        max_terms: usize,
    },
    BInfinity {
        max_terms: usize,
    },
    Rational {
        /// rational, as "a/b"
        value: String,
    },
    Algebraic {
        /// integer coefficients, constant term first
        poly: Vec<i64>,
        lo: String,
        hi: String,
    },
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad integer '{t}'")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            Ok(Rational::new(parse_int(n)?, den))
        }
        None => Ok(Rational::from(parse_int(s)?)),
    }
}

impl ConstructionSpec {
    pub fn build(&self, bit_limit: u64) -> Result<ConstructedNumber> {
        match self {
            ConstructionSpec::Bw { w, m, max_terms } => {
                let w = parse_rational(w)?;
                build_bw(&w, &BigInt::from(*m), *max_terms, bit_limit)
            }
            ConstructionSpec::BInfinity { max_terms } => {
                Ok(build_strong_liouville(*max_terms, bit_limit))
            }
            ConstructionSpec::Rational { value } => {
                let v = parse_rational(value)?;
                Ok(ConstructedNumber {
                    value: CFNumber::from_rational(&v)?,
                    class: NumberClass::Custom,
                    claimed_dnw: vec![],
                })
            }
            ConstructionSpec::Algebraic { poly, lo, hi } => {
                let p = crate::poly::IntPoly::from_i64(poly);
                let ivl = Interval::new(parse_rational(lo)?, parse_rational(hi)?);
                Ok(ConstructedNumber {
                    value: CFNumber::algebraic(&p, &ivl)?,
                    class: NumberClass::Custom,
                    claimed_dnw: vec![],
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::DEFAULT_BIT_LIMIT;
    use crate::interval::{rat, rat_int};

    #[test]
    fn floor_pow_examples() {
        assert_eq!(floor_pow(&BigInt::from(2), &rat_int(2)), BigInt::from(4));
        assert_eq!(floor_pow(&BigInt::from(9), &rat_int(2)), BigInt::from(81));
        // floor(10^(3/2)) = isqrt(1000) = 31
        assert_eq!(floor_pow(&BigInt::from(10), &rat(3, 2)), BigInt::from(31));
    }

    #[test]
    fn bw_w2_examples() {
        // w=2, M=1: quotients [0;2,2,5,27,...], q = 1,2,5,27,734
        let c = build_bw(&rat_int(2), &BigInt::one(), 4, DEFAULT_BIT_LIMIT).unwrap();
        let q: Vec<BigInt> = (0..5)
            .map(|i| c.value.convergent_pair(i).unwrap().1)
            .collect();
        let want: Vec<BigInt> = [1, 2, 5, 27, 734].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(q, want);
    }

    #[test]
    fn bw_w3_examples() {
        // w=3, M=1: quotients [0;2,4,81,...], q = 1,2,9,731
        let c = build_bw(&rat_int(3), &BigInt::one(), 3, DEFAULT_BIT_LIMIT).unwrap();
        let a: Vec<BigInt> = (0..4).map(|i| c.value.quotient(i).unwrap()).collect();
        assert_eq!(
            a,
            [0, 2, 4, 81].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()
        );
        let q: Vec<BigInt> = (0..4)
            .map(|i| c.value.convergent_pair(i).unwrap().1)
            .collect();
        assert_eq!(
            q,
            [1, 2, 9, 731].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()
        );
        // convergent example: p_3/q_3 = 325/731
        assert_eq!(c.value.convergent(3).unwrap(), rat(325, 731));
        // D_{n,w} claims for w = 3: n with 2n-1 <= 3, so n in {1, 2}
        assert_eq!(c.claimed_dnw.len(), 2);
    }

    #[test]
    fn bw_w1_constant_tail() {
        let c = build_bw(&rat_int(1), &BigInt::one(), 6, DEFAULT_BIT_LIMIT).unwrap();
        let a: Vec<BigInt> = (0..7).map(|i| c.value.quotient(i).unwrap()).collect();
        assert_eq!(a[0], BigInt::zero());
        assert_eq!(a[1], BigInt::from(2));
        for x in &a[2..] {
            assert_eq!(*x, BigInt::one());
        }
    }

    #[test]
    fn strong_liouville_prefix() {
        // a = [0;2,2,25,...], q = 1,2,5,127
        let c = build_strong_liouville(3, DEFAULT_BIT_LIMIT);
        let a: Vec<BigInt> = (0..4).map(|i| c.value.quotient(i).unwrap()).collect();
        assert_eq!(
            a,
            [0, 2, 2, 25].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()
        );
        let q: Vec<BigInt> = (0..4)
            .map(|i| c.value.convergent_pair(i).unwrap().1)
            .collect();
        assert_eq!(
            q,
            [1, 2, 5, 127].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()
        );
        // ratio check at j=2: log a_3 / log a_2 = log 25 / log 2 > 2
        let ratios = c.quotient_log_ratios();
        let r2 = ratios.iter().find(|(j, _, _)| *j == 2).unwrap();
        assert!(r2.1 > 2.0);
        assert!(r2.1 < 4.65 && r2.2 > 4.64);
    }

    #[test]
    fn strong_liouville_truncation() {
        let c = build_strong_liouville(2, DEFAULT_BIT_LIMIT);
        assert_eq!(c.value.exact_value(), Some(rat(2, 5)));
    }

    #[test]
    fn truncation_flag_on_bit_limit() {
        let c = build_bw(&rat_int(3), &BigInt::one(), 30, 64).unwrap();
        assert!(c.value.truncated());
        assert!(c.value.exact_value().is_none());
        // enclose still certifies a bracket through the budget error
        match c.value.enclose(&Rational::new(BigInt::one(), BigInt::one() << 4000)) {
            Err(Error::Budget { best: Some(b), .. }) => assert!(b.width() > Rational::zero()),
            other => panic!("expected budget with bracket, got {other:?}"),
        }
    }

    #[test]
    fn bw_growth_invariant() {
        // M*floor(q_{j-1}^(w-1))*q_{j-1} < q_j <= M*q_{j-1}^w + q_{j-1}
        for (w, m) in [(rat_int(2), 1i64), (rat_int(3), 2), (rat(5, 2), 1)] {
            let m = BigInt::from(m);
            let c = build_bw(&w, &m, 5, DEFAULT_BIT_LIMIT).unwrap();
            let wm1 = &w - Rational::one();
            let b = w.denom().to_u32().unwrap();
            let a_num = w.numer().to_u32().unwrap();
            for j in 2..=c.value.len_generated() - 1 {
                let qj = c.value.convergent_pair(j).unwrap().1;
                let qprev = c.value.convergent_pair(j - 1).unwrap().1;
                let lhs = &m * floor_pow(&qprev, &wm1) * &qprev;
                assert!(lhs < qj);
                // (q_j - q_{j-1})^b <= M^b * q_{j-1}^a
                let left = (&qj - &qprev).pow(b);
                let right = m.pow(b) * qprev.pow(a_num);
                assert!(left <= right);
            }
        }
    }

    #[test]
    fn bw_slope_realizes_w() {
        let c = build_bw(&rat_int(3), &BigInt::one(), 5, DEFAULT_BIT_LIMIT).unwrap();
        for j in 2..=4 {
            let (lo, hi) = c.linear_slope_bracket(j).unwrap();
            assert!(lo < 3.2 && hi > 2.8, "slope bracket ({lo}, {hi}) off at j={j}");
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let json = r#"{"class":"Bw","w":"5/1","M":1,"max_terms":8}"#;
        let spec: ConstructionSpec = serde_json::from_str(json).unwrap();
        assert_eq!(
            spec,
            ConstructionSpec::Bw {
                w: "5/1".into(),
                m: 1,
                max_terms: 8
            }
        );
        let c = spec.build(1 << 12).unwrap();
        assert!(matches!(c.class, NumberClass::Bw { .. }));
    }
}
