//! Continued fraction numbers with lazily generated partial quotients,
//! cached convergents and certified rational brackets.

mod algebraic;

pub use algebraic::AlgebraicRule;

use crate::error::{Error, Result};
use crate::interval::{Interval, Rational};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::sync::Mutex;

/// Default ceiling on convergent denominators, in bits.
pub const DEFAULT_BIT_LIMIT: u64 = 1 << 14;

/// One generator step.
pub enum RuleStep {
    /// Next partial quotient.
    Term(BigInt),
    /// The expansion ends here; the number is rational.
    Exhausted,
    /// The expansion continues but the configured budget is hit.
    Budget,
}

/// Read-only view of the cached expansion handed to generators.
pub struct CfContext<'a> {
    pub quotients: &'a [BigInt],
    /// `(p_i, q_i)` aligned with the quotient index.
    pub convergents: &'a [(BigInt, BigInt)],
    pub bit_limit: u64,
}

/// Rule producing the next partial quotient from the expansion so far.
pub trait QuotientRule: Send {
    fn next(&mut self, ctx: &CfContext<'_>) -> RuleStep;
    fn describe(&self) -> String;
}

struct FixedList {
    terms: Vec<BigInt>,
    pos: usize,
}

impl QuotientRule for FixedList {
    fn next(&mut self, _ctx: &CfContext<'_>) -> RuleStep {
        if self.pos < self.terms.len() {
            let t = self.terms[self.pos].clone();
            self.pos += 1;
            RuleStep::Term(t)
        } else {
            RuleStep::Exhausted
        }
    }

    fn describe(&self) -> String {
        format!("fixed list of {} terms", self.terms.len())
    }
}

struct CfState {
    quotients: Vec<BigInt>,
    convergents: Vec<(BigInt, BigInt)>,
    rule: Box<dyn QuotientRule>,
    finished: bool,
    truncated: bool,
    bit_limit: u64,
}

impl CfState {
    fn push_term(&mut self, a: BigInt) {
        let i = self.quotients.len();
        if i == 0 {
            assert!(!a.is_negative(), "a_0 must be nonnegative");
        } else {
            assert!(a.is_positive(), "partial quotients a_i (i >= 1) must be positive");
        }
        // p_i = a_i p_{i-1} + p_{i-2}, q_i likewise; seeds p_{-1}/q_{-1} = 1/0
        // and p_{-2}/q_{-2} = 0/1.
        let fetch = |k: isize| -> (BigInt, BigInt) {
            if k >= 0 {
                self.convergents[k as usize].clone()
            } else if k == -1 {
                (BigInt::one(), BigInt::zero())
            } else {
                (BigInt::zero(), BigInt::one())
            }
        };
        let (pm1, qm1) = fetch(i as isize - 1);
        let (pm2, qm2) = fetch(i as isize - 2);
        let p = &a * &pm1 + &pm2;
        let q = &a * &qm1 + &qm2;
        debug_assert!({
            // determinant identity p_i q_{i-1} - p_{i-1} q_i = (-1)^(i-1)
            if i >= 1 {
                let det = &p * &qm1 - &pm1 * &q;
                let want = if (i - 1) % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                det == want
            } else {
                true
            }
        });
        self.quotients.push(a);
        self.convergents.push((p, q));
    }

    fn extend_one(&mut self) -> bool {
        if self.finished {
            return false;
        }
        let step = {
            let ctx = CfContext {
                quotients: &self.quotients,
                convergents: &self.convergents,
                bit_limit: self.bit_limit,
            };
            self.rule.next(&ctx)
        };
        match step {
            RuleStep::Term(a) => {
                self.push_term(a);
                true
            }
            RuleStep::Exhausted => {
                self.finished = true;
                false
            }
            RuleStep::Budget => {
                self.finished = true;
                self.truncated = true;
                false
            }
        }
    }
}

/// A real number presented by its continued fraction expansion.
///
/// The partial-quotient cache grows append-only behind a mutex; all
/// operations are pure given a sufficiently extended cache.
pub struct CFNumber {
    state: Mutex<CfState>,
    /// Minimal polynomial when the number was built as an algebraic root.
    algebraic: Option<IntPoly>,
}

impl CFNumber {
    pub fn from_rule(rule: Box<dyn QuotientRule>, bit_limit: u64) -> Self {
        CFNumber {
            state: Mutex::new(CfState {
                quotients: vec![],
                convergents: vec![],
                rule,
                finished: false,
                truncated: false,
                bit_limit,
            }),
            algebraic: None,
        }
    }

    /// Finite expansion `[a_0; a_1, ..., a_k]` denoting a rational number.
    pub fn from_quotients(terms: Vec<BigInt>) -> Self {
        CFNumber::from_rule(Box::new(FixedList { terms, pos: 0 }), DEFAULT_BIT_LIMIT)
    }

    pub fn from_quotients_i64(terms: &[i64]) -> Self {
        CFNumber::from_quotients(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    /// Euclidean expansion of a nonnegative rational.
    pub fn from_rational(x: &Rational) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::InvalidInput(
                "continued fractions here require x >= 0".into(),
            ));
        }
        let mut terms = vec![];
        let mut num = x.numer().clone();
        let mut den = x.denom().clone();
        loop {
            let (q, r) = num.div_rem(&den);
            terms.push(q);
            if r.is_zero() {
                break;
            }
            num = den;
            den = r;
        }
        Ok(CFNumber::from_quotients(terms))
    }

    /// The real root of `poly` isolated by `ivl` (must contain exactly one
    /// simple root, with nonzero values at both endpoints). For degrees up
    /// to 4 the polynomial is verified irreducible so the number carries an
    /// exact algebraic identity.
    pub fn algebraic(poly: &IntPoly, ivl: &Interval) -> Result<Self> {
        if crate::poly::root_count_in(poly, ivl.lo(), ivl.hi()) != 1 {
            return Err(Error::InvalidInput(
                "interval must isolate exactly one real root".into(),
            ));
        }
        let rule = AlgebraicRule::new(poly, ivl)?;
        let min_poly = poly.primitive_part();
        let identity = match min_poly.degree() {
            Some(d) if (2..=4).contains(&d) => {
                if !crate::poly::is_irreducible(&min_poly)? {
                    return Err(Error::InvalidInput(
                        "algebraic constructor expects an irreducible polynomial".into(),
                    ));
                }
                Some(min_poly)
            }
            Some(d) if d > 4 => Some(min_poly),
            _ => None,
        };
        Ok(CFNumber {
            state: Mutex::new(CfState {
                quotients: vec![],
                convergents: vec![],
                rule: Box::new(rule),
                finished: false,
                truncated: false,
                bit_limit: DEFAULT_BIT_LIMIT,
            }),
            algebraic: identity,
        })
    }

    /// Cube root of 2 — a recurring test subject.
    pub fn cbrt2() -> Self {
        use crate::interval::rat_int;
        CFNumber::algebraic(
            &IntPoly::from_i64(&[-2, 0, 0, 1]),
            &Interval::new(rat_int(1), rat_int(2)),
        )
        .expect("T^3 - 2 has a single root in (1,2)")
    }

    /// Golden ratio `[1; 1, 1, ...]`.
    pub fn golden_ratio() -> Self {
        use crate::interval::rat_int;
        CFNumber::algebraic(
            &IntPoly::from_i64(&[-1, -1, 1]),
            &Interval::new(rat_int(1), rat_int(2)),
        )
        .expect("T^2 - T - 1 has a single root in (1,2)")
    }

    /// Square root of 2.
    pub fn sqrt2() -> Self {
        use crate::interval::rat_int;
        CFNumber::algebraic(
            &IntPoly::from_i64(&[-2, 0, 1]),
            &Interval::new(rat_int(1), rat_int(2)),
        )
        .expect("T^2 - 2 has a single root in (1,2)")
    }

    /// Minimal polynomial when known exactly.
    pub fn algebraic_identity(&self) -> Option<&IntPoly> {
        self.algebraic.as_ref()
    }

    /// Extend the cache to at least `n` quotients if the generator allows.
    /// Returns the number of quotients actually available.
    pub fn ensure_len(&self, n: usize) -> usize {
        let mut st = self.state.lock().expect("cf cache lock");
        while st.quotients.len() < n && st.extend_one() {}
        st.quotients.len()
    }

    pub fn len_generated(&self) -> usize {
        self.state.lock().expect("cf cache lock").quotients.len()
    }

    /// Whether the generator stopped because of its overflow budget.
    pub fn truncated(&self) -> bool {
        self.state.lock().expect("cf cache lock").truncated
    }

    /// Whether the expansion is known to be finite (a rational number).
    pub fn is_finite(&self) -> bool {
        let st = self.state.lock().expect("cf cache lock");
        st.finished && !st.truncated
    }

    /// Exact value when the expansion is finite and complete.
    pub fn exact_value(&self) -> Option<Rational> {
        let mut st = self.state.lock().expect("cf cache lock");
        while st.extend_one() {}
        if st.finished && !st.truncated {
            let (p, q) = st.convergents.last()?;
            Some(Rational::new(p.clone(), q.clone()))
        } else {
            None
        }
    }

    pub fn quotient(&self, i: usize) -> Option<BigInt> {
        self.ensure_len(i + 1);
        let st = self.state.lock().expect("cf cache lock");
        st.quotients.get(i).cloned()
    }

    pub fn quotients_prefix(&self, n: usize) -> Vec<BigInt> {
        self.ensure_len(n);
        let st = self.state.lock().expect("cf cache lock");
        st.quotients.iter().take(n).cloned().collect()
    }

    /// `(p_i, q_i)` for the i-th convergent.
    pub fn convergent_pair(&self, i: usize) -> Result<(BigInt, BigInt)> {
        let have = self.ensure_len(i + 1);
        let st = self.state.lock().expect("cf cache lock");
        if i < have {
            Ok(st.convergents[i].clone())
        } else if st.finished && !st.truncated && have > 0 {
            let (p, q) = st.convergents.last().unwrap();
            Err(Error::Exhausted {
                value: Rational::new(p.clone(), q.clone()),
            })
        } else if have > 0 {
            let (pl, ql) = &st.convergents[have - 1];
            let best = if have >= 2 {
                let (pk, qk) = &st.convergents[have - 2];
                Some(Interval::hull_of(
                    Rational::new(pk.clone(), qk.clone()),
                    Rational::new(pl.clone(), ql.clone()),
                ))
            } else {
                None
            };
            Err(Error::Budget {
                what: format!("convergent {i} beyond the generation budget"),
                best,
            })
        } else {
            Err(Error::Budget {
                what: "no quotients could be generated".into(),
                best: None,
            })
        }
    }

    /// `p_i / q_i` in lowest terms.
    pub fn convergent(&self, i: usize) -> Result<Rational> {
        let (p, q) = self.convergent_pair(i)?;
        Ok(Rational::new(p, q))
    }

    /// Certified bracket `|q_j * zeta - p_j|` for an infinite expansion:
    /// the classical `1/(q_j + q_{j+1}) < |q_j zeta - p_j| < 1/q_{j+1}`.
    pub fn linear_form_bracket(&self, j: usize) -> Result<Interval> {
        let (_, qj) = self.convergent_pair(j)?;
        match self.convergent_pair(j + 1) {
            Ok((_, qj1)) => Ok(Interval::new(
                Rational::new(BigInt::one(), &qj + &qj1),
                Rational::new(BigInt::one(), qj1),
            )),
            Err(Error::Exhausted { .. }) => {
                // finite expansion: the value is exact
                let v = self.exact_value().expect("finite expansion has a value");
                let (p, q) = self.convergent_pair(j)?;
                let exact = (Rational::from(q) * v - Rational::from(p)).abs();
                Ok(Interval::point(exact))
            }
            Err(e) => Err(e),
        }
    }

    /// Certified enclosure of the number with width at most `tol`.
    ///
    /// Consecutive convergents bracket the value; the expansion is extended
    /// on demand. A finite expansion yields the exact point. When the
    /// generation budget is exhausted the error carries the best bracket.
    pub fn enclose(&self, tol: &Rational) -> Result<Interval> {
        assert!(tol.is_positive(), "enclose needs tol > 0");
        let mut need = 2usize;
        loop {
            let have = self.ensure_len(need);
            let st = self.state.lock().expect("cf cache lock");
            if st.finished && !st.truncated {
                let (p, q) = st.convergents.last().ok_or_else(|| Error::Budget {
                    what: "empty expansion".into(),
                    best: None,
                })?;
                return Ok(Interval::point(Rational::new(p.clone(), q.clone())));
            }
            if have >= 2 {
                let (pa, qa) = &st.convergents[have - 2];
                let (pb, qb) = &st.convergents[have - 1];
                let width = Rational::new(BigInt::one(), qa * qb);
                if width <= *tol {
                    return Ok(Interval::hull_of(
                        Rational::new(pa.clone(), qa.clone()),
                        Rational::new(pb.clone(), qb.clone()),
                    ));
                }
                if st.truncated {
                    return Err(Error::Budget {
                        what: "expansion budget hit before requested tolerance".into(),
                        best: Some(Interval::hull_of(
                            Rational::new(pa.clone(), qa.clone()),
                            Rational::new(pb.clone(), qb.clone()),
                        )),
                    });
                }
            } else if st.truncated || st.finished {
                return Err(Error::Budget {
                    what: "expansion too short for a bracket".into(),
                    best: None,
                });
            }
            drop(st);
            need = have + 1;
        }
    }

    /// Enclosure of width at most `2^-bits`.
    pub fn enclose_bits(&self, bits: u64) -> Result<Interval> {
        let tol = Rational::new(BigInt::one(), BigInt::one() << bits);
        self.enclose(&tol)
    }

    pub fn describe(&self) -> String {
        let st = self.state.lock().expect("cf cache lock");
        st.rule.describe()
    }

    /// Bracket from the last two cached convergents. Sound for infinite and
    /// truncated expansions alike: the value lies strictly between any two
    /// consecutive convergents.
    fn current_bracket(&self) -> Option<Interval> {
        let st = self.state.lock().expect("cf cache lock");
        if st.finished && !st.truncated {
            let (p, q) = st.convergents.last()?;
            return Some(Interval::point(Rational::new(p.clone(), q.clone())));
        }
        if st.convergents.len() >= 2 {
            let (pa, qa) = &st.convergents[st.convergents.len() - 2];
            let (pb, qb) = &st.convergents[st.convergents.len() - 1];
            Some(Interval::hull_of(
                Rational::new(pa.clone(), qa.clone()),
                Rational::new(pb.clone(), qb.clone()),
            ))
        } else {
            None
        }
    }
}

impl std::fmt::Debug for CFNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let st = self.state.lock().expect("cf cache lock");
        let head: Vec<String> = st.quotients.iter().take(8).map(|a| a.to_string()).collect();
        write!(f, "CFNumber[{}{}]", head.join(";"), if st.finished { "" } else { ",…" })
    }
}

/// Certified evaluation of `P` at a continued fraction point.
///
/// The returned interval `I` contains `P(zeta)` and satisfies either
/// `width(I) <= rel_tol * max(|lo|,|hi|)` or `0 in I` with
/// `width(I) <= zero_floor`. The bracket of `zeta` is refined on demand.
pub fn eval_poly(
    p: &IntPoly,
    x: &CFNumber,
    rel_tol: &Rational,
    zero_floor: &Rational,
) -> Result<Interval> {
    assert!(rel_tol.is_positive() && zero_floor.is_positive());
    if let Some(v) = x.exact_value() {
        return Ok(Interval::point(p.eval_rational(&v)));
    }
    let mut terms = x.len_generated().max(3);
    loop {
        let have = x.ensure_len(terms);
        if let Some(v) = x.exact_value() {
            return Ok(Interval::point(p.eval_rational(&v)));
        }
        let bracket = x.current_bracket().ok_or_else(|| Error::Budget {
            what: "expansion too short to bracket the point".into(),
            best: None,
        })?;
        let val = p.eval_interval(&bracket);
        let ok_rel = val.width() <= rel_tol * val.mag_hi();
        let ok_zero = val.contains_zero() && val.width() <= *zero_floor;
        if ok_rel || ok_zero {
            return Ok(val);
        }
        best = Some(val);
        if have < terms {
            return Err(Error::Budget {
                what: "could not refine evaluation to the requested tolerance".into(),
                best,
            });
        }
        terms = have + 2;
    }
}
