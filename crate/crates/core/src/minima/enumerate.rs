//! Certified successive-minima enumeration for the parametric bodies.
//!
//! The enumeration walks an integer box in scaled i128 arithmetic and keeps
//! every vector whose norm lower bound clears the threshold. A single
//! greedy pass over the candidates sorted by those lower bounds yields
//! certified lower endpoints for all minima (matroid exchange: if j
//! independent vectors had true norms below the j-th kept lower bound, the
//! greedy would have kept j of them earlier); exact rational norms of the
//! few kept vectors then provide the upper endpoints. Basis reduction only
//! seeds the initial threshold.

use super::lll;
use crate::cf::CFNumber;
use crate::dyadic::{nth_root_enclosure, DyadicIvl};
use crate::error::{Error, Result};
use crate::interval::{Interval, Rational};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Maximum supported dimension n+1 (degrees above 4 are out of scope).
const MAX_DIM: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BodyKind {
    /// `|x| <= Q^(1+eta)`, `|zeta^j x - y_j| <= Q^(-1/n+eta)`.
    Simultaneous,
    /// `H(P) <= Q^(1/n+eta)`, `|P(zeta)| <= Q^(-1+eta)`.
    Dual,
}

/// Successive minima with certified enclosures and exact witnesses.
#[derive(Clone, Debug)]
pub struct MinimaResult {
    pub kind: BodyKind,
    pub n: usize,
    pub lambdas: Vec<Interval>,
    /// Witnesses behind the upper endpoints, one row per minimum:
    /// `(x, y_1..y_n)` for the simultaneous body, `(c_0..c_n)` for the dual.
    pub witnesses: Vec<Vec<BigInt>>,
    pub witness_norms: Vec<Interval>,
    /// Set when refinement stopped at the precision budget; the lower
    /// endpoints remain certified.
    pub partial: bool,
}

#[derive(Clone, Copy)]
struct Cand {
    lo: i128,
    v: [i32; MAX_DIM],
}

struct Scaled {
    bits: u32,
    zpow_lo: Vec<i128>,
    zpow_hi: Vec<i128>,
    root_lo: i128,
    invroot_lo: i128,
    invroot_hi: i128,
    root_hi: i128,
    qnum: i128,
    qden: i128,
}

fn build_scaled(n: usize, q: &Rational, zeta: &Interval, bits: u32) -> Option<Scaled> {
    let zd = DyadicIvl::from_interval(zeta, bits);
    let pows = zd.powers(n);
    let mut zpow_lo = vec![];
    let mut zpow_hi = vec![];
    for p in &pows {
        zpow_lo.push(p.lo.to_i128()?);
        zpow_hi.push(p.hi.to_i128()?);
    }
    let root = nth_root_enclosure(q, n as u32, bits);
    let invroot = nth_root_enclosure(&q.recip(), n as u32, bits);
    Some(Scaled {
        bits,
        zpow_lo,
        zpow_hi,
        root_lo: root.lo.to_i128()?,
        root_hi: root.hi.to_i128()?,
        invroot_lo: invroot.lo.to_i128()?,
        invroot_hi: invroot.hi.to_i128()?,
        qnum: q.numer().to_i128()?,
        qden: q.denom().to_i128()?,
    })
}

/// Saturating `(a*b) >> bits` for nonnegative inputs. Saturation only ever
/// widens candidate windows or keeps a candidate, so it stays sound.
fn mul_shift(a: i128, b: i128, bits: u32) -> i128 {
    debug_assert!(a >= 0 && b >= 0);
    match a.checked_mul(b) {
        Some(v) => v >> bits,
        None => i128::MAX >> bits,
    }
}

fn abs_scaled(lo: i128, hi: i128) -> i128 {
    if lo >= 0 {
        lo
    } else if hi <= 0 {
        -hi
    } else {
        0
    }
}

/// All `(x, y..)` with norm lower bound at most `t`, plus the y-units
/// (which dominate every other `x = 0` vector in the greedy).
fn shortlist_simultaneous(n: usize, sc: &Scaled, t: i128) -> Option<Vec<Cand>> {
    let bits = sc.bits;
    let mut out: Vec<Cand> = vec![];
    if sc.root_lo <= t {
        for j in 1..=n {
            let mut v = [0i32; MAX_DIM];
            v[j] = 1;
            out.push(Cand { lo: sc.root_lo, v });
        }
    }
    let xmax = (mul_shift(t, sc.qnum, bits) / sc.qden) + 2;
    if xmax > i32::MAX as i128 {
        return None;
    }
    let rad = mul_shift(t, sc.invroot_hi, bits) + 2;
    let mut v = [0i32; MAX_DIM];
    for x in 1..=xmax as i64 {
        let piece_x = ((x as i128) << bits) * sc.qden / sc.qnum;
        if piece_x > t {
            break;
        }
        v[0] = x as i32;
        descend_sim(n, sc, t, x, 1, piece_x, rad, &mut v, &mut out);
    }
    Some(out)
}

#[allow(clippy::too_many_arguments)]
fn descend_sim(
    n: usize,
    sc: &Scaled,
    t: i128,
    x: i64,
    j: usize,
    norm_lo: i128,
    rad: i128,
    v: &mut [i32; MAX_DIM],
    out: &mut Vec<Cand>,
) {
    if j > n {
        out.push(Cand { lo: norm_lo, v: *v });
        return;
    }
    let zx_lo = (x as i128) * sc.zpow_lo[j];
    let zx_hi = (x as i128) * sc.zpow_hi[j];
    let y_min = ((zx_lo - rad) >> sc.bits) - 1;
    let y_max = ((zx_hi + rad) >> sc.bits) + 2;
    if y_min < i32::MIN as i128 || y_max > i32::MAX as i128 {
        return;
    }
    for y in y_min..=y_max {
        let l_lo = zx_lo - (y << sc.bits);
        let l_hi = zx_hi - (y << sc.bits);
        let al = abs_scaled(l_lo, l_hi);
        let piece_lo = mul_shift(sc.root_lo, al, sc.bits);
        let new_lo = norm_lo.max(piece_lo);
        if new_lo > t {
            continue;
        }
        v[j] = y as i32;
        descend_sim(n, sc, t, x, j + 1, new_lo, rad, v, out);
    }
}

/// Coefficient vectors `(c_0..c_n)` with norm lower bound at most `t`,
/// sign-canonical in the top nonzero coefficient.
fn shortlist_dual(n: usize, sc: &Scaled, t: i128) -> Option<Vec<Cand>> {
    let bits = sc.bits;
    let hmax = (mul_shift(t, sc.root_hi, bits) >> bits) + 2;
    if hmax > i32::MAX as i128 {
        return None;
    }
    // window of the scaled value sum: |S + c_0 * 2^bits| <= T * qden / qnum
    let w = t.saturating_mul(sc.qden) / sc.qnum + 2;
    let mut out = vec![];
    let mut coeffs = [0i32; MAX_DIM];
    descend_dual(n, sc, t, n, true, 0, 0, 0, hmax as i64, w, &mut coeffs, &mut out);
    Some(out)
}

#[allow(clippy::too_many_arguments)]
fn descend_dual(
    n: usize,
    sc: &Scaled,
    t: i128,
    j: usize,
    all_zero: bool,
    s_lo: i128,
    s_hi: i128,
    h_partial: i128,
    hmax: i64,
    w: i128,
    coeffs: &mut [i32; MAX_DIM],
    out: &mut Vec<Cand>,
) {
    let bits = sc.bits;
    if j == 0 {
        let c_lo = (((-s_hi - w) >> bits) - 1).max(-(hmax as i128));
        let c_hi = (((-s_lo + w) >> bits) + 2).min(hmax as i128);
        for c0 in c_lo..=c_hi {
            if all_zero && c0 == 0 {
                continue;
            }
            let h = h_partial.max(c0.abs());
            let piece1 = h.saturating_mul(sc.invroot_lo);
            if piece1 > t {
                continue;
            }
            let v_lo = s_lo + (c0 << bits);
            let v_hi = s_hi + (c0 << bits);
            let al = abs_scaled(v_lo, v_hi);
            let piece2 = match al.checked_mul(sc.qnum) {
                Some(p) => p / sc.qden,
                None => i128::MAX >> 1,
            };
            let lo = piece1.max(piece2);
            if lo > t {
                continue;
            }
            coeffs[0] = c0 as i32;
            out.push(Cand {
                lo,
                v: *coeffs,
            });
        }
        return;
    }
    let _ = bits;
    let from = if all_zero { 0 } else { -hmax };
    for c in from..=hmax {
        let cz = c as i128;
        let h = h_partial.max(cz.abs());
        let piece1 = h.saturating_mul(sc.invroot_lo);
        if piece1 > t {
            continue;
        }
        let (a, b) = (cz * sc.zpow_lo[j], cz * sc.zpow_hi[j]);
        let (nlo, nhi) = if a <= b { (a, b) } else { (b, a) };
        coeffs[j] = c as i32;
        descend_dual(
            n,
            sc,
            t,
            j - 1,
            all_zero && c == 0,
            s_lo + nlo,
            s_hi + nhi,
            h,
            hmax,
            w,
            coeffs,
            out,
        );
    }
}

/// Exact rational norm interval of one candidate.
fn precise_norm(
    kind: BodyKind,
    n: usize,
    q: &Rational,
    zpows: &[Interval],
    root: &Interval,
    invroot: &Interval,
    v: &[i32],
) -> Interval {
    match kind {
        BodyKind::Simultaneous => {
            let x = BigInt::from(v[0]);
            let mut norm = Interval::point(BigRational::from(x.abs()) / q);
            for j in 1..=n {
                let l = zpows[j].scale(&BigRational::from(BigInt::from(v[0])));
                let l = &l - &Interval::point(BigRational::from(BigInt::from(v[j])));
                let piece = root * &l.abs();
                norm = max_interval(&norm, &piece);
            }
            norm
        }
        BodyKind::Dual => {
            let h = v[..=n].iter().map(|c| c.abs()).max().unwrap_or(0);
            let piece1 = invroot.scale(&BigRational::from(BigInt::from(h)));
            let mut val = Interval::zero();
            for j in 0..=n {
                val = &val + &zpows[j].scale(&BigRational::from(BigInt::from(v[j])));
            }
            let piece2 = val.abs().scale(q);
            max_interval(&piece1, &piece2)
        }
    }
}

fn max_interval(a: &Interval, b: &Interval) -> Interval {
    Interval::new(a.lo().max(b.lo()).clone(), a.hi().max(b.hi()).clone())
}

/// Exact integer rank tracker (fraction-free elimination, content-reduced
/// rows to keep entries small).
pub(crate) struct RankTracker {
    rows: Vec<Vec<BigInt>>,
    dim: usize,
}

impl RankTracker {
    pub(crate) fn new(dim: usize) -> Self {
        RankTracker { rows: vec![], dim }
    }

    pub(crate) fn try_insert(&mut self, v: &[i32]) -> bool {
        let w: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
        self.try_insert_big(&w)
    }

    pub(crate) fn try_insert_big(&mut self, v: &[BigInt]) -> bool {
        use num_integer::Integer;
        let mut w: Vec<BigInt> = v.to_vec();
        w.resize(self.dim, BigInt::zero());
        for row in &self.rows {
            let p = row.iter().position(|c| !c.is_zero()).unwrap();
            if !w[p].is_zero() {
                let (a, b) = (row[p].clone(), w[p].clone());
                for t in 0..self.dim {
                    w[t] = &w[t] * &a - &row[t] * &b;
                }
            }
        }
        if w.iter().all(|c| c.is_zero()) {
            false
        } else {
            let mut g = BigInt::zero();
            for c in &w {
                g = g.gcd(c);
            }
            if !g.is_zero() && !g.is_one() {
                for c in w.iter_mut() {
                    *c /= &g;
                }
            }
            self.rows.push(w);
            true
        }
    }
}

/// Seed threshold from basis reduction over the scaled body forms.
fn seed_threshold(
    kind: BodyKind,
    n: usize,
    q: &Rational,
    zpows: &[Interval],
    root: &Interval,
    invroot: &Interval,
) -> Rational {
    let bits = 48u32;
    let dim = n + 1;
    let mut basis: Vec<Vec<BigInt>> = vec![];
    match kind {
        BodyKind::Simultaneous => {
            for t in 0..dim {
                let mut row = vec![BigInt::zero(); dim];
                if t == 0 {
                    row[0] = crate::dyadic::floor_scaled(&q.recip(), bits);
                    for j in 1..=n {
                        let zj = zpows[j].midpoint() * root.midpoint();
                        row[j] = crate::dyadic::floor_scaled(&zj, bits);
                    }
                } else {
                    row[t] = -crate::dyadic::floor_scaled(&root.midpoint(), bits);
                }
                basis.push(row);
            }
        }
        BodyKind::Dual => {
            // forms (c_j * Q^(-1/n) each, Q * P(zeta)): rows in n+2 coords
            for t in 0..dim {
                let mut row = vec![BigInt::zero(); dim + 1];
                row[t] = crate::dyadic::floor_scaled(&invroot.midpoint(), bits);
                row[dim] = crate::dyadic::floor_scaled(&(zpows[t].midpoint() * q), bits);
                basis.push(row);
            }
        }
    }
    let transform = lll::reduce(&mut basis);
    let mut tracker = RankTracker::new(dim);
    let mut rows: Vec<(BigInt, Vec<i32>)> = transform
        .iter()
        .zip(&basis)
        .filter_map(|(r, b)| {
            let v: Vec<i32> = r
                .iter()
                .map(|c| c.to_i32())
                .collect::<Option<Vec<i32>>>()?;
            Some((lll::norm_sq(b), v))
        })
        .collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    let mut best: Option<Rational> = None;
    let mut count = 0;
    for (_, v) in &rows {
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        if tracker.try_insert(v) {
            let norm = precise_norm(kind, n, q, zpows, root, invroot, v);
            let hi = norm.hi().clone();
            best = Some(best.map_or(hi.clone(), |b: Rational| b.max(hi)));
            count += 1;
            if count == dim {
                break;
            }
        }
    }
    match (best, count) {
        (Some(b), c) if c == dim => b * Rational::new(BigInt::from(9), BigInt::from(8)),
        _ => Rational::one(),
    }
}

/// Certified successive minima of the parametric body at `Q`.
pub fn successive_minima(
    kind: BodyKind,
    n: usize,
    q: &Rational,
    zeta: &CFNumber,
    rel_tol: &Rational,
) -> Result<MinimaResult> {
    if n < 1 || n + 1 > MAX_DIM || !(*q > Rational::one()) {
        return Err(Error::InvalidInput(
            "need 1 <= n <= 4 and Q > 1 for minima bodies".into(),
        ));
    }
    let dim = n + 1;
    let two = Rational::new(BigInt::from(2), BigInt::one());

    let bracket = |bits: u64| -> Result<Interval> {
        match zeta.enclose_bits(bits) {
            Ok(b) => Ok(b),
            Err(Error::Budget { best: Some(b), .. }) => Ok(b),
            Err(e) => Err(e),
        }
    };

    // exact rational data for seeding and for the kept vectors
    let zhi = bracket(192)?;
    let mut zpows = vec![Interval::point(Rational::one())];
    for j in 1..=n {
        zpows.push(zhi.pow(j as u32));
    }
    let root_ivl = nth_root_enclosure(q, n as u32, 192).to_interval();
    let invroot_ivl = nth_root_enclosure(&q.recip(), n as u32, 192).to_interval();
    let mut threshold = seed_threshold(kind, n, q, &zpows, &root_ivl, &invroot_ivl);

    let mut k1: u32 = 56;
    let mut partial = false;
    for _round in 0..200 {
        let z1 = bracket(k1 as u64 + 16)?;
        let sc = match build_scaled(n, q, &z1, k1) {
            Some(sc) => sc,
            None => {
                return Err(Error::Budget {
                    what: "scaled enumeration out of i128 range".into(),
                    best: None,
                })
            }
        };
        let t_scaled = match crate::dyadic::ceil_scaled(&threshold, k1)
            .to_i128()
            .filter(|t| *t < (1i128 << (k1 + 26)))
        {
            Some(t) => t,
            None => {
                return Err(Error::Budget {
                    what: "threshold exceeds the enumeration budget".into(),
                    best: None,
                })
            }
        };
        let shortlist = match kind {
            BodyKind::Simultaneous => shortlist_simultaneous(n, &sc, t_scaled),
            BodyKind::Dual => shortlist_dual(n, &sc, t_scaled),
        };
        let mut shortlist = match shortlist {
            Some(s) => s,
            None => {
                return Err(Error::Budget {
                    what: "candidate box exceeds the coordinate budget".into(),
                    best: None,
                })
            }
        };
        if shortlist.is_empty() {
            threshold = threshold * &two;
            continue;
        }
        shortlist.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.v.cmp(&b.v)));
        let mut tracker = RankTracker::new(dim);
        let mut kept: Vec<Cand> = vec![];
        for c in &shortlist {
            if tracker.try_insert(&c.v[..dim]) {
                kept.push(*c);
                if kept.len() == dim {
                    break;
                }
            }
        }
        if kept.len() < dim {
            threshold = threshold * &two;
            continue;
        }
        // exact norms of the kept vectors give the upper endpoints
        let kept_norms: Vec<Interval> = kept
            .iter()
            .map(|c| precise_norm(kind, n, q, &zpows, &root_ivl, &invroot_ivl, &c.v[..dim]))
            .collect();
        let scale = BigInt::one() << k1;
        let mut lambdas = vec![];
        let mut running_hi = Rational::zero();
        for (c, norm) in kept.iter().zip(&kept_norms) {
            let lo = Rational::new(c.lo.max(0).into(), scale.clone());
            running_hi = running_hi.max(norm.hi().clone());
            let hi = running_hi.clone().max(lo.clone());
            lambdas.push(Interval::new(lo, hi));
        }
        // the enumeration must have covered everything up to the top minimum
        if *lambdas[dim - 1].hi() > threshold {
            threshold = lambdas[dim - 1].hi().clone() * Rational::new(9.into(), 8.into());
            continue;
        }
        let tight = lambdas.iter().all(|l| {
            l.lo().is_positive() && l.width() <= rel_tol * l.lo()
        });
        if tight || partial {
            return Ok(MinimaResult {
                kind,
                n,
                lambdas,
                witnesses: kept
                    .iter()
                    .map(|c| c.v[..dim].iter().map(|&x| BigInt::from(x)).collect())
                    .collect(),
                witness_norms: kept_norms,
                partial,
            });
        }
        if k1 >= 88 {
            partial = true;
        } else {
            k1 += 16;
        }
    }
    Err(Error::Budget {
        what: "successive minima refinement did not converge".into(),
        best: None,
    })
}
