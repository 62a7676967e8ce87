//! Parametric geometry of numbers: successive minima of the simultaneous
//! and dual bodies, the logarithmic trajectories psi / psi*, and the
//! Mahler-duality residuals between them.

mod enumerate;
mod lll;

pub use enumerate::{successive_minima, BodyKind, MinimaResult};
pub use lll::reduce as lll_reduce;

use crate::cf::CFNumber;
use crate::error::{Error, Result};
use crate::interval::{Interval, Rational};
use crate::logs::log_base_interval;
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::One;

/// A parametric body specification at one parameter value `Q`.
pub struct MinimaBody<'a> {
    pub kind: BodyKind,
    pub n: usize,
    pub q: Rational,
    pub zeta: &'a CFNumber,
}

impl<'a> MinimaBody<'a> {
    pub fn new(kind: BodyKind, n: usize, q: Rational, zeta: &'a CFNumber) -> Result<Self> {
        if !(q > Rational::one()) || n < 1 {
            return Err(Error::InvalidInput("need Q > 1 and n >= 1".into()));
        }
        Ok(MinimaBody { kind, n, q, zeta })
    }

    pub fn successive_minima(&self, rel_tol: &Rational) -> Result<MinimaResult> {
        successive_minima(self.kind, self.n, &self.q, self.zeta, rel_tol)
    }
}

impl MinimaResult {
    /// Product of all minima as a certified interval.
    pub fn minima_product(&self) -> Interval {
        let mut acc = Interval::point(Rational::one());
        for l in &self.lambdas {
            acc = &acc * l;
        }
        acc
    }

    /// Dual-side witnesses reinterpreted as integer polynomials.
    pub fn witness_polys(&self) -> Vec<IntPoly> {
        assert_eq!(self.kind, BodyKind::Dual);
        self.witnesses
            .iter()
            .map(|c| IntPoly::new(c.clone()))
            .collect()
    }
}

/// Default relative tolerance for minima enclosures.
pub fn default_rel_tol() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(1 << 10))
}

/// Padded enclosure of `psi_{n,j}(Q) = log_Q lambda_j` (j is 1-based).
pub fn psi(n: usize, j: usize, q: &Rational, zeta: &CFNumber) -> Result<(f64, f64)> {
    psi_of_kind(BodyKind::Simultaneous, n, j, q, zeta)
}

/// Padded enclosure of the dual trajectory `psi*_{n,j}(Q)`.
pub fn psi_star(n: usize, j: usize, q: &Rational, zeta: &CFNumber) -> Result<(f64, f64)> {
    psi_of_kind(BodyKind::Dual, n, j, q, zeta)
}

fn psi_of_kind(
    kind: BodyKind,
    n: usize,
    j: usize,
    q: &Rational,
    zeta: &CFNumber,
) -> Result<(f64, f64)> {
    if j == 0 || j > n + 1 {
        return Err(Error::InvalidInput(format!(
            "psi index j = {j} out of range 1..={}",
            n + 1
        )));
    }
    let res = successive_minima(kind, n, q, zeta, &default_rel_tol())?;
    log_base_interval(&res.lambdas[j - 1], q).ok_or_else(|| Error::InvalidInput(
        "lambda enclosure touches zero; cannot take logs".into(),
    ))
}

/// Mahler-duality residual `psi_{n,j}(Q) + psi*_{n,n+2-j}(Q)` as a padded
/// enclosure.
pub fn mahler_gap(n: usize, j: usize, q: &Rational, zeta: &CFNumber) -> Result<(f64, f64)> {
    if j == 0 || j > n + 1 {
        return Err(Error::InvalidInput(format!(
            "mahler gap index j = {j} out of range 1..={}",
            n + 1
        )));
    }
    let a = psi(n, j, q, zeta)?;
    let b = psi_star(n, n + 2 - j, q, zeta)?;
    Ok((a.0 + b.0, a.1 + b.1))
}

/// One row of a trajectory run: everything the CSV layer needs.
#[derive(Clone, Debug)]
pub struct TrajectoryRow {
    pub q: Rational,
    pub j: usize,
    pub psi: (f64, f64),
    pub psi_star: (f64, f64),
    pub gap: (f64, f64),
}

/// psi and psi* across a grid of `Q` values, with duality residuals.
pub fn trajectory(
    n: usize,
    j: usize,
    grid: &[Rational],
    zeta: &CFNumber,
) -> Result<Vec<TrajectoryRow>> {
    let mut rows = vec![];
    for q in grid {
        let p = psi(n, j, q, zeta)?;
        let ps = psi_star(n, n + 2 - j, q, zeta)?;
        rows.push(TrajectoryRow {
            q: q.clone(),
            j,
            psi: p,
            psi_star: ps,
            gap: (p.0 + ps.0, p.1 + ps.1),
        });
    }
    Ok(rows)
}

/// Liminf/limsup summaries of a psi trajectory over a grid.
#[derive(Clone, Debug)]
pub struct TrajectoryEstimate {
    pub symbol: String,
    /// Enclosure of the smallest grid value (liminf-flavored estimate).
    pub liminf_estimate: (f64, f64),
    /// Enclosure of the largest grid value (limsup-flavored estimate).
    pub limsup_estimate: (f64, f64),
    pub series: Vec<(Rational, (f64, f64))>,
}

/// Grid summary of the psi (or psi*) trajectory for one index `j`.
pub fn exponent_from_trajectory(
    n: usize,
    j: usize,
    grid: &[Rational],
    zeta: &CFNumber,
    kind: BodyKind,
) -> Result<TrajectoryEstimate> {
    if grid.len() < 4 {
        return Err(Error::InvalidInput(
            "trajectory grid needs at least 4 increasing points".into(),
        ));
    }
    for w in grid.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidInput("trajectory grid must increase".into()));
        }
    }
    let mut series = vec![];
    for q in grid {
        let v = psi_of_kind(kind, n, j, q, zeta)?;
        series.push((q.clone(), v));
    }
    let liminf = series
        .iter()
        .map(|(_, v)| *v)
        .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .unwrap();
    let limsup = series
        .iter()
        .map(|(_, v)| *v)
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    let tag = match kind {
        BodyKind::Simultaneous => "psi",
        BodyKind::Dual => "psi*",
    };
    Ok(TrajectoryEstimate {
        symbol: format!("{tag}_{{{n},{j}}}"),
        liminf_estimate: liminf,
        limsup_estimate: limsup,
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{rat, rat_int};

    fn half() -> CFNumber {
        CFNumber::from_rational(&rat(1, 2)).unwrap()
    }

    #[test]
    fn simultaneous_half_q10() {
        // lambda_1 = 1/5 with witness (2,1); lambda_2 = 5 with witness (1,0)
        let z = half();
        let res = successive_minima(
            BodyKind::Simultaneous,
            1,
            &rat_int(10),
            &z,
            &rat(1, 1000),
        )
        .unwrap();
        assert!(res.lambdas[0].contains(&rat(1, 5)));
        assert!(res.lambdas[1].contains(&rat(5, 1)));
        assert!(res.lambdas[0].width() <= rat(1, 1000));
        let w0 = &res.witnesses[0];
        assert_eq!((w0[0].clone(), w0[1].clone()), (BigInt::from(2), BigInt::one()));
        // product check: lambda_1 * lambda_2 = 1 within the Minkowski range
        let prod = res.minima_product();
        assert!(prod.contains(&rat_int(1)));
        assert!(*prod.lo() >= rat(1, 2) - rat(1, 100));
        assert!(*prod.hi() <= rat_int(1) + rat(1, 100));
    }

    #[test]
    fn golden_ratio_minima_at_convergent_q() {
        // Q = q_6 = 13 for the golden ratio; the top pair of minima comes
        // from the two most recent convergent vectors
        let phi = CFNumber::golden_ratio();
        let (p6, q6) = phi.convergent_pair(6).unwrap();
        assert_eq!(q6, BigInt::from(13));
        let res = successive_minima(
            BodyKind::Simultaneous,
            1,
            &Rational::from(q6.clone()),
            &phi,
            &rat(1, 1000),
        )
        .unwrap();
        // lambda_2 is attained by the convergent vector (q_6, p_6) at norm 1
        assert!(res.lambdas[1].contains(&rat_int(1)));
        let w1 = &res.witnesses[1];
        assert_eq!((w1[0].clone(), w1[1].clone()), (q6, p6));
        // lambda_1 is the previous convergent (q_5, p_5) = (8, 13)? p/q: 13/8
        let (p5, q5) = phi.convergent_pair(5).unwrap();
        let w0 = &res.witnesses[0];
        assert_eq!((w0[0].clone(), w0[1].clone()), (q5, p5));
        assert!(*res.lambdas[0].hi() < rat_int(1));
    }

    #[test]
    fn psi_examples_for_half() {
        let z = half();
        let (lo, hi) = psi(1, 1, &rat_int(10), &z).unwrap();
        // log10(1/5) = -0.69897
        assert!(lo <= -0.698 && -0.6995 <= hi, "({lo}, {hi})");
        let (lo2, hi2) = psi(1, 2, &rat_int(10), &z).unwrap();
        assert!(lo2 <= 0.699 && 0.698 <= hi2, "({lo2}, {hi2})");
        // Minkowski range with finite-Q slack
        let eps = 2f64.ln() / 10f64.ln();
        assert!(lo >= -1.0 - eps && hi2 <= 1.0 + eps);
    }

    #[test]
    fn dual_half_q10_and_duality() {
        let z = half();
        let res =
            successive_minima(BodyKind::Dual, 1, &rat_int(10), &z, &rat(1, 1000)).unwrap();
        // best poly is 2T - 1 with H = 2, |P(1/2)| = 0: norm = 2/10 = 1/5
        assert!(res.lambdas[0].contains(&rat(1, 5)));
        // gap psi_{1,1} + psi*_{1,2} = 0 exactly here
        let (glo, ghi) = mahler_gap(1, 1, &rat_int(10), &z).unwrap();
        assert!(glo <= 0.0 && 0.0 <= ghi);
        assert!(ghi - glo < 0.01);
    }

    #[test]
    fn psi_index_out_of_range() {
        let z = half();
        assert!(psi(1, 3, &rat_int(10), &z).is_err());
        assert!(psi(1, 0, &rat_int(10), &z).is_err());
    }

    #[test]
    fn minima_are_monotone_and_independent() {
        let z = CFNumber::cbrt2();
        let res = successive_minima(
            BodyKind::Simultaneous,
            2,
            &rat_int(100),
            &z,
            &rat(1, 256),
        )
        .unwrap();
        for w in res.lambdas.windows(2) {
            assert!(w[0].lo() <= w[1].lo());
            assert!(w[0].hi() <= w[1].hi());
        }
        // exact independence check of the witnesses
        let mut tracker = super::enumerate::RankTracker::new(3);
        for w in &res.witnesses {
            assert!(tracker.try_insert_big(w));
        }
    }

    #[test]
    fn dual_witnesses_evaluate_consistently() {
        let z = CFNumber::cbrt2();
        let res =
            successive_minima(BodyKind::Dual, 2, &rat_int(100), &z, &rat(1, 256)).unwrap();
        for (poly, norm) in res.witness_polys().iter().zip(&res.witness_norms) {
            let val = crate::cf::eval_poly(poly, &z, &rat(1, 4096), &rat(1, 1 << 30))
                .unwrap()
                .abs();
            // the certified |P(zeta)| interval must be consistent with the
            // value component of the recorded norm: Q|P| <= norm_hi
            let scaled = val.scale(&rat_int(100));
            assert!(scaled.lo() <= norm.hi());
        }
    }

    #[test]
    fn trajectory_estimate_runs() {
        let z = CFNumber::golden_ratio();
        let grid: Vec<Rational> = [10, 40, 160, 640].iter().map(|&q| rat_int(q)).collect();
        let est = exponent_from_trajectory(1, 1, &grid, &z, BodyKind::Simultaneous).unwrap();
        assert_eq!(est.series.len(), 4);
        // badly approximable: psi_{1,1} stays in a narrow oscillation band
        assert!(est.liminf_estimate.0 > -0.6);
        assert!(est.limsup_estimate.1 < 0.1);
        let short: Vec<Rational> = [10, 20].iter().map(|&q| rat_int(q)).collect();
        assert!(exponent_from_trajectory(1, 1, &short, &z, BodyKind::Simultaneous).is_err());
    }
}
