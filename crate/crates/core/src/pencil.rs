//! Arithmetic criteria for `|-mK|` not being composed with a pencil,
//! and the linear thresholds beyond which that holds for every basket.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::basket::{Basket, OrbifoldPoint, WeightedBasket};
use crate::error::{Error, Result};
use crate::rational::{ceil_i64, ceil_sqrt, int, rat, Rational};
use crate::rr::{l_neg, plurigenera, volume};

pub use crate::rr::f_local;

/// `G(x) = Σ_{j=0}^{l} F(x + jb) - Σ_{j=0}^{l} F(jb)` with `l = m mod r`.
pub fn g_local(b: u32, r: u32, m: u32, x: i64) -> Rational {
    let l = (m % r) as i64;
    let b = b as i64;
    (0..=l).map(|j| f_local(x + j * b, r) - f_local(j * b, r)).sum()
}

/// Minimum of `G` over the piece end points `-jb`, `0 <= j <= l`.
pub fn g_min(b: u32, r: u32, m: u32) -> Rational {
    let l = (m % r) as i64;
    (0..=l)
        .map(|j| g_local(b, r, m, -j * b as i64))
        .min()
        .expect("at least one end point")
}

/// Minimum of `G` over a full period, for checking [`g_min`].
pub fn g_min_brute(b: u32, r: u32, m: u32) -> Rational {
    (0..r as i64).map(|x| g_local(b, r, m, x)).min().unwrap()
}

/// The local double-difference condition at `pt` for `|-mK|`.
pub fn k1_condition(pt: OrbifoldPoint, m: u32) -> bool {
    g_min(pt.b(), pt.r(), m) >= Rational::zero()
}

/// The tabulated sufficient conditions whose residue class contains `m`,
/// numbered 1 to 5, each with its truth value.
pub fn k1_tabulated(pt: OrbifoldPoint, m: u32) -> Vec<(u8, bool)> {
    let (b, r) = (pt.b() as i64, pt.r() as i64);
    let res = (m as i64).rem_euclid(r);
    let is = |k: i64| res == k.rem_euclid(r);
    let q = |x: i64| {
        let xb = x.rem_euclid(r);
        xb * (r - xb)
    };
    let mut out = Vec::new();
    if is(0) || is(1) || is(-1) {
        out.push((1, true));
    }
    if is(-2) {
        out.push((2, b == r / 2));
    }
    if is(2) {
        out.push((3, 3 * b >= r));
    }
    if is(3) {
        out.push((4, 4 * b >= r));
    }
    if is(4) {
        out.push((5, q(b) >= q(4 * b) && q(b) + q(2 * b) >= q(3 * b) + q(4 * b)));
    }
    out
}

/// Which local test admits a point at `m`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum LocalCriterion {
    /// One of the five tabulated residue conditions.
    Tabulated,
    /// `G >= 0` at every end point, which the tabulated conditions specialize.
    EndPoint,
}

impl LocalCriterion {
    pub fn admits(self, pt: OrbifoldPoint, m: u32) -> bool {
        match self {
            LocalCriterion::Tabulated => k1_tabulated(pt, m).iter().any(|&(_, ok)| ok),
            LocalCriterion::EndPoint => k1_condition(pt, m),
        }
    }
}

/// Whether every point of the basket satisfies [`k1_condition`] at `m`.
pub fn k1_holds(b: &Basket, m: u32) -> bool {
    b.iter().all(|p| k1_condition(p, m))
}

/// `(n0, l0)` for a sequence `seq[k-1] = P_-km`:
/// `n0 = min{n : P_-nm >= 2}` and `l0 = min{l >= n0 : P_-lm > floor(l/n0) + 1}`.
pub fn k2_thresholds(seq: &[i64]) -> Result<(u32, u32)> {
    let n0 = k2_n0(seq).ok_or(Error::NotFound { what: "n0", horizon: seq.len() })?;
    (n0..=seq.len() as u32)
        .find(|&l| seq[l as usize - 1] > (l / n0) as i64 + 1)
        .map(|l0| (n0, l0))
        .ok_or(Error::NotFound { what: "l0", horizon: seq.len() })
}

pub fn k2_n0(seq: &[i64]) -> Option<u32> {
    seq.iter().position(|&p| p >= 2).map(|i| i as u32 + 1)
}

/// Upper bound for `δ_1` obtained at `m`: `m` itself when the local
/// conditions hold and `P_-m >= 3`, otherwise `l0·m` from the multiples
/// `P_-m, ..., P_-km` with `km <= reach`. `None` when `m` is unusable.
pub fn delta1_via(wb: &WeightedBasket, m: u32, reach: u32, crit: LocalCriterion) -> Result<Option<u32>> {
    if !wb.basket.iter().all(|p| crit.admits(p, m)) {
        return Ok(None);
    }
    let seq = plurigenera(wb, reach.max(m))?;
    let pm = seq.get(m).unwrap();
    if pm <= 0 {
        return Ok(None);
    }
    if pm >= 3 {
        return Ok(Some(m));
    }
    let multiples: Vec<i64> = (1..=reach / m).map(|k| seq.get(k * m).unwrap()).collect();
    Ok(k2_thresholds(&multiples).ok().map(|(_, l0)| l0 * m))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Verdict {
    NotPencil,
    PossiblyPencil,
}

/// `P_-m > r_X (-K^3) m + 1`, with both sides kept for re-checking.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NonPencilWitness {
    pub pm: i64,
    #[serde(with = "crate::rational::as_string")]
    pub rhs: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PencilVerdict {
    pub m: u32,
    pub verdict: Verdict,
    pub witness: Option<NonPencilWitness>,
}

impl PencilVerdict {
    /// Recomputes `P_-m` and `r_X (-K^3) m + 1` and checks the witness.
    pub fn verify(&self, wb: &WeightedBasket) -> bool {
        let (pm, rhs) = non_pencil_sides(wb, self.m);
        match (&self.witness, self.verdict) {
            (Some(w), Verdict::NotPencil) => w.pm == pm && w.rhs == rhs && int(pm) > rhs,
            (None, Verdict::PossiblyPencil) => int(pm) <= rhs,
            _ => false,
        }
    }
}

fn non_pencil_sides(wb: &WeightedBasket, m: u32) -> (i64, Rational) {
    let pm = plurigenera(wb, m).ok().and_then(|s| s.get(m)).unwrap_or(i64::MIN);
    let rx = int(wb.basket.gorenstein_index() as i64);
    (pm, rx * volume(wb) * int(m as i64) + Rational::one())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NonPencilReport {
    pub verdicts: Vec<PencilVerdict>,
    pub minimal: Option<u32>,
}

/// Per-m verdicts of the non-pencil inequality for `1 <= m <= horizon`.
pub fn non_pencil_threshold(wb: &WeightedBasket, horizon: u32) -> Result<NonPencilReport> {
    let vol = volume(wb);
    if vol <= Rational::zero() {
        return Err(Error::Precondition(format!("-K^3 = {vol} is not positive")));
    }
    let seq = plurigenera(wb, horizon)?;
    let slope = int(wb.basket.gorenstein_index() as i64) * vol;
    let verdicts: Vec<PencilVerdict> = (1..=horizon)
        .map(|m| {
            let pm = seq.get(m).unwrap();
            let rhs = &slope * int(m as i64) + Rational::one();
            if int(pm) > rhs {
                PencilVerdict { m, verdict: Verdict::NotPencil, witness: Some(NonPencilWitness { pm, rhs }) }
            } else {
                PencilVerdict { m, verdict: Verdict::PossiblyPencil, witness: None }
            }
        })
        .collect();
    let minimal = verdicts.iter().find(|v| v.verdict == Verdict::NotPencil).map(|v| v.m);
    Ok(NonPencilReport { verdicts, minimal })
}

fn check_t(t: &Rational) -> Result<()> {
    if *t <= Rational::zero() || *t > int(37) {
        return Err(Error::InvalidArgument(format!("t = {t} outside (0, 37]")));
    }
    Ok(())
}

/// Least integer `m >= max{37, r_max t / 3}` with `m^2 >= 6 r_X + 12 / (t v)`,
/// evaluated for any basket with index `r_X`, `-K^3 >= v` and largest
/// denominator `r_max`.
pub fn thm1_threshold_bounds(rx: u64, vol_lower: &Rational, rmax: u32, t: &Rational) -> Result<u32> {
    check_t(t)?;
    if *vol_lower <= Rational::zero() {
        return Err(Error::Precondition("volume bound must be positive".into()));
    }
    let linear = ceil_i64(&(int(rmax as i64) * t / int(3)));
    let radicand = int(6 * rx as i64) + int(12) / (t * vol_lower);
    Ok(37.max(linear).max(ceil_sqrt(&radicand)) as u32)
}

/// [`thm1_threshold_bounds`] at the basket's own `r_X`, `-K^3` and `r_max`.
pub fn thm1_threshold(wb: &WeightedBasket, t: &Rational) -> Result<u32> {
    let vol = volume(wb);
    if vol <= Rational::zero() {
        return Err(Error::Precondition(format!("-K^3 = {vol} is not positive")));
    }
    thm1_threshold_bounds(wb.basket.gorenstein_index(), &vol, wb.basket.r_max(), t)
}

/// `19907 n / 10080 + 295 / 72`, the bound on `l(-n)` for index 840.
pub fn l_bound_840(n: u32) -> Rational {
    rat(19907 * n as i64, 10080) + rat(295, 72)
}

/// For an index-840 basket checks `P_-m >= 840 (-K^3) m + 2` for
/// `71 <= m <= horizon` and `l(-n) <= 19907 n / 10080 + 295 / 72` for `1 <= n <= horizon`.
pub fn thm2_check_840(wb: &WeightedBasket, horizon: u32) -> Result<bool> {
    if wb.basket.gorenstein_index() != 840 {
        return Err(Error::Precondition(format!(
            "Gorenstein index {} is not 840",
            wb.basket.gorenstein_index()
        )));
    }
    let seq = plurigenera(wb, horizon)?;
    let slope = int(840) * volume(wb);
    let plurigenera_ok = (71..=horizon).all(|m| int(seq.get(m).unwrap()) >= &slope * int(m as i64) + int(2));
    let l_ok = (1..=horizon).all(|n| l_neg(&wb.basket, n) <= l_bound_840(n));
    Ok(plurigenera_ok && l_ok)
}

/// `Σ_{j=1}^n F(jb) <= (r^2 - 1)/(12 r) · (n + r/3)`.
pub fn l_upper_bound_general(b: u32, r: u32, n: u32) -> bool {
    let lhs: Rational = (1..=n as i64).map(|j| f_local(j * b as i64, r)).sum();
    let r_ = r as i64;
    lhs <= rat(r_ * r_ - 1, 12 * r_) * (int(n as i64) + rat(r_, 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(b: u32, r: u32) -> OrbifoldPoint {
        OrbifoldPoint::new(b, r).unwrap()
    }

    #[test]
    fn f_values() {
        assert_eq!(f_local(0, 7), int(0));
        assert_eq!(f_local(1, 2), rat(1, 4));
        assert_eq!(f_local(7, 5), f_local(2, 5));
        assert_eq!(f_local(2, 5), rat(3, 5));
    }

    #[test]
    fn g_min_values() {
        for (b, r) in [(1, 5), (2, 5), (3, 7), (1, 9)] {
            for m in [r, r + 1, 2 * r - 1, 3 * r] {
                assert_eq!(g_min(b, r, m), int(0), "({b},{r}) m={m}");
            }
        }
        assert_eq!(g_min(1, 5, 7), rat(-1, 5));
        // G(0) = 0 is always an end point, so the positive value is G(-b)
        assert_eq!(g_local(2, 5, 2, -2), rat(1, 5));
        assert_eq!(g_min(2, 5, 2), int(0));
    }

    #[test]
    fn k1_examples() {
        assert!(k1_condition(pt(1, 3), 5));
        assert!(!k1_condition(pt(1, 5), 7));
        assert!(k1_condition(pt(2, 5), 3));
    }

    #[test]
    fn k2_examples() {
        assert_eq!(k2_thresholds(&[1, 2, 2, 5]).unwrap(), (2, 4));
        assert_eq!(k2_thresholds(&[2, 3, 4, 6]).unwrap(), (1, 4));
        assert_eq!(k2_n0(&[1, 1, 1, 1, 1, 2, 2, 2]), Some(6));
        assert_eq!(
            k2_thresholds(&[1, 1, 1, 1, 1, 2, 2, 2]),
            Err(Error::NotFound { what: "l0", horizon: 8 })
        );
    }

    #[test]
    fn non_pencil_examples() {
        let wb = WeightedBasket::parse("2x(1,2),(2,5),(3,7),(4,9)", 0).unwrap();
        let rep = non_pencil_threshold(&wb, 61).unwrap();
        let v = &rep.verdicts[60];
        assert_eq!(v.verdict, Verdict::NotPencil);
        assert_eq!(v.witness.as_ref().unwrap().pm, 5294);
        assert_eq!(v.witness.as_ref().unwrap().rhs, int(5247));
        assert!(v.verify(&wb));

        let wb = WeightedBasket::parse("(1,2),(1,3),(3,7),(6,13)", 0).unwrap();
        let rep = non_pencil_threshold(&wb, 57).unwrap();
        assert_eq!(rep.verdicts[56].witness.as_ref().unwrap().rhs, int(3478));
        assert!(rep.verdicts.iter().all(|v| v.verify(&wb)));

        let flat = WeightedBasket::parse("(1,2),(1,3),(1,5)", 2).unwrap();
        assert!(non_pencil_threshold(&flat, 5).is_err());
    }

    #[test]
    fn thm1_examples() {
        let t8 = int(8);
        assert_eq!(thm1_threshold_bounds(660, &rat(1, 330), 24, &t8).unwrap(), 67);
        let no2 = WeightedBasket::parse("5x(1,2),2x(1,3),(2,7),(1,4)", 0).unwrap();
        assert_eq!(thm1_threshold(&no2, &t8).unwrap(), 37);
        assert_eq!(thm1_threshold_bounds(1, &int(1), 24, &int(37)).unwrap(), 296);
        assert!(thm1_threshold(&no2, &int(38)).is_err());
        assert!(thm1_threshold(&no2, &int(0)).is_err());
    }

    #[test]
    fn l_bounds() {
        assert!(l_upper_bound_general(2, 5, 10));
        assert!(l_upper_bound_general(1, 3, 4));
        assert!(l_upper_bound_general(3, 8, 8));
        let b: Basket = "(1,2),(1,3),(2,5),(3,7),(3,8)".parse().unwrap();
        assert!(l_neg(&b, 71) <= l_bound_840(71));
        let wrong = WeightedBasket::parse("(1,2)", 3).unwrap();
        assert!(thm2_check_840(&wrong, 80).is_err());
    }
}
