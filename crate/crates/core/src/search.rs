//! Geometric constraints on weighted baskets and the recovery-first search
//! for all weighted baskets meeting them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::basket::{Basket, OrbifoldPoint, WeightedBasket};
use crate::canonical::{canonical_chain, closure_with_budget};
use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use crate::recovery::{recover, tails_within};
use crate::rr::{gamma, kwmt2_sum, plurigenera, volume, PlurigenusSequence};

/// Largest denominator compatible with `Σ (r - 1/r) <= 24`.
pub const KAWAMATA_MAX_R: u32 = 24;

/// Inclusive bounds on one `P_-m`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub struct Bound {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Bound {
    pub fn exactly(v: i64) -> Self {
        Self { lo: Some(v), hi: Some(v) }
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo.is_none_or(|lo| v >= lo) && self.hi.is_none_or(|hi| v <= hi)
    }

    pub fn pinned(&self) -> Option<i64> {
        match (self.lo, self.hi) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    fn meet(self, other: Bound) -> Bound {
        let lo = match (self.lo, other.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Bound { lo, hi }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lo, self.hi) {
            (Some(a), Some(b)) if a == b => write!(f, "= {a}"),
            (Some(a), Some(b)) => write!(f, "in [{a}, {b}]"),
            (Some(a), None) => write!(f, ">= {a}"),
            (None, Some(b)) => write!(f, "<= {b}"),
            (None, None) => write!(f, "free"),
        }
    }
}

/// The constraints a geometric weighted basket must satisfy, plus search caps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstraintSet {
    pub p1: u32,
    /// Bounds on `P_-m` for `m >= 2`.
    pub bounds: BTreeMap<u32, Bound>,
    /// `γ > 0` when set, otherwise `Σ (r - 1/r) <= 24`.
    pub fano_strict: bool,
    pub require_volume_positive: bool,
    pub require_superadditive: bool,
    /// Pins `σ_5` of `B^(0)`.
    pub sigma5: Option<u32>,
    /// Superadditivity is checked for `m + n <= horizon`.
    pub horizon: u32,
    pub max_points: usize,
    pub max_r: u32,
    pub max_nodes: usize,
}

impl ConstraintSet {
    /// Q-Fano constraints: `γ > 0`, `-K^3 > 0`, superadditivity to horizon 12.
    pub fn qfano(p1: u32) -> Self {
        Self {
            p1,
            bounds: BTreeMap::new(),
            fano_strict: true,
            require_volume_positive: true,
            require_superadditive: true,
            sigma5: None,
            horizon: 12,
            max_points: 24,
            max_r: KAWAMATA_MAX_R,
            max_nodes: 5_000_000,
        }
    }

    /// Weak Q-Fano: `γ > 0` relaxed to `Σ (r - 1/r) <= 24`.
    pub fn weak(p1: u32) -> Self {
        Self { fano_strict: false, ..Self::qfano(p1) }
    }

    pub fn bound(mut self, m: u32, b: Bound) -> Self {
        assert!(m >= 2, "P_-1 is fixed by p1");
        let cur = self.bounds.get(&m).copied().unwrap_or_default();
        self.bounds.insert(m, cur.meet(b));
        self
    }

    pub fn pin(self, m: u32, v: i64) -> Self {
        self.bound(m, Bound::exactly(v))
    }

    pub fn at_most(self, m: u32, v: i64) -> Self {
        self.bound(m, Bound { lo: None, hi: Some(v) })
    }

    pub fn at_least(self, m: u32, v: i64) -> Self {
        self.bound(m, Bound { lo: Some(v), hi: None })
    }

    pub fn with_sigma5(mut self, s: u32) -> Self {
        self.sigma5 = Some(s);
        self
    }

    pub fn with_horizon(mut self, h: u32) -> Self {
        self.horizon = h;
        self
    }

    pub fn without_superadditivity(mut self) -> Self {
        self.require_superadditive = false;
        self
    }

    pub fn without_volume(mut self) -> Self {
        self.require_volume_positive = false;
        self
    }

    /// Bound on `P_-m`, with `P_-1` pinned to `p1`.
    pub fn bound_at(&self, m: u32) -> Bound {
        if m == 1 {
            Bound::exactly(self.p1 as i64)
        } else {
            self.bounds.get(&m).copied().unwrap_or_default()
        }
    }

    /// Length of the plurigenus sequence needed to evaluate every constraint.
    pub fn sequence_len(&self) -> u32 {
        let top = self.bounds.keys().next_back().copied().unwrap_or(1);
        top.max(if self.require_superadditive { self.horizon } else { 1 }).max(4)
    }

    /// Human-readable constraint list for reports.
    pub fn describe(&self) -> Vec<String> {
        let mut out = vec![format!("P_-1 = {}", self.p1)];
        out.extend(self.bounds.iter().map(|(m, b)| format!("P_-{m} {b}")));
        if let Some(s) = self.sigma5 {
            out.push(format!("sigma5 = {s}"));
        }
        out.push(if self.fano_strict { "gamma > 0".into() } else { "sum(r - 1/r) <= 24".into() });
        if self.require_volume_positive {
            out.push("-K^3 > 0".into());
        }
        if self.require_superadditive {
            out.push(format!("P_-(m+n) >= P_-m + P_-n - 1 for m + n <= {}", self.horizon));
        }
        out
    }
}

/// An exact inequality instance showing a weighted basket violates a constraint.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Gamma {
        #[serde(with = "crate::rational::as_string")]
        gamma: Rational,
        strict: bool,
    },
    Volume {
        #[serde(with = "crate::rational::as_string")]
        volume: Rational,
    },
    Plurigenus { m: u32, value: i64, bound: Bound },
    Sigma5 { expected: u32, actual: u32 },
    Superadditivity { m: u32, n: u32, pm: i64, pn: i64, pmn: i64 },
    Integrality { m: u32 },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Gamma { gamma, strict: true } => write!(f, "gamma = {gamma} <= 0"),
            Certificate::Gamma { gamma, strict: false } => {
                write!(f, "sum(r - 1/r) = {} > 24", int(24) - gamma)
            }
            Certificate::Volume { volume } => write!(f, "-K^3 = {volume} <= 0"),
            Certificate::Plurigenus { m, value, bound } => {
                write!(f, "P_-{m} = {value}, required {bound}")
            }
            Certificate::Sigma5 { expected, actual } => {
                write!(f, "sigma5 = {actual}, required {expected}")
            }
            Certificate::Superadditivity { m, n, pm, pn, pmn } => write!(
                f,
                "P_-{} = {pmn} < P_-{m} + P_-{n} - 1 = {}",
                m + n,
                pm + pn - 1
            ),
            Certificate::Integrality { m } => write!(f, "P_-{m} is not an integer"),
        }
    }
}

impl Certificate {
    /// Recomputes the quantities from scratch and confirms the violation.
    pub fn verify(&self, wb: &WeightedBasket) -> bool {
        let seq = |n: u32| plurigenera(wb, n).ok();
        match self {
            Certificate::Gamma { gamma: g, strict } => {
                let actual = gamma(&wb.basket);
                actual == *g && if *strict { actual <= Rational::zero() } else { actual < Rational::zero() }
            }
            Certificate::Volume { volume: v } => {
                let actual = volume(wb);
                actual == *v && actual <= Rational::zero()
            }
            Certificate::Plurigenus { m, value, bound } => {
                seq(*m).and_then(|s| s.get(*m)) == Some(*value) && !bound.contains(*value)
            }
            Certificate::Sigma5 { expected, actual } => {
                canonical_chain(&wb.basket).sigma5() == *actual && actual != expected
            }
            Certificate::Superadditivity { m, n, pm, pn, pmn } => seq(m + n).is_some_and(|s| {
                s.get(*m) == Some(*pm)
                    && s.get(*n) == Some(*pn)
                    && s.get(m + n) == Some(*pmn)
                    && *pm > 0
                    && *pn > 0
                    && *pmn < pm + pn - 1
            }),
            Certificate::Integrality { m } => seq(*m).is_none(),
        }
    }
}

/// Outcome of [`is_geometric_candidate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.certificate.is_none()
    }
}

fn gamma_check(b: &Basket, strict: bool) -> Option<Certificate> {
    let g = gamma(b);
    let fails = if strict { g <= Rational::zero() } else { g < Rational::zero() };
    fails.then_some(Certificate::Gamma { gamma: g, strict })
}

fn sequence_checks(seq: &PlurigenusSequence, cs: &ConstraintSet) -> Option<Certificate> {
    for m in 1..=seq.len() as u32 {
        let bound = cs.bound_at(m);
        let v = seq.get(m).unwrap();
        if !bound.contains(v) {
            return Some(Certificate::Plurigenus { m, value: v, bound });
        }
    }
    None
}

fn superadditivity_check(seq: &PlurigenusSequence, horizon: u32) -> Option<Certificate> {
    for total in 2..=horizon {
        for m in 1..=total / 2 {
            let n = total - m;
            let (pm, pn, pmn) = (seq.get(m)?, seq.get(n)?, seq.get(total)?);
            if pm > 0 && pn > 0 && pmn < pm + pn - 1 {
                return Some(Certificate::Superadditivity { m, n, pm, pn, pmn });
            }
        }
    }
    None
}

/// Checks every enabled constraint, naming the first failure in the order
/// Kawamata inequality, volume, plurigenus bounds, `σ_5`, superadditivity.
pub fn is_geometric_candidate(wb: &WeightedBasket, cs: &ConstraintSet) -> Verdict {
    let cert = (|| {
        if let Some(c) = gamma_check(&wb.basket, cs.fano_strict) {
            return Some(c);
        }
        let vol = volume(wb);
        if cs.require_volume_positive && vol <= Rational::zero() {
            return Some(Certificate::Volume { volume: vol });
        }
        if wb.p1 != cs.p1 {
            return Some(Certificate::Plurigenus { m: 1, value: wb.p1 as i64, bound: cs.bound_at(1) });
        }
        let seq = match plurigenera(wb, cs.sequence_len()) {
            Ok(s) => s,
            Err(Error::IntegralityFault { m, .. }) => return Some(Certificate::Integrality { m }),
            Err(_) => unreachable!("plurigenera only faults on integrality"),
        };
        let bounded = PlurigenusSequence {
            values: seq.values[..cs.bounds.keys().next_back().copied().unwrap_or(1).max(1) as usize].to_vec(),
            source: seq.source,
        };
        if let Some(c) = sequence_checks(&bounded, cs) {
            return Some(c);
        }
        if let Some(s) = cs.sigma5 {
            let actual = canonical_chain(&wb.basket).sigma5();
            if actual != s {
                return Some(Certificate::Sigma5 { expected: s, actual });
            }
        }
        if cs.require_superadditive {
            return superadditivity_check(&seq, cs.horizon);
        }
        None
    })();
    Verdict { certificate: cert }
}

/// An eliminated basket and the reason.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Elimination {
    pub basket: WeightedBasket,
    pub certificate: Certificate,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SearchOutcome {
    pub survivors: Vec<WeightedBasket>,
    pub eliminated: Vec<Elimination>,
    /// Candidate `B^(0)` baskets whose packing closures were explored.
    pub seeds: usize,
    /// Distinct baskets visited across all closures.
    pub nodes: usize,
}

/// All weighted baskets meeting `cs`, canonically ordered.
pub fn enumerate_geometric(cs: &ConstraintSet) -> Result<Vec<WeightedBasket>> {
    Ok(search(cs)?.survivors)
}

fn sigma_range(cs: &ConstraintSet) -> (i64, i64) {
    // σ(B) = 10 - 5 P_-1 + P_-2; every point costs r - 1/r >= 3/2.
    let base = 10 - 5 * cs.p1 as i64;
    let b2 = cs.bound_at(2);
    let lo = b2.lo.map_or(0, |v| base + v).max(0);
    let hi = b2.hi.map_or(16, |v| base + v).min(16);
    (lo, hi)
}

fn seq_prefix(cs: &ConstraintSet) -> Vec<i64> {
    let mut v = vec![cs.p1 as i64];
    for m in 2.. {
        match cs.bound_at(m).pinned() {
            Some(x) => v.push(x),
            None => break,
        }
    }
    v
}

/// Candidate `B^(0)`: baskets of `(1, r)` points matching the `P_-1..P_-4`
/// bounds (which `B^(0)` shares with every basket it dominates).
fn seeds(cs: &ConstraintSet) -> Result<Vec<Basket>> {
    let (lo, hi) = sigma_range(cs);
    if hi >= 0 && hi as usize > cs.max_points && lo as usize > cs.max_points {
        return Err(Error::SearchBudgetExceeded { what: "points per basket", limit: cs.max_points });
    }
    let budget = (int(24), cs.fano_strict);
    let prefix = seq_prefix(cs);
    let mut out = BTreeSet::new();
    if prefix.len() >= 4 {
        let p = PlurigenusSequence::from_constraints(prefix);
        let sigma5_cap = hi.max(0) as u32;
        for t in tails_within(&p, sigma5_cap, Some(budget)) {
            if let Ok(d) = recover(&t) {
                if let Some(b0) = d.b0() {
                    out.insert(b0);
                }
            }
        }
    } else {
        for sigma in lo..=hi {
            let mut cur = Vec::new();
            one_over_r_multisets(sigma as u32, 2, &int(0), &budget, &mut cur, &mut out);
        }
    }
    let mut kept = Vec::new();
    for b0 in out {
        let wb = WeightedBasket::new(b0, cs.p1);
        let Ok(seq) = plurigenera(&wb, 4) else { continue };
        if (1..=4).all(|m| cs.bound_at(m).contains(seq.get(m).unwrap()))
            && cs.sigma5.is_none_or(|s| wb.basket.iter().filter(|p| p.r() >= 5).count() as u32 == s)
        {
            if wb.basket.len() > cs.max_points {
                return Err(Error::SearchBudgetExceeded { what: "points per basket", limit: cs.max_points });
            }
            if wb.basket.r_max() > cs.max_r {
                return Err(Error::SearchBudgetExceeded { what: "denominator", limit: cs.max_r as usize });
            }
            kept.push(wb.basket);
        }
    }
    Ok(kept)
}

fn within(cost: &Rational, budget: &(Rational, bool)) -> bool {
    if budget.1 {
        *cost < budget.0
    } else {
        *cost <= budget.0
    }
}

fn one_over_r_multisets(
    left: u32,
    min_r: u32,
    spent: &Rational,
    budget: &(Rational, bool),
    cur: &mut Vec<OrbifoldPoint>,
    out: &mut BTreeSet<Basket>,
) {
    if left == 0 {
        out.insert(Basket::new(cur.iter().copied()));
        return;
    }
    for r in min_r..=KAWAMATA_MAX_R {
        let c = int(r as i64) - rat(1, r as i64);
        // the remaining points cost at least as much as this one
        let next = spent + &c * int(left as i64);
        if !within(&next, budget) {
            break;
        }
        cur.push(OrbifoldPoint::new(1, r).unwrap());
        one_over_r_multisets(left - 1, r, &(spent + &c), budget, cur, out);
        cur.pop();
    }
}

/// Full search with eliminations recorded.
pub fn search(cs: &ConstraintSet) -> Result<SearchOutcome> {
    let seeds = seeds(cs)?;
    let strict = cs.fano_strict;
    let keep = move |b: &Basket| gamma_check(b, strict).is_none();
    type Part = Result<(Vec<WeightedBasket>, Vec<Elimination>, usize)>;
    let parts: Vec<Part> = seeds
        .par_iter()
        .map(|b0| {
            let closure = closure_with_budget(b0, &keep, cs.max_nodes)?;
            let mut surv = Vec::new();
            let mut elim = Vec::new();
            for b in &closure.kept {
                let wb = WeightedBasket::new(b.clone(), cs.p1);
                match is_geometric_candidate(&wb, cs).certificate {
                    None => surv.push(wb),
                    Some(certificate) => elim.push(Elimination { basket: wb, certificate }),
                }
            }
            for b in &closure.pruned {
                let certificate = gamma_check(b, strict).expect("pruned by gamma");
                elim.push(Elimination { basket: WeightedBasket::new(b.clone(), cs.p1), certificate });
            }
            Ok((surv, elim, closure.kept.len()))
        })
        .collect();
    let mut survivors = BTreeSet::new();
    let mut eliminated = BTreeMap::new();
    let mut nodes = 0;
    for part in parts {
        let (s, e, n) = part?;
        survivors.extend(s);
        for el in e {
            eliminated.entry(el.basket.clone()).or_insert(el);
        }
        nodes += n;
    }
    Ok(SearchOutcome {
        survivors: survivors.into_iter().collect(),
        eliminated: eliminated.into_values().collect(),
        seeds: seeds.len(),
        nodes,
    })
}

/// Generate-and-filter over every canonical basket with at most `max_points`
/// points and denominators up to `max_r`. Used as an independent oracle.
pub fn brute_force(cs: &ConstraintSet, max_points: usize, max_r: u32) -> Vec<WeightedBasket> {
    let mut universe = Vec::new();
    for r in 2..=max_r {
        for b in 1..=r / 2 {
            if let Ok(p) = OrbifoldPoint::new(b, r) {
                universe.push(p);
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        universe: &[OrbifoldPoint],
        start: usize,
        left: usize,
        cur: &mut Vec<OrbifoldPoint>,
        cs: &ConstraintSet,
        out: &mut Vec<WeightedBasket>,
    ) {
        let wb = WeightedBasket::new(Basket::new(cur.iter().copied()), cs.p1);
        if kwmt2_sum(&wb.basket) > int(24) {
            return;
        }
        if is_geometric_candidate(&wb, cs).ok() {
            out.push(wb);
        }
        if left == 0 {
            return;
        }
        for i in start..universe.len() {
            cur.push(universe[i]);
            rec(universe, i, left - 1, cur, cs, out);
            cur.pop();
        }
    }
    rec(&universe, 0, max_points, &mut cur, cs, &mut out);
    out.sort();
    out
}
