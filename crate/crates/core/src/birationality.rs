//! Birationality thresholds for `φ_-m` from the inputs `m0, m1, μ0, r_max, ν0`,
//! and replays of the two case trees that bound them for Q-Fano and weak
//! Q-Fano 3-folds.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::basket::{Basket, OrbifoldPoint, WeightedBasket};
use crate::data::PROPOSITION_LIST;
use crate::delta1::{delta1_bound, p1_branch, replay_delta1, Family};
use crate::error::{Error, Result};
use crate::index_bound::{denominator_multisets, lcm, max_index_given_rmax, max_index_where, max_index_report};
use crate::pencil::{non_pencil_threshold, thm1_threshold_bounds, LocalCriterion};
use crate::rational::{floor_i64, int, rat, Rational};
use crate::report::{BranchRecord, Coverage, EliminatedRow, Leaf, ReplayReport, SurvivorRow};
use crate::rr::{plurigenera, volume};
use crate::search::{search, ConstraintSet};

const ROW_HORIZON: u32 = 12;
/// Horizon for the non-pencil inequality on the special baskets.
const NON_PENCIL_HORIZON: u32 = 80;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum Variant {
    I,
    II,
    III,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::I, Variant::II, Variant::III];
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" => Ok(Variant::I),
            "ii" => Ok(Variant::II),
            "iii" => Ok(Variant::III),
            _ => Err(Error::InvalidArgument(format!("unknown variant {s:?}, expected i|ii|iii"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::I => "(i)",
            Variant::II => "(ii)",
            Variant::III => "(iii)",
        })
    }
}

/// Genus of the auxiliary curve `C`, when known.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum GenusCase {
    G0,
    G1,
    GGe2,
    Unknown,
}

impl FromStr for GenusCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g0" => Ok(GenusCase::G0),
            "g1" => Ok(GenusCase::G1),
            "g_ge2" | "g2" => Ok(GenusCase::GGe2),
            "unknown" => Ok(GenusCase::Unknown),
            _ => Err(Error::InvalidArgument(format!("unknown genus case {s:?}"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BirationalityInputs {
    pub m0: u32,
    pub m1: u32,
    #[serde(with = "crate::rational::as_string")]
    pub mu0_upper: Rational,
    /// Set when `mu0_upper` is tighter than `m0`.
    pub mu0_reason: Option<String>,
    pub rmax: Option<u32>,
    pub nu0: Option<u32>,
    pub genus_case: Option<GenusCase>,
}

impl BirationalityInputs {
    /// `μ0 <= m0`, which always holds.
    pub fn new(m0: u32, m1: u32) -> Self {
        Self { m0, m1, mu0_upper: int(m0 as i64), mu0_reason: None, rmax: None, nu0: None, genus_case: None }
    }

    pub fn with_rmax(mut self, rmax: u32) -> Self {
        self.rmax = Some(rmax);
        self
    }

    pub fn with_nu0(mut self, nu0: u32) -> Self {
        self.nu0 = Some(nu0);
        self
    }

    pub fn with_mu0(mut self, mu0: Rational, reason: &str) -> Self {
        self.mu0_upper = mu0;
        self.mu0_reason = Some(reason.to_string());
        self
    }

    pub fn with_genus(mut self, g: GenusCase) -> Self {
        self.genus_case = Some(g);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.m0 == 0 {
            return Err(Error::InvalidArgument("m0 must be at least 1".into()));
        }
        if self.m1 < self.m0 {
            return Err(Error::InvalidArgument(format!("m1 = {} is below m0 = {}", self.m1, self.m0)));
        }
        if self.mu0_upper <= Rational::zero() {
            return Err(Error::InvalidArgument(format!("mu0 bound {} must be positive", self.mu0_upper)));
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        let mut s = format!("m0 = {}, m1 = {}, mu0 <= {}", self.m0, self.m1, self.mu0_upper);
        if let Some(r) = self.rmax {
            s += &format!(", rmax = {r}");
        }
        if let Some(n) = self.nu0 {
            s += &format!(", nu0 = {n}");
        }
        s
    }
}

pub fn a_of_m0(m0: u32) -> u32 {
    if m0 >= 2 {
        6
    } else {
        1
    }
}

/// Best lower bound for `ζ` available in the given genus case.
pub fn zeta_lower_bound(inp: &BirationalityInputs) -> Result<Rational> {
    let span = &inp.mu0_upper + int(inp.m1 as i64);
    let inv_rmax = inp.rmax.map(|r| rat(1, r as i64));
    let nu_rmax = match (inp.nu0, inp.rmax) {
        (Some(n), Some(r)) => Some(rat(1, (n * r) as i64)),
        _ => None,
    };
    let candidates: Vec<Option<Rational>> = match inp.genus_case.unwrap_or(GenusCase::Unknown) {
        GenusCase::G0 => vec![Some(int(2))],
        GenusCase::G1 => vec![Some(Rational::one() / &span), inv_rmax, nu_rmax],
        GenusCase::GGe2 => vec![Some(int(3) / &span), inv_rmax, nu_rmax],
        GenusCase::Unknown => vec![nu_rmax],
    };
    candidates
        .into_iter()
        .flatten()
        .max()
        .ok_or_else(|| Error::InvalidArgument("unknown genus case needs nu0 and rmax".into()))
}

/// The threshold of one variant; `φ_-m` is birational for `m` at least this.
pub fn thm_main_threshold(inp: &BirationalityInputs, variant: Variant) -> Result<u32> {
    inp.validate()?;
    let base = inp.m0 + inp.m1 + a_of_m0(inp.m0);
    let mu0 = &inp.mu0_upper;
    let m1 = int(inp.m1 as i64);
    let need_rmax = || inp.rmax.ok_or_else(|| Error::InvalidArgument(format!("variant {variant} needs rmax")));
    let other = match variant {
        Variant::I => floor_i64(&(int(3) * mu0)) + 3 * inp.m1 as i64,
        Variant::II => {
            let rmax = need_rmax()? as i64;
            floor_i64(&(rat(5, 3) * (mu0 + &m1))).max(floor_i64(mu0) + inp.m1 as i64 + 2 * rmax)
        }
        Variant::III => {
            let rmax = need_rmax()? as i64;
            let nu0 = inp.nu0.ok_or_else(|| Error::InvalidArgument("variant (iii) needs nu0".into()))? as i64;
            floor_i64(mu0) + inp.m1 as i64 + 2 * nu0 * rmax
        }
    };
    Ok(base.max(other as u32))
}

/// The smallest threshold over the variants whose inputs are present.
pub fn best_threshold(inp: &BirationalityInputs) -> Result<(Variant, u32)> {
    inp.validate()?;
    Variant::ALL
        .iter()
        .filter_map(|&v| thm_main_threshold(inp, v).ok().map(|t| (v, t)))
        .min_by_key(|&(v, t)| (t, v))
        .ok_or_else(|| Error::InvalidArgument("no variant applies".into()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Target {
    QFano39,
    Weak97,
}

impl Target {
    pub fn bound(self) -> u32 {
        match self {
            Target::QFano39 => 39,
            Target::Weak97 => 97,
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "birat1" | "qfano39" => Ok(Target::QFano39),
            "birat2" | "weak97" => Ok(Target::Weak97),
            _ => Err(Error::InvalidArgument(format!("unknown target {s:?}, expected birat1|birat2"))),
        }
    }
}

pub fn replay_birationality(target: Target) -> Result<ReplayReport> {
    match target {
        Target::QFano39 => replay_qfano(),
        Target::Weak97 => replay_weak(),
    }
}

struct Tree {
    rep: ReplayReport,
    target: u32,
}

impl Tree {
    fn new(case: &str, target: u32) -> Self {
        Self { rep: ReplayReport::new(case), target }
    }

    fn leaf(&mut self, name: &str, context: &str, inp: &BirationalityInputs, flagged: Vec<String>) -> Result<u32> {
        let (v, t) = best_threshold(inp)?;
        let inputs = if context.is_empty() {
            format!("{}; variant {v}", inp.describe())
        } else {
            format!("{context}; {}; variant {v}", inp.describe())
        };
        let mut flagged = flagged;
        if let Some(r) = &inp.mu0_reason {
            flagged.push(r.clone());
        }
        self.rep.leaves.push(Leaf { name: name.to_string(), inputs, threshold: t, target: self.target, flagged });
        Ok(t)
    }

    fn branch(&mut self, name: &str, cs: &ConstraintSet) -> Result<Vec<WeightedBasket>> {
        let out = search(cs)?;
        self.rep.branches.push(BranchRecord {
            name: name.to_string(),
            constraints: cs.describe(),
            seeds: out.seeds,
            survivors: out.survivors.len(),
            eliminated: out.eliminated.len(),
            outcome: format!("{} baskets", out.survivors.len()),
        });
        self.rep.survivors.extend(out.survivors.iter().map(|wb| SurvivorRow::new(name, wb, ROW_HORIZON)));
        self.rep.eliminated.extend(out.eliminated.iter().map(|e| EliminatedRow::new(name, e)));
        Ok(out.survivors)
    }

    fn note(&mut self, name: &str, outcome: String) {
        self.rep.branches.push(BranchRecord {
            name: name.to_string(),
            constraints: Vec::new(),
            seeds: 0,
            survivors: 0,
            eliminated: 0,
            outcome,
        });
    }

    fn finish(mut self, mut uncovered: Vec<String>, audited: usize) -> ReplayReport {
        let exceeding: Vec<String> =
            self.rep.leaves.iter().filter(|l| !l.ok()).map(|l| format!("{} exceeds with {}", l.name, l.threshold)).collect();
        uncovered.sort();
        uncovered.dedup();
        let worst = self.rep.leaves.iter().map(|l| l.threshold).max().unwrap_or(0);
        let holds = exceeding.is_empty() && uncovered.is_empty();
        self.rep.conclusion = if holds {
            format!(
                "every leaf has threshold <= {} (largest {worst}); phi_-m is birational for m >= {}",
                self.target, self.target
            )
        } else {
            let mut why = exceeding;
            why.extend(uncovered.iter().map(|u| format!("uncovered: {u}")));
            format!("target {} not established: {}", self.target, why.join("; "))
        };
        self.rep.coverage = Some(Coverage { audited, uncovered });
        self.rep.holds = holds;
        self.rep
    }
}

fn p_values(wb: &WeightedBasket, upto: u32) -> Result<Vec<i64>> {
    Ok(plurigenera(wb, upto)?.values)
}

fn first_at_least(seq: &[i64], v: i64) -> Option<u32> {
    seq.iter().position(|&p| p >= v).map(|i| i as u32 + 1)
}

/// Records `P_-m = value` checks; returns a description or an error naming the mismatch.
fn verify_p(wb: &WeightedBasket, expect: &[(u32, i64)]) -> Result<String> {
    let top = expect.iter().map(|e| e.0).max().unwrap_or(1);
    let seq = p_values(wb, top)?;
    let mut parts = Vec::new();
    for &(m, v) in expect {
        let got = seq[m as usize - 1];
        if got != v {
            return Err(Error::Precondition(format!("{{{}}}: P_-{m} = {got}, expected {v}", wb.basket)));
        }
        parts.push(format!("P_-{m} = {v}"));
    }
    Ok(parts.join(", "))
}

/// `m1` replaced by a value that rests on a divisor-class argument.
struct Override {
    basket: &'static str,
    m1: u32,
    p_checks: &'static [(u32, i64)],
    reason: &'static str,
}

const QFANO_OVERRIDES: [Override; 2] = [
    Override {
        basket: "5x(1,2),2x(1,3),(3,11)",
        m1: 9,
        p_checks: &[(1, 0), (8, 2), (9, 2)],
        reason: "|-8K| and |-9K| are composed with different pencils, else -K would be effective",
    },
    Override {
        basket: "4x(1,2),(6,13),(1,5)",
        m1: 7,
        p_checks: &[(1, 0), (2, 1), (3, 0), (4, 1), (5, 1), (6, 2), (7, 2)],
        reason: "|-6K| and |-7K| are composed with different pencils (fixed-part and local-index argument)",
    },
];

fn replay_qfano() -> Result<ReplayReport> {
    let mut tree = Tree::new("birationality, Q-Fano, m >= 39", 39);
    tree.rep.constraints = vec![
        "Q-Fano: gamma > 0, -K^3 > 0, superadditivity".into(),
        "m0 is the least m with P_-m >= 2 unless stated; m1 bounds delta1; mu0 <= m0".into(),
    ];
    let mut uncovered = Vec::new();
    let mut audited = 0;

    // P_-1 >= 2
    let p3 = replay_delta1(Family::P1Ge3)?;
    let p2 = replay_delta1(Family::P1Eq2)?;
    tree.note("delta1 replay, P_-1 >= 3", p3.conclusion.clone());
    tree.note("delta1 replay, P_-1 = 2", p2.conclusion.clone());
    if !p3.holds {
        uncovered.push("P_-1 >= 3: delta1 = 1 not established".into());
    }
    if !p2.holds {
        uncovered.push("P_-1 = 2: delta1 <= 6 not established".into());
    }
    tree.leaf("P_-1 >= 3", "", &BirationalityInputs::new(1, 1), vec![])?;
    tree.leaf("P_-1 = 2", "", &BirationalityInputs::new(1, 6), vec![])?;
    audited += 2;

    // P_-1 = 1, split by n0
    let p1 = replay_delta1(Family::P1Eq1)?;
    tree.note("delta1 replay, P_-1 = 1", p1.conclusion.clone());
    if !p1.holds {
        uncovered.push("P_-1 = 1: the n0 branches did not all close".into());
    }
    for (n0, l) in [(2, 6), (3, 6), (4, 6), (5, 7)] {
        tree.leaf(&format!("P_-1 = 1, n0 = {n0}"), &format!("delta1 <= {l}"), &BirationalityInputs::new(n0, l), vec![])?;
    }
    tree.leaf("P_-1 = 1, n0 = 6, delta1 <= 7", "", &BirationalityInputs::new(6, 7), vec![])?;
    let d8 = tree.branch("P_-1 = 1, n0 = 6, delta1 > 7", &p1_branch(6, 7))?;
    let d8_rmax = d8.iter().map(|wb| wb.basket.r_max()).max().unwrap_or(1);
    tree.leaf(
        "P_-1 = 1, n0 = 6, delta1 = 8",
        &format!("{} baskets, rmax <= {d8_rmax}", d8.len()),
        &BirationalityInputs::new(6, 8).with_rmax(d8_rmax),
        vec![],
    )?;
    let mut cs = ConstraintSet::qfano(1);
    for j in 2..=6 {
        cs = cs.pin(j, 1);
    }
    let late = tree.branch("P_-1 = 1, n0 >= 7", &cs)?;
    let mut late_m0 = 0;
    for wb in &late {
        match first_at_least(&p_values(wb, 8)?, 2) {
            Some(n0) => late_m0 = late_m0.max(n0),
            None => uncovered.push(format!("{{{}}} with P_-1 = 1 has n0 > 8", wb.basket)),
        }
    }
    let late_rmax = late.iter().map(|wb| wb.basket.r_max()).max().unwrap_or(1);
    tree.leaf(
        "P_-1 = 1, n0 >= 7",
        &format!("{} baskets, n0 <= {late_m0}, rmax <= {late_rmax}, delta1 <= 9", late.len()),
        &BirationalityInputs::new(late_m0.max(7), 9).with_rmax(late_rmax),
        vec![],
    )?;

    // every P_-1 = 1 basket falls in exactly one of the n0 leaves
    let all1 = search(&ConstraintSet::qfano(1))?.survivors;
    let d8_set: BTreeSet<&Basket> = d8.iter().map(|wb| &wb.basket).collect();
    let late_set: BTreeSet<&Basket> = late.iter().map(|wb| &wb.basket).collect();
    for wb in &all1 {
        audited += 1;
        let n0 = first_at_least(&p_values(wb, 9)?, 2);
        let ok = match n0 {
            Some(2..=5) => !d8_set.contains(&wb.basket),
            Some(6) => true,
            Some(7 | 8) => late_set.contains(&wb.basket),
            _ => false,
        };
        if !ok {
            uncovered.push(format!("{{{}}} with P_-1 = 1, n0 = {n0:?}", wb.basket));
        }
    }

    // P_-1 = 0, one leaf per basket
    let all0 = tree.branch("P_-1 = 0", &ConstraintSet::qfano(0))?;
    let labels: BTreeMap<Basket, &str> =
        PROPOSITION_LIST.iter().map(|r| (r.basket.parse::<Basket>().unwrap(), r.label)).collect();
    for wb in &all0 {
        audited += 1;
        let seq = p_values(wb, ROW_HORIZON)?;
        let name = match labels.get(&wb.basket) {
            Some(l) => format!("P_-1 = P_-2 = 0, {l}"),
            None if seq[1] > 0 => format!("P_-1 = 0, P_-2 = {}, {{{}}}", seq[1], wb.basket),
            None => {
                uncovered.push(format!("{{{}}} has P_-2 = 0 but is not in the table", wb.basket));
                continue;
            }
        };
        let Some(m0) = first_at_least(&seq, 2) else {
            uncovered.push(format!("{{{}}}: no m <= {ROW_HORIZON} with P_-m >= 2", wb.basket));
            continue;
        };
        let Some(m1) = delta1_bound(wb, LocalCriterion::Tabulated)? else {
            uncovered.push(format!("{{{}}}: no delta1 bound", wb.basket));
            continue;
        };
        let rmax = wb.basket.r_max();
        let inp = BirationalityInputs::new(m0, m1.max(m0)).with_rmax(rmax);
        let (_, t) = best_threshold(&inp)?;
        if t <= tree.target {
            tree.leaf(&name, "m1 from the delta1 bound", &inp, vec![])?;
            continue;
        }
        match QFANO_OVERRIDES.iter().find(|o| o.basket.parse::<Basket>().ok().as_ref() == Some(&wb.basket)) {
            Some(o) => {
                let checked = verify_p(wb, o.p_checks)?;
                let inp = BirationalityInputs::new(m0, o.m1).with_rmax(rmax);
                tree.leaf(
                    &name,
                    &format!("arithmetic bound m1 = {m1} gives {t}; {checked}"),
                    &inp,
                    vec![format!("m1 = {}: {}", o.m1, o.reason)],
                )?;
            }
            None => {
                tree.leaf(&name, "m1 from the delta1 bound", &inp, vec![])?;
            }
        }
    }
    Ok(tree.finish(uncovered, audited))
}

/// Every basket with the given denominators, at `P_-1 = 0`, with `-K^3 > 0`.
fn p0_baskets_over(denoms: &[u32]) -> Vec<WeightedBasket> {
    fn rec(denoms: &[u32], cur: &mut Vec<OrbifoldPoint>, out: &mut BTreeSet<Basket>) {
        match denoms.split_first() {
            None => {
                out.insert(Basket::new(cur.iter().copied()));
            }
            Some((&r, rest)) => {
                for b in 1..=r / 2 {
                    if let Ok(p) = OrbifoldPoint::new(b, r) {
                        cur.push(p);
                        rec(rest, cur, out);
                        cur.pop();
                    }
                }
            }
        }
    }
    let mut all = BTreeSet::new();
    rec(denoms, &mut Vec::new(), &mut all);
    all.into_iter().map(|b| WeightedBasket::new(b, 0)).filter(|wb| volume(wb) > Rational::zero()).collect()
}

/// `b(r-b)/(2r) <= (r - 1/r)/8` for every point with `r >= 3`, which forces
/// `P_-1 > 0` when no point has `r = 2`.
fn two_in_r_lemma() -> bool {
    (3..=24i64).all(|r| {
        (1..=r / 2).filter(|&b| b.gcd(&r) == 1).all(|b| rat(b * (r - b), 2 * r) <= (int(r) - rat(1, r)) / int(8))
    })
}

fn fmt_r(v: &[u32]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

const CC_M0: &str = "m0 = 8: P_-8 >= 2 for every weak Q-Fano 3-fold (external classification)";
const CC_VOL: &str = "-K^3 >= 1/330 for every weak Q-Fano 3-fold (external classification)";

#[allow(clippy::too_many_arguments)]
fn thm1_leaf(
    tree: &mut Tree,
    name: &str,
    rx: u64,
    vol: Rational,
    rmax: u32,
    t: i64,
    m0: u32,
    nu0: u32,
    flagged: Vec<String>,
) -> Result<()> {
    let m1 = thm1_threshold_bounds(rx, &vol, rmax, &int(t))?;
    let inp = BirationalityInputs::new(m0, m1).with_rmax(rmax).with_nu0(nu0);
    tree.leaf(name, &format!("rX <= {rx}, -K^3 >= {vol}, rmax <= {rmax}, t = {t} gives m1 = {m1}"), &inp, flagged)?;
    Ok(())
}

fn replay_weak() -> Result<ReplayReport> {
    let mut tree = Tree::new("birationality, weak Q-Fano, m >= 97", 97);
    tree.rep.constraints = vec![
        "weak Q-Fano: sum (r - 1/r) <= 24, -K^3 > 0, superadditivity".into(),
        "rX (-K^3) is an integer, so -K^3 >= 1/rX".into(),
        "mu0 <= m0 unless stated".into(),
    ];
    tree.rep.axioms = vec![CC_M0.into(), CC_VOL.into()];
    let mut uncovered = Vec::new();
    let mut audited = 0;

    // Case I: P_-2 = 0
    let list = tree.branch("P_-2 = 0", &ConstraintSet::weak(0).pin(2, 0))?;
    audited += list.len();
    if list.len() != PROPOSITION_LIST.len() {
        uncovered.push(format!("P_-2 = 0 gives {} baskets, expected {}", list.len(), PROPOSITION_LIST.len()));
    }
    let rx = list.iter().map(|wb| wb.basket.gorenstein_index()).max().unwrap_or(1);
    let vmin = list.iter().map(volume).min().unwrap_or_else(Rational::one);
    let rmax = list.iter().map(|wb| wb.basket.r_max()).max().unwrap_or(1);
    let mut m0 = 0;
    for wb in &list {
        match first_at_least(&p_values(wb, 8)?, 2) {
            Some(m) => m0 = m0.max(m),
            None => uncovered.push(format!("{{{}}}: P_-8 < 2", wb.basket)),
        }
    }
    thm1_leaf(&mut tree, "I: P_-2 = 0", rx, vmin, rmax, 8, m0.max(8), 1, vec![])?;

    // Case II: rmax >= 14
    let rx_mid = (14..=22).map(max_index_given_rmax).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap();
    let rx_top = (23..=24).map(max_index_given_rmax).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap();
    let cc = || vec![CC_M0.to_string()];
    thm1_leaf(&mut tree, "II: 14 <= rmax <= 22", rx_mid, rat(1, rx_mid as i64), 22, 6, 8, 1, cc())?;
    thm1_leaf(&mut tree, "II: rmax >= 23", rx_top, rat(1, rx_top as i64), 24, 2, 8, 1, cc())?;

    // Case III: rmax < 14, P_-1 > 0
    let both = || vec![CC_M0.to_string(), CC_VOL.to_string()];
    thm1_leaf(&mut tree, "III: rX <= 660, rmax <= 12", 660, rat(1, 330), 12, 15, 8, 1, both())?;
    let rx13 = max_index_where(13, |v| lcm(v) <= 660)?.unwrap_or(1);
    thm1_leaf(&mut tree, "III: rX <= 660, rmax = 13", rx13, rat(1, 330), 13, 10, 8, 1, both())?;
    let idx = max_index_report();
    let r840: Vec<Vec<u32>> = denominator_multisets().into_iter().filter(|v| lcm(v) == 840).collect();
    let rmax840 = r840.iter().filter_map(|v| v.iter().max().copied()).max().unwrap_or(1);
    let inp = BirationalityInputs::new(8, 71).with_rmax(rmax840).with_nu0(1);
    tree.leaf(
        "III: rX = 840",
        &format!("second largest index {}, index-840 denominators {:?}", idx.second_max, r840),
        &inp,
        vec![CC_M0.into(), "m1 = 71 from the index-840 estimate, which uses -K^3 >= 1/330".into()],
    )?;

    // Case IV: rmax < 14, P_-1 = 0, P_-2 > 0
    let lemma = two_in_r_lemma();
    tree.note(
        "IV: 2 in R",
        if lemma {
            "b(r-b)/(2r) <= (r - 1/r)/8 for all r >= 3, so P_-1 = 0 forces a point of index 2".into()
        } else {
            "pointwise inequality fails; 2 in R not established".into()
        },
    );
    let nine = tree.branch("IV: P_-4 = 1", &ConstraintSet::weak(0).at_least(2, 1).pin(4, 1).with_horizon(12))?;
    audited += nine.len();
    let rx9 = nine.iter().map(|wb| wb.basket.gorenstein_index()).max().unwrap_or(1);
    let rmax9 = nine.iter().map(|wb| wb.basket.r_max()).max().unwrap_or(1);
    let mut m0_9 = 0;
    for wb in &nine {
        match first_at_least(&p_values(wb, 6)?, 2) {
            Some(m) => m0_9 = m0_9.max(m),
            None => uncovered.push(format!("{{{}}}: P_-6 < 2", wb.basket)),
        }
    }
    thm1_leaf(&mut tree, "IV: P_-4 = 1", rx9, rat(1, rx9 as i64), rmax9, 7, m0_9.max(2), 2, vec![])?;

    let with2 = |v: &[u32]| v.contains(&2);
    let multisets = denominator_multisets();
    let special = |rmax: u32, l: u64| -> Vec<Vec<u32>> {
        multisets.iter().filter(|v| v.iter().max() == Some(&rmax) && with2(v) && lcm(v) == l).cloned().collect()
    };
    // (lowest rmax, highest rmax, indices handled separately, t)
    let bands: [(u32, u32, &[u64], i64); 6] =
        [(2, 8, &[840], 20), (9, 9, &[630], 12), (10, 10, &[], 10), (11, 11, &[462, 660], 13), (12, 12, &[], 5), (13, 13, &[546], 12)];
    let mut band_rx: BTreeMap<u32, u64> = BTreeMap::new();
    for &(lo, hi, excluded, t) in &bands {
        let rx = (lo..=hi)
            .filter_map(|r| max_index_where(r, |v| with2(v) && !excluded.contains(&lcm(v))).ok().flatten())
            .max()
            .unwrap_or(1);
        for r in lo..=hi {
            band_rx.insert(r, rx);
        }
        let (vol, flagged) = if rx <= 330 { (rat(1, rx as i64), vec![]) } else { (rat(1, 330), vec![CC_VOL.to_string()]) };
        let name = if lo == hi { format!("IV: P_-4 > 1, rmax = {hi}") } else { format!("IV: P_-4 > 1, rmax <= {hi}") };
        thm1_leaf(&mut tree, &name, rx, vol, hi, t, 4, 2, flagged)?;
    }

    // indices left out of the bands: the baskets are unique or absent
    /// `m`, the `(j, P_-j)` values the tightening rests on, the `μ0` bound and its reason.
    type PencilTightening = (u32, &'static [(u32, i64)], Rational, &'static str);
    struct Special {
        rmax: u32,
        index: u64,
        pencil_m: Option<PencilTightening>,
    }
    let specials = [
        Special { rmax: 8, index: 840, pencil_m: None },
        Special {
            rmax: 9,
            index: 630,
            pencil_m: Some((7, &[(3, 1), (4, 2), (7, 10)], rat(7, 9), "mu0 <= 7/9 when |-4K| and |-7K| share a pencil")),
        },
        Special { rmax: 11, index: 462, pencil_m: None },
        Special { rmax: 11, index: 660, pencil_m: None },
        Special {
            rmax: 13,
            index: 546,
            pencil_m: Some((10, &[(4, 2), (6, 5), (10, 21)], rat(1, 2), "mu0 <= 1/2 when |-4K| and |-10K| share a pencil")),
        },
    ];
    let mut special_r: BTreeSet<Vec<u32>> = BTreeSet::new();
    for s in &specials {
        let rs = special(s.rmax, s.index);
        let mut found = Vec::new();
        for r in &rs {
            special_r.insert(r.clone());
            found.extend(p0_baskets_over(r));
        }
        let rs_text = rs.iter().map(|r| fmt_r(r)).collect::<Vec<_>>().join(" or ");
        tree.note(
            &format!("IV: rX = {}", s.index),
            format!(
                "R = {rs_text}; baskets at P_-1 = 0 with -K^3 > 0: {}",
                if found.is_empty() { "none".to_string() } else { found.iter().map(|w| format!("{{{}}}", w.basket)).collect::<Vec<_>>().join(", ") }
            ),
        );
        if found.len() > 1 {
            uncovered.push(format!("rX = {}: {} baskets, expected at most one", s.index, found.len()));
        }
        for wb in &found {
            audited += 1;
            let seq = p_values(wb, 4)?;
            if seq[3] < 2 {
                uncovered.push(format!("{{{}}}: P_-4 = {}", wb.basket, seq[3]));
                continue;
            }
            let np = non_pencil_threshold(wb, NON_PENCIL_HORIZON)?;
            let Some(m1) = np.minimal else {
                uncovered.push(format!("{{{}}}: no non-pencil m <= {NON_PENCIL_HORIZON}", wb.basket));
                continue;
            };
            let w = np.verdicts[m1 as usize - 1].witness.clone().expect("non-pencil verdict has a witness");
            let ctx = format!("{{{}}}, -K^3 = {}, P_-{m1} = {} > {}", wb.basket, volume(wb), w.pm, w.rhs);
            let base = BirationalityInputs::new(4, m1).with_rmax(s.rmax).with_nu0(2);
            match &s.pencil_m {
                None => {
                    tree.leaf(&format!("IV: rX = {}", s.index), &ctx, &base, vec![])?;
                }
                Some((m, checks, mu0, why)) => {
                    let checked = verify_p(wb, checks)?;
                    tree.leaf(
                        &format!("IV: rX = {}, |-{m}K| not a pencil", s.index),
                        &checked,
                        &BirationalityInputs::new(4, *m).with_rmax(s.rmax).with_nu0(2),
                        vec![format!("m1 = {m} when |-{m}K| is not composed with a pencil")],
                    )?;
                    tree.leaf(
                        &format!("IV: rX = {}, |-{m}K| a pencil", s.index),
                        &format!("{ctx}; {checked}"),
                        &base.with_mu0(mu0.clone(), why),
                        vec![],
                    )?;
                }
            }
        }
    }

    // coverage over all denominator multisets
    for v in &multisets {
        audited += 1;
        let rmax = v.iter().max().copied().unwrap_or(1);
        let l = lcm(v);
        if rmax >= 14 {
            let cap = if rmax >= 23 { rx_top } else { rx_mid };
            if l > cap {
                uncovered.push(format!("{}: index {l} above {cap}", fmt_r(v)));
            }
            continue;
        }
        // P_-1 > 0
        let case3 = if l <= 660 { rmax <= 12 || l <= rx13 } else { l == 840 && rmax == rmax840 };
        if !case3 {
            uncovered.push(format!("{} with P_-1 > 0", fmt_r(v)));
        }
        // P_-1 = 0 < P_-2, P_-4 > 1
        if !with2(v) {
            if !lemma {
                uncovered.push(format!("{} without 2, P_-1 = 0", fmt_r(v)));
            }
            continue;
        }
        let in_band = band_rx.get(&rmax).is_some_and(|&cap| l <= cap);
        if !in_band && !special_r.contains(v) {
            uncovered.push(format!("{} with P_-1 = 0", fmt_r(v)));
        }
    }
    Ok(tree.finish(uncovered, audited))
}
