//! Inverting the plurigenus map: the multiplicities of `B^(0)` and `B^(5)`
//! and the counts `ε_5..ε_8` as closed expressions in `P_-1..P_-8`, `σ_5`
//! and the tail counts `n^0_{1,r}` (`r >= 5`).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::basket::{Basket, OrbifoldPoint};
use crate::rational::{int, rat, Rational};
use crate::rr::PlurigenusSequence;

/// Largest tail denominator: `r - 1/r > 24` beyond it.
pub const MAX_TAIL_R: u32 = 24;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RecoveryInput {
    pub p: PlurigenusSequence,
    pub sigma5: u32,
    /// `r -> n^0_{1,r}` for `r >= 5`.
    pub tail_counts: BTreeMap<u32, u32>,
}

impl RecoveryInput {
    pub fn new(p: PlurigenusSequence, tail_counts: BTreeMap<u32, u32>) -> Self {
        let sigma5 = tail_counts.values().sum();
        Self { p, sigma5, tail_counts }
    }

    fn tail(&self, r: u32) -> i64 {
        self.tail_counts.get(&r).copied().unwrap_or(0) as i64
    }
}

/// A recovered quantity is `None` when the sequence is too short for it.
pub type Known = Option<i64>;

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct RecoveredData {
    pub sigma: Known,
    pub delta3: Known,
    pub delta4: Known,
    pub n0_12: Known,
    pub n0_13: Known,
    pub n0_14: Known,
    pub n5_12: Known,
    pub n5_25: Known,
    pub n5_13: Known,
    pub n5_14: Known,
    pub eps5: Known,
    pub eps6: Known,
    pub eps7: Known,
    pub eps8: Known,
    pub tail_counts: BTreeMap<u32, u32>,
}

/// The first identity that fails, with its value.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Infeasible {
    pub constraint: &'static str,
    pub value: i64,
}

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constraint == "eps6" {
            write!(f, "ε_6 = {} ≠ 0", self.value)
        } else {
            write!(f, "{} = {} < 0", self.constraint, self.value)
        }
    }
}

impl RecoveredData {
    fn tail_points(&self) -> Vec<OrbifoldPoint> {
        self.tail_counts
            .iter()
            .flat_map(|(&r, &c)| std::iter::repeat_n(OrbifoldPoint::new(1, r).unwrap(), c as usize))
            .collect()
    }

    /// `B^(0)`, once `n^0_{1,2..4}` are known.
    pub fn b0(&self) -> Option<Basket> {
        let mut pts = self.tail_points();
        for (b, r, n) in [(1, 2, self.n0_12?), (1, 3, self.n0_13?), (1, 4, self.n0_14?)] {
            pts.extend(std::iter::repeat_n(OrbifoldPoint::new(b, r).unwrap(), n as usize));
        }
        Some(Basket::new(pts))
    }

    /// `B^(5)`, once its four leading multiplicities are known.
    pub fn b5(&self) -> Option<Basket> {
        let mut pts = self.tail_points();
        let lead = [(1, 2, self.n5_12?), (2, 5, self.n5_25?), (1, 3, self.n5_13?), (1, 4, self.n5_14?)];
        for (b, r, n) in lead {
            pts.extend(std::iter::repeat_n(OrbifoldPoint::new(b, r).unwrap(), n as usize));
        }
        Some(Basket::new(pts))
    }
}

/// Evaluates every recovery formula the sequence supports.
pub fn recover(inp: &RecoveryInput) -> Result<RecoveredData, Infeasible> {
    let total: u32 = inp.tail_counts.values().sum();
    if total != inp.sigma5 || inp.tail_counts.keys().any(|&r| !(5..=MAX_TAIL_R).contains(&r)) {
        return Err(Infeasible { constraint: "sigma5", value: inp.sigma5 as i64 - total as i64 });
    }
    let p = |m: u32| inp.p.get(m);
    let s5 = inp.sigma5 as i64;
    let (t5, t6, t7) = (inp.tail(5), inp.tail(6), inp.tail(7));
    let eps_bar = 2 * s5 - t5;

    let lift = |f: &dyn Fn(&[i64]) -> i64, need: u32| -> Known {
        let vals: Option<Vec<i64>> = (1..=need).map(p).collect();
        vals.map(|v| f(&v))
    };
    let mut out = RecoveredData {
        sigma: lift(&|v| 10 - 5 * v[0] + v[1], 2),
        delta3: lift(&|v| 5 - 6 * v[0] + 4 * v[1] - v[2], 3),
        delta4: lift(&|v| 14 - 14 * v[0] + 6 * v[1] + v[2] - v[3], 4),
        n0_12: lift(&|v| 5 - 6 * v[0] + 4 * v[1] - v[2], 3),
        n0_13: lift(&|v| 4 - 2 * v[0] - 2 * v[1] + 3 * v[2] - v[3], 4),
        n0_14: lift(&|v| 1 + 3 * v[0] - v[1] - 2 * v[2] + v[3] - s5, 4),
        eps5: lift(&|v| 2 + v[1] - 2 * v[3] + v[4] - s5, 5),
        n5_12: lift(&|v| 3 - 6 * v[0] + 3 * v[1] - v[2] + 2 * v[3] - v[4] + s5, 5),
        n5_13: lift(&|v| 2 - 2 * v[0] - 3 * v[1] + 3 * v[2] + v[3] - v[4] + s5, 5),
        eps6: lift(&|v| 3 * v[0] + v[1] - v[2] - v[3] - v[4] + v[5] - eps_bar, 6),
        eps7: lift(&|v| 1 + v[0] + v[1] - v[4] - v[5] + v[6] - 2 * s5 + 2 * t5 + t6, 7),
        eps8: lift(
            &|v| 2 * v[0] + v[1] + v[2] - v[3] - v[4] - v[6] + v[7] - 3 * s5 + 3 * t5 + 2 * t6 + t7,
            8,
        ),
        tail_counts: inp.tail_counts.clone(),
        ..Default::default()
    };
    out.n5_25 = out.eps5;
    out.n5_14 = out.n0_14;

    let checks = [
        ("n0_12", out.n0_12),
        ("n0_13", out.n0_13),
        ("n0_14", out.n0_14),
        ("eps5", out.eps5),
        ("n5_12", out.n5_12),
        ("n5_13", out.n5_13),
        ("eps7", out.eps7),
        ("eps8", out.eps8),
    ];
    for (name, v) in checks {
        if let Some(v) = v {
            if v < 0 {
                return Err(Infeasible { constraint: name, value: v });
            }
        }
        if name == "n5_13" {
            if let Some(e6) = out.eps6 {
                if e6 != 0 {
                    return Err(Infeasible { constraint: "eps6", value: e6 });
                }
            }
        }
    }
    Ok(out)
}

/// Every tail with `σ_5 <= sigma5_max` and denominators in `5..=24` that
/// `recover` accepts.
pub fn feasible_tails(p: &PlurigenusSequence, sigma5_max: u32) -> Vec<RecoveryInput> {
    tails_within(p, sigma5_max, None)
}

fn cost(r: u32) -> Rational {
    int(r as i64) - rat(1, r as i64)
}

/// As [`feasible_tails`], additionally requiring `B^(0)` to satisfy
/// `Σ (r - 1/r) <= budget` (strictly when the flag is set). The tail's own
/// cost bounds that of `B^(0)` from below, so it prunes the tail DFS.
pub(crate) fn tails_within(
    p: &PlurigenusSequence,
    sigma5_max: u32,
    budget: Option<(Rational, bool)>,
) -> Vec<RecoveryInput> {
    let mut out = Vec::new();
    let mut tail = BTreeMap::new();
    extend_tails(p, sigma5_max, 5, &mut tail, int(0), budget.as_ref(), &mut out);
    out
}

fn within(cost: &Rational, budget: &(Rational, bool)) -> bool {
    if budget.1 {
        *cost < budget.0
    } else {
        *cost <= budget.0
    }
}

fn extend_tails(
    p: &PlurigenusSequence,
    left: u32,
    min_r: u32,
    tail: &mut BTreeMap<u32, u32>,
    spent: Rational,
    budget: Option<&(Rational, bool)>,
    out: &mut Vec<RecoveryInput>,
) {
    let inp = RecoveryInput::new(p.clone(), tail.clone());
    if let Ok(data) = recover(&inp) {
        let fits = match (budget, data.b0()) {
            (Some(bud), Some(b0)) => within(&crate::rr::kwmt2_sum(&b0), bud),
            _ => true,
        };
        if fits {
            out.push(inp);
        }
    }
    if left == 0 {
        return;
    }
    for r in min_r..=MAX_TAIL_R {
        let next = &spent + cost(r);
        if budget.is_some_and(|bud| !within(&next, bud)) {
            break;
        }
        *tail.entry(r).or_insert(0) += 1;
        extend_tails(p, left - 1, r, tail, next, budget, out);
        let c = tail.get_mut(&r).unwrap();
        *c -= 1;
        if *c == 0 {
            tail.remove(&r);
        }
    }
}
