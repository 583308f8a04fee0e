//! The packing order on baskets: division sets `S^(n)`, unpacking to
//! `B^(n)`, the counts `ε_n`, and closure under prime packings.

use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;
use serde::Serialize;

use crate::basket::{Basket, OrbifoldPoint};
use crate::error::{Error, Result};
use crate::rational::as_i64;
use crate::rr::delta_m;

/// The truncated division set `S^(n)`: fractions `q/p` in `(0, 1/2]`,
/// sorted in decreasing order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FractionSet {
    pub level: u32,
    /// `(q, p)` pairs, largest fraction first.
    pub fractions: Vec<(u32, u32)>,
}

fn valid_level(n: u32) -> bool {
    n == 0 || n >= 5
}

/// Builds `S^(n)` containing every `1/k` with `k <= max(cap, n)` and, for
/// `5 <= k <= n`, every reduced `b/k < 1/2`.
pub fn s_set(n: u32, cap: u32) -> Result<FractionSet> {
    if !valid_level(n) {
        return Err(Error::InvalidArgument(format!("S^({n}) is only defined for n = 0 or n >= 5")));
    }
    let mut fractions: Vec<(u32, u32)> = (2..=cap.max(n).max(2)).map(|k| (1, k)).collect();
    for k in 5..=n {
        for q in 2..k.div_ceil(2) {
            if q.gcd(&k) == 1 && 2 * q < k && (1, k) != (q, k) {
                fractions.push((q, k));
            }
        }
    }
    // b/a > d/c  <=>  b c > d a
    fractions.sort_by(|&(q1, p1), &(q2, p2)| (q2 as u64 * p1 as u64).cmp(&(q1 as u64 * p2 as u64)));
    fractions.dedup();
    for w in fractions.windows(2) {
        let ((qi, pi), (qj, pj)) = (w[0], w[1]);
        assert_eq!(
            qi as i64 * pj as i64 - pi as i64 * qj as i64,
            1,
            "adjacent fractions {qi}/{pi} and {qj}/{pj} in S^({n}) are not Farey neighbours"
        );
    }
    Ok(FractionSet { level: n, fractions })
}

impl FractionSet {
    fn contains(&self, q: u32, p: u32) -> bool {
        self.fractions.contains(&(q, p))
    }

    /// The neighbours `(upper, lower)` bracketing `b/r`, which must not be a member.
    fn neighbours(&self, b: u32, r: u32) -> ((u32, u32), (u32, u32)) {
        let above = |&(q, p): &(u32, u32)| q as u64 * r as u64 > b as u64 * p as u64;
        let idx = self.fractions.iter().rposition(above).expect("b/r exceeds 1/2");
        (self.fractions[idx], self.fractions[idx + 1])
    }
}

/// `B^(n)`: each point not in `S^(n)` is unpacked along its neighbours.
pub fn unpack(basket: &Basket, n: u32) -> Result<Basket> {
    let set = s_set(n, basket.r_max())?;
    let mut out = Vec::with_capacity(basket.len());
    for p in basket.iter() {
        let (b, r) = (p.b(), p.r());
        if set.contains(b, r) {
            out.push(p);
            continue;
        }
        let ((ql, pl), (qn, pn)) = set.neighbours(b, r);
        let lower_count = r * ql - b * pl;
        let upper_count = b * pn - r * qn;
        let lower = OrbifoldPoint::new(qn, pn)?;
        let upper = OrbifoldPoint::new(ql, pl)?;
        out.extend(std::iter::repeat_n(lower, lower_count as usize));
        out.extend(std::iter::repeat_n(upper, upper_count as usize));
    }
    Ok(Basket::new(out))
}

/// `ε_n = Δ^n(B^(n-1)) - Δ^n(B)`, with `B^(4) := B^(0)` and `ε_1..ε_4 = 0`.
pub fn epsilon_n(basket: &Basket, n: u32) -> u32 {
    if n < 5 {
        return 0;
    }
    let prev = unpack(basket, if n == 5 { 0 } else { n - 1 }).expect("valid level");
    let diff = delta_m(&prev, n).expect("n >= 5") - delta_m(basket, n).expect("n >= 5");
    let e = as_i64(&diff).expect("ε_n must be an integer");
    assert!(e >= 0, "ε_{n} = {e} is negative");
    e as u32
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Stage {
    pub level: u32,
    pub basket: Basket,
    pub epsilon: u32,
}

/// `B^(0) ⪰ B^(5) ⪰ B^(6) ⪰ ... ⪰ B`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CanonicalChain {
    pub base: Basket,
    pub stages: Vec<Stage>,
}

impl CanonicalChain {
    /// `B^(n)`; levels 1..4 read as `B^(0)` and anything past the end as `B`.
    pub fn at(&self, n: u32) -> &Basket {
        let n = if n < 5 { 0 } else { n };
        self.stages
            .iter()
            .rev()
            .find(|s| s.level <= n)
            .map_or(&self.base, |s| &s.basket)
    }

    pub fn epsilon(&self, n: u32) -> u32 {
        self.stages.iter().find(|s| s.level == n && n >= 5).map_or(0, |s| s.epsilon)
    }

    pub fn b0(&self) -> &Basket {
        &self.stages[0].basket
    }

    /// `σ_5 = Σ_{r >= 5} n^0_{1,r}`.
    pub fn sigma5(&self) -> u32 {
        self.b0().iter().filter(|p| p.r() >= 5).count() as u32
    }

    /// `ε = 2σ_5 - n^0_{1,5}`.
    pub fn epsilon_bar(&self) -> i64 {
        2 * self.sigma5() as i64 - self.b0().count_of(1, 5) as i64
    }
}

pub fn canonical_chain(basket: &Basket) -> CanonicalChain {
    let top = basket.r_max().max(5);
    let mut stages = vec![Stage { level: 0, basket: unpack(basket, 0).expect("level 0"), epsilon: 0 }];
    for n in 5..=top {
        stages.push(Stage {
            level: n,
            basket: unpack(basket, n).expect("level >= 5"),
            epsilon: epsilon_n(basket, n),
        });
    }
    debug_assert_eq!(&stages.last().unwrap().basket, basket);
    CanonicalChain { base: basket.clone(), stages }
}

/// Every basket one prime packing below `basket`, deduplicated and sorted.
pub fn prime_packings(basket: &Basket) -> Vec<Basket> {
    let counts = basket.counts();
    let mut out = BTreeSet::new();
    for (i, &(p, _)) in counts.iter().enumerate() {
        for &(q, _) in &counts[i + 1..] {
            if p.cross(q).abs() != 1 {
                continue;
            }
            let merged = OrbifoldPoint::new(p.b() + q.b(), p.r() + q.r()).expect("prime packings stay canonical");
            let mut pts = basket.points().to_vec();
            for gone in [p, q] {
                let pos = pts.iter().position(|&x| x == gone).unwrap();
                pts.remove(pos);
            }
            pts.push(merged);
            out.insert(Basket::new(pts));
        }
    }
    out.into_iter().collect()
}

/// Result of a pruned closure: baskets kept, and children rejected by the
/// predicate (their packings are never visited).
#[derive(Clone, Debug, Default)]
pub struct Closure {
    pub kept: BTreeSet<Basket>,
    pub pruned: BTreeSet<Basket>,
}

/// DFS over prime packings from `root`. `keep` must be monotone: once it
/// rejects a basket it rejects every packing of it.
pub fn closure_with_budget(
    root: &Basket,
    keep: &(dyn Fn(&Basket) -> bool + Sync),
    max_nodes: usize,
) -> Result<Closure> {
    let mut out = Closure::default();
    if !keep(root) {
        out.pruned.insert(root.clone());
        return Ok(out);
    }
    let mut seen: HashSet<Basket> = HashSet::new();
    let mut stack = vec![root.clone()];
    seen.insert(root.clone());
    while let Some(b) = stack.pop() {
        for child in prime_packings(&b) {
            if !seen.insert(child.clone()) {
                continue;
            }
            if seen.len() > max_nodes {
                return Err(Error::SearchBudgetExceeded { what: "packing closure nodes", limit: max_nodes });
            }
            if keep(&child) {
                stack.push(child);
            } else {
                out.pruned.insert(child);
            }
        }
        out.kept.insert(b);
    }
    Ok(out)
}

/// All `B'` with `B ⪰ B'` (via prime packings) accepted by `keep`.
pub fn dominated_baskets(root: &Basket, keep: &(dyn Fn(&Basket) -> bool + Sync)) -> BTreeSet<Basket> {
    closure_with_budget(root, keep, usize::MAX).expect("unbounded").kept
}

/// Baskets below `root` admitting no further prime packing.
pub fn minimal_baskets(root: &Basket) -> BTreeSet<Basket> {
    dominated_baskets(root, &|_| true)
        .into_iter()
        .filter(|b| prime_packings(b).is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bk(s: &str) -> Basket {
        s.parse().unwrap()
    }

    fn set(v: &[&str]) -> BTreeSet<Basket> {
        v.iter().map(|s| bk(s)).collect()
    }

    #[test]
    fn division_sets() {
        assert_eq!(s_set(0, 6).unwrap().fractions, vec![(1, 2), (1, 3), (1, 4), (1, 5), (1, 6)]);
        assert_eq!(s_set(5, 5).unwrap().fractions, vec![(1, 2), (2, 5), (1, 3), (1, 4), (1, 5)]);
        let s7 = s_set(7, 7).unwrap();
        assert!(s7.contains(3, 7) && s7.contains(2, 7));
        assert!(s_set(3, 10).is_err());
        s_set(24, 24).unwrap();
        assert_eq!(s_set(7, 2).unwrap().fractions.len(), 9);
        assert_eq!(unpack(&bk("(1,2)"), 9).unwrap(), bk("(1,2)"));
    }

    #[test]
    fn unpacking() {
        assert_eq!(unpack(&bk("(2,5)"), 0).unwrap(), bk("(1,2),(1,3)"));
        assert_eq!(unpack(&bk("(1,2)"), 0).unwrap(), bk("(1,2)"));
        assert_eq!(unpack(&bk("(3,7)"), 5).unwrap(), bk("(2,5),(1,2)"));
        assert_eq!(unpack(&bk("(3,7)"), 0).unwrap(), bk("2x(1,2),(1,3)"));
    }

    #[test]
    fn epsilons() {
        assert_eq!(epsilon_n(&bk("(2,5)"), 5), 1);
        assert_eq!(epsilon_n(&bk("(1,2)"), 5), 0);
        assert_eq!(epsilon_n(&bk("(3,7)"), 7), 1);
        assert_eq!(epsilon_n(&bk("(3,7)"), 3), 0);
    }

    #[test]
    fn chains() {
        let c = canonical_chain(&bk("(2,5)"));
        assert_eq!(c.stages[0].basket, bk("(1,2),(1,3)"));
        assert_eq!(c.stages[1].basket, bk("(2,5)"));
        assert_eq!(c.stages[1].epsilon, 1);
        assert_eq!(c.stages.len(), 2);

        let c = canonical_chain(&bk("(1,2)"));
        assert!(c.stages.iter().all(|s| s.epsilon == 0 && s.basket == bk("(1,2)")));

        let b = bk("5x(1,2),(1,3),(1,5)");
        let c = canonical_chain(&b);
        assert_eq!(c.b0(), &b);
        assert!(c.stages.iter().all(|s| s.epsilon == 0));
        assert_eq!(c.at(3), &b);
        assert_eq!(c.sigma5(), 1);
    }

    #[test]
    fn packings_one_step() {
        assert_eq!(prime_packings(&bk("(1,2),(1,3)")), vec![bk("(2,5)")]);
        assert!(prime_packings(&bk("(1,2)")).is_empty());
        assert_eq!(prime_packings(&bk("2x(1,2),(1,3)")), vec![bk("(1,2),(2,5)")]);
    }

    #[test]
    fn closures() {
        assert_eq!(dominated_baskets(&bk("(1,2),(1,3)"), &|_| true), set(&["(1,2),(1,3)", "(2,5)"]));
        assert_eq!(
            dominated_baskets(&bk("2x(1,2),(1,3),(1,4)"), &|_| true),
            set(&["2x(1,2),(1,3),(1,4)", "(1,2),(2,5),(1,4)", "2x(1,2),(2,7)", "(3,7),(1,4)"])
        );
    }

    #[test]
    fn minimal() {
        assert_eq!(minimal_baskets(&bk("(2,5)")), set(&["(2,5)"]));
        assert_eq!(
            minimal_baskets(&bk("9x(1,2),(1,3),(1,4)")),
            set(&["(10,21),(1,4)", "9x(1,2),(2,7)"])
        );
        assert_eq!(minimal_baskets(&bk("(1,2),(1,4)")), set(&["(1,2),(1,4)"]));
    }
}
