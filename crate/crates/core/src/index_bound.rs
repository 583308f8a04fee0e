//! Brute-force bounds on the Gorenstein index `r_X = lcm(r_i)` under
//! `Σ (r_i - 1/r_i) <= 24`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};

/// Prime powers `s` with `s - 1/s <= 24`.
pub const PRIME_POWERS: [u32; 13] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23];

/// Largest denominator allowed by the budget.
pub const MAX_R: u32 = 24;

/// `lcm(2..=24)`, so that every `r - 1/r` with `r <= 24` scales to an integer.
const SCALE: i64 = 5_354_228_880;

fn scaled_cost(r: u32) -> i64 {
    let r = r as i64;
    (r * r - 1) * (SCALE / r)
}

fn scaled_budget(budget: &Rational) -> i64 {
    let q = budget * int(SCALE);
    // floor: a multiset fits iff its scaled cost is at most floor(budget * SCALE)
    crate::rational::floor_i64(&q)
}

fn lcm_of(values: &[u32]) -> u64 {
    values.iter().fold(1u64, |acc, &v| acc.lcm(&(v as u64)))
}

/// Exact `Σ (s - 1/s)`.
pub fn budget_of(values: &[u32]) -> Rational {
    values.iter().map(|&s| int(s as i64) - rat(1, s as i64)).sum()
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct PrimePowerMultiset {
    /// Non-decreasing.
    pub values: Vec<u32>,
}

impl PrimePowerMultiset {
    pub fn budget(&self) -> Rational {
        budget_of(&self.values)
    }

    pub fn lcm(&self) -> u64 {
        lcm_of(&self.values)
    }
}

impl std::fmt::Display for PrimePowerMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Every non-decreasing sequence over `alphabet` with scaled cost within `cap`.
fn multisets(alphabet: &[u32], cap: i64) -> Vec<Vec<u32>> {
    fn rec(alphabet: &[u32], start: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for i in start..alphabet.len() {
            let c = scaled_cost(alphabet[i]);
            if c > left {
                break;
            }
            cur.push(alphabet[i]);
            rec(alphabet, i, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(alphabet, 0, cap, &mut Vec::new(), &mut out);
    out
}

/// All multisets of prime powers with `Σ (s - 1/s) <= budget`.
pub fn enumerate_admissible(budget: &Rational) -> Result<Vec<PrimePowerMultiset>> {
    if *budget <= int(0) {
        return Err(Error::InvalidArgument(format!("budget {budget} must be positive")));
    }
    let mut out: Vec<PrimePowerMultiset> = multisets(&PRIME_POWERS, scaled_budget(budget))
        .into_iter()
        .map(|values| PrimePowerMultiset { values })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IndexReport {
    pub max_lcm: u64,
    pub witnesses: Vec<PrimePowerMultiset>,
    pub second_max: u64,
    pub second_witnesses: Vec<PrimePowerMultiset>,
}

/// The largest and second largest `lcm` over admissible prime-power multisets.
pub fn max_index_report() -> IndexReport {
    let all = enumerate_admissible(&int(24)).expect("positive budget");
    let max_lcm = all.iter().map(|m| m.lcm()).max().unwrap_or(1);
    let second_max = all.iter().map(|m| m.lcm()).filter(|&l| l < max_lcm).max().unwrap_or(1);
    let pick = |v: u64| {
        let mut w: Vec<PrimePowerMultiset> = all.iter().filter(|m| m.lcm() == v).cloned().collect();
        w.sort_by(|a, b| (a.values.len(), &a.values).cmp(&(b.values.len(), &b.values)));
        w
    };
    IndexReport { max_lcm, witnesses: pick(max_lcm), second_max, second_witnesses: pick(second_max) }
}

/// All multisets of denominators `2..=24` with `Σ (r - 1/r) <= 24`, each non-decreasing.
pub fn denominator_multisets() -> Vec<Vec<u32>> {
    let alphabet: Vec<u32> = (2..=MAX_R).collect();
    multisets(&alphabet, 24 * SCALE)
}

/// Largest `lcm` over denominator multisets with largest entry `rmax` that satisfy `keep`.
pub fn max_index_where(rmax: u32, keep: impl Fn(&[u32]) -> bool) -> Result<Option<u64>> {
    if !(2..=MAX_R).contains(&rmax) {
        return Err(Error::InvalidArgument(format!("rmax {rmax} outside 2..=24")));
    }
    let alphabet: Vec<u32> = (2..rmax).collect();
    let left = 24 * SCALE - scaled_cost(rmax);
    if left < 0 {
        return Ok(None);
    }
    Ok(multisets(&alphabet, left)
        .into_iter()
        .map(|mut v| {
            v.push(rmax);
            v
        })
        .filter(|v| keep(v))
        .map(|v| lcm_of(&v))
        .max())
}

/// Largest `lcm` over denominator multisets whose largest entry is `rmax`.
pub fn max_index_given_rmax(rmax: u32) -> Result<u64> {
    Ok(max_index_where(rmax, |_| true)?.unwrap_or(1))
}

/// Second largest distinct value, 1 if there is none.
pub fn second_largest(values: &[u32]) -> u32 {
    let top = values.iter().max().copied().unwrap_or(1);
    values.iter().copied().filter(|&v| v < top).max().unwrap_or(1)
}

/// A stated upper bound on `r_X` for baskets with a given `r_max`, optionally
/// restricted by the second largest denominator.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RmaxClaim {
    pub rmax: u32,
    /// Inclusive range for the second largest denominator.
    pub second: (u32, u32),
    pub claimed: u64,
    pub computed: Option<u64>,
}

impl RmaxClaim {
    pub fn holds(&self) -> bool {
        self.computed.is_none_or(|c| c <= self.claimed)
    }
}

/// The per-`r_max` index bounds for `r_max >= 14`, each recomputed by brute force.
pub fn large_rmax_claims() -> Result<Vec<RmaxClaim>> {
    const CLAIMS: [(u32, (u32, u32), u64); 15] = [
        (24, (1, 24), 24),
        (23, (1, 23), 24),
        (22, (1, 22), 132),
        (21, (1, 21), 132),
        (20, (1, 20), 132),
        (19, (1, 19), 190),
        (18, (1, 18), 90),
        (17, (5, 16), 238),
        (17, (1, 4), 204),
        (16, (6, 15), 112),
        (16, (1, 5), 240),
        (15, (6, 14), 210),
        (15, (1, 5), 60),
        (14, (8, 13), 126),
        (14, (1, 7), 210),
    ];
    let mut out = Vec::new();
    for (rmax, (lo, hi), claimed) in CLAIMS {
        let computed = max_index_where(rmax, |v| (lo..=hi).contains(&second_largest(v)))?;
        out.push(RmaxClaim { rmax, second: (lo, hi), claimed, computed });
    }
    Ok(out)
}

pub fn lcm(values: &[u32]) -> u64 {
    lcm_of(values)
}
