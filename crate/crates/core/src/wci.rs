//! Weighted complete intersections as an independent source of
//! anti-plurigenera, and fitting baskets to a given sequence.

use serde::{Deserialize, Serialize};

use crate::basket::WeightedBasket;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::rr::{plurigenera, PlurigenusSequence, Source};
use crate::search::{search, ConstraintSet};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WeightedCI {
    pub weights: Vec<u32>,
    pub degrees: Vec<u32>,
}

impl WeightedCI {
    pub fn new(weights: &[u32], degrees: &[u32]) -> Result<Self> {
        if weights.is_empty() || weights.iter().chain(degrees).any(|&w| w == 0) {
            return Err(Error::InvalidArgument("weights and degrees must be positive".into()));
        }
        Ok(Self { weights: weights.to_vec(), degrees: degrees.to_vec() })
    }

    /// `Σ a_i - Σ d_j`.
    pub fn fano_index(&self) -> i64 {
        self.weights.iter().map(|&a| a as i64).sum::<i64>() - self.degrees.iter().map(|&d| d as i64).sum::<i64>()
    }

    /// `Π d_j · ι^3 / Π a_i`.
    pub fn volume(&self) -> Rational {
        let num: i64 = self.degrees.iter().map(|&d| d as i64).product::<i64>() * self.fano_index().pow(3);
        let den: i64 = self.weights.iter().map(|&a| a as i64).product();
        int(num) / int(den)
    }
}

/// Coefficients of `Π (1 - t^d_j) / Π (1 - t^a_i)` through `t^upto`.
pub fn hilbert_coeffs(wci: &WeightedCI, upto: usize) -> Vec<i64> {
    let mut c = vec![0i64; upto + 1];
    c[0] = 1;
    for &d in &wci.degrees {
        let d = d as usize;
        for n in (d..=upto).rev() {
            c[n] -= c[n - d];
        }
    }
    for &a in &wci.weights {
        let a = a as usize;
        for n in a..=upto {
            c[n] += c[n - a];
        }
    }
    c
}

/// `P_-m` read off as the coefficient of `t^(m ι)`, for `1 <= m <= upto_m`.
pub fn anti_plurigenera_from_hilbert(wci: &WeightedCI, upto_m: u32) -> Result<PlurigenusSequence> {
    let iota = wci.fano_index();
    if iota <= 0 {
        return Err(Error::Precondition(format!("Fano index {iota} is not positive")));
    }
    let iota = iota as usize;
    let c = hilbert_coeffs(wci, upto_m as usize * iota);
    let values = (1..=upto_m as usize).map(|m| c[m * iota]).collect();
    Ok(PlurigenusSequence { values, source: Source::Constraint })
}

#[derive(Clone, Copy, Debug)]
pub struct FitCaps {
    pub max_points: usize,
    pub max_r: u32,
    /// Values `P_-2..` up to this degree drive the search; the rest filter.
    pub search_horizon: u32,
}

impl Default for FitCaps {
    fn default() -> Self {
        Self { max_points: 24, max_r: 24, search_horizon: 12 }
    }
}

/// Every weak Q-Fano weighted basket whose plurigenera agree with all of `p`.
pub fn fit_basket(p: &PlurigenusSequence, caps: FitCaps) -> Result<Vec<WeightedBasket>> {
    let Some(p1) = p.get(1) else {
        return Err(Error::InvalidArgument("empty plurigenus sequence".into()));
    };
    if p1 < 0 {
        return Ok(Vec::new());
    }
    let top = caps.search_horizon.min(p.len() as u32).max(2);
    let mut cs = ConstraintSet::weak(p1 as u32).with_horizon(top);
    cs.max_points = caps.max_points;
    cs.max_r = caps.max_r;
    for m in 2..=top {
        if let Some(v) = p.get(m) {
            cs = cs.pin(m, v);
        }
    }
    let n = p.len() as u32;
    let mut fits = Vec::new();
    for wb in search(&cs)?.survivors {
        if plurigenera(&wb, n).map(|s| s.values == p.values).unwrap_or(false) {
            fits.push(wb);
        }
    }
    Ok(fits)
}
