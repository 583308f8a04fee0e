//! Reid's orbifold Riemann–Roch on weighted baskets: the basic invariants,
//! local corrections, `l(-n)`, the volume and both forms of `P_-m`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::basket::{Basket, WeightedBasket};
use crate::error::{Error, Result};
use crate::rational::{as_i64, int, rat, Rational};

/// Default length of materialized plurigenus sequences.
pub const DEFAULT_HORIZON: u32 = 100;

/// `x̄ (r - x̄)` where `x̄` is the least non-negative residue of `x` mod `r`.
fn residue_product(x: i64, r: i64) -> i64 {
    let xb = x.rem_euclid(r);
    xb * (r - xb)
}

/// `F(x) = x̄ (r - x̄) / 2r`.
pub fn f_local(x: i64, r: u32) -> Rational {
    let r = r as i64;
    rat(residue_product(x, r), 2 * r)
}

pub fn sigma(b: &Basket) -> i64 {
    b.iter().map(|p| p.b() as i64).sum()
}

pub fn sigma_prime(b: &Basket) -> Rational {
    b.iter().map(|p| rat((p.b() as i64).pow(2), p.r() as i64)).sum()
}

/// `Δ^m(B)`, defined for `m >= 2`.
pub fn delta_m(b: &Basket, m: u32) -> Result<Rational> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("Δ^m needs m >= 2, got {m}")));
    }
    let term = |bi: i64, r: i64| {
        let x = bi * m as i64;
        residue_product(x, r) as i128 - x as i128 * (r - x) as i128
    };
    // one integer sum over the common denominator 2 r_X when it fits
    let lcm = b.iter().try_fold(1i128, |acc, p| {
        let r = p.r() as i128;
        (acc / num_integer::gcd(acc, r)).checked_mul(r).filter(|&l| l < 1 << 60)
    });
    if let Some(lcm) = lcm {
        let num = b.iter().try_fold(0i128, |acc, p| {
            acc.checked_add(term(p.b() as i64, p.r() as i64).checked_mul(lcm / p.r() as i128)?)
        });
        if let Some(num) = num {
            return Ok(Rational::new(BigInt::from(num), BigInt::from(2 * lcm)));
        }
    }
    Ok(b.iter()
        .map(|p| {
            let (bi, r) = (p.b() as i64, p.r() as i64);
            Rational::new(BigInt::from(term(bi, r)), BigInt::from(2 * r))
        })
        .sum())
}

/// `γ(B) = Σ 1/r_i - Σ r_i + 24`.
pub fn gamma(b: &Basket) -> Rational {
    b.iter().map(|p| rat(1, p.r() as i64) - int(p.r() as i64)).sum::<Rational>() + int(24)
}

/// `Σ (r_i - 1/r_i)`, bounded by 24 for weak Fano baskets.
pub fn kwmt2_sum(b: &Basket) -> Rational {
    int(24) - gamma(b)
}

/// Local correction `c_Q` at local index `i` with `0 <= i < r`.
pub fn local_correction(b: u32, r: u32, i: u32) -> Result<Rational> {
    if i >= r {
        return Err(Error::InvalidArgument(format!("local index {i} must be < r = {r}")));
    }
    Ok(local_correction_unreduced(b, r, i))
}

/// The same expression evaluated at any `t >= 0` without reducing mod `r`.
pub fn local_correction_unreduced(b: u32, r: u32, t: u32) -> Rational {
    let ri = r as i64;
    let head = -rat(t as i64 * (ri * ri - 1), 12 * ri);
    let sum: i64 = (0..t as i64).map(|j| residue_product(j * b as i64, ri)).sum();
    head + rat(sum, 2 * ri)
}

/// `l(-n) = Σ_i Σ_{j=1}^n F(j b_i)`.
pub fn l_neg(b: &Basket, n: u32) -> Rational {
    b.iter()
        .map(|p| {
            let r = p.r() as i64;
            let s: i64 = (1..=n as i64).map(|j| residue_product(j * p.b() as i64, r)).sum();
            rat(s, 2 * r)
        })
        .sum()
}

/// `-K^3 = 2 P_-1 + σ - σ' - 6`.
pub fn volume(wb: &WeightedBasket) -> Rational {
    int(2 * wb.p1 as i64 + sigma(&wb.basket) - 6) - sigma_prime(&wb.basket)
}

fn integral(m: u32, q: Rational) -> Result<i64> {
    as_i64(&q).ok_or_else(|| Error::IntegralityFault { m, value: q.to_string() })
}

/// Closed form `P_-m = m(m+1)(2m+1)/12 · (-K^3) + (2m+1) - l(-m)`.
pub fn anti_plurigenus(wb: &WeightedBasket, m: u32) -> Result<i64> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    let mi = m as i64;
    let cubic = rat(mi * (mi + 1) * (2 * mi + 1), 12) * volume(wb);
    integral(m, cubic + int(2 * mi + 1) - l_neg(&wb.basket, m))
}

/// Step `P_-(k+1) - P_-k = (k+1)^2 (-K^3 + σ')/2 + 2 - (k+1) σ/2 - Δ^(k+1)`.
pub fn plurigenus_step(wb: &WeightedBasket, k: u32) -> Result<Rational> {
    let vs = volume(wb) + sigma_prime(&wb.basket);
    let n = k as i64 + 1;
    let s = sigma(&wb.basket);
    Ok(vs * rat(n * n, 2) + int(2) - rat(n * s, 2) - delta_m(&wb.basket, k + 1)?)
}

/// `P_-m` built up from `P_-1` through the recursion in Δ.
pub fn anti_plurigenus_recursive(wb: &WeightedBasket, m: u32) -> Result<i64> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    let mut acc = int(wb.p1 as i64);
    for k in 1..m {
        acc += plurigenus_step(wb, k)?;
    }
    integral(m, acc)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Source {
    ComputedFromBasket,
    Constraint,
}

/// `P_-1, P_-2, ...`; `values[k]` holds `P_-(k+1)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PlurigenusSequence {
    pub values: Vec<i64>,
    pub source: Source,
}

impl PlurigenusSequence {
    pub fn from_constraints(values: Vec<i64>) -> Self {
        Self { values, source: Source::Constraint }
    }

    /// `P_-m`, if materialized.
    pub fn get(&self, m: u32) -> Option<i64> {
        (m >= 1).then(|| self.values.get(m as usize - 1).copied()).flatten()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `P_-1 ..= P_-n` in one pass, using integer accumulators over the common
/// denominator `24 r_X`.
pub fn plurigenera(wb: &WeightedBasket, n: u32) -> Result<PlurigenusSequence> {
    let lcm = wb.basket.gorenstein_index() as i128;
    let vol = volume(wb);
    let vol_l = vol * Rational::from_integer(BigInt::from(lcm));
    let v = vol_l.to_integer().to_i128().expect("volume numerator overflow");
    debug_assert!(vol_l.is_integer());
    let pts: Vec<(i128, i128, i128)> = wb
        .basket
        .iter()
        .map(|p| (p.b() as i128, p.r() as i128, lcm / p.r() as i128))
        .collect();
    let mut l_acc: i128 = 0; // 2 r_X · l(-m)
    let mut values = Vec::with_capacity(n as usize);
    for m in 1..=n as i128 {
        for &(b, r, w) in &pts {
            let xb = (m * b).rem_euclid(r);
            l_acc += xb * (r - xb) * w;
        }
        let num = 2 * m * (m + 1) * (2 * m + 1) * v + 24 * lcm * (2 * m + 1) - 12 * l_acc;
        let den = 24 * lcm;
        if num % den != 0 {
            let q = Rational::new(BigInt::from(num), BigInt::from(den));
            return Err(Error::IntegralityFault { m: m as u32, value: q.to_string() });
        }
        values.push((num / den) as i64);
    }
    Ok(PlurigenusSequence { values, source: Source::ComputedFromBasket })
}

/// True when `Σ (r_i - 1/r_i) <= 24`, or `γ > 0` when `strict`.
pub fn passes_kawamata(b: &Basket, strict: bool) -> bool {
    let g = gamma(b);
    if strict {
        g > Rational::zero()
    } else {
        g >= Rational::zero()
    }
}
