//! Invariant checks shared by the property tests and the acceptance target.
//! Each returns `Err` with a description of the first violation.
#![allow(dead_code)]

use basketry::canonical::{canonical_chain, unpack};
use basketry::pencil::{g_min, g_min_brute};
use basketry::recovery::{recover, RecoveryInput};
use basketry::rr::{
    anti_plurigenus, anti_plurigenus_recursive, delta_m, gamma, plurigenera, plurigenus_step, sigma, sigma_prime,
    volume,
};
use basketry::{Basket, OrbifoldPoint, Rational, WeightedBasket};
use num_integer::Integer;
use rand::Rng;

pub type Check = Result<(), String>;

/// Every canonical point with `r <= max_r`.
pub fn points_up_to(max_r: u32) -> Vec<OrbifoldPoint> {
    (2..=max_r)
        .flat_map(|r| (1..=r / 2).filter_map(move |b| OrbifoldPoint::new(b, r).ok()))
        .collect()
}

/// Every multiset of at most `max_len` points from `universe`, the empty one included.
pub fn all_baskets(universe: &[OrbifoldPoint], max_len: usize) -> Vec<Basket> {
    fn rec(u: &[OrbifoldPoint], start: usize, left: usize, cur: &mut Vec<OrbifoldPoint>, out: &mut Vec<Basket>) {
        out.push(Basket::new(cur.iter().copied()));
        if left == 0 {
            return;
        }
        for i in start..u.len() {
            cur.push(u[i]);
            rec(u, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(universe, 0, max_len, &mut Vec::new(), &mut out);
    out
}

pub fn random_basket(rng: &mut impl Rng, universe: &[OrbifoldPoint], len: std::ops::RangeInclusive<usize>) -> Basket {
    let n = rng.gen_range(len);
    Basket::new((0..n).map(|_| universe[rng.gen_range(0..universe.len())]))
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// The monotonicity clauses for packing points `i` and `j` of `wb`, keeping `P_-1`.
pub fn packing_monotone(wb: &WeightedBasket, i: usize, j: usize, horizon: u32) -> Check {
    let packed = WeightedBasket::new(wb.basket.pack(i, j).map_err(|e| e.to_string())?, wb.p1);
    let packed = &packed;
    let (b, b2) = (&wb.basket, &packed.basket);
    let tag = || format!("{} -> {}", b, b2);
    ensure(sigma(b) == sigma(b2), || format!("sigma changed: {}", tag()))?;
    ensure(sigma_prime(b) >= sigma_prime(b2), || format!("sigma' grew: {}", tag()))?;
    for n in 2..=horizon {
        let (d, d2) = (delta_m(b, n).unwrap(), delta_m(b2, n).unwrap());
        ensure(d >= d2, || format!("Δ^{n} grew: {}", tag()))?;
    }
    let (v, v2) = (volume(wb), volume(packed));
    ensure(&v + sigma_prime(b) == &v2 + sigma_prime(b2), || format!("-K^3 + sigma' changed: {}", tag()))?;
    ensure(v <= v2, || format!("-K^3 dropped: {}", tag()))?;
    let (p, p2) = (plurigenera(wb, horizon).unwrap(), plurigenera(packed, horizon).unwrap());
    for m in 2..=horizon {
        ensure(p.get(m) <= p2.get(m), || format!("P_-{m} dropped: {}", tag()))?;
    }
    // γ of the merged pair as one point; normalizing a non-coprime merge
    // into several points changes Σ 1/r
    let (p, q) = (b.points()[i], b.points()[j]);
    let (bm, rm) = (p.b() + q.b(), p.r() + q.r());
    let inv = |r: u32| Rational::new(1.into(), (r as i64).into());
    let merged = gamma(b) - inv(p.r()) - inv(q.r()) + inv(rm);
    ensure(gamma(b) >= merged, || format!("gamma grew: {}", tag()))?;
    ensure(bm.gcd(&rm) != 1 || gamma(b2) == merged, || format!("gamma of coprime merge: {}", tag()))
}

/// `Δ^j` equalities along the canonical chain, and agreement of the
/// plurigenera of each stage with those of the basket up to its level.
pub fn chain_invariants(b: &Basket, p1: u32) -> Check {
    let chain = canonical_chain(b);
    let top = b.r_max().max(5);
    // deltas[n][j - 2] = Δ^j(B^(n)) for 2 <= j < top; levels 1..4 are B^(0)
    let deltas: Vec<Vec<Rational>> =
        (0..=top).map(|n| (2..top.max(5)).map(|j| delta_m(chain.at(n), j).unwrap()).collect()).collect();
    let own: Vec<Rational> = (3..=4).map(|j| delta_m(b, j).unwrap()).collect();
    ensure(deltas[0][1..3] == own[..], || format!("Δ^3 or Δ^4 of B^(0) differs for {b}"))?;
    for n in 5..=top as usize {
        for j in 2..n {
            ensure(deltas[n - 1][j - 2] == deltas[n][j - 2], || {
                format!("Δ^{j} differs between B^({}) and B^({n}) for {b}", n - 1)
            })?;
        }
    }
    let full = plurigenera(&WeightedBasket::new(b.clone(), p1), top).unwrap();
    for n in std::iter::once(0).chain(5..=top) {
        let stage = plurigenera(&WeightedBasket::new(chain.at(n).clone(), p1), n.max(1)).unwrap();
        ensure(stage.values[..] == full.values[..n.max(1) as usize], || format!("P_-j of B^({n}) differs for {b}"))?;
    }
    for n in top..top + 3 {
        ensure(&unpack(b, n).unwrap() == b, || format!("unpack({b}, {n}) is not the identity"))?;
    }
    Ok(())
}

/// `recover` fed the true `σ_5` and tail reproduces `B^(0)`, `B^(5)` and `ε_5..ε_8`.
pub fn recovery_round_trip(wb: &WeightedBasket) -> Check {
    let b = &wb.basket;
    let chain = canonical_chain(b);
    let b0 = chain.at(0);
    let tail = b0
        .counts()
        .into_iter()
        .filter(|(p, _)| p.r() >= 5)
        .map(|(p, c)| (p.r(), c))
        .collect();
    let p = plurigenera(wb, 8).unwrap();
    let inp = RecoveryInput::new(p.clone(), tail);
    ensure(inp.sigma5 == chain.sigma5(), || format!("sigma5 mismatch for {b}"))?;
    let got = recover(&inp).map_err(|e| format!("{b}: recovery rejected the true data: {e}"))?;
    ensure(got.b0().as_ref() == Some(b0), || format!("B^(0) of {b} recovered as {:?}", got.b0()))?;
    ensure(got.b5().as_ref() == Some(chain.at(5)), || format!("B^(5) of {b} recovered as {:?}", got.b5()))?;
    for (n, e) in [(5, got.eps5), (7, got.eps7), (8, got.eps8)] {
        ensure(e == Some(chain.epsilon(n) as i64), || format!("ε_{n} of {b}: {e:?} vs {}", chain.epsilon(n)))?;
    }
    ensure(got.eps6 == Some(0), || format!("ε_6 of {b} is {:?}", got.eps6))?;
    let s = 10 - 5 * p.get(1).unwrap() + p.get(2).unwrap();
    ensure(got.sigma == Some(s) && s == sigma(b), || format!("sigma identity fails for {b}"))?;
    for (j, v) in [(3, got.delta3), (4, got.delta4)] {
        ensure(v.map(|x| Rational::from_integer(x.into())) == Some(delta_m(b, j).unwrap()), || {
            format!("Δ^{j} identity fails for {b}")
        })?;
    }
    Ok(())
}

/// End-point minimum of `G` against a full period scan, for `1 <= m <= 2r`.
pub fn endpoint_reduction(pt: OrbifoldPoint) -> Check {
    for m in 1..=2 * pt.r() {
        ensure(g_min(pt.b(), pt.r(), m) == g_min_brute(pt.b(), pt.r(), m), || format!("g_min differs at {pt}, m = {m}"))?;
    }
    Ok(())
}

/// Closed form, recursion and the integer sweep agree for `1 <= m <= horizon`.
pub fn rr_forms_agree(wb: &WeightedBasket, horizon: u32) -> Check {
    let seq = plurigenera(wb, horizon).map_err(|e| format!("{wb}: {e}"))?;
    let mut acc = Rational::from_integer((wb.p1 as i64).into());
    for m in 1..=horizon {
        if m > 1 {
            acc += plurigenus_step(wb, m - 1).unwrap();
        }
        let closed = anti_plurigenus(wb, m).map_err(|e| format!("{wb}: {e}"))?;
        ensure(acc == Rational::from_integer(closed.into()) && seq.get(m) == Some(closed), || {
            format!("P_-{m} of {wb}: closed {closed}, recursive {acc}, sweep {:?}", seq.get(m))
        })?;
    }
    let last = anti_plurigenus_recursive(wb, horizon).map_err(|e| format!("{wb}: {e}"))?;
    ensure(seq.get(horizon) == Some(last), || format!("recursive P_-{horizon} of {wb} is {last}"))
}
