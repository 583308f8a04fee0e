mod common;

use std::collections::BTreeSet;

use basketry::canonical::{closure_with_budget, dominated_baskets};
use basketry::delta1::{replay_delta1, Family};
use basketry::index_bound::{
    budget_of, enumerate_admissible, max_index_given_rmax, max_index_report, MAX_R, PRIME_POWERS,
};
use basketry::pencil::{k1_condition, k1_tabulated};
use basketry::rational::{int, rat};
use basketry::rr::{l_neg, local_correction, local_correction_unreduced};
use basketry::search::{brute_force, search, ConstraintSet};
use basketry::{Basket, WeightedBasket};
use num_integer::Integer;

#[test]
fn tabulated_conditions_match_end_points() {
    for pt in common::points_up_to(24) {
        for m in 1..=3 * pt.r() {
            for (c, v) in k1_tabulated(pt, m) {
                assert_eq!(v, k1_condition(pt, m), "condition ({c}) at {pt}, m = {m}");
            }
        }
    }
}

#[test]
fn end_point_reduction() {
    for pt in common::points_up_to(24) {
        common::endpoint_reduction(pt).unwrap();
    }
}

#[test]
fn local_correction_telescopes() {
    for pt in common::points_up_to(24) {
        let (b, r) = (pt.b(), pt.r());
        let single = Basket::new([pt]);
        let rr = r as i64;
        for t in 1..=2 * r {
            let expect = -rat(t as i64 * (rr * rr - 1), 12 * rr) + l_neg(&single, t - 1);
            assert_eq!(local_correction_unreduced(b, r, t), expect, "({b},{r}) at {t}");
        }
        assert_eq!(local_correction_unreduced(b, r, r), int(0));
        assert_eq!(local_correction(b, r, 0).unwrap(), int(0));
        assert!(local_correction(b, r, r).is_err());
    }
}

#[test]
fn ab_inequality() {
    let mut fails = Vec::new();
    for a in 2..=24i64 {
        for b in a + 1..=24i64 {
            if a.gcd(&b) == 1 {
                let lhs = int(a * b) - rat(1, a * b);
                let rhs = int(a) - rat(1, a) + int(b) - rat(1, b);
                // the form without the +2 is what the reduction to prime powers uses
                assert!(lhs >= rhs, "({a},{b})");
                if lhs < rhs + int(2) {
                    fails.push((a, b));
                }
            }
        }
    }
    // 6 - 1/6 = 35/6 against 3/2 + 8/3 + 2 = 37/6
    assert_eq!(fails, [(2, 3)]);
}

#[test]
fn admissible_multisets_are_closed_and_complete() {
    let all = enumerate_admissible(&int(24)).unwrap();
    let set: BTreeSet<Vec<u32>> = all.iter().map(|m| m.values.clone()).collect();
    for m in &all {
        assert!(m.budget() <= int(24));
        for &s in &PRIME_POWERS {
            let mut v = m.values.clone();
            v.push(s);
            v.sort();
            assert_eq!(set.contains(&v), budget_of(&v) <= int(24), "{m} + {s}");
        }
    }
}

#[test]
fn global_index_is_max_over_rmax() {
    let by_rmax = (2..=MAX_R).map(|r| max_index_given_rmax(r).unwrap()).max().unwrap();
    assert_eq!(by_rmax, max_index_report().max_lcm);
}

/// `γ > 0` in integers: `Σ (r² - 1) · (L / r) < 24 L` with `L = lcm(r_i)`.
fn gamma_positive(b: &Basket) -> bool {
    let l = b.gorenstein_index() as i128;
    let s: i128 = b.iter().map(|p| (p.r() as i128 * p.r() as i128 - 1) * (l / p.r() as i128)).sum();
    s < 24 * l
}

#[test]
fn gamma_pruning_is_sound() {
    for b in common::all_baskets(&common::points_up_to(13), 6) {
        let pruned = dominated_baskets(&b, &gamma_positive);
        let filtered: BTreeSet<Basket> =
            dominated_baskets(&b, &|_| true).into_iter().filter(gamma_positive).collect();
        assert_eq!(pruned, filtered, "{b}");
    }
}

#[test]
fn closure_budget_is_enforced() {
    let b: Basket = "4x(1,2),4x(1,3),2x(1,4)".parse().unwrap();
    assert!(closure_with_budget(&b, &|_| true, 3).is_err());
    assert!(closure_with_budget(&b, &|_| true, 10_000).is_ok());
}

fn within_caps(wb: &WeightedBasket, max_points: usize, max_r: u32) -> bool {
    wb.basket.len() <= max_points && wb.basket.r_max() <= max_r
}

#[test]
fn search_matches_brute_force() {
    let sets = [
        ConstraintSet::qfano(0),
        ConstraintSet::qfano(1),
        ConstraintSet::qfano(2),
        ConstraintSet::weak(0),
        ConstraintSet::weak(1).pin(2, 2),
        ConstraintSet::qfano(1).without_superadditivity().without_volume(),
        ConstraintSet::weak(2).pin(2, 3).at_most(4, 9),
    ];
    for cs in sets {
        let mut fast: Vec<WeightedBasket> =
            search(&cs).unwrap().survivors.into_iter().filter(|w| within_caps(w, 5, 8)).collect();
        fast.sort();
        assert_eq!(fast, brute_force(&cs, 5, 8), "{:?}", cs.describe());
    }
}

#[test]
fn certificates_re_verify() {
    for family in [Family::P1Eq2, Family::P1Eq1, Family::P1Eq0] {
        let rep = replay_delta1(family).unwrap();
        assert!(rep.failed_certificates().is_empty(), "{}", rep.case);
    }
    let out = search(&ConstraintSet::weak(1).pin(2, 1)).unwrap();
    for e in &out.eliminated {
        assert!(e.certificate.verify(&e.basket), "{}", e.basket);
    }
}

#[test]
fn runs_are_deterministic() {
    let a = replay_delta1(Family::P1Eq1).unwrap().to_json();
    let b = replay_delta1(Family::P1Eq1).unwrap().to_json();
    assert_eq!(a, b);
    let cs = ConstraintSet::qfano(0);
    let (x, y) = (search(&cs).unwrap(), search(&cs).unwrap());
    assert_eq!(x.survivors, y.survivors);
    assert_eq!(x.eliminated.len(), y.eliminated.len());
}
