mod common;

use basketry::birationality::{a_of_m0, thm_main_threshold, BirationalityInputs, Variant};
use basketry::canonical::{prime_packings, unpack};
use basketry::rational::{int, rat};
use basketry::rr::{delta_m, l_neg, plurigenera, sigma, sigma_prime, volume};
use basketry::{Basket, OrbifoldPoint, Rational, WeightedBasket};
use proptest::prelude::*;

fn basket_from(max_r: u32, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Basket> {
    let universe = common::points_up_to(max_r);
    prop::collection::vec(0..universe.len(), len).prop_map(move |ix| Basket::new(ix.into_iter().map(|i| universe[i])))
}

fn point(max_r: u32) -> impl Strategy<Value = OrbifoldPoint> {
    let universe = common::points_up_to(max_r);
    (0..universe.len()).prop_map(move |i| universe[i])
}

/// Length of the longest chain of prime packings starting at `b`.
fn longest_chain(b: &Basket) -> usize {
    prime_packings(b).iter().map(|c| 1 + longest_chain(c)).max().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn deltas_vanish_at_two_and_stay_nonnegative(b in basket_from(24, 0..=10)) {
        prop_assert_eq!(delta_m(&b, 2).unwrap(), int(0));
        for m in 3..=100 {
            prop_assert!(delta_m(&b, m).unwrap() >= int(0), "Δ^{} < 0 for {}", m, b);
        }
    }

    #[test]
    fn l_neg_has_period_r(pt in point(24), n in 0u32..200) {
        let b = Basket::new([pt]);
        let r = pt.r() as i64;
        prop_assert_eq!(l_neg(&b, n + pt.r()) - l_neg(&b, n), rat(r * r - 1, 12));
    }

    #[test]
    fn volume_identity(b in basket_from(24, 0..=12), p1 in 0u32..=50) {
        let wb = WeightedBasket::new(b.clone(), p1);
        prop_assert_eq!(volume(&wb) + sigma_prime(&b), int(2 * p1 as i64 + sigma(&b) - 6));
    }

    #[test]
    fn plurigenera_are_integral(b in basket_from(24, 0..=12), p1 in 0u32..=50) {
        prop_assert!(plurigenera(&WeightedBasket::new(b, p1), 100).is_ok());
    }

    #[test]
    fn rr_forms_agree(b in basket_from(24, 0..=10), p1 in 0u32..=50) {
        common::rr_forms_agree(&WeightedBasket::new(b, p1), 100).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn packing_is_monotone(b in basket_from(13, 2..=8), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), p1 in 0u32..=5) {
        let (i, j) = (i.index(b.len()), j.index(b.len()));
        prop_assume!(i != j);
        common::packing_monotone(&WeightedBasket::new(b, p1), i, j, 100).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn chain_invariants(b in basket_from(13, 0..=8), p1 in 0u32..=5) {
        common::chain_invariants(&b, p1).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn recovery_round_trip(b in basket_from(13, 0..=8), p1 in 0u32..=5) {
        common::recovery_round_trip(&WeightedBasket::new(b, p1)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn unpacking_is_identity_past_rmax(b in basket_from(24, 0..=8), extra in 0u32..10) {
        let n = b.r_max().max(5) + extra;
        prop_assert_eq!(unpack(&b, n).unwrap(), b);
    }

    #[test]
    fn prime_packings_drop_one_point(b in basket_from(13, 0..=6)) {
        for c in prime_packings(&b) {
            prop_assert_eq!(c.len() + 1, b.len());
            prop_assert_eq!(sigma(&c), sigma(&b));
        }
        prop_assert!(longest_chain(&b) < b.len().max(1));
    }
}

fn inputs(m0: u32, m1: u32, mu0: (i64, i64), rmax: u32, nu0: u32) -> BirationalityInputs {
    BirationalityInputs::new(m0, m1).with_mu0(rat(mu0.0, mu0.1), "test").with_rmax(rmax).with_nu0(nu0)
}

/// The threshold formulas with integer floors only.
fn threshold_oracle(m0: u32, m1: u32, (p, q): (i64, i64), rmax: u32, nu0: u32, v: Variant) -> i64 {
    let (m0, m1, rmax, nu0) = (m0 as i64, m1 as i64, rmax as i64, nu0 as i64);
    let base = m0 + m1 + a_of_m0(m0 as u32) as i64;
    let other = match v {
        Variant::I => (3 * p).div_euclid(q) + 3 * m1,
        Variant::II => (5 * (p + m1 * q)).div_euclid(3 * q).max(p.div_euclid(q) + m1 + 2 * rmax),
        Variant::III => p.div_euclid(q) + m1 + 2 * nu0 * rmax,
    };
    base.max(other)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn thresholds_match_integer_oracle(m0 in 1u32..20, dm in 0u32..80, p in 1i64..200, q in 1i64..12, rmax in 2u32..=24, nu0 in 1u32..4) {
        let inp = inputs(m0, m0 + dm, (p, q), rmax, nu0);
        for v in Variant::ALL {
            prop_assert_eq!(thm_main_threshold(&inp, v).unwrap() as i64, threshold_oracle(m0, m0 + dm, (p, q), rmax, nu0, v));
        }
    }

    #[test]
    fn thresholds_are_monotone(m0 in 1u32..20, dm in 0u32..80, p in 1i64..200, q in 1i64..12, rmax in 2u32..=24, nu0 in 1u32..4, step in 1u32..5) {
        let m1 = m0 + dm;
        let base = inputs(m0, m1, (p, q), rmax, nu0);
        let bigger = [
            inputs(m0 + step, m1 + step, (p, q), rmax, nu0),
            inputs(m0, m1 + step, (p, q), rmax, nu0),
            inputs(m0, m1, (p + step as i64, q), rmax, nu0),
            inputs(m0, m1, (p, q), rmax + step, nu0),
            inputs(m0, m1, (p, q), rmax, nu0 + step),
        ];
        for v in Variant::ALL {
            let t = thm_main_threshold(&base, v).unwrap();
            for inp in &bigger {
                prop_assert!(thm_main_threshold(inp, v).unwrap() >= t, "{} {:?}", v, inp.describe());
            }
        }
        // m0 alone, keeping m1 >= m0
        if m0 + step <= m1 {
            let inp = inputs(m0 + step, m1, (p, q), rmax, nu0);
            for v in Variant::ALL {
                prop_assert!(thm_main_threshold(&inp, v).unwrap() >= thm_main_threshold(&base, v).unwrap());
            }
        }
    }

    #[test]
    fn middle_term_floor_identity(mu0 in 1i64..200, m1 in 1u32..200) {
        // with rmax = 2 and m0 = 1 the middle term of (ii) dominates once mu0 + m1 is large
        let inp = inputs(1, m1, (mu0, 1), 2, 1);
        let expect = (5 * (mu0 + m1 as i64)).div_euclid(3).max(mu0 + m1 as i64 + 4).max(m1 as i64 + 2);
        prop_assert_eq!(thm_main_threshold(&inp, Variant::II).unwrap() as i64, expect);
        let exact: Rational = rat(5, 3) * (int(mu0) + int(m1 as i64));
        prop_assert_eq!(exact.floor().to_integer(), (5 * (mu0 + m1 as i64) / 3).into());
    }
}
