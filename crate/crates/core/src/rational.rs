//! Helpers around [`BigRational`]. Every rational quantity in the crate is a
//! `Rational`; nothing here ever touches floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `Some(n)` when `q` is an integer that fits in `i64`.
pub fn as_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn floor_i64(q: &Rational) -> i64 {
    q.floor().numer().to_i64().expect("floor out of i64 range")
}

pub fn ceil_i64(q: &Rational) -> i64 {
    q.ceil().numer().to_i64().expect("ceil out of i64 range")
}

/// Least integer `m >= 0` with `m^2 >= q`, by integer bisection.
pub fn ceil_sqrt(q: &Rational) -> i64 {
    if !q.is_positive() {
        return 0;
    }
    let (mut lo, mut hi) = (0i64, 1i64);
    while int(hi * hi) < *q {
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if int(mid * mid) >= *q {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Parses `N`, `-N` or `N/D`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Serde adapter writing a rational as `"n/d"`.
pub mod as_string {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_sqrt_boundaries() {
        assert_eq!(ceil_sqrt(&int(0)), 0);
        assert_eq!(ceil_sqrt(&int(1)), 1);
        assert_eq!(ceil_sqrt(&int(630)), 26);
        assert_eq!(ceil_sqrt(&int(625)), 25);
        assert_eq!(ceil_sqrt(&rat(6251, 10)), 26);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("7/9"), Some(rat(7, 9)));
        assert_eq!(parse_rational(" 4 "), Some(int(4)));
        assert_eq!(parse_rational("-2/4"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn floors() {
        assert_eq!(floor_i64(&rat(230, 3)), 76);
        assert_eq!(floor_i64(&rat(-1, 2)), -1);
        assert_eq!(ceil_i64(&rat(56, 3)), 19);
    }
}
