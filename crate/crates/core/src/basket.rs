//! Orbifold points, baskets and weighted baskets, with the text grammar
//! `BASKET := TERM ("," TERM)*`, `TERM := [COUNT "x"] "(" B "," R ")"`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A terminal quotient point of type `1/r(1, -1, b)`, kept canonical:
/// `gcd(b, r) = 1` and `0 < b <= r/2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct OrbifoldPoint {
    b: u32,
    r: u32,
}

impl OrbifoldPoint {
    /// Builds a canonical point, rejecting anything that needs normalization.
    pub fn new(b: u32, r: u32) -> Result<Self> {
        let bad = |reason| Error::InvalidPoint { b: b.into(), r: r.into(), reason };
        if r < 2 {
            return Err(bad("r must be at least 2"));
        }
        if b == 0 || 2 * b > r {
            return Err(bad("b must satisfy 0 < b <= r/2"));
        }
        if b.gcd(&r) != 1 {
            return Err(bad("b and r must be coprime"));
        }
        Ok(Self { b, r })
    }

    /// Normalizes a raw pair: `b > r/2` reflects to `r - b`, and a pair with
    /// `gcd = k > 1` becomes `k` copies of `(b/k, r/k)`.
    pub fn normalize(b: i64, r: i64) -> Result<(Self, u32)> {
        let bad = |reason| Error::InvalidPoint { b, r, reason };
        if r < 2 || r > u32::MAX as i64 {
            return Err(bad("r must be at least 2"));
        }
        if b <= 0 || b >= r {
            return Err(bad("b must satisfy 0 < b < r"));
        }
        let b = if 2 * b > r { r - b } else { b };
        let k = b.gcd(&r);
        let p = Self::new((b / k) as u32, (r / k) as u32)?;
        Ok((p, k as u32))
    }

    pub fn b(self) -> u32 {
        self.b
    }

    pub fn r(self) -> u32 {
        self.r
    }

    /// `b1*r2 - b2*r1`; a packing of the two points is prime when this is `±1`.
    pub fn cross(self, other: Self) -> i64 {
        self.b as i64 * other.r as i64 - other.b as i64 * self.r as i64
    }
}

impl Ord for OrbifoldPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.r, self.b).cmp(&(other.r, other.b))
    }
}

impl PartialOrd for OrbifoldPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrbifoldPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.b, self.r)
    }
}

/// A finite multiset of orbifold points, stored sorted by `(r, b)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Basket {
    points: Vec<OrbifoldPoint>,
}

impl Basket {
    pub fn new(points: impl IntoIterator<Item = OrbifoldPoint>) -> Self {
        let mut points: Vec<_> = points.into_iter().collect();
        points.sort_unstable();
        Self { points }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds from `(b, r, count)` triples, normalizing each pair.
    pub fn from_raw(terms: &[(i64, i64, u32)]) -> Result<Self> {
        let mut points = Vec::new();
        for &(b, r, count) in terms {
            let (p, k) = OrbifoldPoint::normalize(b, r)?;
            points.extend(std::iter::repeat_n(p, (k * count) as usize));
        }
        Ok(Self::new(points))
    }

    pub fn points(&self) -> &[OrbifoldPoint] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = OrbifoldPoint> + '_ {
        self.points.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Distinct points with multiplicities, in canonical order.
    pub fn counts(&self) -> Vec<(OrbifoldPoint, u32)> {
        let mut out: Vec<(OrbifoldPoint, u32)> = Vec::new();
        for &p in &self.points {
            match out.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn count_of(&self, b: u32, r: u32) -> u32 {
        self.points.iter().filter(|p| p.b == b && p.r == r).count() as u32
    }

    /// Largest `r`, or 1 for the empty basket.
    pub fn r_max(&self) -> u32 {
        self.points.last().map_or(1, |p| p.r)
    }

    /// The Gorenstein index `lcm(r_i)`, 1 for the empty basket.
    pub fn gorenstein_index(&self) -> u64 {
        self.points.iter().fold(1u64, |acc, p| acc.lcm(&(p.r as u64)))
    }

    /// Replaces the points at indices `i` and `j` by their merge
    /// `(b_i + b_j, r_i + r_j)`, normalized.
    pub fn pack(&self, i: usize, j: usize) -> Result<Self> {
        let (p, q) = (self.points[i], self.points[j]);
        let (merged, k) =
            OrbifoldPoint::normalize((p.b + q.b) as i64, (p.r + q.r) as i64)?;
        let mut points: Vec<_> = self
            .points
            .iter()
            .enumerate()
            .filter(|&(idx, _)| idx != i && idx != j)
            .map(|(_, &p)| p)
            .collect();
        points.extend(std::iter::repeat_n(merged, k as usize));
        Ok(Self::new(points))
    }

    /// Paper-style rendering with braces, e.g. `{2x(1,2),(1,3)}`.
    pub fn braced(&self) -> String {
        format!("{{{self}}}")
    }
}

impl FromIterator<OrbifoldPoint> for Basket {
    fn from_iter<I: IntoIterator<Item = OrbifoldPoint>>(iter: I) -> Self {
        Self::new(iter)
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (p, c)) in self.counts().into_iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            if c > 1 {
                write!(f, "{c}x")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Basket {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let mut s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.starts_with('{') && s.ends_with('}') {
            s = s[1..s.len() - 1].to_string();
        }
        let s = s.replace('×', "x");
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let mut terms = Vec::new();
        let mut rest = s.as_str();
        loop {
            let (count, after) = match rest.find('(') {
                Some(0) => (1u32, rest),
                Some(pos) => {
                    let head = &rest[..pos];
                    let digits = head.strip_suffix('x').ok_or_else(|| err("expected COUNT \"x\" before '('"))?;
                    let count: u32 = digits.parse().map_err(|_| err("bad count"))?;
                    if count == 0 {
                        return Err(err("count must be positive"));
                    }
                    (count, &rest[pos..])
                }
                None => return Err(err("expected '('")),
            };
            let close = after.find(')').ok_or_else(|| err("missing ')'"))?;
            let inner = &after[1..close];
            let (b, r) = inner.split_once(',').ok_or_else(|| err("expected \"B,R\""))?;
            let b: i64 = b.parse().map_err(|_| err("bad b"))?;
            let r: i64 = r.parse().map_err(|_| err("bad r"))?;
            terms.push((b, r, count));
            rest = &after[close + 1..];
            if rest.is_empty() {
                break;
            }
            rest = rest.strip_prefix(',').ok_or_else(|| err("expected ',' between terms"))?;
            if rest.is_empty() {
                return Err(err("trailing ','"));
            }
        }
        Self::from_raw(&terms)
    }
}

/// A basket together with a prescribed `P_-1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeightedBasket {
    pub basket: Basket,
    pub p1: u32,
}

impl WeightedBasket {
    pub fn new(basket: Basket, p1: u32) -> Self {
        Self { basket, p1 }
    }

    pub fn parse(basket: &str, p1: u32) -> Result<Self> {
        Ok(Self::new(basket.parse()?, p1))
    }
}

impl fmt::Display for WeightedBasket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, P_-1={})", self.basket.braced(), self.p1)
    }
}

#[derive(Serialize, Deserialize)]
struct PointCount {
    b: i64,
    r: i64,
    count: u32,
}

#[derive(Serialize, Deserialize)]
struct BasketRepr {
    points: Vec<PointCount>,
}

#[derive(Serialize, Deserialize)]
struct WeightedRepr {
    points: Vec<PointCount>,
    p1: u32,
}

fn to_repr(b: &Basket) -> Vec<PointCount> {
    b.counts()
        .into_iter()
        .map(|(p, count)| PointCount { b: p.b.into(), r: p.r.into(), count })
        .collect()
}

fn from_repr(points: &[PointCount]) -> Result<Basket> {
    let terms: Vec<_> = points.iter().map(|p| (p.b, p.r, p.count)).collect();
    Basket::from_raw(&terms)
}

impl Serialize for Basket {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BasketRepr { points: to_repr(self) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Basket {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = BasketRepr::deserialize(d)?;
        from_repr(&repr.points).map_err(D::Error::custom)
    }
}

impl Serialize for WeightedBasket {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightedRepr { points: to_repr(&self.basket), p1: self.p1 }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedBasket {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = WeightedRepr::deserialize(d)?;
        let basket = from_repr(&repr.points).map_err(D::Error::custom)?;
        Ok(Self::new(basket, repr.p1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_are_canonical() {
        let b: Basket = "2x(1,2),3x(2,5),(1,3),(1,4)".parse().unwrap();
        assert_eq!(b.to_string(), "2x(1,2),(1,3),(1,4),3x(2,5)");
        let again: Basket = " { (1,4) , 3 x (2,5), (1,3),2×(1,2)} ".parse().unwrap();
        assert_eq!(b, again);
        assert_eq!(b.len(), 7);
    }

    #[test]
    fn normalization_rules() {
        let b: Basket = "(3,5)".parse().unwrap();
        assert_eq!(b.to_string(), "(2,5)");
        let b: Basket = "(2,4)".parse().unwrap();
        assert_eq!(b.to_string(), "2x(1,2)");
        let b: Basket = "(4,6)".parse().unwrap();
        assert_eq!(b.to_string(), "2x(1,3)");
        assert!("(0,5)".parse::<Basket>().is_err());
        assert!("(5,5)".parse::<Basket>().is_err());
        assert!("(1,1)".parse::<Basket>().is_err());
        assert!(OrbifoldPoint::new(3, 5).is_err());
        assert!(OrbifoldPoint::new(2, 4).is_err());
    }

    #[test]
    fn grammar_errors() {
        for bad in ["(1,2),", "x(1,2)", "0x(1,2)", "(1;2)", "(1,2)(1,3)", "2(1,2)"] {
            assert!(bad.parse::<Basket>().is_err(), "{bad}");
        }
        assert!("".parse::<Basket>().unwrap().is_empty());
        assert!("{}".parse::<Basket>().unwrap().is_empty());
    }

    #[test]
    fn indices() {
        let b: Basket = "(1,3),(2,5),(3,7),(3,8)".parse().unwrap();
        assert_eq!(b.gorenstein_index(), 840);
        let b: Basket = "2x(1,2),(2,5),(3,7),(4,9)".parse().unwrap();
        assert_eq!(b.gorenstein_index(), 630);
        assert_eq!(b.r_max(), 9);
        assert_eq!(Basket::empty().gorenstein_index(), 1);
    }

    #[test]
    fn json_form() {
        let wb = WeightedBasket::parse("2x(1,2),(1,3)", 0).unwrap();
        let s = serde_json::to_string(&wb).unwrap();
        assert_eq!(s, r#"{"points":[{"b":1,"r":2,"count":2},{"b":1,"r":3,"count":1}],"p1":0}"#);
        let back: WeightedBasket = serde_json::from_str(&s).unwrap();
        assert_eq!(back, wb);
    }

    #[test]
    fn packing_merges_and_normalizes() {
        let b: Basket = "(1,2),(1,3)".parse().unwrap();
        assert_eq!(b.pack(0, 1).unwrap().to_string(), "(2,5)");
        let b: Basket = "(1,2),(1,4)".parse().unwrap();
        assert_eq!(b.pack(0, 1).unwrap().to_string(), "2x(1,3)");
    }
}
