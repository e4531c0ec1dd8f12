//! Angles that are exact rational multiples of π, angle tuples in the fixed
//! edge order `(12, 34, 13, 24, 14, 23)`, and vertex relabelings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Vertex pairs of the six edges, in slot order.
pub const EDGE_VERTICES: [(u8, u8); 6] = [(1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (2, 3)];

pub const EDGE_LABELS: [&str; 6] = ["12", "34", "13", "24", "14", "23"];

/// Slots `2k` and `2k+1` hold the `k`-th pair of opposite edges.
pub const OPPOSITE_PAIRS: [(usize, usize); 3] = [(0, 1), (2, 3), (4, 5)];

pub fn opposite(edge: usize) -> usize {
    edge ^ 1
}

/// Two distinct edges are incident iff they are not opposite.
pub fn incident(a: usize, b: usize) -> bool {
    a != b && opposite(a) != b
}

/// Slot of the edge joining two distinct vertices (1-based).
pub fn edge_slot(u: u8, v: u8) -> usize {
    let key = (u.min(v), u.max(v));
    EDGE_VERTICES
        .iter()
        .position(|&e| e == key)
        .expect("distinct vertices in 1..=4")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AngleError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("dihedral angle {0}π is not strictly between 0 and π")]
    OutOfRange(String),
    #[error("cannot parse angle {0:?}: expected p/q")]
    Syntax(String),
    #[error("expected 6 angles, got {0}")]
    Arity(usize),
    #[error("not a permutation of {{1,2,3,4}}: {0:?}")]
    BadPermutation([u8; 4]),
}

/// An angle `(p/q)·π`, stored in lowest terms with `q > 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalAngle(BigRational);

impl RationalAngle {
    pub fn new(numerator: i64, denominator: i64) -> Result<Self, AngleError> {
        if denominator == 0 {
            return Err(AngleError::ZeroDenominator);
        }
        Ok(RationalAngle(BigRational::new(
            numerator.into(),
            denominator.into(),
        )))
    }

    /// A dihedral angle: strictly inside `(0, π)`.
    pub fn dihedral(numerator: i64, denominator: i64) -> Result<Self, AngleError> {
        Self::new(numerator, denominator)?.into_dihedral()
    }

    pub fn from_multiplier(r: BigRational) -> Self {
        RationalAngle(r)
    }

    pub fn zero() -> Self {
        RationalAngle(BigRational::zero())
    }

    pub fn into_dihedral(self) -> Result<Self, AngleError> {
        if self.is_dihedral() {
            Ok(self)
        } else {
            Err(AngleError::OutOfRange(self.to_string()))
        }
    }

    pub fn is_dihedral(&self) -> bool {
        self.0.is_positive() && self.0 < BigRational::one()
    }

    /// The rational `r` with angle `r·π`.
    pub fn multiplier(&self) -> &BigRational {
        &self.0
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_multiple_of_pi(&self, k: i64) -> bool {
        self.0 == BigRational::from_integer(k.into())
    }

    /// `self` divides 2π: the ratio `2π / self` is an integer.
    pub fn divides_two_pi(&self) -> bool {
        if self.0.is_zero() {
            return false;
        }
        let twice_den: BigInt = self.0.denom() * 2;
        twice_den.is_multiple_of(self.0.numer())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for RationalAngle {
    type Err = AngleError;

    /// `"p/q"` or `"p"`, meaning `(p/q)·π`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || AngleError::Syntax(s.to_string());
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: i64 = p.parse().map_err(|_| bad())?;
        let q: i64 = q.parse().map_err(|_| bad())?;
        Self::new(p, q)
    }
}

impl Serialize for RationalAngle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let p = self.0.numer().to_i64();
        let q = self.0.denom().to_i64();
        match (p, q) {
            (Some(p), Some(q)) => [p, q].serialize(s),
            _ => Err(serde::ser::Error::custom(
                "angle does not fit 64-bit integers",
            )),
        }
    }
}

impl<'de> Deserialize<'de> for RationalAngle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [p, q] = <[i64; 2]>::deserialize(d)?;
        if q <= 0 {
            return Err(D::Error::custom(format!(
                "denominator must be positive, got {q}"
            )));
        }
        if p.gcd(&q) != 1 {
            return Err(D::Error::custom(format!(
                "[{p}, {q}] is not in lowest terms"
            )));
        }
        RationalAngle::new(p, q).map_err(D::Error::custom)
    }
}

/// Six angles in the slot order `(12, 34, 13, 24, 14, 23)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AngleTuple(pub [RationalAngle; 6]);

impl AngleTuple {
    /// Checked constructor: every angle must be a dihedral angle.
    pub fn new(angles: [RationalAngle; 6]) -> Result<Self, AngleError> {
        for a in &angles {
            if !a.is_dihedral() {
                return Err(AngleError::OutOfRange(a.to_string()));
            }
        }
        Ok(AngleTuple(angles))
    }

    pub fn from_ratios(ratios: [(i64, i64); 6]) -> Result<Self, AngleError> {
        let mut v = Vec::with_capacity(6);
        for (p, q) in ratios {
            v.push(RationalAngle::dihedral(p, q)?);
        }
        Ok(AngleTuple(v.try_into().expect("six angles")))
    }

    /// Parse `"p/q,p/q,..."` (six entries, π implicit).
    pub fn parse_list(s: &str) -> Result<Self, AngleError> {
        let parts: Vec<&str> = s.split(',').filter(|p| !p.trim().is_empty()).collect();
        if parts.len() != 6 {
            return Err(AngleError::Arity(parts.len()));
        }
        let mut v = Vec::with_capacity(6);
        for p in parts {
            v.push(p.parse::<RationalAngle>()?);
        }
        Self::new(v.try_into().expect("six angles"))
    }

    pub fn angles(&self) -> &[RationalAngle; 6] {
        &self.0
    }

    pub fn get(&self, edge: usize) -> &RationalAngle {
        &self.0[edge]
    }

    pub fn permuted(&self, sigma: &VertexPermutation) -> AngleTuple {
        permute_tuple(self, sigma)
    }
}

impl fmt::Display for AngleTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")π")
    }
}

/// `Σ coeffs[e]·angles[e]`, exact.
pub fn angle_sum(coeffs: &[u32; 6], angles: &AngleTuple) -> RationalAngle {
    let mut acc = BigRational::zero();
    for (c, a) in coeffs.iter().zip(angles.0.iter()) {
        if *c != 0 {
            acc += a.multiplier() * BigRational::from_integer(BigInt::from(*c));
        }
    }
    RationalAngle(acc)
}

/// A bijection of the vertex labels `{1,2,3,4}`; `images[v-1]` is the image of `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPermutation([u8; 4]);

impl VertexPermutation {
    pub fn new(images: [u8; 4]) -> Result<Self, AngleError> {
        let mut seen = [false; 4];
        for &v in &images {
            if !(1..=4).contains(&v) || seen[(v - 1) as usize] {
                return Err(AngleError::BadPermutation(images));
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(VertexPermutation(images))
    }

    pub fn identity() -> Self {
        VertexPermutation([1, 2, 3, 4])
    }

    /// All 24 permutations in lexicographic order of their image lists.
    pub fn all() -> Vec<VertexPermutation> {
        let mut out = Vec::with_capacity(24);
        for a in 1..=4u8 {
            for b in 1..=4u8 {
                for c in 1..=4u8 {
                    for d in 1..=4u8 {
                        if let Ok(p) = Self::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn images(&self) -> [u8; 4] {
        self.0
    }

    pub fn apply(&self, v: u8) -> u8 {
        self.0[(v - 1) as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        let mut out = [0u8; 4];
        for v in 1..=4u8 {
            out[(v - 1) as usize] = self.apply(other.apply(v));
        }
        VertexPermutation(out)
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut out = [0u8; 4];
        for v in 1..=4u8 {
            out[(self.apply(v) - 1) as usize] = v;
        }
        VertexPermutation(out)
    }

    /// Induced map on edge slots: edge `e` is sent to slot `edge_map()[e]`.
    pub fn edge_map(&self) -> [usize; 6] {
        let mut m = [0usize; 6];
        for (e, &(u, v)) in EDGE_VERTICES.iter().enumerate() {
            m[e] = edge_slot(self.apply(u), self.apply(v));
        }
        m
    }
}

/// Angle tuple of the relabeled tetrahedron: the angle on edge `e` moves to
/// the slot of its image edge.
pub fn permute_tuple(angles: &AngleTuple, sigma: &VertexPermutation) -> AngleTuple {
    AngleTuple(permute_slots(&angles.0, sigma))
}

/// Move per-edge data along a relabeling, the same way as [`permute_tuple`].
pub fn permute_slots<T: Clone>(values: &[T; 6], sigma: &VertexPermutation) -> [T; 6] {
    let m = sigma.edge_map();
    let mut out: [Option<T>; 6] = Default::default();
    for e in 0..6 {
        out[m[e]] = Some(values[e].clone());
    }
    out.map(|v| v.expect("edge map is a bijection"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ang(p: i64, q: i64) -> RationalAngle {
        RationalAngle::new(p, q).unwrap()
    }

    fn sample_tuple() -> AngleTuple {
        AngleTuple::from_ratios([(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)]).unwrap()
    }

    #[test]
    fn reduces_on_construction() {
        let a = ang(6, 8);
        assert_eq!(a.numerator(), &BigInt::from(3));
        assert_eq!(a.denominator(), &BigInt::from(4));
        let b = ang(3, -4);
        assert_eq!(b.numerator(), &BigInt::from(-3));
        assert_eq!(b.denominator(), &BigInt::from(4));
    }

    #[test]
    fn dihedral_range_is_open() {
        assert!(RationalAngle::dihedral(1, 2).is_ok());
        assert!(RationalAngle::dihedral(0, 3).is_err());
        assert!(RationalAngle::dihedral(1, 1).is_err());
        assert!(RationalAngle::dihedral(4, 3).is_err());
    }

    #[test]
    fn parse_angles() {
        assert_eq!("7/12".parse::<RationalAngle>().unwrap(), ang(7, 12));
        assert!("7/0".parse::<RationalAngle>().is_err());
        assert!("x".parse::<RationalAngle>().is_err());
        let t = AngleTuple::parse_list("7/12,5/12,5/12,5/12,1/4,1/4").unwrap();
        assert_eq!(t.get(0), &ang(7, 12));
        assert!(AngleTuple::parse_list("1/2,1/2").is_err());
    }

    #[test]
    fn divides_two_pi_examples() {
        assert!(ang(1, 3).divides_two_pi());
        assert!(!ang(3, 20).divides_two_pi());
        assert!(ang(2, 5).divides_two_pi());
        assert!(ang(2, 3).divides_two_pi());
        assert!(!ang(19, 60).divides_two_pi());
    }

    #[test]
    fn divides_two_pi_exhaustive() {
        for q in 1..=100i64 {
            for p in 1..q {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let expected = (2 * q) % p == 0;
                assert_eq!(ang(p, q).divides_two_pi(), expected, "{p}/{q}");
            }
        }
    }

    #[test]
    fn angle_sum_examples() {
        let x = ang(19, 60);
        let t = AngleTuple([
            RationalAngle::from_multiplier(ang(5, 6).multiplier() - x.multiplier()),
            RationalAngle::from_multiplier(ang(1, 6).multiplier() + x.multiplier()),
            ang(1, 2),
            ang(1, 2),
            x.clone(),
            x,
        ]);
        assert!(angle_sum(&[1, 1, 0, 0, 0, 0], &t).is_multiple_of_pi(1));
        assert!(angle_sum(&[0; 6], &t).is_multiple_of_pi(0));

        let quarter = ang(1, 4);
        let u = AngleTuple([
            RationalAngle::from_multiplier(ang(2, 3).multiplier() - quarter.multiplier()),
            ang(1, 2),
            ang(1, 2),
            ang(1, 2),
            quarter,
            ang(1, 2),
        ]);
        assert!(angle_sum(&[3, 0, 0, 0, 3, 0], &u).is_multiple_of_pi(2));
    }

    #[test]
    fn permutation_examples() {
        let t = sample_tuple();
        assert_eq!(permute_tuple(&t, &VertexPermutation::identity()), t);
        let a = t.0.clone();
        let s = VertexPermutation::new([2, 1, 4, 3]).unwrap();
        let expect = AngleTuple([
            a[0].clone(),
            a[1].clone(),
            a[3].clone(),
            a[2].clone(),
            a[5].clone(),
            a[4].clone(),
        ]);
        assert_eq!(permute_tuple(&t, &s), expect);
        let s = VertexPermutation::new([4, 3, 2, 1]).unwrap();
        let expect = AngleTuple([
            a[1].clone(),
            a[0].clone(),
            a[3].clone(),
            a[2].clone(),
            a[4].clone(),
            a[5].clone(),
        ]);
        assert_eq!(permute_tuple(&t, &s), expect);
    }

    #[test]
    fn twenty_four_permutations() {
        let all = VertexPermutation::all();
        assert_eq!(all.len(), 24);
        for p in &all {
            assert_eq!(p.compose(&p.inverse()), VertexPermutation::identity());
        }
        assert!(VertexPermutation::new([1, 1, 2, 3]).is_err());
    }

    #[test]
    fn opposite_and_incident() {
        assert_eq!(opposite(0), 1);
        assert_eq!(opposite(5), 4);
        assert!(incident(0, 2));
        assert!(!incident(2, 3));
        let incident_pairs = (0..6)
            .flat_map(|a| (0..6).map(move |b| (a, b)))
            .filter(|&(a, b)| a < b && incident(a, b))
            .count();
        assert_eq!(incident_pairs, 12);
    }

    proptest! {
        #[test]
        fn permutation_composition(
            nums in proptest::array::uniform6(1i64..30),
            i in 0usize..24,
            j in 0usize..24,
        ) {
            let t = AngleTuple(nums.map(|n| ang(n, 31)));
            let all = VertexPermutation::all();
            let (s, u) = (all[i], all[j]);
            let twice = permute_tuple(&permute_tuple(&t, &s), &u);
            prop_assert_eq!(twice, permute_tuple(&t, &u.compose(&s)));
        }

        #[test]
        fn angle_sum_is_additive(
            a in proptest::array::uniform6(0u32..8),
            b in proptest::array::uniform6(0u32..8),
            nums in proptest::array::uniform6(1i64..40),
        ) {
            let t = AngleTuple(nums.map(|n| ang(n, 41)));
            let mut c = [0u32; 6];
            for e in 0..6 { c[e] = a[e] + b[e]; }
            let lhs = angle_sum(&c, &t);
            let rhs = angle_sum(&a, &t).multiplier() + angle_sum(&b, &t).multiplier();
            prop_assert_eq!(lhs.multiplier(), &rhs);
        }
    }
}
