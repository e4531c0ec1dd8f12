//! Exact binary fractions `mantissa * 2^exponent` with directed rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for inexact operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    fn flip(self) -> Self {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// A dyadic rational. Kept normalized: the mantissa is odd, or zero with exponent zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

fn div_directed(n: &BigInt, d: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => n.div_floor(d),
        Round::Up => -((-n).div_floor(d)),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::new(v, 0)
    }

    /// Exact conversion; every finite double is dyadic.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Self::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Self::new(BigInt::from(m) * sign, e))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Position of the leading bit: `2^(magnitude-1) <= |self| < 2^magnitude`.
    pub fn magnitude(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.bits() as i64)
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Self::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Round to at most `prec` significant bits.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let m = div_directed(&self.mant, &pow2(shift), dir);
        Self::new(m, self.exp + shift as i64)
    }

    /// `self / other` rounded to `prec` bits. `other` must be nonzero.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let k = (prec as i64 + other.bits() as i64 - self.bits() as i64 + 2).max(0);
        let num = &self.mant << k as u64;
        let q = div_directed(&num, &other.mant, dir);
        Self::new(q, self.exp - other.exp - k).round(prec, dir)
    }

    /// Square root of a nonnegative dyadic, rounded to `prec` bits.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        self.nth_root(2, prec, dir)
    }

    /// Real `n`-th root. Negative inputs are allowed for odd `n`.
    pub fn nth_root(&self, n: u32, prec: u32, dir: Round) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if self.is_negative() {
            assert!(n % 2 == 1, "even root of a negative dyadic");
            return self.neg().nth_root(n, prec, dir.flip()).neg();
        }
        let n64 = n as i64;
        // Shift so the root has at least prec+1 bits and the exponent divides evenly.
        let mut shift = (n64 * (prec as i64 + 2) - self.bits() as i64).max(0);
        let rem = (self.exp - shift).rem_euclid(n64);
        shift += rem;
        let m = &self.mant << shift as u64;
        let mut r = m.nth_root(n);
        if dir == Round::Up && r.pow(n) != m {
            r += 1;
        }
        Self::new(r, (self.exp - shift) / n64).round(prec, dir)
    }

    /// Rational `num/den` rounded to `prec` bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, dir: Round) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (n, d) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        Self::from_bigint(n).div(&Self::from_bigint(d), prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), pow2((-self.exp) as u64))
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        self.to_rational().cmp(r)
    }

    /// Nearest-ish double; for diagnostics and float-side solvers only.
    pub fn to_f64(&self) -> f64 {
        let d = self.round(53, Round::Down);
        let m = d.mant.to_f64().unwrap_or(f64::NAN);
        let e = d.exp.clamp(-2200, 2200) as i32;
        m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    /// A double bound in the given direction: `to_f64_directed(Down) <= self`.
    pub fn to_f64_directed(&self, dir: Round) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let d = self.round(53, dir);
        let m = d.mant.to_f64().expect("53-bit mantissa fits a double");
        let e = d.exp;
        if e > 960 {
            return match (dir, d.is_positive()) {
                (Round::Up, true) => f64::INFINITY,
                (Round::Down, true) => f64::MAX,
                (Round::Up, false) => f64::MIN,
                (Round::Down, false) => f64::NEG_INFINITY,
            };
        }
        if e < -1074 {
            // Tiny values: bound by zero or the smallest normal in the right direction.
            return match (dir, d.is_positive()) {
                (Round::Down, true) => 0.0,
                (Round::Up, true) => f64::MIN_POSITIVE,
                (Round::Down, false) => -f64::MIN_POSITIVE,
                (Round::Up, false) => 0.0,
            };
        }
        // m has at most 53 bits and e >= -1074, so the result is representable.
        let e = e as i32;
        m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        let d = dy(12, 0);
        assert_eq!(d.mantissa(), &BigInt::from(3));
        assert_eq!(d.exponent(), 2);
        assert_eq!(dy(0, 17), Dyadic::zero());
    }

    #[test]
    fn directed_rounding_brackets() {
        let x = dy(0b1011_0111, 0);
        let lo = x.round(4, Round::Down);
        let hi = x.round(4, Round::Up);
        assert_eq!(lo, dy(0b1011, 4));
        assert_eq!(hi, dy(0b1100, 4));
        let n = x.neg();
        assert_eq!(n.round(4, Round::Down), dy(-0b1100, 4));
        assert_eq!(n.round(4, Round::Up), dy(-0b1011, 4));
    }

    #[test]
    fn division_brackets_one_third() {
        let one = Dyadic::one();
        let three = Dyadic::from_int(3);
        let lo = one.div(&three, 64, Round::Down);
        let hi = one.div(&three, 64, Round::Up);
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(lo.cmp_rational(&third), Ordering::Less);
        assert_eq!(hi.cmp_rational(&third), Ordering::Greater);
        assert!(hi.sub(&lo) <= dy(1, -64));
    }

    #[test]
    fn sqrt_two_brackets() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(80, Round::Down);
        let hi = two.sqrt(80, Round::Up);
        assert!(lo.mul(&lo) < two);
        assert!(hi.mul(&hi) > two);
        assert_eq!(Dyadic::from_int(9).sqrt(10, Round::Up), Dyadic::from_int(3));
    }

    #[test]
    fn cube_root_of_negative() {
        let m = Dyadic::from_int(-27);
        assert_eq!(m.nth_root(3, 20, Round::Down), Dyadic::from_int(-3));
        let two = Dyadic::from_int(-2);
        let lo = two.nth_root(3, 60, Round::Down);
        let hi = two.nth_root(3, 60, Round::Up);
        assert!(lo.mul(&lo).mul(&lo) < two);
        assert!(hi.mul(&hi).mul(&hi) > two);
    }

    #[test]
    fn f64_round_trip_and_directed() {
        for v in [0.1, -3.75, 1e-300, 12345.678] {
            let d = Dyadic::from_f64(v).unwrap();
            assert_eq!(d.to_f64_directed(Round::Down), v);
            assert_eq!(d.to_f64_directed(Round::Up), v);
        }
        let third = Dyadic::one().div(&Dyadic::from_int(3), 200, Round::Down);
        let lo = third.to_f64_directed(Round::Down);
        let hi = third.to_f64_directed(Round::Up);
        assert!(lo < hi);
        assert!(Dyadic::from_f64(lo).unwrap() <= third);
        assert!(Dyadic::from_f64(hi).unwrap() >= third);
    }
}
