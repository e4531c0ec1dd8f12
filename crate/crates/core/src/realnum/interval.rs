//! Closed intervals with dyadic endpoints and outward rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::dyadic::{Dyadic, Round};
use super::NumericError;

/// `[lo, hi]` with both endpoints rounded outward to `prec` bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        Interval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn point(d: Dyadic, prec: u32) -> Self {
        Self::new(d.clone(), d, prec)
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Self::point(Dyadic::from_int(v), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_int(0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_ratio(r.numer(), r.denom(), prec, Round::Down),
            hi: Dyadic::from_ratio(r.numer(), r.denom(), prec, Round::Up),
            prec,
        }
    }

    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Self {
        Self::from_rational(&BigRational::new(num.into(), den.into()), prec)
    }

    /// Smallest interval containing `[-r, r]`.
    pub fn symmetric(r: &Dyadic, prec: u32) -> Self {
        let a = r.abs();
        Self::new(a.neg(), a, prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> f64 {
        self.lo.add(&self.hi).mul_pow2(-1).to_f64()
    }

    /// Outward double bounds, suitable for reporting.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (
            self.lo.to_f64_directed(Round::Down),
            self.hi.to_f64_directed(Round::Up),
        )
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.lo.is_negative()
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        self.lo.cmp_rational(r) != Ordering::Greater && self.hi.cmp_rational(r) != Ordering::Less
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Certain ordering when the enclosures are disjoint.
    pub fn separation(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        Self::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn hull(&self, other: &Interval) -> Self {
        let lo = self.lo.clone().min(other.lo.clone());
        let hi = self.hi.clone().max(other.hi.clone());
        Self::new(lo, hi, self.prec.max(other.prec))
    }

    /// Pointwise minimum `{min(a, b) : a in self, b in other}`.
    pub fn min(&self, other: &Interval) -> Self {
        let lo = self.lo.clone().min(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        Self::new(lo, hi, self.prec.max(other.prec))
    }

    pub fn max(&self, other: &Interval) -> Self {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().max(other.hi.clone());
        Self::new(lo, hi, self.prec.max(other.prec))
    }

    pub fn abs(&self) -> Self {
        if self.is_nonnegative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            let m = self.lo.abs().max(self.hi.clone());
            Self::new(Dyadic::zero(), m, self.prec)
        }
    }

    /// Tighter than `self * self`: the result never dips below zero.
    pub fn square(&self) -> Self {
        let a = self.abs();
        Self::new(a.lo.mul(&a.lo), a.hi.mul(&a.hi), self.prec)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.prec);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        let d = Dyadic::from_bigint(k.clone());
        let a = self.lo.mul(&d);
        let b = self.hi.mul(&d);
        if k.is_negative() {
            Self::new(b, a, self.prec)
        } else {
            Self::new(a, b, self.prec)
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn recip(&self) -> Result<Self, NumericError> {
        Self::one(self.prec).checked_div(self)
    }

    pub fn checked_div(&self, other: &Interval) -> Result<Self, NumericError> {
        if other.contains_zero() {
            return Err(NumericError::DivisionByZero);
        }
        let prec = self.prec.max(other.prec);
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                let l = a.div(b, prec, Round::Down);
                let h = a.div(b, prec, Round::Up);
                lo = Some(match lo {
                    Some(x) if x <= l => x,
                    _ => l,
                });
                hi = Some(match hi {
                    Some(x) if x >= h => x,
                    _ => h,
                });
            }
        }
        Ok(Self::new(lo.unwrap(), hi.unwrap(), prec))
    }

    /// Square root; a lower endpoint dipping below zero is clamped to zero.
    pub fn sqrt(&self) -> Result<Self, NumericError> {
        if self.hi.is_negative() {
            return Err(NumericError::NegativeSqrt);
        }
        let lo = if self.lo.is_negative() {
            Dyadic::zero()
        } else {
            self.lo.sqrt(self.prec, Round::Down)
        };
        let hi = self.hi.sqrt(self.prec, Round::Up);
        Ok(Self::new(lo, hi, self.prec))
    }

    pub fn cbrt(&self) -> Self {
        let lo = self.lo.nth_root(3, self.prec, Round::Down);
        let hi = self.hi.nth_root(3, self.prec, Round::Up);
        Self::new(lo, hi, self.prec)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_f64_bounds();
        write!(f, "[{lo:e}, {hi:e}]")
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::new(
            self.lo.add(&rhs.lo),
            self.hi.add(&rhs.hi),
            self.prec.max(rhs.prec),
        )
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new(
            self.lo.sub(&rhs.hi),
            self.hi.sub(&rhs.lo),
            self.prec.max(rhs.prec),
        )
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let products = [
            self.lo.mul(&rhs.lo),
            self.lo.mul(&rhs.hi),
            self.hi.mul(&rhs.lo),
            self.hi.mul(&rhs.hi),
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval::new(lo, hi, self.prec.max(rhs.prec))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: &Interval) -> Interval {
                (&self).$m(rhs)
            }
        }
        impl $tr<Interval> for &Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
