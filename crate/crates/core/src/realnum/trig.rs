//! Enclosures of π and of cos/sin at rational multiples of π.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::Dyadic;
use super::interval::Interval;

const GUARD_BITS: u32 = 48;

fn pi_cache() -> &'static Mutex<HashMap<u32, Interval>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Fixed-point enclosure of `atan(1/n) * 2^scale_bits` from the alternating series.
fn atan_inv_fixed(n: u64, scale_bits: u32) -> (BigInt, BigInt) {
    let scale = BigInt::one() << scale_bits;
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut power = n.clone();
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let denom = &power * BigInt::from(2 * k + 1);
        let floor = &scale / &denom;
        if floor.is_zero() {
            // Remainder is bounded by this term, itself below one unit.
            lo -= 1;
            hi += 1;
            break;
        }
        let ceil = &floor + 1;
        if k % 2 == 0 {
            lo += &floor;
            hi += &ceil;
        } else {
            lo -= &ceil;
            hi -= &floor;
        }
        power *= &n2;
        k += 1;
    }
    (lo, hi)
}

/// Enclosure of π with `prec`-bit endpoints (Machin's formula).
pub fn pi(prec: u32) -> Interval {
    if let Some(hit) = pi_cache().lock().unwrap().get(&prec) {
        return hit.clone();
    }
    let w = prec + GUARD_BITS;
    let (a_lo, a_hi) = atan_inv_fixed(5, w);
    let (b_lo, b_hi) = atan_inv_fixed(239, w);
    let lo = BigInt::from(16) * a_lo - BigInt::from(4) * b_hi;
    let hi = BigInt::from(16) * a_hi - BigInt::from(4) * b_lo;
    let e = -(w as i64);
    let out = Interval::new(Dyadic::new(lo, e), Dyadic::new(hi, e), prec);
    pi_cache().lock().unwrap().insert(prec, out.clone());
    out
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Cosine of `r·π` for `r` in `[0, 1]` when it is rational (Niven), else `None`.
fn exact_cos_pi(r: &BigRational) -> Option<BigRational> {
    let table = [
        (rat(0, 1), rat(1, 1)),
        (rat(1, 3), rat(1, 2)),
        (rat(1, 2), rat(0, 1)),
        (rat(2, 3), rat(-1, 2)),
        (rat(1, 1), rat(-1, 1)),
    ];
    table
        .into_iter()
        .find(|(x, _)| x == r)
        .map(|(_, value)| value)
}

/// Taylor sums for `cos θ` or `sin θ` with `0 <= θ <= π/4`.
fn taylor(theta: &Interval, odd: bool, prec: u32) -> Interval {
    let theta2 = theta.square();
    let mut term = if odd {
        theta.clone()
    } else {
        Interval::one(prec)
    };
    let mut sum = Interval::zero(prec);
    let mut k: i64 = if odd { 1 } else { 0 };
    let tiny = Dyadic::new(BigInt::one(), -(prec as i64) - 4);
    let mut sign_positive = true;
    loop {
        if term.hi() < &tiny && k > 2 {
            // Alternating series with decreasing terms: the tail is bounded by the next term.
            let tail = Interval::symmetric(term.hi(), prec);
            return &sum + &tail;
        }
        sum = if sign_positive {
            &sum + &term
        } else {
            &sum - &term
        };
        sign_positive = !sign_positive;
        let denom = BigInt::from((k + 1) * (k + 2));
        term = (&term * &theta2)
            .checked_div(&Interval::point(Dyadic::from_bigint(denom), prec))
            .expect("positive constant divisor");
        k += 2;
    }
}

fn cos_cache() -> &'static Mutex<HashMap<(BigRational, u32), Interval>> {
    static CACHE: OnceLock<Mutex<HashMap<(BigRational, u32), Interval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Enclosure of `cos(r·π)` for any rational `r`.
pub fn cos_pi(r: &BigRational, prec: u32) -> Interval {
    let key = (r.clone(), prec);
    if let Some(hit) = cos_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let v = cos_pi_uncached(r, prec);
    cos_cache().lock().unwrap().insert(key, v.clone());
    v
}

fn cos_pi_uncached(r: &BigRational, prec: u32) -> Interval {
    let two = BigRational::from_integer(2.into());
    // r mod 2, then fold into [0, 1] by cos(2π - θ) = cos θ.
    let mut r = r - &two * (r / &two).floor();
    if r > BigRational::one() {
        r = &two - r;
    }
    if let Some(v) = exact_cos_pi(&r) {
        return Interval::from_rational(&v, prec);
    }
    let mut negate = false;
    let half = rat(1, 2);
    if r > half {
        r = BigRational::one() - r;
        negate = true;
    }
    let quarter = rat(1, 4);
    let (arg, odd) = if r > quarter {
        (&half - &r, true)
    } else {
        (r, false)
    };
    let wp = prec + GUARD_BITS;
    let theta = &pi(wp) * &Interval::from_rational(&arg, wp);
    let v = taylor(&theta, odd, wp).with_precision(prec);
    if negate {
        -v
    } else {
        v
    }
}

/// Enclosure of `sin(r·π)` for any rational `r`.
pub fn sin_pi(r: &BigRational, prec: u32) -> Interval {
    cos_pi(&(rat(1, 2) - r), prec)
}

/// `true` iff `r` lies in the exact-cosine table after reduction.
pub fn has_rational_cosine(r: &BigRational) -> bool {
    let two = BigRational::from_integer(2.into());
    let mut r = r - &two * (r / &two).floor();
    if r.is_negative() {
        r += &two;
    }
    if r > BigRational::one() {
        r = &two - r;
    }
    exact_cos_pi(&r).is_some()
}
