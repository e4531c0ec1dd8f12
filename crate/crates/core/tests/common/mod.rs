//! Helpers shared by the integration tests: an independent high-precision
//! oracle, reference tables and a brute-force combination counter.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use tetratile::angles::AngleTuple;
use tetratile::realnum::{Dyadic, Interval};

pub const RM: RoundingMode = RoundingMode::ToEven;

pub struct Oracle {
    pub p: usize,
    cc: Consts,
}

impl Oracle {
    pub fn new(p: usize) -> Self {
        Oracle {
            p,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn int(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.p)
    }

    fn bigint(&self, v: &BigInt) -> BigFloat {
        let (sign, digits) = v.to_u64_digits();
        let p = self.p.max(64 * digits.len() + 64);
        let base = BigFloat::from_u64(2, p).powi(64, p, RM);
        let mut acc = BigFloat::from_u64(0, p);
        for d in digits.iter().rev() {
            acc = acc.mul(&base, p, RM).add(&BigFloat::from_u64(*d, p), p, RM);
        }
        if sign == num_bigint::Sign::Minus {
            acc = acc.neg();
        }
        acc
    }

    /// Exact value of a dyadic, given enough working bits.
    pub fn dyadic(&self, d: &Dyadic) -> BigFloat {
        let m = self.bigint(d.mantissa());
        let p = self.p.max(d.mantissa().bits() as usize + 64);
        let two = BigFloat::from_u64(2, p);
        let e = d.exponent();
        let scale = two.powi(e.unsigned_abs() as usize, p, RM);
        if e >= 0 {
            m.mul(&scale, p, RM)
        } else {
            m.div(&scale, p, RM)
        }
    }

    pub fn rational(&mut self, r: &BigRational) -> BigFloat {
        self.bigint(r.numer())
            .div(&self.bigint(r.denom()), self.p, RM)
    }

    /// `r·π`.
    pub fn times_pi(&mut self, r: &BigRational) -> BigFloat {
        let pi = self.cc.pi(self.p, RM);
        self.rational(r).mul(&pi, self.p, RM)
    }

    pub fn cos(&mut self, x: &BigFloat) -> BigFloat {
        x.cos(self.p, RM, &mut self.cc)
    }

    pub fn sin(&mut self, x: &BigFloat) -> BigFloat {
        x.sin(self.p, RM, &mut self.cc)
    }

    pub fn sqrt(&self, x: &BigFloat) -> BigFloat {
        x.sqrt(self.p, RM)
    }

    pub fn pow2(&self, k: i64) -> BigFloat {
        let two = BigFloat::from_u64(2, self.p);
        let s = two.powi(k.unsigned_abs() as usize, self.p, RM);
        if k >= 0 {
            s
        } else {
            self.int(1).div(&s, self.p, RM)
        }
    }

    pub fn abs(&self, x: &BigFloat) -> BigFloat {
        if x.is_negative() {
            x.neg()
        } else {
            x.clone()
        }
    }

    pub fn le(a: &BigFloat, b: &BigFloat) -> bool {
        matches!(a.cmp(b), Some(c) if c <= 0)
    }

    /// `lo − tol ≤ x ≤ hi + tol` for the interval endpoints.
    pub fn encloses(&self, i: &Interval, x: &BigFloat, tol: &BigFloat) -> bool {
        let lo = self.dyadic(i.lo()).sub(tol, self.p, RM);
        let hi = self.dyadic(i.hi()).add(tol, self.p, RM);
        Self::le(&lo, x) && Self::le(x, &hi)
    }

    pub fn midpoint(&self, i: &Interval) -> BigFloat {
        let s = self.dyadic(i.lo()).add(&self.dyadic(i.hi()), self.p, RM);
        s.div(&self.int(2), self.p, RM)
    }

    pub fn to_f64(x: &BigFloat) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        x.to_string().parse().expect("decimal rendering")
    }
}

/// Closed forms of the edge lengths of `T_x` relative to `e14 = e23 = 1`,
/// in slot order `(12, 34, 13, 24, 14, 23)`.
pub fn family_lengths(o: &mut Oracle, x: &BigRational) -> [BigFloat; 6] {
    let p = o.p;
    let sixth = BigRational::new(1.into(), 6.into());
    let third = BigRational::new(1.into(), 3.into());
    let a = o.times_pi(x);
    let b = o.times_pi(&(x + &sixth));
    let c = o.times_pi(&(x + &third));
    let (ca, cb, cc) = (o.cos(&a), o.cos(&b), o.cos(&c));
    let (sa, sb, sc) = (o.sin(&a), o.sin(&b), o.sin(&c));
    let one = o.int(1);
    let sq = |v: &BigFloat| v.mul(v, p, RM);
    let frac = |num: BigFloat, s1: &BigFloat, s2: &BigFloat| {
        let d = sq(s1).mul(&sq(s2), p, RM);
        one.sub(&sq(&num).div(&d, p, RM), p, RM)
    };
    let den12 = frac(ca.add(&cb.mul(&cc, p, RM), p, RM), &sb, &sc);
    let den34 = frac(ca.sub(&cb.mul(&cc, p, RM), p, RM), &sb, &sc);
    let n12 = frac(ca.mul(&cc, p, RM).neg().add(&cb, p, RM), &sa, &sc);
    let n24 = frac(ca.mul(&cb, p, RM).neg().sub(&cc, p, RM), &sa, &sb);
    let n34 = frac(ca.mul(&cc, p, RM).neg().sub(&cb, p, RM), &sa, &sc);
    let e12 = o.sqrt(&n12.div(&den12, p, RM));
    let e24 = o.sqrt(&n24.div(&den12, p, RM));
    let e34 = o.sqrt(&n34.div(&den34, p, RM));
    [e12, e34, e24.clone(), e24, one.clone(), one]
}

/// The 23 specific members of the second family.
pub const REFERENCE_SPECIFIC: [[(i64, i64); 6]; 23] = [
    [(1, 2), (1, 2), (1, 3), (1, 3), (1, 3), (1, 3)],
    [(7, 12), (5, 12), (5, 12), (5, 12), (1, 4), (1, 4)],
    [(19, 30), (11, 30), (7, 15), (7, 15), (1, 5), (1, 5)],
    [(23, 42), (19, 42), (8, 21), (8, 21), (2, 7), (2, 7)],
    [(11, 18), (7, 18), (4, 9), (4, 9), (2, 9), (2, 9)],
    [(43, 66), (23, 66), (16, 33), (16, 33), (2, 11), (2, 11)],
    [(17, 30), (13, 30), (2, 5), (2, 5), (4, 15), (4, 15)],
    [(9, 14), (5, 14), (10, 21), (10, 21), (4, 21), (4, 21)],
    [(5, 9), (4, 9), (7, 18), (7, 18), (5, 18), (5, 18)],
    [(5, 8), (3, 8), (11, 24), (11, 24), (5, 24), (5, 24)],
    [(19, 36), (17, 36), (13, 36), (13, 36), (11, 36), (11, 36)],
    [(4, 7), (3, 7), (17, 42), (17, 42), (11, 42), (11, 42)],
    [(29, 48), (19, 48), (7, 16), (7, 16), (11, 48), (11, 48)],
    [(17, 27), (10, 27), (25, 54), (25, 54), (11, 54), (11, 54)],
    [(13, 20), (7, 20), (29, 60), (29, 60), (11, 60), (11, 60)],
    [(13, 24), (11, 24), (3, 8), (3, 8), (7, 24), (7, 24)],
    [(3, 5), (2, 5), (13, 30), (13, 30), (7, 30), (7, 30)],
    [(23, 36), (13, 36), (17, 36), (17, 36), (7, 36), (7, 36)],
    [(25, 42), (17, 42), (3, 7), (3, 7), (5, 21), (5, 21)],
    [(35, 54), (19, 54), (13, 27), (13, 27), (5, 27), (5, 27)],
    [(8, 15), (7, 15), (11, 30), (11, 30), (3, 10), (3, 10)],
    [(13, 21), (8, 21), (19, 42), (19, 42), (3, 14), (3, 14)],
    [(31, 48), (17, 48), (23, 48), (23, 48), (3, 16), (3, 16)],
];

/// Every coefficient vector with `Σ cᵢαᵢ = kπ`, by nested loops over
/// `0..=⌊2π/αᵢ⌋` with plain `i64` ratios.
pub fn brute_force_combinations(angles: &AngleTuple, k: i64) -> Vec<[u32; 6]> {
    let a: Vec<Ratio<i64>> = angles
        .angles()
        .iter()
        .map(|x| {
            Ratio::new(
                x.numerator().try_into().unwrap(),
                x.denominator().try_into().unwrap(),
            )
        })
        .collect();
    let target = Ratio::from_integer(k);
    let caps: Vec<i64> = a
        .iter()
        .map(|x| (Ratio::from_integer(2) / x).floor().to_integer())
        .collect();
    let mut out = Vec::new();
    let mut c = [0i64; 6];
    fn rec(
        i: usize,
        sum: Ratio<i64>,
        a: &[Ratio<i64>],
        caps: &[i64],
        target: Ratio<i64>,
        c: &mut [i64; 6],
        out: &mut Vec<[u32; 6]>,
    ) {
        if i == 6 {
            if sum == target {
                out.push(c.map(|v| v as u32));
            }
            return;
        }
        for v in 0..=caps[i] {
            let s = sum + a[i] * v;
            if s > target {
                break;
            }
            c[i] = v;
            rec(i + 1, s, a, caps, target, c, out);
        }
        c[i] = 0;
    }
    rec(
        0,
        Ratio::from_integer(0),
        &a,
        &caps,
        target,
        &mut c,
        &mut out,
    );
    out.sort();
    out
}
