//! Adaptive-precision interval arithmetic.
//!
//! Every enclosure produced here contains the true real value. Comparisons
//! only report an order once the enclosures are disjoint; otherwise they
//! escalate precision and finally give up with [`Comparison::Undecided`].

mod dyadic;
mod interval;
mod trig;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angles::RationalAngle;

pub use dyadic::{Dyadic, Round};
pub use interval::Interval;
pub use trig::{cos_pi, has_rational_cosine, pi, sin_pi};

pub const DEFAULT_PRECISION: u32 = 64;
pub const DEFAULT_MAX_PRECISION: u32 = 1024;
pub const MIN_PRECISION: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("square root of a negative interval")]
    NegativeSqrt,
    #[error("enclosure still ambiguous at {0} bits")]
    PrecisionExhausted(u32),
}

/// Working precision and escalation cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    pub working: u32,
    pub max: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            working: DEFAULT_PRECISION,
            max: DEFAULT_MAX_PRECISION,
        }
    }
}

impl Precision {
    pub fn new(working: u32, max: u32) -> Self {
        let working = working.max(MIN_PRECISION);
        Precision {
            working,
            max: max.max(working),
        }
    }

    /// Doubling schedule from the working precision up to and including the cap.
    pub fn schedule(&self) -> impl Iterator<Item = u32> {
        let max = self.max;
        std::iter::successors(Some(self.working), move |&p| {
            (p < max).then(|| (p * 2).min(max))
        })
    }
}

/// Three-valued outcome of a rigorous comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    Less,
    Greater,
    Undecided,
}

impl Comparison {
    pub fn is_decided(self) -> bool {
        self != Comparison::Undecided
    }
}

/// Enclosure of `cos` of a rational multiple of π, width at most `2^(2-prec)`.
pub fn cos_enclosure(angle: &RationalAngle, prec: u32) -> Interval {
    cos_pi(angle.multiplier(), prec.max(MIN_PRECISION))
}

pub fn sin_enclosure(angle: &RationalAngle, prec: u32) -> Interval {
    sin_pi(angle.multiplier(), prec.max(MIN_PRECISION))
}

/// Compare two re-evaluable expressions, doubling precision until their
/// enclosures separate or `precision.max` is reached.
///
/// An expression may return `None` when it cannot be enclosed at the
/// requested precision; that counts as "not yet separated".
pub fn compare_adaptive<A, B>(a: A, b: B, precision: Precision) -> Comparison
where
    A: Fn(u32) -> Option<Interval>,
    B: Fn(u32) -> Option<Interval>,
{
    for p in precision.schedule() {
        if let (Some(x), Some(y)) = (a(p), b(p)) {
            match x.separation(&y) {
                Some(Ordering::Less) => return Comparison::Less,
                Some(Ordering::Greater) => return Comparison::Greater,
                _ => {}
            }
        }
    }
    Comparison::Undecided
}

/// Sign of an expression, decided the same way as [`compare_adaptive`].
pub fn sign_adaptive<A>(a: A, precision: Precision) -> Comparison
where
    A: Fn(u32) -> Option<Interval>,
{
    compare_adaptive(a, |p| Some(Interval::zero(p)), precision)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_doubles_to_cap() {
        let s: Vec<u32> = Precision::new(64, 1024).schedule().collect();
        assert_eq!(s, vec![64, 128, 256, 512, 1024]);
        let s: Vec<u32> = Precision::new(100, 300).schedule().collect();
        assert_eq!(s, vec![100, 200, 300]);
        let s: Vec<u32> = Precision::new(64, 64).schedule().collect();
        assert_eq!(s, vec![64]);
    }

    #[test]
    fn compare_constants() {
        let c = compare_adaptive(
            |p| Some(Interval::from_int(1, p)),
            |p| Some(Interval::from_int(2, p)),
            Precision::default(),
        );
        assert_eq!(c, Comparison::Less);
    }

    #[test]
    fn equal_values_never_separate() {
        let half = RationalAngle::new(1, 3).unwrap();
        let c = compare_adaptive(
            |p| Some(cos_enclosure(&half, p)),
            |p| Some(Interval::from_ratio(1, 2, p)),
            Precision::default(),
        );
        assert_eq!(c, Comparison::Undecided);
    }
}
