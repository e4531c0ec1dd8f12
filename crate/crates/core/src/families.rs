//! The two one-parameter families `F1` and `F2`, the combinations shared by
//! every general member of `F2`, and the specific members.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angles::{AngleTuple, RationalAngle};
use crate::combos::Target;
use crate::tetgeom::{GeometryError, Tetrahedron};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    F1,
    F2,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("x = {x}π is outside the parameter range of {family:?}")]
    OutOfRange { family: Family, x: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParam {
    pub family: Family,
    pub x: RationalAngle,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl FamilyParam {
    pub fn new(family: Family, x: RationalAngle) -> Result<Self, FamilyError> {
        let r = x.multiplier();
        let ok = match family {
            Family::F1 => *r > rat(1, 6) && *r < rat(1, 2),
            Family::F2 => *r > rat(1, 6) && *r <= rat(1, 3),
        };
        if ok {
            Ok(FamilyParam { family, x })
        } else {
            Err(FamilyError::OutOfRange {
                family,
                x: x.to_string(),
            })
        }
    }

    pub fn angles(&self) -> AngleTuple {
        let x = self.x.multiplier().clone();
        let a = RationalAngle::from_multiplier;
        let tuple = match self.family {
            Family::F1 => [
                a(rat(1, 2)),
                a(rat(1, 2)),
                a(rat(1, 1) - &x * rat(2, 1)),
                a(rat(1, 3)),
                a(x.clone()),
                a(x),
            ],
            Family::F2 => [
                a(rat(5, 6) - &x),
                a(rat(1, 6) + &x),
                a(rat(2, 3) - &x),
                a(rat(2, 3) - &x),
                a(x.clone()),
                a(x),
            ],
        };
        AngleTuple::new(tuple).expect("family angles lie in (0, π) on the parameter range")
    }

    pub fn tetrahedron(&self) -> Result<Tetrahedron, FamilyError> {
        Ok(Tetrahedron::new(self.angles())?)
    }
}

/// `(π/2, π/2, π − 2x, π/3, x, x)` for `x ∈ (π/6, π/2)`.
pub fn f1_member(x: &RationalAngle) -> Result<Tetrahedron, FamilyError> {
    FamilyParam::new(Family::F1, x.clone())?.tetrahedron()
}

/// `T_x = (5π/6 − x, π/6 + x, 2π/3 − x, 2π/3 − x, x, x)` for `x ∈ (π/6, π/3]`.
pub fn f2_member(x: &RationalAngle) -> Result<Tetrahedron, FamilyError> {
    FamilyParam::new(Family::F2, x.clone())?.tetrahedron()
}

/// `a(5π/6 − x) + b(π/6 + x) + c(2π/3 − x) + d·x`, grouped by angle value of `T_x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FamilyCombination {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub target: Target,
}

impl FamilyCombination {
    /// Coefficient of `x`.
    pub fn slope(&self) -> i64 {
        (self.b + self.d) as i64 - (self.a + self.c) as i64
    }

    /// Constant part as a multiple of π.
    pub fn offset(&self) -> BigRational {
        rat((5 * self.a + self.b + 4 * self.c) as i64, 6)
    }
}

impl fmt::Display for FamilyCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}(5π/6 − x) + {}(π/6 + x) + {}(2π/3 − x) + {}x = {}",
            self.a, self.b, self.c, self.d, self.target
        )
    }
}

/// Bound on each coefficient: every angle exceeds π/6 and a combination sums to at most 2π.
pub const COEFFICIENT_BOUND: u32 = 12;

fn derived_bound() -> u32 {
    let min_angle = rat(1, 6);
    let b = rat(2, 1) / min_angle;
    b.to_integer().try_into().expect("small bound")
}

fn all_quadruples() -> impl ParallelIterator<Item = FamilyCombination> {
    assert_eq!(derived_bound(), COEFFICIENT_BOUND);
    let n = COEFFICIENT_BOUND;
    (0..=n).into_par_iter().flat_map_iter(move |a| {
        (0..=n).flat_map(move |b| {
            (0..=n).flat_map(move |c| {
                (0..=n).flat_map(move |d| {
                    Target::BOTH
                        .into_iter()
                        .map(move |target| FamilyCombination { a, b, c, d, target })
                })
            })
        })
    })
}

/// Combinations that hold for every `x`: the `x` terms cancel and the
/// constant reaches the target.
pub fn general_combinations() -> Vec<FamilyCombination> {
    let mut out: Vec<FamilyCombination> = all_quadruples()
        .filter(|k| {
            k.slope() == 0 && k.offset() == BigRational::from_integer(k.target.multiple().into())
        })
        .collect();
    out.sort_by_key(|k| (k.target, k.a, k.b, k.c, k.d));
    out
}

/// Parameters `x` of `T_x` that satisfy an extra combination, sorted, with their tuples.
pub fn enumerate_specific() -> Vec<(RationalAngle, Tetrahedron)> {
    let lo = rat(1, 6);
    let hi = rat(1, 3);
    let xs: BTreeSet<BigRational> = all_quadruples()
        .filter_map(|k| {
            let slope = k.slope();
            if slope == 0 {
                return None;
            }
            let x = (BigRational::from_integer(k.target.multiple().into()) - k.offset())
                / BigRational::from_integer(slope.into());
            (x > lo && x <= hi).then_some(x)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    xs.into_iter()
        .map(|x| {
            let x = RationalAngle::from_multiplier(x);
            let t = f2_member(&x).expect("specific parameters lie in the family range");
            (x, t)
        })
        .collect()
}

/// `x` is general iff it is not one of the specific parameters.
pub fn is_general(x: &RationalAngle) -> Result<bool, FamilyError> {
    FamilyParam::new(Family::F2, x.clone())?;
    let r = x.multiplier();
    let specific = all_quadruples().any(|k| {
        let slope = k.slope();
        slope != 0 && {
            let lhs = k.offset() + r * BigRational::from_integer(slope.into());
            let diff = lhs - BigRational::from_integer(k.target.multiple().into());
            diff.is_zero()
        }
    });
    Ok(!specific)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ang(p: i64, q: i64) -> RationalAngle {
        RationalAngle::new(p, q).unwrap()
    }

    #[test]
    fn members() {
        let t = f2_member(&ang(1, 3)).unwrap();
        assert_eq!(
            t.angles(),
            &AngleTuple::from_ratios([(1, 2), (1, 2), (1, 3), (1, 3), (1, 3), (1, 3)]).unwrap()
        );
        let t = f2_member(&ang(1, 4)).unwrap();
        assert_eq!(
            t.angles(),
            &AngleTuple::from_ratios([(7, 12), (5, 12), (5, 12), (5, 12), (1, 4), (1, 4)]).unwrap()
        );
        assert!(matches!(
            f1_member(&ang(1, 6)),
            Err(FamilyError::OutOfRange { .. })
        ));
        assert!(f1_member(&ang(1, 4)).is_ok());
        assert!(f2_member(&ang(1, 2)).is_err());
    }

    #[test]
    fn three_general_combinations() {
        let g = general_combinations();
        let key: Vec<(u32, u32, u32, u32, Target)> =
            g.iter().map(|k| (k.a, k.b, k.c, k.d, k.target)).collect();
        assert_eq!(
            key,
            vec![
                (1, 1, 0, 0, Target::Pi),
                (0, 0, 3, 3, Target::TwoPi),
                (2, 2, 0, 0, Target::TwoPi)
            ]
        );
    }

    #[test]
    fn specific_members() {
        let s = enumerate_specific();
        assert_eq!(s.len(), 23);
        assert!(s.iter().any(|(x, _)| x == &ang(1, 5)));
        assert!(!s.iter().any(|(x, _)| x == &ang(19, 60)));
        for w in s.windows(2) {
            assert!(w[0].0 < w[1].0);
        }
        assert!(!is_general(&ang(1, 3)).unwrap());
        assert!(!is_general(&ang(1, 4)).unwrap());
        assert!(is_general(&ang(19, 60)).unwrap());
        assert!(is_general(&ang(1, 7)).is_err());
    }
}
