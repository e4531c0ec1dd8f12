//! Nonnegative integer combinations of the six dihedral angles that sum to
//! π or 2π.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::angles::{angle_sum, AngleTuple, RationalAngle, VertexPermutation};
use crate::tetgeom::Tetrahedron;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "pi")]
    Pi,
    #[serde(rename = "2pi")]
    TwoPi,
}

impl Target {
    pub const BOTH: [Target; 2] = [Target::Pi, Target::TwoPi];

    /// The target as a multiple of π.
    pub fn multiple(self) -> i64 {
        match self {
            Target::Pi => 1,
            Target::TwoPi => 2,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Pi => "π",
            Target::TwoPi => "2π",
        })
    }
}

impl AsRef<AngleTuple> for Tetrahedron {
    fn as_ref(&self) -> &AngleTuple {
        self.angles()
    }
}

impl AsRef<AngleTuple> for AngleTuple {
    fn as_ref(&self) -> &AngleTuple {
        self
    }
}

/// Per-edge coefficients in slot order, with the value they sum to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Combination {
    pub coeffs: [u32; 6],
    pub target: Target,
}

impl Combination {
    pub fn support(&self) -> Vec<usize> {
        (0..6).filter(|&e| self.coeffs[e] > 0).collect()
    }

    pub fn within(&self, edges: &[usize]) -> bool {
        self.support().iter().all(|e| edges.contains(e))
    }

    /// Re-sum exactly and compare with the target.
    pub fn holds_for(&self, angles: &AngleTuple) -> bool {
        angle_sum(&self.coeffs, angles).is_multiple_of_pi(self.target.multiple())
    }

    /// The same combination on the relabeled tetrahedron.
    pub fn permuted(&self, sigma: &VertexPermutation) -> Combination {
        Combination {
            coeffs: crate::angles::permute_slots(&self.coeffs, sigma),
            target: self.target,
        }
    }
}

/// Angles as integers over a common denominator.
struct Scaled {
    units: [BigInt; 6],
    denom: BigInt,
}

fn scale(angles: &AngleTuple) -> Scaled {
    let denom = angles
        .angles()
        .iter()
        .fold(BigInt::from(1), |acc, a| acc.lcm(a.denominator()));
    let units = std::array::from_fn(|e| {
        let a = angles.get(e);
        a.numerator() * (&denom / a.denominator())
    });
    Scaled { units, denom }
}

fn search(
    s: &Scaled,
    caps: &[u32; 6],
    e: usize,
    rest: &BigInt,
    cur: &mut [u32; 6],
    target: Target,
    out: &mut Vec<Combination>,
) {
    if e == 6 {
        if rest.is_zero() {
            out.push(Combination {
                coeffs: *cur,
                target,
            });
        }
        return;
    }
    let mut left = rest.clone();
    for c in 0..=caps[e] {
        if left < BigInt::zero() {
            break;
        }
        cur[e] = c;
        search(s, caps, e + 1, &left, cur, target, out);
        left -= &s.units[e];
    }
    cur[e] = 0;
}

/// All coefficient vectors reaching each target, in target order and then
/// lexicographic order of the coefficients.
pub fn enumerate_combinations(
    angles: impl AsRef<AngleTuple>,
    targets: &[Target],
) -> Vec<Combination> {
    let angles = angles.as_ref();
    let s = scale(angles);
    let mut out = Vec::new();
    for &target in targets {
        let goal = &s.denom * target.multiple();
        let caps: [u32; 6] = std::array::from_fn(|e| {
            (&goal / &s.units[e])
                .to_u32()
                .expect("coefficient cap fits u32 for dihedral angles")
        });
        let mut cur = [0u32; 6];
        search(&s, &caps, 0, &goal, &mut cur, target, &mut out);
    }
    out
}

/// A combination seen through angle values: how many copies of each
/// distinct angle value are used.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ValueCombination {
    /// `(angle, total coefficient)`, sorted by angle, zero totals omitted.
    pub terms: Vec<(RationalAngle, u32)>,
    pub target: Target,
}

impl fmt::Display for ValueCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·({a})π")?;
        }
        write!(f, " = {}", self.target)
    }
}

/// Collapse per-edge vectors to distinct value-level combinations, keeping
/// the order of first appearance.
pub fn value_classes(
    combos: &[Combination],
    angles: impl AsRef<AngleTuple>,
) -> Vec<ValueCombination> {
    let angles = angles.as_ref();
    let mut out: Vec<ValueCombination> = Vec::new();
    for c in combos {
        let mut terms: Vec<(RationalAngle, u32)> = Vec::new();
        for e in 0..6 {
            if c.coeffs[e] == 0 {
                continue;
            }
            let a = angles.get(e);
            match terms.iter_mut().find(|(v, _)| v == a) {
                Some((_, n)) => *n += c.coeffs[e],
                None => terms.push((a.clone(), c.coeffs[e])),
            }
        }
        terms.sort();
        let v = ValueCombination {
            terms,
            target: c.target,
        };
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}
