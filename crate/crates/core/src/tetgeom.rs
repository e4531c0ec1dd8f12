//! Tetrahedra given by their dihedral angles: existence, edge lengths,
//! exact edge symmetries and the edge-length pattern.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angles::{
    permute_tuple, AngleError, AngleTuple, RationalAngle, VertexPermutation, EDGE_VERTICES,
    OPPOSITE_PAIRS,
};
use crate::realnum::{
    compare_adaptive, cos_enclosure, sin_enclosure, Comparison, Dyadic, Interval, NumericError,
    Precision,
};

pub type Matrix4 = [[Interval; 4]; 4];

/// Enclosure width accepted for `det G = 0` without escalating.
const SINGULAR_WINDOW_LOG2: i64 = -40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvalidReason {
    /// `det G` is provably nonzero.
    NotSingular,
    /// The leading 3×3 minor of `G` is provably nonpositive.
    NotPositiveSemidefinite,
    /// The kernel vector has entries of both signs.
    MixedAreaSigns,
    /// Some condition stayed ambiguous at the precision cap.
    NumericallyUndecided,
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            InvalidReason::NotSingular => "Gram matrix is nonsingular",
            InvalidReason::NotPositiveSemidefinite => "Gram matrix is not positive semidefinite",
            InvalidReason::MixedAreaSigns => "kernel vector has entries of both signs",
            InvalidReason::NumericallyUndecided => "existence undecided at the precision cap",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("not a tetrahedron: {0}")]
    Invalid(InvalidReason),
    #[error("edge lengths still ambiguous at {0} bits")]
    PrecisionExhausted(u32),
    #[error("reconstruction does not reproduce the dihedral angle at edge {0}")]
    Reconstruction(&'static str),
    #[error(transparent)]
    Angle(#[from] AngleError),
}

impl GeometryError {
    pub fn is_invalid_geometry(&self) -> bool {
        matches!(
            self,
            GeometryError::Invalid(_) | GeometryError::Reconstruction(_) | GeometryError::Angle(_)
        )
    }

    /// The question was left open at the precision cap rather than answered.
    pub fn is_precision_exhausted(&self) -> bool {
        matches!(
            self,
            GeometryError::PrecisionExhausted(_)
                | GeometryError::Invalid(InvalidReason::NumericallyUndecided)
        )
    }
}

/// Outcome of [`check_existence`].
#[derive(Clone, Debug)]
pub enum Existence {
    /// Face areas up to a common positive factor.
    Valid {
        areas: [Interval; 4],
        precision: u32,
    },
    Invalid(InvalidReason),
}

/// A Euclidean tetrahedron with the given dihedral angles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Tetrahedron {
    angles: AngleTuple,
}

impl Tetrahedron {
    pub fn new(angles: AngleTuple) -> Result<Self, GeometryError> {
        Self::with_precision(angles, Precision::default())
    }

    pub fn with_precision(angles: AngleTuple, precision: Precision) -> Result<Self, GeometryError> {
        match check_existence(&angles, precision) {
            Existence::Valid { .. } => Ok(Tetrahedron { angles }),
            Existence::Invalid(r) => Err(GeometryError::Invalid(r)),
        }
    }

    pub fn from_ratios(ratios: [(i64, i64); 6]) -> Result<Self, GeometryError> {
        Self::new(AngleTuple::from_ratios(ratios)?)
    }

    pub fn angles(&self) -> &AngleTuple {
        &self.angles
    }

    pub fn angle(&self, edge: usize) -> &RationalAngle {
        self.angles.get(edge)
    }

    /// Relabeling preserves existence, so no recheck is needed.
    pub fn permuted(&self, sigma: &VertexPermutation) -> Tetrahedron {
        Tetrahedron {
            angles: permute_tuple(&self.angles, sigma),
        }
    }

    pub fn gram_matrix(&self, prec: u32) -> Matrix4 {
        gram_matrix(&self.angles, prec)
    }

    pub fn edge_classes(&self) -> EdgeClasses {
        edge_equality_classes(&self.angles)
    }
}

impl fmt::Display for Tetrahedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.angles.fmt(f)
    }
}

/// The two vertices (0-based) not on the edge in `slot`; faces opposite them
/// meet along that edge.
fn complement(slot: usize) -> (usize, usize) {
    let (k, l) = EDGE_VERTICES[slot];
    let mut rest = (1..=4u8).filter(|v| *v != k && *v != l);
    let i = rest.next().unwrap();
    let j = rest.next().unwrap();
    ((i - 1) as usize, (j - 1) as usize)
}

/// Gram matrix of the unit outward face normals: `G[i][j] = -cos α_kl`.
pub fn gram_matrix(angles: &AngleTuple, prec: u32) -> Matrix4 {
    let mut g: Matrix4 = std::array::from_fn(|_| std::array::from_fn(|_| Interval::zero(prec)));
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = Interval::one(prec);
    }
    for slot in 0..6 {
        let (i, j) = complement(slot);
        let c = -cos_enclosure(angles.get(slot), prec);
        g[i][j] = c.clone();
        g[j][i] = c;
    }
    g
}

fn det3(m: [[&Interval; 3]; 3]) -> Interval {
    let a = m[0][0] * &(m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    let b = m[0][1] * &(m[1][0] * m[2][2] - m[1][2] * m[2][0]);
    let c = m[0][2] * &(m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    a - b + c
}

/// Signed cofactor of entry `(i, j)`.
fn cofactor(g: &Matrix4, i: usize, j: usize) -> Interval {
    let rows: Vec<usize> = (0..4).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
    let m = std::array::from_fn(|a| std::array::from_fn(|b| &g[rows[a]][cols[b]]));
    let d = det3(m);
    if (i + j) % 2 == 0 {
        d
    } else {
        -d
    }
}

pub fn determinant(g: &Matrix4) -> Interval {
    let mut acc = Interval::zero(g[0][0].precision());
    for j in 0..4 {
        acc = acc + &g[0][j] * &cofactor(g, 0, j);
    }
    acc
}

enum Step {
    Done(Existence),
    Escalate,
}

fn existence_at(angles: &AngleTuple, prec: u32) -> Step {
    let g = gram_matrix(angles, prec);
    let minor = cofactor(&g, 3, 3);
    if !minor.lo().is_positive() {
        if !minor.hi().is_positive() {
            return Step::Done(Existence::Invalid(InvalidReason::NotPositiveSemidefinite));
        }
        return Step::Escalate;
    }
    let det = determinant(&g);
    if !det.contains_zero() {
        return Step::Done(Existence::Invalid(InvalidReason::NotSingular));
    }
    let window = Dyadic::new(1.into(), SINGULAR_WINDOW_LOG2);
    if det.width() > window {
        return Step::Escalate;
    }
    match area_row(&g) {
        Ok(Some(areas)) => Step::Done(Existence::Valid {
            areas,
            precision: prec,
        }),
        Ok(None) => Step::Escalate,
        Err(r) => Step::Done(Existence::Invalid(r)),
    }
}

/// Row of the adjugate through the largest diagonal cofactor, normalized positive.
fn area_row(g: &Matrix4) -> Result<Option<[Interval; 4]>, InvalidReason> {
    let diag: Vec<Interval> = (0..4).map(|i| cofactor(g, i, i)).collect();
    let mut r = 0;
    for i in 1..4 {
        if diag[i].midpoint() > diag[r].midpoint() {
            r = i;
        }
    }
    let row: [Interval; 4] = std::array::from_fn(|j| cofactor(g, r, j));
    let pos = row.iter().filter(|c| c.is_positive()).count();
    let neg = row.iter().filter(|c| c.is_negative()).count();
    if pos > 0 && neg > 0 {
        return Err(InvalidReason::MixedAreaSigns);
    }
    if pos == 4 {
        Ok(Some(row))
    } else if neg == 4 {
        Ok(Some(row.map(|c| -c)))
    } else {
        Ok(None)
    }
}

/// Decide whether the angles are realized by a Euclidean tetrahedron.
///
/// The Gram matrix must be positive semidefinite of rank 3 with a kernel
/// vector of one sign; that vector is returned as the face areas.
pub fn check_existence(angles: &AngleTuple, precision: Precision) -> Existence {
    for p in precision.schedule() {
        if let Step::Done(e) = existence_at(angles, p) {
            return e;
        }
    }
    Existence::Invalid(InvalidReason::NumericallyUndecided)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Longest edge has length exactly 1.
    #[default]
    MaxEdge,
    UnitVolume,
}

impl FromStr for Normalization {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max-edge" | "max-edge-1" => Ok(Normalization::MaxEdge),
            "unit-volume" => Ok(Normalization::UnitVolume),
            other => Err(format!("unknown normalization {other:?}")),
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::MaxEdge => "max-edge",
            Normalization::UnitVolume => "unit-volume",
        })
    }
}

/// Edge-length enclosures in slot order.
#[derive(Clone, Debug)]
pub struct EdgeLengths {
    lengths: [Interval; 6],
    normalization: Normalization,
    precision: u32,
}

impl EdgeLengths {
    pub fn lengths(&self) -> &[Interval; 6] {
        &self.lengths
    }

    pub fn get(&self, edge: usize) -> &Interval {
        &self.lengths[edge]
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }
}

fn unnormalized_lengths(angles: &AngleTuple, prec: u32) -> Option<[Interval; 6]> {
    let g = gram_matrix(angles, prec);
    let areas = area_row(&g).ok()??;
    Some(std::array::from_fn(|slot| {
        let (i, j) = complement(slot);
        &(&areas[i] * &areas[j]) * &sin_enclosure(angles.get(slot), prec)
    }))
}

fn longest(raw: &[Interval; 6]) -> usize {
    let mut m = 0;
    for e in 1..6 {
        if raw[e].midpoint() > raw[m].midpoint() {
            m = e;
        }
    }
    m
}

type Points = [[Interval; 3]; 4];

fn dot(a: &[Interval; 3], b: &[Interval; 3]) -> Interval {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

fn diff(a: &[Interval; 3], b: &[Interval; 3]) -> [Interval; 3] {
    std::array::from_fn(|k| &a[k] - &b[k])
}

/// Vertex coordinates with `v1 = 0`, `v2` on the x-axis and `v3` in the xy-plane.
fn place_vertices(l: &[Interval; 6]) -> Result<Points, NumericError> {
    let p = l[0].precision();
    let z = || Interval::zero(p);
    let (e12, e34, e13, e24, e14, e23) = (&l[0], &l[1], &l[2], &l[3], &l[4], &l[5]);
    let two_e12 = e12.mul_pow2(1);
    let x3 = (&(&e12.square() + &e13.square()) - &e23.square()).checked_div(&two_e12)?;
    let y3 = (&e13.square() - &x3.square()).sqrt()?;
    let x4 = (&(&e12.square() + &e14.square()) - &e24.square()).checked_div(&two_e12)?;
    let num = &(&(&e13.square() + &e14.square()) - &e34.square()) - &(&x3 * &x4).mul_pow2(1);
    let y4 = num.checked_div(&y3.mul_pow2(1))?;
    let z4 = (&(&e14.square() - &x4.square()) - &y4.square()).sqrt()?;
    Ok([
        [z(), z(), z()],
        [e12.clone(), z(), z()],
        [x3, y3, z()],
        [x4, y4, z4],
    ])
}

fn dihedral_cos(pts: &Points, slot: usize) -> Result<Interval, NumericError> {
    let (k, l) = EDGE_VERTICES[slot];
    let (i, j) = complement(slot);
    let base = &pts[(k - 1) as usize];
    let u = diff(&pts[(l - 1) as usize], base);
    let a = diff(&pts[i], base);
    let b = diff(&pts[j], base);
    let uu = dot(&u, &u);
    let au = dot(&a, &u);
    let bu = dot(&b, &u);
    let num = &dot(&a, &b) - &(&au * &bu).checked_div(&uu)?;
    let na = &dot(&a, &a) - &au.square().checked_div(&uu)?;
    let nb = &dot(&b, &b) - &bu.square().checked_div(&uu)?;
    num.checked_div(&(&na * &nb).sqrt()?)
}

/// Rebuild the vertices from the lengths and require that every dihedral
/// angle of the rebuilt solid is consistent with the input.
fn verify_reconstruction(angles: &AngleTuple, l: &[Interval; 6]) -> Result<Points, GeometryError> {
    let p = l[0].precision();
    let pts = place_vertices(l).map_err(|_| GeometryError::PrecisionExhausted(p))?;
    for slot in 0..6 {
        let c = dihedral_cos(&pts, slot).map_err(|_| GeometryError::PrecisionExhausted(p))?;
        if !c.intersects(&cos_enclosure(angles.get(slot), p)) {
            return Err(GeometryError::Reconstruction(
                crate::angles::EDGE_LABELS[slot],
            ));
        }
    }
    Ok(pts)
}

fn lengths_at(
    angles: &AngleTuple,
    normalization: Normalization,
    prec: u32,
) -> Result<[Interval; 6], GeometryError> {
    let raw = unnormalized_lengths(angles, prec).ok_or(GeometryError::PrecisionExhausted(prec))?;
    let m = longest(&raw);
    let mut out: [Interval; 6] = std::array::from_fn(|_| Interval::one(prec));
    for e in 0..6 {
        if e != m {
            out[e] = raw[e]
                .checked_div(&raw[m])
                .map_err(|_| GeometryError::PrecisionExhausted(prec))?;
        }
    }
    let pts = verify_reconstruction(angles, &out)?;
    if normalization == Normalization::UnitVolume {
        // v2, v3, v4 span a triangular frame, so 6V = e12 * y3 * z4.
        let six_v = &(&pts[1][0] * &pts[2][1]) * &pts[3][2];
        let scale = Interval::from_int(6, prec)
            .checked_div(&six_v)
            .map_err(|_| GeometryError::PrecisionExhausted(prec))?
            .cbrt();
        out = out.map(|l| &l * &scale);
    }
    Ok(out)
}

/// Edge lengths under the chosen normalization, escalating precision until
/// the computation is decided.
pub fn edge_lengths(
    t: &Tetrahedron,
    normalization: Normalization,
    precision: Precision,
) -> Result<EdgeLengths, GeometryError> {
    let mut last = GeometryError::PrecisionExhausted(precision.max);
    for p in precision.schedule() {
        match lengths_at(&t.angles, normalization, p) {
            Ok(lengths) => {
                return Ok(EdgeLengths {
                    lengths,
                    normalization,
                    precision: p,
                })
            }
            Err(GeometryError::PrecisionExhausted(_)) => {
                last = GeometryError::PrecisionExhausted(p);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Partition of the six edges into classes of edges forced to have equal length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClasses {
    /// `class_of[e]` is the smallest slot in the class of `e`.
    class_of: [usize; 6],
}

impl EdgeClasses {
    pub fn singletons() -> Self {
        EdgeClasses {
            class_of: [0, 1, 2, 3, 4, 5],
        }
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn class_of(&self, e: usize) -> usize {
        self.class_of[e]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for e in 0..6 {
            if self.class_of[e] == e {
                out.push((e..6).filter(|&f| self.class_of[f] == e).collect());
            }
        }
        out
    }
}

/// Orbits of the edges under the relabelings that fix the angle tuple.
///
/// Dihedral angles determine a tetrahedron up to similarity, so such a
/// relabeling is an isometry and maps each edge to one of equal length.
pub fn edge_equality_classes(angles: &AngleTuple) -> EdgeClasses {
    let mut parent = [0usize, 1, 2, 3, 4, 5];
    fn find(p: &mut [usize; 6], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for sigma in VertexPermutation::all() {
        if &permute_tuple(angles, &sigma) != angles {
            continue;
        }
        let m = sigma.edge_map();
        for e in 0..6 {
            let a = find(&mut parent, e);
            let b = find(&mut parent, m[e]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut class_of = [0usize; 6];
    for (e, c) in class_of.iter_mut().enumerate() {
        *c = find(&mut parent, e);
    }
    // Roots are minimal slots because unions always attach to the smaller root.
    EdgeClasses { class_of }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternKind {
    ParallelogramLike,
    AllDistinct,
    Other,
    Undecided,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternKind::ParallelogramLike => "parallelogram-like",
            PatternKind::AllDistinct => "all-distinct",
            PatternKind::Other => "other",
            PatternKind::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePattern {
    /// Opposite pairs whose two edges are equal by symmetry.
    pub equal_pairs: Vec<[usize; 2]>,
    pub kind: PatternKind,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Relation {
    Equal,
    Unequal,
    Unknown,
}

/// Lengths of one tetrahedron, recomputed on demand at higher precision.
struct LengthOracle<'a> {
    t: &'a Tetrahedron,
    normalization: Normalization,
    cache: RefCell<HashMap<u32, Option<[Interval; 6]>>>,
}

impl<'a> LengthOracle<'a> {
    fn new(t: &'a Tetrahedron, lengths: &EdgeLengths) -> Self {
        let mut cache = HashMap::new();
        cache.insert(lengths.precision, Some(lengths.lengths.clone()));
        LengthOracle {
            t,
            normalization: lengths.normalization,
            cache: RefCell::new(cache),
        }
    }

    fn get(&self, edge: usize, prec: u32) -> Option<Interval> {
        let mut cache = self.cache.borrow_mut();
        let entry = cache
            .entry(prec)
            .or_insert_with(|| lengths_at(&self.t.angles, self.normalization, prec).ok());
        entry.as_ref().map(|l| l[edge].clone())
    }
}

/// Classify the edge-length pattern.
///
/// Equality is taken only from exact symmetry; inequality only from
/// separated enclosures, escalating precision up to `precision.max`.
pub fn classify_pattern(
    t: &Tetrahedron,
    lengths: &EdgeLengths,
    precision: Precision,
) -> EdgePattern {
    let classes = t.edge_classes();
    let oracle = LengthOracle::new(t, lengths);
    let schedule = Precision {
        working: lengths.precision,
        max: precision.max.max(lengths.precision),
    };
    let memo: RefCell<HashMap<(usize, usize), Relation>> = RefCell::new(HashMap::new());
    let relation = |a: usize, b: usize| -> Relation {
        let key = (a.min(b), a.max(b));
        if let Some(r) = memo.borrow().get(&key) {
            return *r;
        }
        let r = if classes.same(a, b) {
            Relation::Equal
        } else {
            match compare_adaptive(|p| oracle.get(a, p), |p| oracle.get(b, p), schedule) {
                Comparison::Undecided => Relation::Unknown,
                _ => Relation::Unequal,
            }
        };
        memo.borrow_mut().insert(key, r);
        r
    };

    let equal_pairs: Vec<[usize; 2]> = OPPOSITE_PAIRS
        .iter()
        .filter(|(a, b)| classes.same(*a, *b))
        .map(|&(a, b)| [a, b])
        .collect();
    let pattern = |kind| EdgePattern {
        equal_pairs: equal_pairs.clone(),
        kind,
    };

    match equal_pairs.len() {
        3 => pattern(PatternKind::Other),
        2 => {
            let (pa, pb) = (equal_pairs[0][0], equal_pairs[1][0]);
            let third = OPPOSITE_PAIRS
                .iter()
                .find(|(a, b)| !classes.same(*a, *b))
                .copied()
                .expect("one pair is not equal");
            let cross = relation(pa, pb);
            if cross == Relation::Equal {
                return pattern(PatternKind::Other);
            }
            match (relation(third.0, third.1), cross) {
                (Relation::Unequal, Relation::Unequal) => pattern(PatternKind::ParallelogramLike),
                _ => pattern(PatternKind::Undecided),
            }
        }
        _ => {
            // At most one pair equal within-pair: not parallelogram-like once
            // the remaining opposite pairs are proven unequal.
            let open_pairs = OPPOSITE_PAIRS
                .iter()
                .filter(|(a, b)| !classes.same(*a, *b))
                .all(|&(a, b)| relation(a, b) == Relation::Unequal);
            if !open_pairs {
                return pattern(PatternKind::Undecided);
            }
            if !equal_pairs.is_empty() {
                return pattern(PatternKind::Other);
            }
            let mut unknown = false;
            for a in 0..6 {
                for b in a + 1..6 {
                    match relation(a, b) {
                        Relation::Equal => return pattern(PatternKind::Other),
                        Relation::Unknown => unknown = true,
                        Relation::Unequal => {}
                    }
                }
            }
            if unknown {
                pattern(PatternKind::Undecided)
            } else {
                pattern(PatternKind::AllDistinct)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn tx(p: i64, q: i64) -> AngleTuple {
        let x = BigRational::new(p.into(), q.into());
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let a = |v: BigRational| RationalAngle::from_multiplier(v);
        AngleTuple::new([
            a(r(5, 6) - &x),
            a(r(1, 6) + &x),
            a(r(2, 3) - &x),
            a(r(2, 3) - &x),
            a(x.clone()),
            a(x),
        ])
        .unwrap()
    }

    fn tuple(r: [(i64, i64); 6]) -> AngleTuple {
        AngleTuple::from_ratios(r).unwrap()
    }

    #[test]
    fn right_angles_give_identity_gram() {
        let t = tuple([(1, 2); 6]);
        let g = gram_matrix(&t, 64);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1 } else { 0 };
                assert!(g[i][j].is_point());
                assert!(g[i][j].contains(&Dyadic::from_int(expect)));
            }
        }
        assert!(matches!(
            check_existence(&t, Precision::default()),
            Existence::Invalid(InvalidReason::NotSingular)
        ));
    }

    #[test]
    fn gram_entries_of_t_pi_over_3() {
        let g = gram_matrix(&tx(1, 3), 64);
        let half = BigRational::new((-1).into(), 2.into());
        assert!(g[0][1].contains_rational(&BigRational::from_integer(0.into())));
        assert!(g[2][3].contains_rational(&BigRational::from_integer(0.into())));
        assert!(g[0][2].is_point() && g[0][2].contains_rational(&half));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g[i][j], g[j][i]);
            }
        }
    }

    #[test]
    fn family_member_exists() {
        match check_existence(&tx(19, 60), Precision::default()) {
            Existence::Valid { areas, .. } => assert!(areas.iter().all(|a| a.is_positive())),
            Existence::Invalid(r) => panic!("unexpected {r}"),
        }
    }

    #[test]
    fn obtuse_triple_is_not_a_tetrahedron() {
        let t = tuple([(2, 3), (2, 3), (2, 3), (2, 3), (2, 3), (2, 3)]);
        assert!(matches!(
            check_existence(&t, Precision::default()),
            Existence::Invalid(_)
        ));
    }

    #[test]
    fn symmetry_classes() {
        let c = edge_equality_classes(&tx(19, 60));
        assert_eq!(c.classes(), vec![vec![0], vec![1], vec![2, 3], vec![4, 5]]);
        let c = edge_equality_classes(&tuple([(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)]));
        assert_eq!(c, EdgeClasses::singletons());
        let c = edge_equality_classes(&tx(1, 3));
        assert_eq!(c.classes(), vec![vec![0, 1], vec![2, 3, 4, 5]]);
    }

    #[test]
    fn max_edge_normalization() {
        let t = Tetrahedron::new(tx(19, 60)).unwrap();
        let l = edge_lengths(&t, Normalization::MaxEdge, Precision::default()).unwrap();
        let one = Dyadic::one();
        let bound = Dyadic::one().add(&Dyadic::new(1.into(), -40));
        assert!(l.lengths().iter().any(|x| x.contains(&one)));
        assert!(l
            .lengths()
            .iter()
            .all(|x| x.is_positive() && x.hi() <= &bound));
        assert!(l.get(2).intersects(l.get(3)));
        assert!(l.get(4).intersects(l.get(5)));
    }

    #[test]
    fn unit_volume_normalization() {
        let t = Tetrahedron::new(tx(1, 4)).unwrap();
        let l = edge_lengths(&t, Normalization::UnitVolume, Precision::default()).unwrap();
        let pts = place_vertices(l.lengths()).unwrap();
        let six_v = &(&pts[1][0] * &pts[2][1]) * &pts[3][2];
        assert!(six_v.contains_rational(&BigRational::from_integer(6.into())));
    }

    #[test]
    fn patterns() {
        let p = |a: AngleTuple| {
            let t = Tetrahedron::new(a).unwrap();
            let l = edge_lengths(&t, Normalization::MaxEdge, Precision::default()).unwrap();
            classify_pattern(&t, &l, Precision::default()).kind
        };
        assert_eq!(p(tx(19, 60)), PatternKind::ParallelogramLike);
        assert_eq!(p(tx(1, 3)), PatternKind::Other);
        assert_eq!(
            p(tuple([(3, 20), (11, 20), (11, 20), (1, 4), (1, 3), (2, 3)])),
            PatternKind::AllDistinct
        );
    }
}
