//! The matrix `D` with entries `C_i(e) / len(e)` and Farkas certificates
//! `y` with `1ᵀy < 0` and `Dᵀy ⪰ 0`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::simplex::{self, LpStatus};
use crate::combos::{Combination, Target};
use crate::realnum::{Interval, Precision};
use crate::tetgeom::{self, EdgeClasses, EdgeLengths, Normalization, Tetrahedron};

/// Phase-1 optimum below this counts as a candidate certificate.
pub const LP_THRESHOLD: f64 = -1e-6;
pub const DEFAULT_ROUND_DENOMINATOR: u64 = 1_000_000;
pub const DEFAULT_RETRIES: u32 = 5;

/// Where the edge lengths of a D matrix come from.
#[derive(Clone, Debug)]
pub enum LengthSource {
    /// Lengths of a tetrahedron, multiplied by an exact positive factor.
    Tetrahedron {
        t: Tetrahedron,
        normalization: Normalization,
        scale: BigRational,
    },
    /// Exact lengths, used for hand-made matrices.
    Fixed([BigRational; 6]),
}

impl LengthSource {
    fn lengths_at(&self, prec: u32) -> Option<[Interval; 6]> {
        match self {
            LengthSource::Tetrahedron {
                t,
                normalization,
                scale,
            } => {
                let l =
                    tetgeom::edge_lengths(t, *normalization, Precision::new(prec, prec)).ok()?;
                let s = Interval::from_rational(scale, prec);
                Some(std::array::from_fn(|e| l.get(e) * &s))
            }
            LengthSource::Fixed(v) => Some(std::array::from_fn(|e| {
                Interval::from_rational(&v[e], prec)
            })),
        }
    }
}

/// `D` as column metadata plus lengths that can be re-enclosed at any precision.
pub struct DMatrix {
    columns: Vec<Combination>,
    source: LengthSource,
    classes: EdgeClasses,
    base_precision: u32,
    cache: Mutex<HashMap<u32, Option<[Interval; 6]>>>,
}

impl Clone for DMatrix {
    fn clone(&self) -> Self {
        DMatrix {
            columns: self.columns.clone(),
            source: self.source.clone(),
            classes: self.classes.clone(),
            base_precision: self.base_precision,
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for DMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DMatrix")
            .field("columns", &self.columns.len())
            .field("source", &self.source)
            .finish()
    }
}

/// Build `D` for a tetrahedron from its combinations and edge lengths.
pub fn build_d_matrix(t: &Tetrahedron, combos: &[Combination], lengths: &EdgeLengths) -> DMatrix {
    let mut cache = HashMap::new();
    cache.insert(lengths.precision(), Some(lengths.lengths().clone()));
    DMatrix {
        columns: combos.to_vec(),
        source: LengthSource::Tetrahedron {
            t: t.clone(),
            normalization: lengths.normalization(),
            scale: BigRational::from_integer(1.into()),
        },
        classes: t.edge_classes(),
        base_precision: lengths.precision(),
        cache: Mutex::new(cache),
    }
}

impl DMatrix {
    /// A matrix with exact lengths; edges are only grouped when listed in `classes`.
    pub fn from_columns(
        columns: Vec<[u32; 6]>,
        lengths: [BigRational; 6],
        classes: EdgeClasses,
        precision: u32,
    ) -> Self {
        assert!(
            lengths.iter().all(|l| l.is_positive()),
            "lengths must be positive"
        );
        DMatrix {
            columns: columns
                .into_iter()
                .map(|coeffs| Combination {
                    coeffs,
                    target: Target::Pi,
                })
                .collect(),
            source: LengthSource::Fixed(lengths),
            classes,
            base_precision: precision,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// The same matrix with every length multiplied by `t > 0`.
    pub fn scaled(&self, t: &BigRational) -> Self {
        assert!(t.is_positive());
        let source = match &self.source {
            LengthSource::Tetrahedron {
                t: tet,
                normalization,
                scale,
            } => LengthSource::Tetrahedron {
                t: tet.clone(),
                normalization: *normalization,
                scale: scale * t,
            },
            LengthSource::Fixed(v) => LengthSource::Fixed(std::array::from_fn(|e| &v[e] * t)),
        };
        DMatrix {
            columns: self.columns.clone(),
            source,
            classes: self.classes.clone(),
            base_precision: self.base_precision,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn columns(&self) -> &[Combination] {
        &self.columns
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn classes(&self) -> &EdgeClasses {
        &self.classes
    }

    pub fn base_precision(&self) -> u32 {
        self.base_precision
    }

    pub fn lengths(&self, prec: u32) -> Option<[Interval; 6]> {
        let mut cache = self.cache.lock().unwrap();
        cache
            .entry(prec)
            .or_insert_with(|| self.source.lengths_at(prec))
            .clone()
    }

    /// Entry `(e, i)`; exactly zero when the coefficient is zero.
    pub fn entry(&self, e: usize, i: usize, prec: u32) -> Option<Interval> {
        let c = self.columns[i].coeffs[e];
        if c == 0 {
            return Some(Interval::zero(prec));
        }
        let l = self.lengths(prec)?;
        Interval::from_int(c as i64, prec).checked_div(&l[e]).ok()
    }

    /// Midpoint matrix in row-major `6 × s` form.
    pub fn to_f64(&self) -> Option<Vec<Vec<f64>>> {
        let l = self.lengths(self.base_precision)?;
        let inv: Vec<f64> = l.iter().map(|x| 1.0 / x.midpoint()).collect();
        Some(
            (0..6)
                .map(|e| {
                    self.columns
                        .iter()
                        .map(|c| c.coeffs[e] as f64 * inv[e])
                        .collect()
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FarkasCertificate {
    pub y: [BigRational; 6],
    /// Exact `1ᵀy`.
    pub objective: BigRational,
    /// Enclosure of `min_i (Dᵀy)_i`; its lower end is nonnegative.
    pub margin: Interval,
    /// Optimum of the floating-point search that produced `y`.
    pub lp_optimum: f64,
    /// Rounding attempt that succeeded, counted from 0.
    pub attempt: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verification {
    Verified { margin: Interval },
    Rejected(RejectReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RejectReason {
    ObjectiveNotNegative,
    /// `(Dᵀy)_i` is provably negative.
    NegativeColumn(usize),
    /// `(Dᵀy)_i` still straddles zero at the precision cap.
    Undecided(usize),
    /// Lengths could not be enclosed.
    Lengths,
}

enum ColumnCheck {
    Accepted(Interval),
    Negative,
    Straddles,
    NoLengths,
}

fn check_column(d: &DMatrix, i: usize, y: &[BigRational; 6], prec: u32) -> ColumnCheck {
    let coeffs = &d.columns[i].coeffs;
    // Combine edges that are equal by symmetry before any division.
    let mut by_class: Vec<(usize, BigRational)> = Vec::new();
    for e in 0..6 {
        if coeffs[e] == 0 {
            continue;
        }
        let r = BigRational::from_integer(BigInt::from(coeffs[e])) * &y[e];
        let c = d.classes.class_of(e);
        match by_class.iter_mut().find(|(k, _)| *k == c) {
            Some((_, acc)) => *acc += r,
            None => by_class.push((c, r)),
        }
    }
    let all_nonneg = by_class.iter().all(|(_, r)| !r.is_negative());
    let all_nonpos = by_class.iter().all(|(_, r)| !r.is_positive());
    let Some(l) = d.lengths(prec) else {
        return ColumnCheck::NoLengths;
    };
    let mut value = Interval::zero(prec);
    for (c, r) in &by_class {
        if r.is_zero() {
            continue;
        }
        let Ok(term) = Interval::from_rational(r, prec).checked_div(&l[*c]) else {
            return ColumnCheck::NoLengths;
        };
        value = &value + &term;
    }
    if all_nonneg {
        // Nonnegative numerators over positive lengths: exact.
        let lo = value.lo().clone().max(crate::realnum::Dyadic::zero());
        let hi = value.hi().clone().max(lo.clone());
        return ColumnCheck::Accepted(Interval::new(lo, hi, prec));
    }
    if all_nonpos && by_class.iter().any(|(_, r)| r.is_negative()) {
        return ColumnCheck::Negative;
    }
    if value.is_nonnegative() {
        ColumnCheck::Accepted(value)
    } else if value.is_negative() {
        ColumnCheck::Negative
    } else {
        ColumnCheck::Straddles
    }
}

/// Check `1ᵀy < 0` exactly and `Dᵀy ⪰ 0` column by column.
pub fn verify_certificate(d: &DMatrix, y: &[BigRational; 6], precision: Precision) -> Verification {
    let objective: BigRational = y.iter().sum();
    if !objective.is_negative() {
        return Verification::Rejected(RejectReason::ObjectiveNotNegative);
    }
    let schedule = Precision::new(precision.working.max(d.base_precision), precision.max);
    let mut pending: Vec<usize> = (0..d.ncols()).collect();
    let mut accepted: Vec<Option<Interval>> = vec![None; d.ncols()];
    let mut last_prec = schedule.working;
    for prec in schedule.schedule() {
        last_prec = prec;
        let results: Vec<(usize, ColumnCheck)> = pending
            .par_iter()
            .map(|&i| (i, check_column(d, i, y, prec)))
            .collect();
        let mut still = Vec::new();
        for (i, r) in results {
            match r {
                ColumnCheck::Accepted(v) => accepted[i] = Some(v),
                ColumnCheck::Negative => {
                    return Verification::Rejected(RejectReason::NegativeColumn(i))
                }
                ColumnCheck::Straddles | ColumnCheck::NoLengths => still.push(i),
            }
        }
        pending = still;
        if pending.is_empty() {
            break;
        }
    }
    if let Some(&i) = pending.first() {
        let reason = if d.lengths(last_prec).is_none() {
            RejectReason::Lengths
        } else {
            RejectReason::Undecided(i)
        };
        return Verification::Rejected(reason);
    }
    let margin = accepted
        .into_iter()
        .map(|v| v.expect("every column accepted"))
        .reduce(|a, b| a.min(&b))
        .unwrap_or_else(|| Interval::zero(schedule.working));
    Verification::Verified { margin }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LpOptions {
    pub round_denominator: u64,
    pub retries: u32,
    pub precision: Precision,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            round_denominator: DEFAULT_ROUND_DENOMINATOR,
            retries: DEFAULT_RETRIES,
            precision: Precision::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertificateSearch {
    Found(FarkasCertificate),
    NotFound {
        /// Phase-1 optimum of `min 1ᵀy`, when the solver finished.
        lp_optimum: Option<f64>,
        /// Some rounded candidate failed only for lack of precision.
        precision_exhausted: bool,
    },
}

impl CertificateSearch {
    pub fn certificate(&self) -> Option<&FarkasCertificate> {
        match self {
            CertificateSearch::Found(c) => Some(c),
            CertificateSearch::NotFound { .. } => None,
        }
    }
}

/// `min 1ᵀy` subject to `Dᵀy ⪰ 0`, `-1 ≤ y ≤ 1`, via the dual standard form.
fn phase_one(dm: &[Vec<f64>]) -> Option<(f64, Vec<f64>)> {
    let s = dm[0].len();
    let n = s + 12;
    let a: Vec<Vec<f64>> = (0..6)
        .map(|e| {
            let mut row = vec![0.0; n];
            for i in 0..s {
                row[i] = -dm[e][i];
            }
            row[s + e] = 1.0;
            row[s + 6 + e] = -1.0;
            row
        })
        .collect();
    let b = vec![-1.0; 6];
    let mut c = vec![0.0; n];
    for v in c.iter_mut().skip(s) {
        *v = 1.0;
    }
    let sol = simplex::solve(&a, &b, &c);
    (sol.status == LpStatus::Optimal).then(|| (-sol.objective, sol.duals))
}

/// Maximize the smallest column value `τ` among `y` with `1ᵀy ≤ -δ`.
fn margin_lp(dm: &[Vec<f64>], delta: f64) -> Option<Vec<f64>> {
    let s = dm[0].len();
    // Dual variables (y, τ); one primal column per constraint.
    let mut cols: Vec<(Vec<f64>, f64)> = Vec::new();
    for i in 0..s {
        let mut col: Vec<f64> = (0..6).map(|e| -dm[e][i]).collect();
        col.push(1.0);
        cols.push((col, 0.0));
    }
    let mut ones = vec![1.0; 6];
    ones.push(0.0);
    cols.push((ones, -delta));
    for e in 0..6 {
        for sign in [1.0, -1.0] {
            let mut col = vec![0.0; 7];
            col[e] = sign;
            cols.push((col, 1.0));
        }
    }
    let mut up = vec![0.0; 7];
    up[6] = 1.0;
    cols.push((up, 1.0));
    let mut down = vec![0.0; 7];
    down[6] = -1.0;
    cols.push((down, 0.0));

    let a: Vec<Vec<f64>> = (0..7)
        .map(|r| cols.iter().map(|(c, _)| c[r]).collect())
        .collect();
    let c: Vec<f64> = cols.iter().map(|(_, cost)| *cost).collect();
    let mut b = vec![0.0; 7];
    b[6] = 1.0;
    let sol = simplex::solve(&a, &b, &c);
    (sol.status == LpStatus::Optimal).then(|| sol.duals[..6].to_vec())
}

/// Best rational approximation with denominator at most `max_den`.
pub fn approximate(x: f64, max_den: u64) -> BigRational {
    if !x.is_finite() {
        return BigRational::zero();
    }
    let negative = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    let max_den = max_den.max(1) as u128;
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e18 {
            break;
        }
        let ai = a as u128;
        let q2 = ai * q1 + q0;
        if q2 > max_den {
            // Best semiconvergent within the bound.
            let k = (max_den - q0) / q1.max(1);
            let (pk, qk) = (k * p1 + p0, k * q1 + q0);
            let err_k = (pk as f64 / qk as f64 - x.abs()).abs();
            let err_1 = (p1 as f64 / q1.max(1) as f64 - x.abs()).abs();
            if err_k < err_1 {
                p1 = pk;
                q1 = qk;
            }
            break;
        }
        let p2 = ai * p1 + p0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    let q1 = q1.max(1);
    let r = BigRational::new(BigInt::from(p1), BigInt::from(q1));
    if negative {
        -r
    } else {
        r
    }
}

/// Candidate `k`: shift `y` along `g = D·1`, which raises every column,
/// while keeping `1ᵀy` at most half of its value.
fn perturbed(y: &[f64], dm: &[Vec<f64>], k: u32, retries: u32) -> Vec<f64> {
    if k == 0 {
        return y.to_vec();
    }
    let g: Vec<f64> = dm.iter().map(|row| row.iter().sum()).collect();
    let sum_y: f64 = y.iter().sum();
    let sum_g: f64 = g.iter().sum();
    if sum_g <= 0.0 {
        return y.to_vec();
    }
    let eps = (k as f64 / retries.max(1) as f64) * sum_y.abs() / (2.0 * sum_g);
    y.iter().zip(&g).map(|(yi, gi)| yi + eps * gi).collect()
}

/// Search for a certificate and verify it rigorously; only a verified
/// certificate is ever returned.
pub fn find_certificate(d: &DMatrix, options: &LpOptions) -> CertificateSearch {
    let not_found = |lp_optimum, precision_exhausted| CertificateSearch::NotFound {
        lp_optimum,
        precision_exhausted,
    };
    if d.ncols() == 0 {
        return not_found(None, false);
    }
    let Some(dm) = d.to_f64() else {
        return not_found(None, true);
    };
    let Some((opt, y1)) = phase_one(&dm) else {
        return not_found(None, false);
    };
    if opt >= LP_THRESHOLD {
        return not_found(Some(opt), false);
    }
    let y = margin_lp(&dm, -opt / 2.0).unwrap_or(y1);
    let mut exhausted = false;
    for k in 0..=options.retries {
        let cand = perturbed(&y, &dm, k, options.retries);
        let yq: [BigRational; 6] =
            std::array::from_fn(|e| approximate(cand[e], options.round_denominator));
        match verify_certificate(d, &yq, options.precision) {
            Verification::Verified { margin } => {
                let objective = yq.iter().sum();
                return CertificateSearch::Found(FarkasCertificate {
                    y: yq,
                    objective,
                    margin,
                    lp_optimum: opt,
                    attempt: k,
                });
            }
            Verification::Rejected(RejectReason::Undecided(_) | RejectReason::Lengths) => {
                exhausted = true
            }
            Verification::Rejected(_) => {}
        }
    }
    not_found(Some(opt), exhausted)
}

/// Column values `(Dᵀy)_i` as doubles, for reports and diagnostics.
pub fn column_values(d: &DMatrix, y: &[BigRational; 6]) -> Vec<f64> {
    let Some(dm) = d.to_f64() else {
        return vec![];
    };
    let yf: Vec<f64> = y.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect();
    (0..d.ncols())
        .map(|i| (0..6).map(|e| dm[e][i] * yf[e]).sum())
        .collect()
}
