//! The three rule-out criteria and the per-tetrahedron verdict.
//!
//! * CRTN: no non-face-to-face tiling, from the π-combinations.
//! * CRTF: no face-to-face tiling, from the edge pattern and an angle that
//!   does not divide 2π.
//! * CRTL: no tiling at all, from a verified Farkas certificate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::angles::{RationalAngle, OPPOSITE_PAIRS};
use crate::combos::{enumerate_combinations, Combination, Target};
use crate::lp::{self, CertificateSearch, FarkasCertificate, LpOptions, Verification};
use crate::realnum::Precision;
use crate::tetgeom::{
    classify_pattern, edge_lengths, EdgeClasses, EdgeLengths, EdgePattern, GeometryError,
    Normalization, PatternKind, Tetrahedron,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrtnMode {
    /// Exactly one π-combination, supported on an opposite pair.
    Strict,
    /// All π-combinations supported on one common opposite pair.
    #[default]
    Generalized,
}

impl FromStr for CrtnMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(CrtnMode::Strict),
            "generalized" => Ok(CrtnMode::Generalized),
            other => Err(format!("unknown CRTN mode {other:?}")),
        }
    }
}

impl fmt::Display for CrtnMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrtnMode::Strict => "strict",
            CrtnMode::Generalized => "generalized",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrtnOutcome {
    /// `condition` 1: no π-combination; `condition` 2: every π-combination
    /// lives on the opposite pair `pair`.
    RulesOutNonFF {
        condition: u8,
        pair: Option<[usize; 2]>,
        evidence: Vec<Combination>,
    },
    Inapplicable,
}

impl CrtnOutcome {
    pub fn rules_out(&self) -> bool {
        matches!(self, CrtnOutcome::RulesOutNonFF { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrtfOutcome {
    RulesOutFF {
        pattern: PatternKind,
        edge: usize,
        angle: RationalAngle,
    },
    Inapplicable,
    Undecided,
}

impl CrtfOutcome {
    pub fn rules_out(&self) -> bool {
        matches!(self, CrtfOutcome::RulesOutFF { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CrtlOutcome {
    RulesOut(FarkasCertificate),
    Inapplicable {
        lp_optimum: Option<f64>,
        precision_exhausted: bool,
    },
}

impl CrtlOutcome {
    pub fn rules_out(&self) -> bool {
        matches!(self, CrtlOutcome::RulesOut(_))
    }

    pub fn certificate(&self) -> Option<&FarkasCertificate> {
        match self {
            CrtlOutcome::RulesOut(c) => Some(c),
            CrtlOutcome::Inapplicable { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reason {
    /// CRTN and CRTF together.
    #[serde(rename = "crtn+crtf")]
    CrtnAndCrtf,
    #[serde(rename = "crtl")]
    Crtl,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Aggregate {
    DoesNotTile(Vec<Reason>),
    Inconclusive,
}

impl Aggregate {
    pub fn does_not_tile(&self) -> bool {
        matches!(self, Aggregate::DoesNotTile(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Aggregate::DoesNotTile(_) => "DoesNotTile",
            Aggregate::Inconclusive => "Inconclusive",
        }
    }

    pub fn reasons(&self) -> &[Reason] {
        match self {
            Aggregate::DoesNotTile(r) => r,
            Aggregate::Inconclusive => &[],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub precision: Precision,
    pub crtn_mode: CrtnMode,
    pub normalization: Normalization,
    pub lp: LpOptions,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            precision: Precision::default(),
            crtn_mode: CrtnMode::default(),
            normalization: Normalization::default(),
            lp: LpOptions::default(),
        }
    }
}

impl AnalysisOptions {
    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self.lp.precision = precision;
        self
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub tetrahedron: Tetrahedron,
    pub lengths: EdgeLengths,
    pub classes: EdgeClasses,
    pub pattern: EdgePattern,
    pub pi_combinations: Vec<Combination>,
    pub two_pi_combinations: Vec<Combination>,
    pub crtn_mode: CrtnMode,
    pub crtn_strict: CrtnOutcome,
    pub crtn_generalized: CrtnOutcome,
    pub crtf: CrtfOutcome,
    pub crtl: CrtlOutcome,
    pub aggregate: Aggregate,
}

impl Verdict {
    /// CRTN under the selected mode.
    pub fn crtn(&self) -> &CrtnOutcome {
        match self.crtn_mode {
            CrtnMode::Strict => &self.crtn_strict,
            CrtnMode::Generalized => &self.crtn_generalized,
        }
    }

    /// Some numeric question was left open at the precision cap.
    pub fn precision_exhausted(&self) -> bool {
        self.pattern.kind == PatternKind::Undecided
            || matches!(
                self.crtl,
                CrtlOutcome::Inapplicable {
                    precision_exhausted: true,
                    ..
                }
            )
    }
}

/// No non-face-to-face tiling, read off the π-combinations.
pub fn crtn(pi_combos: &[Combination], mode: CrtnMode) -> CrtnOutcome {
    debug_assert!(pi_combos.iter().all(|c| c.target == Target::Pi));
    if pi_combos.is_empty() {
        return CrtnOutcome::RulesOutNonFF {
            condition: 1,
            pair: None,
            evidence: vec![],
        };
    }
    if mode == CrtnMode::Strict && pi_combos.len() != 1 {
        return CrtnOutcome::Inapplicable;
    }
    for &(a, b) in &OPPOSITE_PAIRS {
        if pi_combos.iter().all(|c| c.within(&[a, b])) {
            return CrtnOutcome::RulesOutNonFF {
                condition: 2,
                pair: Some([a, b]),
                evidence: pi_combos.to_vec(),
            };
        }
    }
    CrtnOutcome::Inapplicable
}

/// No face-to-face tiling: the pattern is parallelogram-like or all-distinct
/// and some angle does not divide 2π.
pub fn crtf(t: &Tetrahedron, pattern: &EdgePattern) -> CrtfOutcome {
    let Some(edge) = (0..6).find(|&e| !t.angle(e).divides_two_pi()) else {
        return CrtfOutcome::Inapplicable;
    };
    match pattern.kind {
        PatternKind::ParallelogramLike | PatternKind::AllDistinct => CrtfOutcome::RulesOutFF {
            pattern: pattern.kind,
            edge,
            angle: t.angle(edge).clone(),
        },
        PatternKind::Undecided => CrtfOutcome::Undecided,
        PatternKind::Other => CrtfOutcome::Inapplicable,
    }
}

fn crtl_with(
    t: &Tetrahedron,
    combos: &[Combination],
    lengths: &EdgeLengths,
    options: &LpOptions,
) -> CrtlOutcome {
    let d = lp::build_d_matrix(t, combos, lengths);
    match lp::find_certificate(&d, options) {
        CertificateSearch::Found(c) => CrtlOutcome::RulesOut(c),
        CertificateSearch::NotFound {
            lp_optimum,
            precision_exhausted,
        } => CrtlOutcome::Inapplicable {
            lp_optimum,
            precision_exhausted,
        },
    }
}

/// The linear-programming criterion on its own.
pub fn crtl(t: &Tetrahedron, options: &AnalysisOptions) -> Result<CrtlOutcome, GeometryError> {
    let combos = enumerate_combinations(t, &Target::BOTH);
    let lengths = edge_lengths(t, options.normalization, options.precision)?;
    Ok(crtl_with(t, &combos, &lengths, &options.lp))
}

/// Run all three criteria and aggregate.
pub fn analyze(t: &Tetrahedron, options: &AnalysisOptions) -> Result<Verdict, GeometryError> {
    let combos = enumerate_combinations(t, &Target::BOTH);
    let (pi, two_pi): (Vec<Combination>, Vec<Combination>) =
        combos.iter().cloned().partition(|c| c.target == Target::Pi);
    let lengths = edge_lengths(t, options.normalization, options.precision)?;
    let pattern = classify_pattern(t, &lengths, options.precision);
    let crtn_strict = crtn(&pi, CrtnMode::Strict);
    let crtn_generalized = crtn(&pi, CrtnMode::Generalized);
    let crtf_out = crtf(t, &pattern);
    let crtl_out = crtl_with(t, &combos, &lengths, &options.lp);

    let selected = match options.crtn_mode {
        CrtnMode::Strict => &crtn_strict,
        CrtnMode::Generalized => &crtn_generalized,
    };
    let mut reasons = Vec::new();
    if selected.rules_out() && crtf_out.rules_out() {
        reasons.push(Reason::CrtnAndCrtf);
    }
    if crtl_out.rules_out() {
        reasons.push(Reason::Crtl);
    }
    let aggregate = if reasons.is_empty() {
        Aggregate::Inconclusive
    } else {
        Aggregate::DoesNotTile(reasons)
    };
    Ok(Verdict {
        classes: t.edge_classes(),
        tetrahedron: t.clone(),
        lengths,
        pattern,
        pi_combinations: pi,
        two_pi_combinations: two_pi,
        crtn_mode: options.crtn_mode,
        crtn_strict,
        crtn_generalized,
        crtf: crtf_out,
        crtl: crtl_out,
        aggregate,
    })
}

/// Re-derive every piece of evidence behind the verdict from scratch.
pub fn verify_evidence(v: &Verdict, options: &AnalysisOptions) -> bool {
    let t = &v.tetrahedron;
    let angles = t.angles();
    if !v
        .pi_combinations
        .iter()
        .chain(&v.two_pi_combinations)
        .all(|c| c.holds_for(angles))
    {
        return false;
    }
    for outcome in [&v.crtn_strict, &v.crtn_generalized] {
        if let CrtnOutcome::RulesOutNonFF {
            condition,
            pair,
            evidence,
        } = outcome
        {
            let fresh = enumerate_combinations(t, &[Target::Pi]);
            if &fresh != evidence {
                return false;
            }
            let ok = match (condition, pair) {
                (1, None) => evidence.is_empty(),
                (2, Some(p)) => evidence.iter().all(|c| c.within(p)),
                _ => false,
            };
            if !ok {
                return false;
            }
        }
    }
    if let CrtfOutcome::RulesOutFF {
        pattern,
        edge,
        angle,
    } = &v.crtf
    {
        if angle != t.angle(*edge) || angle.divides_two_pi() || *pattern != v.pattern.kind {
            return false;
        }
    }
    if let CrtlOutcome::RulesOut(cert) = &v.crtl {
        let combos = enumerate_combinations(t, &Target::BOTH);
        let Ok(lengths) = edge_lengths(t, options.normalization, options.precision) else {
            return false;
        };
        let d = lp::build_d_matrix(t, &combos, &lengths);
        if !matches!(
            lp::verify_certificate(&d, &cert.y, options.precision),
            Verification::Verified { .. }
        ) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::AngleTuple;

    fn tet(r: [(i64, i64); 6]) -> Tetrahedron {
        Tetrahedron::new(AngleTuple::from_ratios(r).unwrap()).unwrap()
    }

    #[test]
    fn general_member_is_ruled_out_by_both() {
        let t = tet([(31, 60), (29, 60), (7, 20), (7, 20), (19, 60), (19, 60)]);
        let v = analyze(&t, &AnalysisOptions::default()).unwrap();
        assert!(matches!(
            v.crtn(),
            CrtnOutcome::RulesOutNonFF {
                condition: 2,
                pair: Some([0, 1]),
                ..
            }
        ));
        assert!(v.crtn_strict.rules_out());
        assert!(v.crtf.rules_out());
        assert!(v.aggregate.reasons().contains(&Reason::CrtnAndCrtf));
        assert!(verify_evidence(&v, &AnalysisOptions::default()));
    }

    #[test]
    fn t_pi_over_3_is_inconclusive() {
        let t = tet([(1, 2), (1, 2), (1, 3), (1, 3), (1, 3), (1, 3)]);
        let v = analyze(&t, &AnalysisOptions::default()).unwrap();
        assert_eq!(v.pi_combinations.len(), 23);
        assert_eq!(v.crtn_generalized, CrtnOutcome::Inapplicable);
        assert_eq!(v.crtf, CrtfOutcome::Inapplicable);
        assert!(!v.crtl.rules_out());
        assert_eq!(v.aggregate, Aggregate::Inconclusive);
    }

    #[test]
    fn condition_one_on_empty_list() {
        assert!(matches!(
            crtn(&[], CrtnMode::Strict),
            CrtnOutcome::RulesOutNonFF { condition: 1, .. }
        ));
    }

    #[test]
    fn extra_sporadics_fall_to_the_lp() {
        for r in [
            [(3, 20), (11, 20), (11, 20), (1, 4), (1, 3), (2, 3)],
            [(11, 60), (31, 60), (11, 20), (1, 4), (3, 10), (7, 10)],
        ] {
            let out = crtl(&tet(r), &AnalysisOptions::default()).unwrap();
            let c = out.certificate().expect("certificate");
            assert!(c.margin.is_nonnegative());
        }
    }
}
