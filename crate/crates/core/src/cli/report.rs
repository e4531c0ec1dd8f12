//! Report records and the JSON, CSV and Markdown renderings.

use num_rational::BigRational;
use serde::Serialize;

use crate::angles::{AngleTuple, EDGE_LABELS};
use crate::catalog::{CatalogEntry, Duplicate, Expected, SkippedEntry, SourceTag};
use crate::criteria::{
    AnalysisOptions, CrtfOutcome, CrtlOutcome, CrtnMode, CrtnOutcome, Reason, Verdict,
};
use crate::families::FamilyCombination;
use crate::realnum::Interval;
use crate::tetgeom::{Normalization, PatternKind};

pub const SCHEMA_VERSION: &str = "1.0.0";

/// How containment in an opposite pair is read for CRTN condition 2.
pub const CRTN_READING: &str = "support contained in the opposite pair";

fn ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn pairs(angles: &AngleTuple) -> Vec<[i64; 2]> {
    angles
        .angles()
        .iter()
        .map(|a| {
            let p: i64 = a.numerator().try_into().unwrap_or(i64::MAX);
            let q: i64 = a.denominator().try_into().unwrap_or(i64::MAX);
            [p, q]
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub lo: f64,
    pub hi: f64,
}

impl From<&Interval> for Bounds {
    fn from(i: &Interval) -> Self {
        let (lo, hi) = i.to_f64_bounds();
        Bounds { lo, hi }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Settings {
    pub precision: u32,
    pub max_precision: u32,
    pub lp_round_denominator: u64,
    pub crtn_mode: CrtnMode,
    pub crtn_reading: &'static str,
    pub normalization: Normalization,
    pub strict_numerics: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f1_samples: Option<usize>,
}

impl Settings {
    pub fn new(options: &AnalysisOptions, strict_numerics: bool) -> Self {
        Settings {
            precision: options.precision.working,
            max_precision: options.precision.max,
            lp_round_denominator: options.lp.round_denominator,
            crtn_mode: options.crtn_mode,
            crtn_reading: CRTN_READING,
            normalization: options.normalization,
            strict_numerics,
            seed: None,
            samples: None,
            f1_samples: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrtnRecord {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<[&'static str; 2]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub combinations: Vec<[u32; 6]>,
}

impl From<&CrtnOutcome> for CrtnRecord {
    fn from(o: &CrtnOutcome) -> Self {
        match o {
            CrtnOutcome::RulesOutNonFF {
                condition,
                pair,
                evidence,
            } => CrtnRecord {
                status: "rules-out",
                condition: Some(*condition),
                pair: pair.map(|[a, b]| [EDGE_LABELS[a], EDGE_LABELS[b]]),
                combinations: evidence.iter().map(|c| c.coeffs).collect(),
            },
            CrtnOutcome::Inapplicable => CrtnRecord {
                status: "inapplicable",
                condition: None,
                pair: None,
                combinations: vec![],
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrtnReport {
    pub mode: CrtnMode,
    pub selected: CrtnRecord,
    pub strict: CrtnRecord,
    pub generalized: CrtnRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrtfRecord {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<PatternKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle: Option<[i64; 2]>,
}

impl From<&CrtfOutcome> for CrtfRecord {
    fn from(o: &CrtfOutcome) -> Self {
        match o {
            CrtfOutcome::RulesOutFF {
                pattern,
                edge,
                angle,
            } => CrtfRecord {
                status: "rules-out",
                pattern: Some(*pattern),
                edge: Some(EDGE_LABELS[*edge]),
                angle: Some([
                    angle.numerator().try_into().unwrap_or(i64::MAX),
                    angle.denominator().try_into().unwrap_or(i64::MAX),
                ]),
            },
            CrtfOutcome::Inapplicable => CrtfRecord {
                status: "inapplicable",
                pattern: None,
                edge: None,
                angle: None,
            },
            CrtfOutcome::Undecided => CrtfRecord {
                status: "undecided",
                pattern: None,
                edge: None,
                angle: None,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateRecord {
    /// Exact rationals `"p/q"`.
    pub y: Vec<String>,
    pub objective: String,
    pub margin: Bounds,
    pub lp_optimum: f64,
    pub attempt: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrtlRecord {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateRecord>,
    pub lp_optimum: Option<f64>,
    pub precision_exhausted: bool,
}

impl From<&CrtlOutcome> for CrtlRecord {
    fn from(o: &CrtlOutcome) -> Self {
        match o {
            CrtlOutcome::RulesOut(c) => CrtlRecord {
                status: "rules-out",
                certificate: Some(CertificateRecord {
                    y: c.y.iter().map(ratio).collect(),
                    objective: ratio(&c.objective),
                    margin: (&c.margin).into(),
                    lp_optimum: c.lp_optimum,
                    attempt: c.attempt,
                }),
                lp_optimum: Some(c.lp_optimum),
                precision_exhausted: false,
            },
            CrtlOutcome::Inapplicable {
                lp_optimum,
                precision_exhausted,
            } => CrtlRecord {
                status: "inapplicable",
                certificate: None,
                lp_optimum: *lp_optimum,
                precision_exhausted: *precision_exhausted,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternRecord {
    pub kind: PatternKind,
    pub equal_pairs: Vec<[&'static str; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AggregateRecord {
    pub verdict: &'static str,
    pub reasons: Vec<Reason>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub index: usize,
    pub id: String,
    pub source: SourceTag,
    /// `[p, q]` per edge, meaning `(p/q)π`.
    pub angles: Vec<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_x: Option<[i64; 2]>,
    pub edge_lengths: Vec<Bounds>,
    pub normalization: Normalization,
    pub length_precision: u32,
    pub equality_classes: Vec<Vec<&'static str>>,
    pub pattern: PatternRecord,
    pub pi_combinations: usize,
    pub two_pi_combinations: usize,
    pub crtn: CrtnReport,
    pub crtf: CrtfRecord,
    pub crtl: CrtlRecord,
    pub aggregate: AggregateRecord,
    pub precision_exhausted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_expected: Option<bool>,
}

impl Record {
    pub fn new(
        index: usize,
        id: &str,
        source: SourceTag,
        expected: Option<Expected>,
        v: &Verdict,
    ) -> Self {
        let verdict = v.aggregate.label();
        Record {
            index,
            id: id.to_string(),
            source,
            angles: pairs(v.tetrahedron.angles()),
            family_x: None,
            edge_lengths: v.lengths.lengths().iter().map(Bounds::from).collect(),
            normalization: v.lengths.normalization(),
            length_precision: v.lengths.precision(),
            equality_classes: v
                .classes
                .classes()
                .into_iter()
                .map(|c| c.into_iter().map(|e| EDGE_LABELS[e]).collect())
                .collect(),
            pattern: PatternRecord {
                kind: v.pattern.kind,
                equal_pairs: v
                    .pattern
                    .equal_pairs
                    .iter()
                    .map(|[a, b]| [EDGE_LABELS[*a], EDGE_LABELS[*b]])
                    .collect(),
            },
            pi_combinations: v.pi_combinations.len(),
            two_pi_combinations: v.two_pi_combinations.len(),
            crtn: CrtnReport {
                mode: v.crtn_mode,
                selected: v.crtn().into(),
                strict: (&v.crtn_strict).into(),
                generalized: (&v.crtn_generalized).into(),
            },
            crtf: (&v.crtf).into(),
            crtl: (&v.crtl).into(),
            aggregate: AggregateRecord {
                verdict,
                reasons: v.aggregate.reasons().to_vec(),
            },
            precision_exhausted: v.precision_exhausted(),
            expected,
            matches_expected: expected.map(|e| e.label() == verdict),
        }
    }

    pub fn for_entry(index: usize, entry: &CatalogEntry, v: &Verdict) -> Self {
        Self::new(index, &entry.id, entry.source, entry.expected, v)
    }

    fn is_crtn_crtf(&self) -> bool {
        self.aggregate.reasons.contains(&Reason::CrtnAndCrtf)
    }

    fn is_crtl(&self) -> bool {
        self.aggregate.reasons.contains(&Reason::Crtl)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub does_not_tile: usize,
    pub inconclusive: usize,
    /// Ruled out by CRTN together with CRTF (CRTL may also apply).
    pub crtn_and_crtf: usize,
    /// Ruled out by CRTL, whether or not CRTN and CRTF also apply.
    pub crtl: usize,
    /// Ruled out by CRTL and not by CRTN with CRTF.
    pub crtl_only: usize,
    /// Entries, analyzed or skipped, with a question left open at the cap.
    pub precision_exhausted: usize,
    pub mismatches: Vec<String>,
    pub skipped: Vec<SkippedEntry>,
    pub duplicates: Vec<Duplicate>,
}

impl Summary {
    pub fn tally(records: &[Record]) -> Self {
        let mut s = Summary {
            total: records.len(),
            ..Default::default()
        };
        for r in records {
            if r.aggregate.verdict == "DoesNotTile" {
                s.does_not_tile += 1;
            } else {
                s.inconclusive += 1;
            }
            if r.is_crtn_crtf() {
                s.crtn_and_crtf += 1;
            }
            if r.is_crtl() {
                s.crtl += 1;
                if !r.is_crtn_crtf() {
                    s.crtl_only += 1;
                }
            }
            if r.precision_exhausted {
                s.precision_exhausted += 1;
            }
            if r.matches_expected == Some(false) {
                s.mismatches.push(r.id.clone());
            }
        }
        s
    }

    pub fn add_skipped(&mut self, skipped: Vec<SkippedEntry>) {
        self.precision_exhausted += skipped.iter().filter(|k| k.precision_exhausted).count();
        self.skipped.extend(skipped);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CombinationRow {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub target: crate::combos::Target,
    pub text: String,
}

impl From<&FamilyCombination> for CombinationRow {
    fn from(k: &FamilyCombination) -> Self {
        CombinationRow {
            a: k.a,
            b: k.b,
            c: k.c,
            d: k.d,
            target: k.target,
            text: k.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecificRow {
    pub x: [i64; 2],
    pub angles: Vec<[i64; 2]>,
}

impl SpecificRow {
    pub fn new(x: &crate::angles::RationalAngle, angles: &AngleTuple) -> Self {
        SpecificRow {
            x: [
                x.numerator().try_into().unwrap_or(i64::MAX),
                x.denominator().try_into().unwrap_or(i64::MAX),
            ],
            angles: pairs(angles),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub settings: Settings,
    pub entries: Vec<Record>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub combinations: Vec<CombinationRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub specific: Vec<SpecificRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl Report {
    pub fn new(command: &str, settings: Settings, entries: Vec<Record>) -> Self {
        let summary = Summary::tally(&entries);
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            settings,
            entries,
            summary,
            combinations: vec![],
            specific: vec![],
            timings: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per entry; evidence is left out.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if !self.entries.is_empty() {
            w.write_record([
                "index",
                "id",
                "source",
                "angles",
                "pattern",
                "pi_combinations",
                "two_pi_combinations",
                "crtn",
                "crtf",
                "crtl",
                "verdict",
                "reasons",
                "expected",
            ])
            .expect("in-memory write");
            for r in &self.entries {
                let angles: Vec<String> =
                    r.angles.iter().map(|[p, q]| format!("{p}/{q}")).collect();
                let reasons: Vec<&str> = r.aggregate.reasons.iter().map(reason_label).collect();
                w.write_record([
                    r.index.to_string(),
                    r.id.clone(),
                    r.source.to_string(),
                    angles.join(" "),
                    r.pattern.kind.to_string(),
                    r.pi_combinations.to_string(),
                    r.two_pi_combinations.to_string(),
                    r.crtn.selected.status.to_string(),
                    r.crtf.status.to_string(),
                    r.crtl.status.to_string(),
                    r.aggregate.verdict.to_string(),
                    reasons.join(" "),
                    r.expected
                        .map(|e| e.label().to_string())
                        .unwrap_or_default(),
                ])
                .expect("in-memory write");
            }
        }
        if !self.combinations.is_empty() {
            w.write_record(["a", "b", "c", "d", "target", "combination"])
                .expect("in-memory write");
            for c in &self.combinations {
                w.write_record([
                    c.a.to_string(),
                    c.b.to_string(),
                    c.c.to_string(),
                    c.d.to_string(),
                    c.target.to_string(),
                    c.text.clone(),
                ])
                .expect("in-memory write");
            }
        }
        if !self.specific.is_empty() {
            w.write_record(["x", "angles"]).expect("in-memory write");
            for s in &self.specific {
                let angles: Vec<String> =
                    s.angles.iter().map(|[p, q]| format!("{p}/{q}")).collect();
                w.write_record([format!("{}/{}", s.x[0], s.x[1]), angles.join(" ")])
                    .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# {}\n\n", self.command);
        let s = &self.summary;
        if !self.entries.is_empty() {
            out.push_str("| # | id | angles (×π) | pattern | CRTN | CRTF | CRTL | verdict |\n");
            out.push_str("|---|----|-------------|---------|------|------|------|---------|\n");
            for r in &self.entries {
                let angles: Vec<String> =
                    r.angles.iter().map(|[p, q]| format!("{p}/{q}")).collect();
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                    r.index,
                    r.id,
                    angles.join(", "),
                    r.pattern.kind,
                    r.crtn.selected.status,
                    r.crtf.status,
                    r.crtl.status,
                    r.aggregate.verdict
                ));
            }
            out.push_str(&format!(
                "\n{} entries: {} do not tile ({} by CRTN+CRTF, {} by CRTL only), {} inconclusive.\n",
                s.total, s.does_not_tile, s.crtn_and_crtf, s.crtl_only, s.inconclusive
            ));
            if !s.mismatches.is_empty() {
                out.push_str(&format!(
                    "\nMismatches with expected verdicts: {}\n",
                    s.mismatches.join(", ")
                ));
            }
        }
        if !self.combinations.is_empty() {
            out.push_str("| combination |\n|---|\n");
            for c in &self.combinations {
                out.push_str(&format!("| {} |\n", c.text));
            }
        }
        if !self.specific.is_empty() {
            out.push_str("| x (×π) | angles (×π) |\n|---|---|\n");
            for r in &self.specific {
                let angles: Vec<String> =
                    r.angles.iter().map(|[p, q]| format!("{p}/{q}")).collect();
                out.push_str(&format!(
                    "| {}/{} | {} |\n",
                    r.x[0],
                    r.x[1],
                    angles.join(", ")
                ));
            }
        }
        for sk in &s.skipped {
            out.push_str(&format!(
                "\nSkipped {} (entry {}): {}\n",
                sk.id, sk.index, sk.reason
            ));
        }
        for d in &s.duplicates {
            out.push_str(&format!("\n{} is a relabeling of {}\n", d.second, d.first));
        }
        out
    }
}

fn reason_label(r: &Reason) -> &'static str {
    match r {
        Reason::CrtnAndCrtf => "crtn+crtf",
        Reason::Crtl => "crtl",
    }
}
