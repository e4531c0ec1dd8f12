//! Command-line front end: `analyze`, `catalog` and `families gen|spe|scan`.
//!
//! [`run`] takes the argument list and returns the exit code together with
//! what would go to stdout and stderr, so the binary stays a thin shell.
//!
//! Exit codes: 0 success, 1 a verdict or listing differs from what was
//! expected, 2 unparsable input, 3 invalid geometry or skipped entries,
//! 4 precision exhausted under `--strict-numerics`.

pub mod report;

use std::collections::BTreeSet;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::angles::{AngleTuple, RationalAngle};
use crate::catalog::{
    builtin_catalog, canonical_form, load_catalog, parse_catalog, Catalog, CatalogError,
    SkippedEntry, SourceTag,
};
use crate::criteria::{analyze, AnalysisOptions, CrtnMode, Verdict};
use crate::families::{enumerate_specific, f1_member, f2_member, general_combinations, is_general};
use crate::lp::LpOptions;
use crate::realnum::{Precision, DEFAULT_MAX_PRECISION, DEFAULT_PRECISION, MIN_PRECISION};
use crate::tetgeom::{GeometryError, Normalization, Tetrahedron};

pub use report::{Record, Report, Settings, Summary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_GEOMETRY: i32 = 3;
pub const EXIT_PRECISION: i32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Md,
}

#[derive(Debug, Parser)]
#[command(
    name = "tetratile",
    version,
    about = "Rule-out tests for space-filling rational tetrahedra"
)]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct Flags {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// Precision cap in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PRECISION)]
    pub max_precision: u32,
    /// Largest denominator when rounding LP duals.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub lp_round_denominator: u64,
    #[arg(long, global = true, default_value = "generalized")]
    pub crtn_mode: CrtnMode,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value = "max-edge")]
    pub normalization: Normalization,
    /// Treat precision exhaustion as an error.
    #[arg(long, global = true)]
    pub strict_numerics: bool,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze one tetrahedron, or every entry of a catalog file.
    Analyze {
        /// Six angles `p/q` meaning (p/q)π, in edge order 12,34,13,24,14,23.
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "file",
            required_unless_present = "file"
        )]
        angles: Option<String>,
        #[arg(long)]
        file: Option<String>,
    },
    /// Analyze a built-in list (A40, EXTRA2, SPECIFIC23) or a catalog file.
    Catalog { source: String },
    /// The family `T_x`.
    Families {
        #[command(subcommand)]
        command: FamilyCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// Combinations valid for every general member.
    Gen,
    /// Parameters with an extra combination, and their tuples.
    Spe,
    /// Analyze random general members of `T_x` and random members of the first family.
    Scan {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        f1_samples: usize,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn error(code: i32, message: impl std::fmt::Display) -> Self {
        Output {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

impl Flags {
    pub fn options(&self) -> AnalysisOptions {
        let precision = Precision::new(self.precision, self.max_precision);
        AnalysisOptions {
            precision,
            crtn_mode: self.crtn_mode,
            normalization: self.normalization,
            lp: LpOptions {
                round_denominator: self.lp_round_denominator,
                precision,
                ..LpOptions::default()
            },
        }
    }

    fn validate(&self) -> Result<(), String> {
        if self.precision < MIN_PRECISION {
            return Err(format!("--precision must be at least {MIN_PRECISION} bits"));
        }
        if self.max_precision < self.precision {
            return Err("--max-precision is below --precision".into());
        }
        if self.lp_round_denominator == 0 {
            return Err("--lp-round-denominator must be positive".into());
        }
        Ok(())
    }

    fn render(&self, report: &Report) -> String {
        match self.format {
            Format::Json => report.to_json(),
            Format::Csv => report.to_csv(),
            Format::Md => report.to_markdown(),
        }
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output {
                        code: EXIT_OK,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Output {
                    code: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    if let Err(m) = cli.flags.validate() {
        return Output::error(EXIT_PARSE, m);
    }
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::Analyze {
            angles: Some(a), ..
        } => cmd_analyze(a, &cli.flags),
        Command::Analyze { file: Some(f), .. } => {
            match load_catalog(f, cli.flags.options().precision) {
                Ok(c) => run_catalog("analyze", c, &cli.flags, false),
                Err(e) => Err(catalog_error(e)),
            }
        }
        Command::Analyze { .. } => Err(Output::error(EXIT_PARSE, "give --angles or --file")),
        Command::Catalog { source } => cmd_catalog(source, &cli.flags),
        Command::Families { command } => cmd_families(command, &cli.flags),
    };
    if let Ok((report, _)) = &mut out {
        if cli.flags.timings {
            report.timings = Some(report::Timings {
                total_ms: start.elapsed().as_secs_f64() * 1e3,
            });
        }
    }
    match out {
        Ok((report, code)) => Output {
            code,
            stdout: cli.flags.render(&report),
            stderr: notes(&report),
        },
        Err(o) => o,
    }
}

fn notes(report: &Report) -> String {
    let mut s = String::new();
    for k in &report.summary.skipped {
        s.push_str(&format!(
            "skipped {} (entry {}): {}\n",
            k.id, k.index, k.reason
        ));
    }
    if !report.summary.mismatches.is_empty() {
        s.push_str(&format!(
            "mismatches: {}\n",
            report.summary.mismatches.join(", ")
        ));
    }
    s
}

fn catalog_error(e: CatalogError) -> Output {
    Output::error(EXIT_PARSE, e)
}

fn geometry_exit(e: &GeometryError, strict: bool) -> i32 {
    if strict && e.is_precision_exhausted() {
        EXIT_PRECISION
    } else {
        EXIT_GEOMETRY
    }
}

type CmdResult = Result<(Report, i32), Output>;

/// Exit code from a finished report: numerics under `--strict-numerics`,
/// then geometry, then mismatches.
fn status(report: &Report, flags: &Flags, mismatch_matters: bool) -> i32 {
    let s = &report.summary;
    if flags.strict_numerics && s.precision_exhausted > 0 {
        EXIT_PRECISION
    } else if !s.skipped.is_empty() {
        EXIT_GEOMETRY
    } else if mismatch_matters && !s.mismatches.is_empty() {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    }
}

pub fn cmd_analyze(angles: &str, flags: &Flags) -> CmdResult {
    let options = flags.options();
    let tuple = AngleTuple::parse_list(angles).map_err(|e| Output::error(EXIT_PARSE, e))?;
    let t = Tetrahedron::with_precision(tuple, options.precision)
        .map_err(|e| Output::error(geometry_exit(&e, flags.strict_numerics), e))?;
    let v = analyze(&t, &options)
        .map_err(|e| Output::error(geometry_exit(&e, flags.strict_numerics), e))?;
    let record = Record::new(0, "input", SourceTag::USER, None, &v);
    let report = Report::new(
        "analyze",
        Settings::new(&options, flags.strict_numerics),
        vec![record],
    );
    let code = status(&report, flags, false);
    Ok((report, code))
}

pub fn cmd_catalog(source: &str, flags: &Flags) -> CmdResult {
    let catalog = match source.parse::<SourceTag>() {
        Ok(tag) if tag != SourceTag::USER => {
            let entries = builtin_catalog(tag);
            let text = crate::catalog::to_json(&entries);
            parse_catalog(&text, flags.options().precision).map_err(catalog_error)?
        }
        _ => load_catalog(source, flags.options().precision).map_err(catalog_error)?,
    };
    run_catalog("catalog", catalog, flags, true)
}

fn analyze_all(
    ts: &[Tetrahedron],
    options: &AnalysisOptions,
) -> Vec<Result<Verdict, GeometryError>> {
    ts.par_iter().map(|t| analyze(t, options)).collect()
}

fn run_catalog(
    command: &str,
    catalog: Catalog,
    flags: &Flags,
    mismatch_matters: bool,
) -> CmdResult {
    let options = flags.options();
    let ts: Vec<Tetrahedron> = catalog
        .entries
        .iter()
        .map(|e| e.tetrahedron().expect("parsed entries are tetrahedra"))
        .collect();
    let results = analyze_all(&ts, &options);
    let mut records = Vec::new();
    let mut skipped = catalog.skipped;
    for (index, (entry, r)) in catalog.entries.iter().zip(results).enumerate() {
        match r {
            Ok(v) => records.push(Record::for_entry(index, entry, &v)),
            Err(e) => skipped.push(SkippedEntry {
                index,
                id: entry.id.clone(),
                reason: e.to_string(),
                precision_exhausted: e.is_precision_exhausted(),
            }),
        }
    }
    let mut report = Report::new(
        command,
        Settings::new(&options, flags.strict_numerics),
        records,
    );
    report.summary.add_skipped(skipped);
    report.summary.duplicates = catalog.duplicates;
    let code = status(&report, flags, mismatch_matters);
    Ok((report, code))
}

pub fn cmd_families(command: &FamilyCommand, flags: &Flags) -> CmdResult {
    let options = flags.options();
    let settings = Settings::new(&options, flags.strict_numerics);
    match command {
        FamilyCommand::Gen => {
            let mut report = Report::new("families gen", settings, vec![]);
            report.combinations = general_combinations().iter().map(Into::into).collect();
            Ok((report, EXIT_OK))
        }
        FamilyCommand::Spe => {
            let specific = enumerate_specific();
            let mut report = Report::new("families spe", settings, vec![]);
            report.specific = specific
                .iter()
                .map(|(x, t)| report::SpecificRow::new(x, t.angles()))
                .collect();
            let found: BTreeSet<AngleTuple> = specific
                .iter()
                .map(|(_, t)| canonical_form(t.angles()))
                .collect();
            let listed: BTreeSet<AngleTuple> = builtin_catalog(SourceTag::SPECIFIC23)
                .iter()
                .map(|e| canonical_form(&e.angles))
                .collect();
            let code = if found == listed {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            };
            Ok((report, code))
        }
        FamilyCommand::Scan {
            samples,
            seed,
            f1_samples,
        } => cmd_scan(*samples, *seed, *f1_samples, flags),
    }
}

/// Distinct reduced `x = p/q` with `lo < x < hi`, `q ≤ max_q`, accepted by `keep`.
pub fn sample_parameters(
    rng: &mut ChaCha8Rng,
    n: usize,
    (lo, hi): (i64, i64),
    hi_den: i64,
    max_q: i64,
    keep: impl Fn(&RationalAngle) -> bool,
) -> Vec<RationalAngle> {
    let lo_r = BigRational::new(lo.into(), hi_den.into());
    let hi_r = BigRational::new(hi.into(), hi_den.into());
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let q = rng.gen_range(2..=max_q);
        let p = rng.gen_range(1..q);
        let r = BigRational::new(p.into(), q.into());
        if r <= lo_r || r >= hi_r || !seen.insert(r.clone()) {
            continue;
        }
        let x = RationalAngle::from_multiplier(r);
        if keep(&x) {
            out.push(x);
        }
        if seen.len() > 100 * (n + 1) * max_q as usize {
            break;
        }
    }
    out
}

fn cmd_scan(samples: usize, seed: u64, f1_samples: usize, flags: &Flags) -> CmdResult {
    let options = flags.options();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let general = sample_parameters(&mut rng, samples, (1, 2), 6, 240, |x| {
        is_general(x).unwrap_or(false)
    });
    let first = sample_parameters(&mut rng, f1_samples, (1, 3), 6, 60, |_| true);
    let mut ts = Vec::new();
    let mut labels = Vec::new();
    for x in &general {
        ts.push(f2_member(x).map_err(|e| Output::error(EXIT_GEOMETRY, e))?);
        labels.push((
            format!("T_x x={x}"),
            x.clone(),
            crate::catalog::Expected::DoesNotTile,
        ));
    }
    for x in &first {
        ts.push(f1_member(x).map_err(|e| Output::error(EXIT_GEOMETRY, e))?);
        labels.push((
            format!("F1 x={x}"),
            x.clone(),
            crate::catalog::Expected::Inconclusive,
        ));
    }
    let results = analyze_all(&ts, &options);
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (index, ((id, x, expected), r)) in labels.into_iter().zip(results).enumerate() {
        match r {
            Ok(v) => {
                let mut rec = Record::new(index, &id, SourceTag::USER, Some(expected), &v);
                rec.family_x = Some(report::SpecificRow::new(&x, v.tetrahedron.angles()).x);
                records.push(rec);
            }
            Err(e) => skipped.push(SkippedEntry {
                index,
                id,
                reason: e.to_string(),
                precision_exhausted: e.is_precision_exhausted(),
            }),
        }
    }
    let mut settings = Settings::new(&options, flags.strict_numerics);
    settings.seed = Some(seed);
    settings.samples = Some(samples);
    settings.f1_samples = Some(f1_samples);
    let mut report = Report::new("families scan", settings, records);
    report.summary.add_skipped(skipped);
    let mut code = status(&report, flags, true);
    if code == EXIT_OK && (general.len() < samples || first.len() < f1_samples) {
        code = EXIT_MISMATCH;
    }
    Ok((report, code))
}
