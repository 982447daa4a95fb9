//! Command-line front end.
//!
//! Inputs are JSON files (schemas in [`crate::json`]); results go to stdout
//! as compact JSON (full precision, machine-consumable — `combine` output
//! feeds back into `bel` unchanged) or as an aligned table rounded to
//! `--digits` places. Exit codes: 0 success, 2 validation failure (bad
//! arguments, unreadable files, invariant violations), 3 total
//! conflict/incompatibility — evidence that cannot be reconciled at all.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::json::{
    BpaJson, CombineJson, DecompositionJson, DistributionJson, FuzzySetJson, RelationJson,
};
use crate::{
    belief, combine, epsilon, legacy, oracle, set_epsilon, Bpa, Error, FuzzySet, Result,
    DEFAULT_EPSILON,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "fe",
    version,
    about = "Evidential reasoning over finite frames with fuzzy focal elements",
    after_help = "The FE_EPSILON environment variable overrides the comparison \
                  tolerance (default 1e-9); intended for experimentation only."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format: machine JSON (full precision) or an aligned table.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Decimal places in table output; JSON output is never rounded.
    #[arg(long, global = true, default_value_t = 2)]
    digits: usize,

    /// Reject inputs that lenient mode repairs with a warning
    /// (focal masses summing to 1 only within 1e-6).
    #[arg(long, global = true)]
    strict: bool,

    /// Write diagnostics to stderr as JSON lines.
    #[arg(long, global = true)]
    json_errors: bool,
}

#[derive(Debug, Args)]
struct BpaQueryArgs {
    /// Bpa JSON file.
    #[arg(long)]
    bpa: PathBuf,
    /// Query fuzzy-set JSON file.
    #[arg(long)]
    query: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Belief (lower probability) of a query set under a bpa.
    Bel(BpaQueryArgs),
    /// Plausibility (upper probability) of a query set under a bpa.
    Pls(BpaQueryArgs),
    /// Belief interval [bel, pls] of a query set under a bpa.
    Interval(BpaQueryArgs),
    /// Combine two bpa's, grading conflict by intersection peaks.
    Combine {
        /// Left bpa JSON file.
        #[arg(long)]
        left: PathBuf,
        /// Right bpa JSON file.
        #[arg(long)]
        right: PathBuf,
    },
    /// Alpha-level decomposition of a normal fuzzy set.
    Decompose {
        /// Fuzzy-set JSON file.
        #[arg(long)]
        set: PathBuf,
    },
    /// Induce a bpa from a source distribution and a compatibility relation.
    Induce {
        /// Source-distribution JSON file.
        #[arg(long)]
        dist: PathBuf,
        /// Compatibility-relation JSON file.
        #[arg(long)]
        relation: PathBuf,
    },
    /// Belief of the query under this rule and the earlier proposals.
    Compare(BpaQueryArgs),
    /// Cross-check closed-form bel/pls against the LP vertex enumeration.
    Oracle {
        #[command(flatten)]
        args: BpaQueryArgs,
        /// Additionally draw this many random feasible allocations.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        /// Seed for the feasible-allocation draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses and runs a full argv (including the program name). Output goes to
/// the given writers; the return value is the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    // Tolerance first: it participates in input validation.
    match std::env::var("FE_EPSILON") {
        Ok(raw) => {
            let parsed = raw.trim().parse::<f64>().ok();
            match parsed.map(set_epsilon) {
                Some(Ok(())) => {}
                _ => {
                    let _ = writeln!(
                        stderr,
                        "error: FE_EPSILON must be a finite tolerance in (0, 0.5): got `{raw}`"
                    );
                    return 2;
                }
            }
        }
        Err(_) => {
            let _ = set_epsilon(DEFAULT_EPSILON);
        }
    }

    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    2
                }
            };
        }
    };

    let mut warnings = Vec::new();
    match execute(&cli, &mut warnings) {
        Ok(output) => {
            for w in &warnings {
                emit_warning(w, cli.json_errors, stderr);
            }
            let _ = write!(stdout, "{output}");
            0
        }
        Err(e) => {
            for w in &warnings {
                emit_warning(w, cli.json_errors, stderr);
            }
            emit_error(&e, cli.json_errors, stderr);
            match e {
                Error::TotalConflict(_) | Error::TotalIncompatibility => 3,
                _ => 2,
            }
        }
    }
}

fn emit_warning(warning: &str, json_mode: bool, stderr: &mut dyn Write) {
    if json_mode {
        let line = serde_json::json!({ "warning": warning });
        let _ = writeln!(stderr, "{line}");
    } else {
        let _ = writeln!(stderr, "warning: {warning}");
    }
}

fn emit_error(e: &Error, json_mode: bool, stderr: &mut dyn Write) {
    if json_mode {
        let line = serde_json::json!({ "error": e.to_string(), "kind": kind_name(e) });
        let _ = writeln!(stderr, "{line}");
    } else {
        let _ = writeln!(stderr, "error: {e}");
    }
}

fn kind_name(e: &Error) -> &'static str {
    match e {
        Error::EmptyFrame => "EmptyFrame",
        Error::DuplicateLabel(_) => "DuplicateLabel",
        Error::UnknownLabel(_) => "UnknownLabel",
        Error::FrameMismatch => "FrameMismatch",
        Error::GradeOutOfRange(_) => "GradeOutOfRange",
        Error::LengthMismatch { .. } => "LengthMismatch",
        Error::AlphaOutOfRange(_) => "AlphaOutOfRange",
        Error::SubnormalFocal(_) => "SubnormalFocal",
        Error::EmptySet => "EmptySet",
        Error::NotCrisp => "NotCrisp",
        Error::NotConsonant => "NotConsonant",
        Error::BadMass(_) => "BadMass",
        Error::BadProbability(_) => "BadProbability",
        Error::SubnormalGranule { .. } => "SubnormalGranule",
        Error::TotalIncompatibility => "TotalIncompatibility",
        Error::TotalConflict(_) => "TotalConflict",
        Error::EmptyIntersection => "EmptyIntersection",
        Error::TooLarge(_) => "TooLarge",
        Error::ReservedSeparator(_) => "ReservedSeparator",
        Error::BadEpsilon(_) => "BadEpsilon",
        Error::Json(_) => "Json",
        Error::Io { .. } => "Io",
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

fn load_bpa(path: &Path, strict: bool, warnings: &mut Vec<String>) -> Result<Bpa> {
    let json: BpaJson = read_json(path)?;
    let (bpa, warning) = json.to_bpa(strict)?;
    if let Some(w) = warning {
        warnings.push(format!("{}: {w}", path.display()));
    }
    Ok(bpa)
}

fn load_bpa_query(
    args: &BpaQueryArgs,
    strict: bool,
    warnings: &mut Vec<String>,
) -> Result<(Bpa, FuzzySet)> {
    let bpa = load_bpa(&args.bpa, strict, warnings)?;
    let query: FuzzySetJson = read_json(&args.query)?;
    Ok((bpa, query.to_set()?))
}

#[derive(Serialize)]
struct IntervalOut {
    bel: f64,
    pls: f64,
}

#[derive(Serialize)]
struct CompareOut {
    yen: f64,
    #[serde(rename = "zadeh_EC")]
    zadeh_ec: f64,
    ishizuka: f64,
    yager: f64,
    ogawa: f64,
}

#[derive(Serialize)]
struct OracleOut {
    oracle_bel: f64,
    oracle_pls: f64,
    closed_bel: f64,
    closed_pls: f64,
    agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples_in_bounds: Option<usize>,
}

fn execute(cli: &Cli, warnings: &mut Vec<String>) -> Result<String> {
    let digits = cli.digits;
    match &cli.command {
        Command::Bel(args) => {
            let (m, b) = load_bpa_query(args, cli.strict, warnings)?;
            let value = belief::bel(&m, &b)?;
            Ok(match cli.format {
                Format::Json => json_line(&serde_json::json!({ "bel": value }))?,
                Format::Table => format!("{}\n", num(value, digits)),
            })
        }
        Command::Pls(args) => {
            let (m, b) = load_bpa_query(args, cli.strict, warnings)?;
            let value = belief::pls(&m, &b)?;
            Ok(match cli.format {
                Format::Json => json_line(&serde_json::json!({ "pls": value }))?,
                Format::Table => format!("{}\n", num(value, digits)),
            })
        }
        Command::Interval(args) => {
            let (m, b) = load_bpa_query(args, cli.strict, warnings)?;
            let iv = belief::interval(&m, &b)?;
            Ok(match cli.format {
                Format::Json => json_line(&IntervalOut {
                    bel: iv.bel,
                    pls: iv.pls,
                })?,
                Format::Table => {
                    format!("[{}, {}]\n", num(iv.bel, digits), num(iv.pls, digits))
                }
            })
        }
        Command::Combine { left, right } => {
            let m1 = load_bpa(left, cli.strict, warnings)?;
            let m2 = load_bpa(right, cli.strict, warnings)?;
            let report = combine::combine(&m1, &m2)?;
            Ok(match cli.format {
                Format::Json => json_line(&CombineJson::new(&report))?,
                Format::Table => {
                    let mut rows = vec![vec!["focal".to_string(), "mass".to_string()]];
                    for (focal, mass) in report.result.focals() {
                        rows.push(vec![fmt_set(focal, digits), num(*mass, digits)]);
                    }
                    let mut out = render_table(&rows);
                    out.push_str(&format!(
                        "conflict_mass {}\n",
                        num(report.conflict_mass, digits)
                    ));
                    out
                }
            })
        }
        Command::Decompose { set } => {
            let json: FuzzySetJson = read_json(set)?;
            let decomposition = json.to_set()?.decompose()?;
            Ok(match cli.format {
                Format::Json => json_line(&DecompositionJson::new(&decomposition))?,
                Format::Table => {
                    let mut rows = vec![vec![
                        "alpha".to_string(),
                        "cut".to_string(),
                        "fraction".to_string(),
                    ]];
                    for level in decomposition.levels() {
                        rows.push(vec![
                            num(level.alpha, digits),
                            fmt_set(&level.cut, digits),
                            num(level.fraction, digits),
                        ]);
                    }
                    render_table(&rows)
                }
            })
        }
        Command::Induce { dist, relation } => {
            let p = read_json::<DistributionJson>(dist)?.to_distribution()?;
            let c = read_json::<RelationJson>(relation)?.to_relation()?;
            let bpa = crate::bpa::induce_bpa(&p, &c)?;
            Ok(match cli.format {
                Format::Json => json_line(&BpaJson::from_bpa(&bpa))?,
                Format::Table => {
                    let mut rows = vec![vec!["focal".to_string(), "mass".to_string()]];
                    for (focal, mass) in bpa.focals() {
                        rows.push(vec![fmt_set(focal, digits), num(*mass, digits)]);
                    }
                    render_table(&rows)
                }
            })
        }
        Command::Compare(args) => {
            let (m, b) = load_bpa_query(args, cli.strict, warnings)?;
            let out = CompareOut {
                yen: belief::bel(&m, &b)?,
                zadeh_ec: legacy::expected_certainty(&m, &b)?,
                ishizuka: legacy::bel_via_inclusion(legacy::MeasureKind::Ishizuka, &m, &b)?,
                yager: legacy::bel_via_inclusion(legacy::MeasureKind::Yager, &m, &b)?,
                ogawa: legacy::bel_via_inclusion(legacy::MeasureKind::Ogawa, &m, &b)?,
            };
            Ok(match cli.format {
                Format::Json => json_line(&out)?,
                Format::Table => {
                    let rows = vec![
                        vec!["measure".to_string(), "bel".to_string()],
                        vec!["yen".to_string(), num(out.yen, digits)],
                        vec!["zadeh_EC".to_string(), num(out.zadeh_ec, digits)],
                        vec!["ishizuka".to_string(), num(out.ishizuka, digits)],
                        vec!["yager".to_string(), num(out.yager, digits)],
                        vec!["ogawa".to_string(), num(out.ogawa, digits)],
                    ];
                    render_table(&rows)
                }
            })
        }
        Command::Oracle {
            args,
            samples,
            seed,
        } => {
            let (m, b) = load_bpa_query(args, cli.strict, warnings)?;
            let brute = oracle::oracle_bel_pls(&m, &b)?;
            let closed = belief::interval(&m, &b)?;
            let eps = epsilon();
            let agree =
                (brute.bel - closed.bel).abs() <= eps && (brute.pls - closed.pls).abs() <= eps;
            let mut out = OracleOut {
                oracle_bel: brute.bel,
                oracle_pls: brute.pls,
                closed_bel: closed.bel,
                closed_pls: closed.pls,
                agree,
                samples: None,
                samples_in_bounds: None,
            };
            if *samples > 0 {
                let values = oracle::sample_feasible(&m, &b, *samples, *seed)?;
                let in_bounds = values
                    .iter()
                    .filter(|v| **v >= brute.bel - eps && **v <= brute.pls + eps)
                    .count();
                out.samples = Some(*samples);
                out.samples_in_bounds = Some(in_bounds);
            }
            Ok(match cli.format {
                Format::Json => json_line(&out)?,
                Format::Table => {
                    let mut rows = vec![
                        vec!["oracle_bel".to_string(), num(out.oracle_bel, digits)],
                        vec!["oracle_pls".to_string(), num(out.oracle_pls, digits)],
                        vec!["closed_bel".to_string(), num(out.closed_bel, digits)],
                        vec!["closed_pls".to_string(), num(out.closed_pls, digits)],
                        vec!["agree".to_string(), out.agree.to_string()],
                    ];
                    if let (Some(n), Some(k)) = (out.samples, out.samples_in_bounds) {
                        rows.push(vec!["samples_in_bounds".to_string(), format!("{k}/{n}")]);
                    }
                    render_table(&rows)
                }
            })
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    Ok(format!("{}\n", serde_json::to_string(value)?))
}

/// Rounded decimal representation used by table output.
fn num(value: f64, digits: usize) -> String {
    format!("{value:.digits$}")
}

/// Membership-list form of a set at table precision: `{a, b}` when crisp,
/// `{0.50/a, 1.00/b}` otherwise.
fn fmt_set(set: &FuzzySet, digits: usize) -> String {
    let eps = epsilon();
    let mut parts = Vec::new();
    if set.is_crisp() {
        for label in set.member_labels() {
            parts.push(label.to_string());
        }
    } else {
        for (label, &grade) in set.frame().labels().iter().zip(set.grades()) {
            if grade > eps {
                parts.push(format!("{}/{label}", num(grade, digits)));
            }
        }
    }
    format!("{{{}}}", parts.join(", "))
}

/// Left-aligns each column to its widest cell, two spaces between columns.
fn render_table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                for _ in cell.chars().count()..widths[i] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
