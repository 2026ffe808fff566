//! Command-line front end. Every command renders to a string, so the binary is a
//! thin wrapper around [`run`] and the commands can be tested without a process.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bratteli::{qi_diagram, LevelSets};
use crate::check::run_checks;
use crate::exact::ExactRational;
use crate::metrics::{
    compare, d_beta, d_beta_truncated, d_hausdorff_ideal, d_phi, descriptor_for, table_sum_dbeta,
    CertifiedValue, ComparisonReport, Convention, MetricError,
};
use crate::qi::{ideal_of_closed_set, ClosedSubsetQI, QiError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SUITE_FAILURE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Exact metrics on ideals of the quantized-interval AF algebra.
#[derive(Debug, Parser)]
#[command(name = "afideal", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; rationals are always printed as exact "p/q" strings.
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    pub output: OutputMode,

    /// Add a labeled decimal approximation with N digits after the point.
    #[arg(long, global = true, value_name = "N")]
    pub decimal: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distances between the ideals of two closed subsets.
    Distance(DistanceArgs),
    /// The worked example rows (m, n, k) = (1, 2, 1) and (1, 2, 2).
    PaperTable(ConventionArg),
    /// Level sets of the ideal of a closed subset.
    Descriptor(DescriptorArgs),
    /// The Bratteli diagram of the quantized interval.
    Diagram(DiagramArgs),
    /// Seeded invariant suites over every module.
    Check(CheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricSelector {
    Phi,
    Beta,
    Hausdorff,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionChoice {
    /// Level sets as printed in the worked example table.
    Paper,
    /// Level sets of the ideal of functions vanishing on the set.
    Derived,
}

impl From<ConventionChoice> for Convention {
    fn from(c: ConventionChoice) -> Self {
        match c {
            ConventionChoice::Paper => Convention::PaperTable,
            ConventionChoice::Derived => Convention::Derived,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DiagramFormat {
    Text,
    Dot,
}

#[derive(Debug, Args)]
pub struct ConventionArg {
    /// Level-set convention [default: paper for paper-table, derived elsewhere].
    #[arg(long, value_enum)]
    pub convention: Option<ConventionChoice>,
}

#[derive(Debug, Args)]
pub struct DepthArg {
    /// Number of levels (also the truncation depth for d_beta intervals).
    #[arg(
        long,
        env = "AFIDEAL_DEPTH",
        default_value_t = 32,
        value_parser = clap::value_parser!(u32).range(1..)
    )]
    pub depth: u32,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    #[arg(long, value_enum, default_value_t = MetricSelector::All)]
    pub metric: MetricSelector,
    #[command(flatten)]
    pub convention: ConventionArg,
    #[command(flatten)]
    pub depth: DepthArg,
    /// First closed set, e.g. "1/2" or "1/4,1/8,0" or "head=;period=10".
    pub set_a: String,
    /// Second closed set.
    pub set_b: String,
}

#[derive(Debug, Args)]
pub struct DescriptorArgs {
    #[command(flatten)]
    pub convention: ConventionArg,
    #[command(flatten)]
    pub depth: DepthArg,
    pub set: String,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    #[command(flatten)]
    pub depth: DepthArg,
    #[arg(long, value_enum, default_value_t = DiagramFormat::Text)]
    pub format: DiagramFormat,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, env = "AFIDEAL_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Append a suite that always fails (for testing the exit path).
    #[arg(long, hide = true)]
    pub inject_violation: bool,
}

/// Rendered result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn error(code: i32, message: impl std::fmt::Display) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let fmt = Format {
        output: cli.output,
        decimal: cli.decimal,
    };
    let result = match &cli.command {
        Command::Distance(a) => cmd_distance(a, fmt),
        Command::PaperTable(a) => cmd_paper_table(a, fmt),
        Command::Descriptor(a) => cmd_descriptor(a, fmt),
        Command::Diagram(a) => Ok(cmd_diagram(a)),
        Command::Check(a) => return cmd_check(a, fmt),
    };
    result.unwrap_or_else(|e| e)
}

/// Rendering options shared by all commands.
#[derive(Clone, Copy, Debug)]
pub struct Format {
    pub output: OutputMode,
    pub decimal: Option<usize>,
}

fn parse_set(text: &str) -> Result<ClosedSubsetQI, Outcome> {
    text.parse::<ClosedSubsetQI>().map_err(|e| Outcome::error(EXIT_USAGE, e))
}

fn domain(e: impl Into<MetricError>) -> Outcome {
    match e.into() {
        e @ MetricError::Qi(QiError::Parse { .. }) => Outcome::error(EXIT_USAGE, e),
        e => Outcome::error(EXIT_DOMAIN, e),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

#[derive(Debug, Serialize)]
struct MetricEntry {
    metric: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncation_depth: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    approx: Option<String>,
}

impl MetricEntry {
    fn new(metric: &'static str, value: &CertifiedValue, depth: Option<u32>, decimal: Option<usize>) -> Self {
        let approx = decimal.map(|d| match value {
            CertifiedValue::Exact(v) => v.to_decimal(d),
            CertifiedValue::Interval { lo, hi } => format!("[{}, {}]", lo.to_decimal(d), hi.to_decimal(d)),
        });
        match value {
            CertifiedValue::Exact(v) => Self {
                metric,
                value: Some(v.to_string()),
                lo: None,
                hi: None,
                truncation_depth: None,
                approx,
            },
            CertifiedValue::Interval { lo, hi } => Self {
                metric,
                value: None,
                lo: Some(lo.to_string()),
                hi: Some(hi.to_string()),
                truncation_depth: depth,
                approx,
            },
        }
    }

    fn text(&self) -> String {
        let mut line = match (&self.value, &self.lo, &self.hi) {
            (Some(v), _, _) => format!("{}: {v}", self.metric),
            (None, Some(lo), Some(hi)) => format!(
                "{}: [{lo}, {hi}] (certified interval, depth {})",
                self.metric,
                self.truncation_depth.unwrap_or_default()
            ),
            _ => unreachable!("entry has a value or an interval"),
        };
        if let Some(a) = &self.approx {
            let _ = write!(line, "  approx {a}");
        }
        line
    }
}

#[derive(Debug, Serialize)]
struct DistanceReport {
    convention: Convention,
    set_a: String,
    set_b: String,
    metrics: Vec<MetricEntry>,
}

fn resolve(c: &ConventionArg, default: Convention) -> Convention {
    c.convention.map_or(default, Convention::from)
}

pub fn cmd_distance(args: &DistanceArgs, fmt: Format) -> Result<Outcome, Outcome> {
    let conv = resolve(&args.convention, Convention::Derived);
    let depth = args.depth.depth;
    let (a, b) = (parse_set(&args.set_a)?, parse_set(&args.set_b)?);
    let wants = |m: MetricSelector| args.metric == m || args.metric == MetricSelector::All;
    let mut metrics = Vec::new();
    if wants(MetricSelector::Hausdorff) {
        // the Hausdorff distance depends only on the sets, not on a level-set convention
        let h = d_hausdorff_ideal(&ideal_of_closed_set(&a), &ideal_of_closed_set(&b)).map_err(domain)?;
        metrics.push(MetricEntry::new("d_hausdorff", &CertifiedValue::Exact(h), None, fmt.decimal));
    }
    if wants(MetricSelector::Phi) || wants(MetricSelector::Beta) {
        let da = descriptor_for(&a, conv).map_err(domain)?;
        let db = descriptor_for(&b, conv).map_err(domain)?;
        if wants(MetricSelector::Phi) {
            let v = CertifiedValue::Exact(d_phi(&da, &db));
            metrics.push(MetricEntry::new("d_phi", &v, None, fmt.decimal));
        }
        if wants(MetricSelector::Beta) {
            let v = match d_beta(&da, &db) {
                Ok(v) => CertifiedValue::Exact(v),
                Err(MetricError::NotEventuallyConstant) => {
                    d_beta_truncated(&da, &db, depth as usize).map_err(domain)?
                }
                Err(e) => return Err(domain(e)),
            };
            metrics.push(MetricEntry::new("d_beta", &v, Some(depth), fmt.decimal));
        }
    }
    let report = DistanceReport {
        convention: conv,
        set_a: a.to_string(),
        set_b: b.to_string(),
        metrics,
    };
    Ok(Outcome::ok(match fmt.output {
        OutputMode::Json => json(&report),
        OutputMode::Text => {
            let mut out = format!(
                "convention: {}\nset_a: {}\nset_b: {}\n",
                report.convention, report.set_a, report.set_b
            );
            for m in &report.metrics {
                out.push_str(&m.text());
                out.push('\n');
            }
            out
        }
    }))
}

#[derive(Debug, Serialize)]
struct PaperRow {
    #[serde(flatten)]
    report: ComparisonReport,
    /// Direct sum over the printed level-set table, next to the published closed form.
    table_sum_d_beta: Option<ExactRational>,
}

const PAPER_ROWS: [(&str, &str); 2] = [("1/2", "1/4,1/8"), ("1/2", "1/4,1/16")];

pub fn cmd_paper_table(args: &ConventionArg, fmt: Format) -> Result<Outcome, Outcome> {
    let conv = resolve(args, Convention::PaperTable);
    let mut rows = Vec::new();
    for (a, b) in PAPER_ROWS {
        let report = compare(&parse_set(a)?, &parse_set(b)?, conv).map_err(domain)?;
        let table_sum = table_sum_dbeta(report.m, report.n, report.k).ok();
        rows.push(PaperRow {
            report,
            table_sum_d_beta: table_sum,
        });
    }
    if fmt.output == OutputMode::Json {
        return Ok(Outcome::ok(json(&rows)));
    }
    let header = [
        "m",
        "n",
        "k",
        "d_hausdorff",
        "d_phi",
        "d_beta",
        "closed_form_d_hausdorff",
        "closed_form_d_phi",
        "closed_form_d_beta",
    ];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            let r = &row.report;
            vec![
                r.m.to_string(),
                r.n.to_string(),
                r.k.to_string(),
                r.d_hausdorff.to_string(),
                r.d_phi.to_string(),
                r.d_beta.to_string(),
                r.closed_form_d_hausdorff.to_string(),
                r.closed_form_d_phi.to_string(),
                r.closed_form_d_beta
                    .as_ref()
                    .map_or_else(|| "n/a".into(), ExactRational::to_string),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| cells.iter().map(|c| c[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |items: Vec<&str>| -> String {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = format!("convention: {conv}\n");
    out.push_str(&line(header.to_vec()));
    for c in &cells {
        out.push_str(&line(c.iter().map(String::as_str).collect()));
    }
    if let Some(d) = fmt.decimal {
        for row in &rows {
            let r = &row.report;
            let _ = writeln!(
                out,
                "approx (m,n,k)=({},{},{}): d_hausdorff {} d_phi {} d_beta {}",
                r.m,
                r.n,
                r.k,
                r.d_hausdorff.to_decimal(d),
                r.d_phi.to_decimal(d),
                r.d_beta.to_decimal(d)
            );
        }
    }
    Ok(Outcome::ok(out))
}

#[derive(Debug, Serialize)]
struct DescriptorReport {
    convention: Convention,
    set: String,
    descriptor: String,
    levels: Vec<String>,
}

pub fn cmd_descriptor(args: &DescriptorArgs, fmt: Format) -> Result<Outcome, Outcome> {
    let conv = resolve(&args.convention, Convention::Derived);
    let set = parse_set(&args.set)?;
    let d = descriptor_for(&set, conv).map_err(domain)?;
    let levels: Vec<String> = (1..=args.depth.depth as usize)
        .map(|p| d.level_set(p).to_string())
        .collect();
    Ok(Outcome::ok(match fmt.output {
        OutputMode::Json => json(&DescriptorReport {
            convention: conv,
            set: set.to_string(),
            descriptor: d.to_string(),
            levels,
        }),
        OutputMode::Text => levels
            .iter()
            .enumerate()
            .map(|(i, l)| format!("{}: {l}\n", i + 1))
            .collect(),
    }))
}

pub fn cmd_diagram(args: &DiagramArgs) -> Outcome {
    let d = qi_diagram(args.depth.depth as usize);
    Outcome::ok(match args.format {
        DiagramFormat::Text => d.to_string(),
        DiagramFormat::Dot => d.to_dot(),
    })
}

pub fn cmd_check(args: &CheckArgs, fmt: Format) -> Outcome {
    let report = run_checks(args.seed, args.inject_violation);
    let stdout = match fmt.output {
        OutputMode::Text => report.render(),
        OutputMode::Json => json(&report),
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if report.all_passed() {
            EXIT_OK
        } else {
            EXIT_SUITE_FAILURE
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        run(std::iter::once("afideal").chain(args.iter().copied()))
    }

    #[test]
    fn distance_identical_sets() {
        let o = call(&["distance", "--metric", "phi", "1/2,1/8", "1/2,1/8"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("d_phi: 0\n"), "{}", o.stdout);
    }

    #[test]
    fn parse_error_names_token() {
        let o = call(&["distance", "1/3", "1/2"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("1/3"), "{}", o.stderr);
    }

    #[test]
    fn empty_spectrum_is_domain_error() {
        let o = call(&["distance", "--metric", "hausdorff", "{}", "1/2"]);
        assert_eq!(o.code, EXIT_DOMAIN);
        assert!(o.stderr.contains("empty spectrum"), "{}", o.stderr);
    }

    #[test]
    fn zero_depth_rejected() {
        assert_eq!(call(&["diagram", "--depth", "0"]).code, EXIT_USAGE);
    }
}
