//! Command-line front end: machine-readable classifications, Cremona
//! reductions, exceptional-class enumerations, and oracle validation runs.
//!
//! Exit codes: 0 success, 1 usage error, 2 internal or resource error.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use severi::cremona::reduce;
use severi::criteria::{classify, ClassificationReport, Status, TriState};
use severi::exceptional::enumerate_minus_one_classes;
use severi::lattice::{DivisorClass, NodalQuery};
use severi::oracle::{
    bfs_orbit, certify_exceptional_counts, crosscheck_reduction, OracleError, DEFAULT_NODE_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser)]
#[command(
    name = "severi",
    version,
    about = "Classify families of nodal curves on the blown-up plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one query: existence, smoothness, irreducibility.
    Classify {
        /// Degree d of the class (d; d_1,...,d_r).
        #[arg(long)]
        degree: i64,
        /// Multiplicities, comma-separated; v^m power notation allowed (e.g. 3,2^7).
        #[arg(long, default_value = "")]
        mults: String,
        /// Number of nodes k.
        #[arg(long)]
        nodes: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Greedily reduce a tuple by Cremona moves to its terminal form.
    Reduce {
        #[arg(long)]
        degree: i64,
        #[arg(long, default_value = "")]
        mults: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate exceptional (-1)-classes up to a degree bound.
    Exceptional {
        /// Number of blown-up points.
        #[arg(long)]
        r: usize,
        /// Upper bound on the degree of listed classes.
        #[arg(long)]
        h_max: i64,
        /// Omit the degree-0 exceptional divisors E_i.
        #[arg(long)]
        curves_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify a rectangular range of queries with uniform multiplicities.
    Table {
        #[arg(long)]
        r: usize,
        /// Degree range, inclusive (e.g. 10..14 or a single value).
        #[arg(long)]
        degree: String,
        /// Uniform multiplicity applied at all r points.
        #[arg(long, default_value_t = 1)]
        mults: i64,
        /// Node-count range, inclusive (e.g. 0..50 or a single value).
        #[arg(long)]
        nodes: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Maximum number of rows to emit.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Brute-force verification runs.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Compare greedy reduction against exhaustive orbit search on all
    /// sorted tuples up to a degree bound.
    Crosscheck {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d_max: i64,
    },
    /// Certify exceptional-class counts by orbit search.
    Counts {
        #[arg(long)]
        r: usize,
    },
    /// Enumerate the Cremona orbit of a tuple within a degree bound.
    Orbit {
        #[arg(long)]
        degree: i64,
        #[arg(long, default_value = "")]
        mults: String,
        /// Upper bound on intermediate degrees.
        #[arg(long)]
        d_max: i64,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
    },
}

enum CliError {
    Usage(String),
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Resource(_) => 2,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Resource(m) => m,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parse a multiplicity list: comma-separated integers, each optionally in
/// `v^m` power notation.
fn parse_mults(raw: &str) -> Result<Vec<i64>, CliError> {
    let mut out = Vec::new();
    if raw.trim().is_empty() {
        return Ok(out);
    }
    for token in raw.split(',') {
        let token = token.trim();
        let (value, count) = match token.split_once('^') {
            Some((v, c)) => {
                let count: usize = c
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("bad repeat count in '{token}'")))?;
                (v.trim(), count)
            }
            None => (token, 1),
        };
        let value: i64 = value
            .parse()
            .map_err(|_| usage(format!("bad multiplicity '{token}'")))?;
        out.extend(std::iter::repeat_n(value, count));
    }
    Ok(out)
}

/// Inclusive range `A..B`, or a single value `A`.
fn parse_range(raw: &str, what: &str) -> Result<(i64, i64), CliError> {
    let parse = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| usage(format!("bad {what} range '{raw}'")))
    };
    match raw.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b)?)),
        None => {
            let v = parse(raw)?;
            Ok((v, v))
        }
    }
}

fn curve_query(degree: i64, mults: Vec<i64>, nodes: u64) -> Result<NodalQuery, CliError> {
    let cls = DivisorClass::curve_query(degree, mults).map_err(|e| usage(e.to_string()))?;
    Ok(NodalQuery::new(cls, nodes))
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Unknown => "unknown",
    }
}

fn terminal_str(t: severi::Terminal) -> &'static str {
    match t {
        severi::Terminal::Minimal => "minimal",
        severi::Terminal::ExceptionalUnit => "exceptional-unit",
        severi::Terminal::Invalid => "invalid",
    }
}

fn mults_field(mults: &[i64]) -> String {
    mults
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn verdict_line(out: &mut String, name: &str, v: &TriState) {
    let _ = writeln!(
        out,
        "{name:<15} {:<8} ({}; {})",
        status_str(v.status),
        v.reason,
        v.theorem
    );
}

fn format_report(report: &ClassificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from(
                "degree,mults,nodes,r,k_max,s,existence,existence_reason,smoothness,smoothness_reason,irreducibility,irreducibility_reason,terminal\n",
            );
            let terminal = report
                .reduction
                .as_ref()
                .map(|r| terminal_str(r.terminal))
                .unwrap_or("");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                report.query.degree,
                mults_field(&report.query.mults),
                report.query.nodes,
                report.r,
                report.k_max,
                report.s,
                status_str(report.existence.status),
                report.existence.reason,
                status_str(report.smoothness.status),
                report.smoothness.reason,
                status_str(report.irreducibility.status),
                report.irreducibility.reason,
                terminal,
            );
            out
        }
        Format::Text => {
            let cls = DivisorClass::new(report.query.degree, report.query.mults.clone());
            let mut out = String::new();
            let _ = writeln!(out, "query: {cls}, k = {}", report.query.nodes);
            let _ = writeln!(
                out,
                "r = {}, k_max = {}, s = {}",
                report.r, report.k_max, report.s
            );
            verdict_line(&mut out, "existence:", &report.existence);
            verdict_line(&mut out, "smoothness:", &report.smoothness);
            verdict_line(&mut out, "irreducibility:", &report.irreducibility);
            if let Some(red) = &report.reduction {
                let mut chain = format!("reduction: {}", cls.stripped().normalized());
                for step in &red.steps {
                    let _ = write!(chain, " -> {}", step.result);
                }
                let _ = writeln!(out, "{chain} [{}]", terminal_str(red.terminal));
            }
            out
        }
    }
}

fn cmd_classify(degree: i64, mults: &str, nodes: u64, format: Format) -> Result<String, CliError> {
    let q = curve_query(degree, parse_mults(mults)?, nodes)?;
    Ok(format_report(&classify(&q), format))
}

fn cmd_reduce(degree: i64, mults: &str, format: Format) -> Result<String, CliError> {
    let cls =
        DivisorClass::curve_query(degree, parse_mults(mults)?).map_err(|e| usage(e.to_string()))?;
    let trace = reduce(&cls);
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string(&trace).expect("trace serializes");
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("step,degree,mults,terminal\n");
            let _ = writeln!(
                out,
                "0,{},{},",
                trace.initial.degree,
                mults_field(&trace.initial.mults)
            );
            for (i, step) in trace.steps.iter().enumerate() {
                let last = i + 1 == trace.steps.len();
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    i + 1,
                    step.result.degree,
                    mults_field(&step.result.mults),
                    if last {
                        terminal_str(trace.terminal)
                    } else {
                        ""
                    },
                );
            }
            if trace.steps.is_empty() {
                let _ = writeln!(
                    out,
                    "0,{},{},{}",
                    trace.initial.degree,
                    mults_field(&trace.initial.mults),
                    terminal_str(trace.terminal)
                );
            }
        }
        Format::Text => {
            let _ = writeln!(out, "{}", trace.initial);
            for step in &trace.steps {
                let _ = writeln!(out, " -> {}", step.result);
            }
            let _ = writeln!(out, "terminal: {}", terminal_str(trace.terminal));
        }
    }
    Ok(out)
}

fn cmd_exceptional(
    r: usize,
    h_max: i64,
    curves_only: bool,
    format: Format,
) -> Result<String, CliError> {
    if r < 1 {
        return Err(usage("--r must be at least 1".to_string()));
    }
    let classes = enumerate_minus_one_classes(r, h_max, !curves_only);
    let truncated = r >= 9;
    let mut out = String::new();
    match format {
        Format::Json => {
            let items: Vec<&DivisorClass> = classes.iter().map(|e| e.class()).collect();
            out = serde_json::to_string(&items).expect("classes serialize");
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("degree,mults\n");
            for e in &classes {
                let _ = writeln!(
                    out,
                    "{},{}",
                    e.class().degree,
                    mults_field(&e.class().mults)
                );
            }
        }
        Format::Text => {
            for e in &classes {
                let _ = writeln!(out, "{}", e.class());
            }
            let _ = writeln!(
                out,
                "total: {} classes (r = {r}, degree <= {h_max})",
                classes.len()
            );
            if truncated {
                let _ = writeln!(
                    out,
                    "note: infinitely many classes exist for r >= 9; list is truncated"
                );
            }
        }
    }
    Ok(out)
}

fn cmd_table(
    r: usize,
    degree: &str,
    mult: i64,
    nodes: &str,
    format: Format,
    budget: usize,
) -> Result<String, CliError> {
    let (d_lo, d_hi) = parse_range(degree, "degree")?;
    let (k_lo, k_hi) = parse_range(nodes, "nodes")?;
    if k_lo < 0 {
        return Err(usage("node counts must be non-negative".to_string()));
    }
    let rows = if d_lo > d_hi || k_lo > k_hi {
        0
    } else {
        (d_hi - d_lo + 1) as i128 * (k_hi - k_lo + 1) as i128
    };
    if rows > budget as i128 {
        return Err(CliError::Resource(format!(
            "table of {rows} rows exceeds budget {budget}"
        )));
    }
    let mut reports = Vec::new();
    for d in d_lo..=d_hi {
        for k in k_lo..=k_hi {
            let q = curve_query(d, vec![mult; r], k as u64)?;
            reports.push(classify(&q));
        }
    }
    let mut out = String::new();
    match format {
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Row<'a> {
                degree: i64,
                nodes: u64,
                existence: &'a str,
                smoothness: &'a str,
                irreducibility: &'a str,
            }
            let rows: Vec<Row> = reports
                .iter()
                .map(|rep| Row {
                    degree: rep.query.degree,
                    nodes: rep.query.nodes,
                    existence: status_str(rep.existence.status),
                    smoothness: status_str(rep.smoothness.status),
                    irreducibility: status_str(rep.irreducibility.status),
                })
                .collect();
            out = serde_json::to_string(&rows).expect("rows serialize");
            out.push('\n');
        }
        Format::Csv | Format::Text => {
            let sep = if format == Format::Csv { "," } else { "  " };
            let _ = writeln!(
                out,
                "degree{sep}nodes{sep}existence{sep}smoothness{sep}irreducibility"
            );
            for rep in &reports {
                let _ = writeln!(
                    out,
                    "{}{sep}{}{sep}{}{sep}{}{sep}{}",
                    rep.query.degree,
                    rep.query.nodes,
                    status_str(rep.existence.status),
                    status_str(rep.smoothness.status),
                    status_str(rep.irreducibility.status),
                );
            }
        }
    }
    Ok(out)
}

fn oracle_error(e: OracleError) -> CliError {
    match e {
        OracleError::BudgetExceeded { .. } => CliError::Resource(e.to_string()),
        OracleError::UnsupportedRange { .. } => usage(e.to_string()),
    }
}

fn cmd_oracle(command: OracleCommand) -> Result<String, CliError> {
    let mut out = String::new();
    match command {
        OracleCommand::Crosscheck { r, d_max } => {
            let report = crosscheck_reduction(r, d_max).map_err(oracle_error)?;
            let _ = writeln!(
                out,
                "crosscheck r={r} d_max={d_max}: {} tuples checked",
                report.tuples_checked
            );
            let _ = writeln!(
                out,
                "greedy-vs-orbit counterexamples: {}",
                report.counterexamples.len()
            );
            for ce in &report.counterexamples {
                let _ = writeln!(
                    out,
                    "  {}: greedy {} vs orbit {}",
                    ce.tuple,
                    terminal_str(ce.greedy),
                    terminal_str(ce.oracle)
                );
            }
            if r <= 8 {
                let _ = writeln!(
                    out,
                    "inequality-system disagreements: {}",
                    report.system_disagreements.len()
                );
                for c in &report.system_disagreements {
                    let _ = writeln!(out, "  {c}");
                }
            }
        }
        OracleCommand::Counts { r } => {
            if !(1..=8).contains(&r) {
                return Err(usage("counts certification needs 1 <= r <= 8".to_string()));
            }
            let counts = certify_exceptional_counts(r).map_err(oracle_error)?;
            let _ = writeln!(out, "degree,count");
            let mut total = 0u64;
            for (deg, count) in &counts {
                let _ = writeln!(out, "{deg},{count}");
                total += count;
            }
            let _ = writeln!(out, "total,{total}");
        }
        OracleCommand::Orbit {
            degree,
            mults,
            d_max,
            budget,
        } => {
            let cls = DivisorClass::new(degree, parse_mults(&mults)?);
            if cls.r() < 3 {
                return Err(usage("orbit search needs r >= 3".to_string()));
            }
            let orbit = bfs_orbit(&cls, d_max, budget).map_err(oracle_error)?;
            for state in &orbit {
                let _ = writeln!(out, "{state}");
            }
            let _ = writeln!(out, "total: {} states", orbit.len());
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Classify {
            degree,
            mults,
            nodes,
            format,
        } => cmd_classify(degree, &mults, nodes, format),
        Command::Reduce {
            degree,
            mults,
            format,
        } => cmd_reduce(degree, &mults, format),
        Command::Exceptional {
            r,
            h_max,
            curves_only,
            format,
        } => cmd_exceptional(r, h_max, curves_only, format),
        Command::Table {
            r,
            degree,
            mults,
            nodes,
            format,
            budget,
        } => cmd_table(r, &degree, mults, &nodes, format, budget),
        Command::Oracle { command } => cmd_oracle(command),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
