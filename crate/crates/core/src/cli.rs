//! Command-line front end: argument parsing, command execution and report output.
//!
//! Every command produces [`Record`]s. With `--format json` each record is printed
//! as one JSON object per line, with exact rationals written as `"p/q"` strings.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::coherence::{check_coherence_with_witness, Assessment};
use crate::dsl::{
    build_assessment, parse, parse_bindings, parse_event, value_table_of, ValueTable,
};
use crate::error::{Error, Result};
use crate::events::Constraints;
use crate::propagation::{
    describe, extension_interval, unit_grid, verify_bounds_match, BoundKind, ExtensionInterval,
    SearchOptions,
};
use crate::pvalidity::{check_inference, property_suite, render_table, Operator, Rule, Verdict};
use crate::rational::{fmt_q, parse_rational, Q};

/// Output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable text.
    Text,
    /// One JSON record per line.
    Json,
}

/// Exact coherence checking and extension for conditional events and conditional
/// random quantities.
#[derive(Debug, Parser)]
#[command(name = "conditionals", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// An event declared impossible, such as "A & !K". May be repeated.
    #[arg(long = "constraints", value_name = "FORMULA", global = true)]
    pub constraints: Vec<String>,
    /// Values coherent at this cap are reported as unbounded above.
    #[arg(long, value_name = "RATIONAL", global = true)]
    pub cap: Option<String>,
    /// Bisection stops once the bracket is narrower than this.
    #[arg(long, value_name = "RATIONAL", global = true)]
    pub tol: Option<String>,
    /// The command to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the coherence of an assessment file; print a Dutch book when incoherent.
    Check {
        /// Assessment file, or `-` for standard input.
        file: PathBuf,
    },
    /// Compute the coherent extension interval of the one `= ?` member of a file.
    Extend {
        /// Assessment file, or `-` for standard input.
        file: PathBuf,
    },
    /// Print the value table of an expression.
    Table {
        /// The expression, for instance "(B|K) iter_B (A|H)".
        expr: String,
    },
    /// Evaluate the property table of the eight iterated conditionals.
    Suite,
    /// Check an inference rule for one iterated conditional by p-entailment.
    Pvalid {
        /// `modus_ponens` or `centering`.
        rule: String,
        /// One of C, dF, F, K, L, gs.
        operator: String,
    },
    /// Compare bisection intervals with a closed-form bound on a grid.
    Bounds {
        /// Bound name, such as conj_K, iter_S or plain_conditional.
        kind: String,
        /// Points per axis of the grid over [0, 1]².
        #[arg(long, default_value_t = 5)]
        grid: usize,
    },
}

/// One structured output record.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    /// Subcommand name.
    pub command: String,
    /// The inputs the record is about.
    pub inputs: Value,
    /// The outcome.
    pub verdict: String,
    /// An interval, when the command computes one.
    pub interval: Option<Value>,
    /// Supporting evidence: a Dutch book, a counterexample or a table.
    pub witness: Option<Value>,
}

/// The result of a command: records, a text rendering and a success flag.
#[derive(Clone, Debug)]
pub struct Report {
    /// Structured records.
    pub records: Vec<Record>,
    /// Human-readable rendering.
    pub text: String,
    /// False when a verification command found a mismatch.
    pub success: bool,
}

fn q_json(v: &Q) -> Value {
    Value::String(fmt_q(v))
}

/// An interval as `{lower, upper, lower_attained, upper_attained}`; `upper` is null
/// for a ray.
pub fn interval_json(i: &ExtensionInterval) -> Value {
    json!({
        "lower": q_json(&i.lower),
        "upper": i.upper.as_ref().map(q_json),
        "lower_attained": i.lower_attained,
        "upper_attained": i.upper_attained,
    })
}

/// An assessment as a list of `{member, value}` objects; `value` is null when unbound.
pub fn assessment_json(a: &Assessment) -> Value {
    Value::Array(
        a.family()
            .iter()
            .enumerate()
            .map(|(i, c)| json!({"member": c.label(), "value": a.prevision_of(i).as_ref().map(q_json)}))
            .collect(),
    )
}

fn table_json(t: &ValueTable) -> Value {
    json!({
        "leaves": t.leaves,
        "legend": t.legend.iter().map(|(s, k)| json!({"name": s, "stands_for": k})).collect::<Vec<_>>(),
        "rows": t.rows.iter().map(|r| json!({
            "states": r.states.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "worlds": r.worlds,
            "value": r.value,
        })).collect::<Vec<_>>(),
    })
}

impl Cli {
    fn constraint_set(&self) -> Result<Constraints> {
        let mut c = Constraints::none();
        for text in &self.constraints {
            c = c.forbid(parse_event(text)?);
        }
        Ok(c)
    }

    fn search_options(&self) -> Result<SearchOptions> {
        let mut o = SearchOptions::default();
        if let Some(cap) = &self.cap {
            o.cap = parse_rational(cap)?;
        }
        if let Some(tol) = &self.tol {
            o.tolerance = parse_rational(tol)?;
        }
        Ok(o)
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    let io_err = |e: io::Error| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn verdict_record(v: &Verdict, command: &str) -> Record {
    Record {
        command: command.into(),
        inputs: json!({"operator": v.operator.name(), "property": v.property.name()}),
        verdict: if v.holds { "holds" } else { "fails" }.into(),
        interval: None,
        witness: Some(json!({
            "note": v.note,
            "counterexample": v.counterexample.as_ref().map(assessment_json),
        })),
    }
}

/// Runs a command on already-loaded input text (the contents of `file` for `check`
/// and `extend`).
pub fn execute(cli: &Cli, input: Option<&str>) -> Result<Report> {
    let constraints = cli.constraint_set()?;
    let mut text = String::new();
    let mut records = Vec::new();
    let mut success = true;
    match &cli.command {
        Command::Check { .. } => {
            let statements = parse_bindings(input.unwrap_or_default())?;
            let spec = build_assessment(&statements, &constraints)?;
            let a = &spec.assessment;
            let result = check_coherence_with_witness(a)?;
            let witness = result.witness.as_ref().map(|w| {
                json!({
                    "stakes": a.family().iter().zip(&w.stakes)
                        .map(|(c, s)| json!({"member": c.label(), "stake": q_json(s)}))
                        .collect::<Vec<_>>(),
                    "gains": w.gains.iter().map(q_json).collect::<Vec<_>>(),
                })
            });
            writeln!(text, "{a}").ok();
            if result.coherent {
                writeln!(text, "coherent").ok();
            } else {
                writeln!(text, "incoherent").ok();
                if let Some(w) = &result.witness {
                    writeln!(text, "Dutch book (stake per member):").ok();
                    for (c, s) in a.family().iter().zip(&w.stakes) {
                        writeln!(text, "  {:>8}  {}", fmt_q(s), c.label()).ok();
                    }
                    let gains: Vec<String> = w.gains.iter().map(fmt_q).collect();
                    writeln!(
                        text,
                        "gains on the relevant constituents: {}",
                        gains.join(", ")
                    )
                    .ok();
                }
            }
            records.push(Record {
                command: "check".into(),
                inputs: assessment_json(a),
                verdict: if result.coherent {
                    "coherent"
                } else {
                    "incoherent"
                }
                .into(),
                interval: None,
                witness,
            });
        }
        Command::Extend { .. } => {
            let statements = parse_bindings(input.unwrap_or_default())?;
            let spec = build_assessment(&statements, &constraints)?;
            let interval = extension_interval(&spec.assessment, &cli.search_options()?)?;
            let target = spec
                .targets
                .first()
                .map(|p| p.name().to_string())
                .unwrap_or_default();
            writeln!(text, "{}", spec.assessment).ok();
            for aux in &spec.auxiliary {
                writeln!(
                    text,
                    "added {aux} with prevision tied to the compound prevision identity"
                )
                .ok();
            }
            writeln!(text, "{target} in {interval}  (≈ {})", describe(&interval)).ok();
            records.push(Record {
                command: "extend".into(),
                inputs: assessment_json(&spec.assessment),
                verdict: target,
                interval: Some(interval_json(&interval)),
                witness: None,
            });
        }
        Command::Table { expr } => {
            let ast = parse(expr)?;
            let table = value_table_of(&ast, &constraints)?;
            write!(text, "{table}").ok();
            records.push(Record {
                command: "table".into(),
                inputs: json!({"expr": table.expr}),
                verdict: format!("{} distinct values", table.distinct_values().len()),
                interval: None,
                witness: Some(table_json(&table)),
            });
        }
        Command::Suite => {
            let verdicts = property_suite()?;
            write!(text, "{}", render_table(&verdicts)).ok();
            for v in &verdicts {
                writeln!(
                    text,
                    "{:<3} {:<6} {}",
                    v.operator.name(),
                    v.property.name(),
                    v.note
                )
                .ok();
                if let Some(c) = &v.counterexample {
                    writeln!(text, "      counterexample: {c}").ok();
                }
                records.push(verdict_record(v, "suite"));
            }
        }
        Command::Pvalid { rule, operator } => {
            let r = Rule::from_name(rule)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown rule `{rule}`")))?;
            let op = Operator::from_name(operator)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown operator `{operator}`")))?;
            let v = check_inference(r, op)?;
            writeln!(
                text,
                "{} for iter_{}: {}",
                r.name(),
                op.name(),
                if v.holds { "holds" } else { "fails" }
            )
            .ok();
            writeln!(text, "{}", v.note).ok();
            if let Some(c) = &v.counterexample {
                writeln!(text, "counterexample: {c}").ok();
            }
            let mut rec = verdict_record(&v, "pvalid");
            rec.inputs = json!({"rule": r.name(), "operator": op.name()});
            records.push(rec);
        }
        Command::Bounds { kind, grid } => {
            let k = BoundKind::from_name(kind)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown bound `{kind}`")))?;
            if *grid < 2 {
                return Err(Error::InvalidArgument(
                    "the grid needs at least 2 points per axis".into(),
                ));
            }
            let opts = cli.search_options()?;
            let tolerance = crate::rational::q(1, 1_000_000);
            let report = verify_bounds_match(k, &unit_grid(*grid), &tolerance, &opts)?;
            writeln!(
                text,
                "{:>6} {:>6}  {:<28} {:<28} ok",
                "x", "y", "bisection", "closed form"
            )
            .ok();
            for row in &report.rows {
                writeln!(
                    text,
                    "{:>6} {:>6}  {:<28} {:<28} {}",
                    fmt_q(&row.x),
                    fmt_q(&row.y),
                    describe(&row.search),
                    row.closed.to_string(),
                    if row.ok { "yes" } else { "NO" }
                )
                .ok();
                records.push(Record {
                    command: "bounds".into(),
                    inputs: json!({"kind": k.name(), "x": q_json(&row.x), "y": q_json(&row.y)}),
                    verdict: if row.ok { "match" } else { "mismatch" }.into(),
                    interval: Some(interval_json(&row.search)),
                    witness: Some(json!({"closed_form": interval_json(&row.closed)})),
                });
            }
            let failures = report.failures().len();
            writeln!(
                text,
                "{} of {} grid points match",
                report.rows.len() - failures,
                report.rows.len()
            )
            .ok();
            success = failures == 0;
        }
    }
    Ok(Report {
        records,
        text,
        success,
    })
}

/// Parses arguments, runs the command and writes the report; returns the exit code.
///
/// Exit codes: 0 on success, 1 on an error or a failed `bounds` comparison, 2 on a
/// usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let input = match &cli.command {
        Command::Check { file } | Command::Extend { file } => match read_input(file) {
            Ok(s) => Some(s),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
        },
        _ => None,
    };
    match execute(&cli, input.as_deref()) {
        Ok(report) => {
            match cli.format {
                Format::Text => {
                    let _ = write!(out, "{}", report.text);
                }
                Format::Json => {
                    for r in &report.records {
                        let _ = writeln!(
                            out,
                            "{}",
                            serde_json::to_string(r).expect("records serialize")
                        );
                    }
                }
            }
            i32::from(!report.success)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
