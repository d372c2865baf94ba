//! The `pascal-inv` command line.
//!
//! Exit codes: `0` success (and "invariant" for `check`), `1` failed
//! verification or other runtime error, `2` usage or parse error, `3`
//! inverse invariant, `4` neither, `5` summation error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith::Scalar;
use crate::eigen::{make_n, make_m, pt_down, q_down, qt_down00, zero_p_down};
use crate::error::Error;
use crate::oeis::OeisClient;
use crate::operators::{csv_cell, make_operator, pd, ptd, truncate, OperatorName, TriOp};
use crate::parse::{parse_pipeline, parse_scalar, parse_seq};
use crate::sequences::{bernoulli, check_invariance, kseq, Kind, Seq, Summation, Verdict};
use crate::verify::{run_suite, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVERSE: i32 = 3;
pub const EXIT_NEITHER: i32 = 4;
pub const EXIT_SUMMATION: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Classical,
    Continued,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    First,
    Second,
}

#[derive(Parser, Debug)]
#[command(name = "pascal-inv", version, about = "Exact Pascal-matrix calculus and invariant sequences")]
struct Cli {
    /// Number of terms, rows or truncation size.
    #[arg(long, global = true, default_value_t = 32)]
    depth: usize,
    /// Summation rule for sums running to infinity.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Continued)]
    mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a prefix of a sequence.
    Gen { seq: String },
    /// Classify a sequence as invariant, inverse invariant or neither.
    Check {
        seq: String,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Apply a pipeline (`a;b` applies `a` first) to a sequence.
    Apply { pipeline: String, seq: String },
    /// Print the leading block of a named matrix.
    Matrix {
        name: String,
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
    },
    /// Run a verification suite: inversion, eigen, similarity, transforms, all.
    Verify {
        suite: String,
        /// Include per-check wall-clock times in the report.
        #[arg(long)]
        timings: bool,
    },
    /// The Bernoulli rows B, DB and K for n = 0..12.
    Table1,
    /// Look a sequence up in the OEIS.
    Oeis {
        seq: String,
        #[arg(long)]
        offline: bool,
    },
}

struct Ctx<'a> {
    depth: usize,
    mode: Summation,
    format: Format,
    seed: u64,
    out: &'a mut dyn Write,
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::UnknownOperator(_) | Error::MissingParameter(_) | Error::UnexpectedParameter { .. } => {
            EXIT_USAGE
        }
        Error::DivergentSum { .. }
        | Error::PoleError { .. }
        | Error::UnsupportedSequenceClass { .. }
        | Error::UnboundedUpper(_)
        | Error::InfiniteSum { .. } => EXIT_SUMMATION,
        _ => EXIT_FAILURE,
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    if cli.depth < 2 {
        let _ = writeln!(err, "error: --depth must be at least 2");
        return EXIT_USAGE;
    }
    let mode = match cli.mode {
        ModeArg::Classical => Summation::Classical,
        ModeArg::Continued => Summation::Continued,
    };
    let mut ctx = Ctx { depth: cli.depth, mode, format: cli.format, seed: cli.seed, out };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_for(&e)
        }
    }
}

type CmdResult = Result<i32, Error>;

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn dispatch(command: Command, ctx: &mut Ctx<'_>) -> CmdResult {
    match command {
        Command::Gen { seq } => cmd_gen(&seq, ctx),
        Command::Check { seq, kind } => cmd_check(&seq, kind, ctx),
        Command::Apply { pipeline, seq } => cmd_apply(&pipeline, &seq, ctx),
        Command::Matrix { name, param, rows, cols } => cmd_matrix(&name, param.as_deref(), rows, cols, ctx),
        Command::Verify { suite, timings } => cmd_verify(&suite, timings, ctx),
        Command::Table1 => cmd_table1(ctx),
        Command::Oeis { seq, offline } => cmd_oeis(&seq, offline, ctx),
    }
}

fn write_json(ctx: &mut Ctx<'_>, value: &impl serde::Serialize) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(ctx.out, "{text}").map_err(io)
}

fn write_terms(ctx: &mut Ctx<'_>, label: &str, terms: &[Scalar], extra: serde_json::Value) -> Result<(), Error> {
    match ctx.format {
        Format::Pretty => {
            let parts: Vec<String> = terms.iter().map(ToString::to_string).collect();
            writeln!(ctx.out, "{}", parts.join(", ")).map_err(io)
        }
        Format::Csv => {
            writeln!(ctx.out, "n,value").map_err(io)?;
            for (n, x) in terms.iter().enumerate() {
                writeln!(ctx.out, "{n},{}", csv_cell(x)).map_err(io)?;
            }
            Ok(())
        }
        Format::Json => {
            let mut value = json!({ "sequence": label, "depth": terms.len(), "terms": terms });
            if let (Some(obj), serde_json::Value::Object(more)) = (value.as_object_mut(), extra) {
                obj.extend(more);
            }
            write_json(ctx, &value)
        }
    }
}

fn cmd_gen(seq: &str, ctx: &mut Ctx<'_>) -> CmdResult {
    let x = parse_seq(seq)?;
    write_terms(ctx, seq, &x.prefix(ctx.depth), json!({}))?;
    Ok(EXIT_OK)
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Invariant => "invariant",
        Verdict::InverseInvariant => "inverse-invariant",
        Verdict::Neither => "neither",
    }
}

fn cmd_check(seq: &str, kind: KindArg, ctx: &mut Ctx<'_>) -> CmdResult {
    let x = parse_seq(seq)?;
    let kind = match kind {
        KindArg::First => Kind::First,
        KindArg::Second => Kind::Second,
    };
    let report = check_invariance(&x, kind, ctx.depth, ctx.mode)?;
    let mode = serde_json::to_value(report.mode).map_err(|e| Error::Io(e.to_string()))?;
    let mode = mode.as_str().unwrap_or_default().to_string();
    let kind_text = match kind {
        Kind::First => "first",
        Kind::Second => "second",
    };
    match ctx.format {
        Format::Json => write_json(ctx, &report)?,
        Format::Csv => {
            writeln!(ctx.out, "sequence,kind,verdict,depth,mode,first_failure").map_err(io)?;
            let ff = report.first_failure.map(|i| i.to_string()).unwrap_or_default();
            writeln!(ctx.out, "{seq},{kind_text},{},{},{mode},{ff}", verdict_text(report.verdict), report.depth)
                .map_err(io)?;
        }
        Format::Pretty => {
            write!(
                ctx.out,
                "{}: {} ({kind_text} kind, depth {}, {mode})",
                seq,
                verdict_text(report.verdict),
                report.depth
            )
            .map_err(io)?;
            if let Some(i) = report.first_failure {
                write!(ctx.out, "; first failure at index {i}").map_err(io)?;
            }
            writeln!(ctx.out).map_err(io)?;
        }
    }
    Ok(match report.verdict {
        Verdict::Invariant => EXIT_OK,
        Verdict::InverseInvariant => EXIT_INVERSE,
        Verdict::Neither => EXIT_NEITHER,
    })
}

fn cmd_apply(pipeline: &str, seq: &str, ctx: &mut Ctx<'_>) -> CmdResult {
    let p = parse_pipeline(pipeline)?;
    let x = parse_seq(seq)?;
    let y = p.apply(&x, ctx.mode)?;
    let class = p.declared_class();
    if ctx.format == Format::Pretty {
        let announce = class.map_or_else(|| "no class guaranteed".to_string(), |c| c.to_string());
        writeln!(ctx.out, "# {p} applied to {seq}: {announce}").map_err(io)?;
    }
    let extra = json!({ "pipeline": p.to_string(), "declared_class": class });
    write_terms(ctx, seq, &y.prefix(ctx.depth), extra)?;
    Ok(EXIT_OK)
}

/// Matrices by name: the operator registry plus derived objects.
pub fn named_matrix(name: &str, param: Option<Scalar>) -> Result<TriOp, Error> {
    let derived = match name.to_ascii_lowercase().as_str() {
        "n" => Some(make_n()),
        "m" => Some(make_m()),
        "ptdown" => Some(pt_down()),
        "qdown" => Some(q_down()),
        "qtdown00" => Some(qt_down00()),
        "zeropdown" => Some(zero_p_down()),
        "pd" => Some(pd()),
        "ptd" => Some(ptd()),
        _ => None,
    };
    match derived {
        Some(_) if param.is_some() => Err(Error::UnexpectedParameter { name: name.to_string() }),
        Some(op) => Ok(op),
        None => make_operator(name.parse::<OperatorName>()?, param),
    }
}

fn cmd_matrix(name: &str, param: Option<&str>, rows: Option<usize>, cols: Option<usize>, ctx: &mut Ctx<'_>) -> CmdResult {
    let param = param.map(parse_scalar).transpose()?;
    let op = named_matrix(name, param)?;
    let rows = rows.unwrap_or(ctx.depth);
    let m = truncate(&op, rows, cols.unwrap_or(rows))?;
    match ctx.format {
        Format::Pretty => write!(ctx.out, "{m}").map_err(io)?,
        Format::Csv => write!(ctx.out, "{}", m.to_csv()).map_err(io)?,
        Format::Json => write_json(ctx, &m)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(suite: &str, timings: bool, ctx: &mut Ctx<'_>) -> CmdResult {
    let suite: Suite = suite.parse()?;
    let config = VerifyConfig { depth: ctx.depth, seed: ctx.seed, timings };
    let report = run_suite(suite, &config)?;
    match ctx.format {
        Format::Json => write_json(ctx, &report)?,
        Format::Csv => {
            writeln!(ctx.out, "suite,check,depth,passed").map_err(io)?;
            for c in &report.checks {
                writeln!(ctx.out, "{},{},{},{}", c.suite, c.name, c.depth, c.passed).map_err(io)?;
            }
        }
        Format::Pretty => {
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                write!(ctx.out, "{status}  {}/{}", c.suite, c.name).map_err(io)?;
                if let Some(ms) = c.elapsed_ms {
                    write!(ctx.out, "  ({ms} ms)").map_err(io)?;
                }
                if let Some(d) = &c.detail {
                    write!(ctx.out, "  {d}").map_err(io)?;
                }
                writeln!(ctx.out).map_err(io)?;
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            writeln!(ctx.out, "{} checks, {failed} failed (depth {}, seed {})", report.checks.len(), report.depth, report.seed)
                .map_err(io)?;
        }
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_table1(ctx: &mut Ctx<'_>) -> CmdResult {
    let b: Vec<Scalar> = (0..=12).map(|n| Scalar::from(bernoulli(n))).collect();
    let db: Vec<Scalar> = Seq::AltBernoulli.prefix(13);
    let k: Vec<Scalar> = (0..=12).map(|n| Scalar::from(kseq(n))).collect();
    let rows = [("B", &b), ("DB", &db), ("K", &k)];
    match ctx.format {
        Format::Json => {
            let value = json!({ "n": (0..=12).collect::<Vec<_>>(), "B": b, "DB": db, "K": k });
            write_json(ctx, &value)?;
        }
        Format::Csv => {
            let header: Vec<String> = (0..=12).map(|n| n.to_string()).collect();
            writeln!(ctx.out, "row,{}", header.join(",")).map_err(io)?;
            for (name, row) in rows {
                let cells: Vec<String> = row.iter().map(csv_cell).collect();
                writeln!(ctx.out, "{name},{}", cells.join(",")).map_err(io)?;
            }
        }
        Format::Pretty => {
            let width = rows.iter().flat_map(|(_, r)| r.iter()).map(|x| x.to_string().len()).max().unwrap_or(1);
            let header: Vec<String> = (0..=12).map(|n| format!("{n:>width$}")).collect();
            writeln!(ctx.out, "n   {}", header.join(" ")).map_err(io)?;
            for (name, row) in rows {
                let cells: Vec<String> = row.iter().map(|x| format!("{:>width$}", x.to_string())).collect();
                writeln!(ctx.out, "{name:<3} {}", cells.join(" ")).map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_oeis(seq: &str, offline: bool, ctx: &mut Ctx<'_>) -> CmdResult {
    let x = parse_seq(seq)?;
    let result = OeisClient::from_env().lookup(&x, ctx.depth, offline)?;
    let source = serde_json::to_value(result.source).map_err(|e| Error::Io(e.to_string()))?;
    let source = source.as_str().unwrap_or_default().to_string();
    match ctx.format {
        Format::Json => write_json(ctx, &result)?,
        Format::Csv => {
            writeln!(ctx.out, "id,name,source").map_err(io)?;
            for m in &result.matches {
                writeln!(ctx.out, "{},\"{}\",{source}", m.id, m.name.replace('"', "\"\"")).map_err(io)?;
            }
        }
        Format::Pretty => {
            writeln!(ctx.out, "# {} match(es) for {} ({source})", result.matches.len(), result.query.join(","))
                .map_err(io)?;
            for m in &result.matches {
                writeln!(ctx.out, "{}  {}", m.id, m.name).map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}
