//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad arguments, malformed or
//! mismatched JSON, failed self-test), 2 on domain errors raised by the
//! library.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{PentaComplex, DEFAULT_INVERSE_TOL};
use crate::analytic::{check_cr_relations, check_second_order, CrReport, SecondOrderReport, CR_STEP, CR_TOL};
use crate::analytic::{SECOND_ORDER_STEP, SECOND_ORDER_TOL};
use crate::canonical::{rotated_coords, to_canonical, CanonicalForm, RotatedCoords};
use crate::contour::{integrate, residue_formula, Path, ResidueReport, DEFAULT_SAMPLES_PER_SEGMENT};
use crate::cosexp::write_table;
use crate::elementary::{self, exponential_form, ExponentialForm};
use crate::error::Error;
use crate::format::to_json17;
use crate::functions::Builtin;
use crate::geometry::{polar_form, PolarForm};
use crate::polyfactor::{factor, PentaPolynomial, PolynomialInput};
use crate::verify::{run_all, CriterionReport, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

const SCHEMA_NUMBER: &str = "[x0, x1, x2, x3, x4] or {\"u\": [x0, x1, x2, x3, x4]}, or a list of these";
const SCHEMA_PAIR: &str =
    "{\"a\": [x0, ..., x4], \"b\": [x0, ..., x4]} or [[x0, ..., x4], [x0, ..., x4]], or a list of these";
const SCHEMA_POW: &str = "{\"u\": [x0, ..., x4], \"m\": real}, or a list of these";
const SCHEMA_ANALYTIC: &str = "{\"function\": name, \"point\": [x0, ..., x4]}";
const SCHEMA_PATH: &str = "{\"vertices\": [[x0, ..., x4], ...], \"closed\": bool}";
const SCHEMA_POLY: &str = "{\"coeffs\": [[x0, ..., x4], ...], \"leading\": [x0, ..., x4] (optional, default 1)}";

#[derive(Debug, Parser)]
#[command(
    name = "pentacomplex",
    version,
    about = "Arithmetic and analysis of 5-dimensional polar complex numbers"
)]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(short, long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    /// Tolerance for invertibility and analyticity checks.
    #[arg(long, global = true, env = "PENTA_TOL", value_name = "TOL")]
    tol: Option<f64>,

    /// Print single numbers as `x0 + x1 h1 + ...` instead of JSON.
    #[arg(long, global = true)]
    text: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Read the JSON document from this file, or `-` for standard input.
    #[arg(short, long, value_name = "FILE")]
    input: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Product of two numbers.
    Mul {
        #[command(flatten)]
        input: Input,
        /// Factors as inline JSON arrays.
        #[arg(num_args = 0..=2, allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// Multiplicative inverse.
    Inv(Unary),
    /// Canonical components and rotated coordinates.
    Canonical(Unary),
    /// Polar coordinates, amplitude and exponential form.
    Polar(Unary),
    /// Exponential.
    Exp(Unary),
    /// Principal logarithm.
    Log(Unary),
    /// Real power `u^m`.
    Pow {
        #[command(flatten)]
        input: Input,
        #[arg(allow_hyphen_values = true)]
        value: Option<String>,
        #[arg(allow_hyphen_values = true)]
        exponent: Option<f64>,
    },
    /// sin, cos, sinh or cosh of a number, or `form` for its trigonometric form.
    Trig {
        #[arg(value_parser = ["sin", "cos", "sinh", "cosh", "form"])]
        function: String,
        #[command(flatten)]
        unary: Unary,
    },
    /// CSV table of the five cosexponential functions.
    CosexpTable {
        #[arg(long, default_value_t = -4.0, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
    /// Checks the relations between partial derivatives of a builtin function.
    CheckAnalytic {
        #[command(flatten)]
        input: Input,
        /// Builtin function name.
        function: Option<String>,
        /// Point as an inline JSON array.
        #[arg(allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, default_value_t = CR_STEP)]
        step: f64,
    },
    /// Integrates a builtin function along a path, or checks the residue
    /// formula when a pole is given.
    Integrate {
        #[command(flatten)]
        input: Input,
        #[arg(long, short = 'f', default_value = "one")]
        function: String,
        /// Pole as an inline JSON array.
        #[arg(long, allow_hyphen_values = true)]
        pole: Option<String>,
        /// Midpoint samples per path segment.
        #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_SEGMENT)]
        samples: usize,
    },
    /// Factors a polynomial into linear and quadratic factors.
    Factor {
        #[command(flatten)]
        input: Input,
        #[arg(allow_hyphen_values = true)]
        value: Option<String>,
    },
    /// Runs every verification suite.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct Unary {
    #[command(flatten)]
    input: Input,
    /// Number as an inline JSON array.
    #[arg(allow_hyphen_values = true)]
    value: Option<String>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid input: {message}\nexpected JSON: {schema}")]
    Schema { message: String, schema: &'static str },
    #[error("{0}")]
    Domain(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(e) if !is_usage_error(e) => EXIT_DOMAIN,
            _ => EXIT_USAGE,
        }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::NonFinite { .. } | Error::InvalidArgument(_) | Error::InvalidPath(_) | Error::InvalidPairing(_)
    )
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Batch<T> {
    One(T),
    Many(Vec<T>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NumberDoc {
    Bare(PentaComplex),
    Named { u: PentaComplex },
}

impl NumberDoc {
    fn get(self) -> PentaComplex {
        match self {
            NumberDoc::Bare(u) | NumberDoc::Named { u } => u,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PairDoc {
    Bare([PentaComplex; 2]),
    Named { a: PentaComplex, b: PentaComplex },
}

#[derive(Deserialize)]
struct PowDoc {
    u: PentaComplex,
    m: f64,
}

#[derive(Deserialize)]
struct AnalyticDoc {
    function: String,
    point: PentaComplex,
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    tol: Option<f64>,
    text: bool,
}

enum Output {
    Json(String),
    Text(String),
}

fn parse_inline(s: &str) -> Result<Value, CliError> {
    serde_json::from_str(s).map_err(|e| CliError::Usage(format!("cannot parse `{s}` as JSON: {e}")))
}

fn read_document(ctx: &mut Context, input: &Input) -> Result<Option<Value>, CliError> {
    let Some(source) = &input.input else {
        return Ok(None);
    };
    let mut text = String::new();
    if source == "-" {
        ctx.stdin.read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(source).map_err(|e| CliError::Usage(format!("cannot read `{source}`: {e}")))?;
    }
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| CliError::Usage(format!("`{source}` is not valid JSON: {e}")))
}

/// The document from `--input`, or else the one built from inline arguments.
fn document(ctx: &mut Context, input: &Input, inline: Option<Value>, schema: &'static str) -> Result<Value, CliError> {
    match (read_document(ctx, input)?, inline) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either --input or inline values, not both".into())),
        (Some(doc), None) | (None, Some(doc)) => Ok(doc),
        (None, None) => Err(CliError::Schema {
            message: "no input given".into(),
            schema,
        }),
    }
}

fn decode<T: DeserializeOwned>(doc: Value, schema: &'static str) -> Result<T, CliError> {
    serde_json::from_value(doc).map_err(|e| CliError::Schema {
        message: e.to_string(),
        schema,
    })
}

fn json<T: Serialize>(value: &T) -> Result<Output, CliError> {
    to_json17(value)
        .map(Output::Json)
        .map_err(|e| CliError::Usage(format!("cannot serialize output: {e}")))
}

/// Applies `f` to one input or to each element of a list.
fn map_batch<T, U: Serialize>(
    ctx: &Context,
    batch: Batch<T>,
    f: impl Fn(T) -> Result<U, Error>,
    as_text: impl Fn(&U) -> Option<String>,
) -> Result<Output, CliError> {
    match batch {
        Batch::One(x) => {
            let y = f(x)?;
            match (ctx.text, as_text(&y)) {
                (true, Some(t)) => Ok(Output::Text(t)),
                _ => json(&y),
            }
        }
        Batch::Many(xs) => {
            let ys = xs.into_iter().map(f).collect::<Result<Vec<_>, _>>()?;
            if ctx.text {
                if let Some(lines) = ys.iter().map(&as_text).collect::<Option<Vec<_>>>() {
                    return Ok(Output::Text(lines.join("\n")));
                }
            }
            json(&ys)
        }
    }
}

fn penta_text(u: &PentaComplex) -> Option<String> {
    Some(u.to_string())
}

fn no_text<T>(_: &T) -> Option<String> {
    None
}

fn unary(
    ctx: &mut Context,
    args: &Unary,
    f: impl Fn(PentaComplex) -> Result<PentaComplex, Error>,
) -> Result<Output, CliError> {
    let inline = args.value.as_deref().map(parse_inline).transpose()?;
    let doc = document(ctx, &args.input, inline, SCHEMA_NUMBER)?;
    let batch: Batch<NumberDoc> = decode(doc, SCHEMA_NUMBER)?;
    map_batch(ctx, batch, |d| f(d.get()), penta_text)
}

#[derive(Serialize)]
struct CanonicalOutput {
    canonical: CanonicalForm,
    rotated: RotatedCoords,
}

#[derive(Serialize)]
struct PolarOutput {
    #[serde(flatten)]
    polar: PolarForm,
    exponential_form: Option<ExponentialForm>,
}

#[derive(Serialize)]
struct AnalyticOutput {
    function: String,
    point: PentaComplex,
    analytic: bool,
    first_order: CrReport,
    second_order: SecondOrderReport,
}

#[derive(Serialize)]
#[serde(untagged)]
enum IntegrateOutput {
    Integral { integral: PentaComplex },
    Residue(ResidueReport),
}

#[derive(Serialize)]
struct SelftestOutput {
    pass: bool,
    passed: usize,
    failed: usize,
    elapsed_secs: f64,
    criteria: Vec<CriterionReport>,
}

fn execute(ctx: &mut Context, command: &Command) -> Result<(Output, i32), CliError> {
    let ok = |o| Ok((o, EXIT_OK));
    match command {
        Command::Mul { input, values } => {
            let inline = match values.as_slice() {
                [] => None,
                [doc] => Some(parse_inline(doc)?),
                [a, b] => Some(Value::Array(vec![parse_inline(a)?, parse_inline(b)?])),
                _ => unreachable!("clap limits the count"),
            };
            let doc = document(ctx, input, inline, SCHEMA_PAIR)?;
            let batch: Batch<PairDoc> = decode(doc, SCHEMA_PAIR)?;
            ok(map_batch(
                ctx,
                batch,
                |p| {
                    let (a, b) = match p {
                        PairDoc::Bare([a, b]) | PairDoc::Named { a, b } => (a, b),
                    };
                    PentaComplex::checked((a * b).components())
                },
                penta_text,
            )?)
        }
        Command::Inv(args) => {
            let tol = ctx.tol.unwrap_or(DEFAULT_INVERSE_TOL);
            ok(unary(ctx, args, |u| u.inverse_with_tol(tol))?)
        }
        Command::Canonical(args) => {
            let inline = args.value.as_deref().map(parse_inline).transpose()?;
            let doc = document(ctx, &args.input, inline, SCHEMA_NUMBER)?;
            let batch: Batch<NumberDoc> = decode(doc, SCHEMA_NUMBER)?;
            ok(map_batch(
                ctx,
                batch,
                |d| {
                    let u = d.get();
                    Ok(CanonicalOutput {
                        canonical: to_canonical(&u),
                        rotated: rotated_coords(&u),
                    })
                },
                no_text,
            )?)
        }
        Command::Polar(args) => {
            let inline = args.value.as_deref().map(parse_inline).transpose()?;
            let doc = document(ctx, &args.input, inline, SCHEMA_NUMBER)?;
            let batch: Batch<NumberDoc> = decode(doc, SCHEMA_NUMBER)?;
            ok(map_batch(
                ctx,
                batch,
                |d| {
                    let u = d.get();
                    Ok(PolarOutput {
                        polar: polar_form(&u),
                        exponential_form: exponential_form(&u).ok(),
                    })
                },
                no_text,
            )?)
        }
        Command::Exp(args) => ok(unary(ctx, args, |u| elementary::exp(&u))?),
        Command::Log(args) => ok(unary(ctx, args, |u| elementary::log(&u))?),
        Command::Pow { input, value, exponent } => {
            let inline = match (value, exponent) {
                (None, None) => None,
                (Some(v), Some(m)) => Some(serde_json::json!({ "u": parse_inline(v)?, "m": m })),
                (Some(v), None) => Some(parse_inline(v)?),
                (None, Some(_)) => unreachable!("positional order"),
            };
            let doc = document(ctx, input, inline, SCHEMA_POW)?;
            let batch: Batch<PowDoc> = decode(doc, SCHEMA_POW)?;
            ok(map_batch(ctx, batch, |d| elementary::pow_real(&d.u, d.m), penta_text)?)
        }
        Command::Trig { function, unary: args } => {
            let f: fn(&PentaComplex) -> Result<PentaComplex, Error> = match function.as_str() {
                "sin" => elementary::sin,
                "cos" => elementary::cos,
                "sinh" => elementary::sinh,
                "cosh" => elementary::cosh,
                _ => elementary::trigonometric_form,
            };
            ok(unary(ctx, args, |u| f(&u))?)
        }
        Command::CosexpTable { from, to, step } => {
            let mut buf = Vec::new();
            write_table(&mut buf, *from, *to, *step)?;
            ok(Output::Text(String::from_utf8(buf).expect("ascii table")))
        }
        Command::CheckAnalytic {
            input,
            function,
            point,
            step,
        } => {
            let inline = match (function, point) {
                (Some(f), Some(p)) => Some(serde_json::json!({ "function": f, "point": parse_inline(p)? })),
                (None, None) => None,
                _ => {
                    return Err(CliError::Schema {
                        message: "give both a function name and a point".into(),
                        schema: SCHEMA_ANALYTIC,
                    })
                }
            };
            let doc = document(ctx, input, inline, SCHEMA_ANALYTIC)?;
            let d: AnalyticDoc = decode(doc, SCHEMA_ANALYTIC)?;
            let b: Builtin = d.function.parse()?;
            let tol = ctx.tol.unwrap_or(CR_TOL);
            let first_order = check_cr_relations(|x| b.eval(x), &d.point, *step, tol)?;
            let second_order = check_second_order(|x| b.eval(x), &d.point, SECOND_ORDER_STEP, SECOND_ORDER_TOL)?;
            let out = AnalyticOutput {
                function: b.name().into(),
                point: d.point,
                analytic: first_order.pass && second_order.pass,
                first_order,
                second_order,
            };
            ok(json(&out)?)
        }
        Command::Integrate {
            input,
            function,
            pole,
            samples,
        } => {
            let doc = document(ctx, input, None, SCHEMA_PATH)?;
            let path: Path = decode(doc, SCHEMA_PATH)?;
            let b: Builtin = function.parse()?;
            let out = match pole {
                None => IntegrateOutput::Integral {
                    integral: integrate(|x| b.eval(x), &path, *samples)?,
                },
                Some(p) => {
                    let u0: PentaComplex = decode(parse_inline(p)?, SCHEMA_NUMBER)?;
                    IntegrateOutput::Residue(residue_formula(|x| b.eval(x), &path, &u0, *samples)?)
                }
            };
            ok(json(&out)?)
        }
        Command::Factor { input, value } => {
            let inline = value.as_deref().map(parse_inline).transpose()?;
            let doc = document(ctx, input, inline, SCHEMA_POLY)?;
            let raw: PolynomialInput = decode(doc, SCHEMA_POLY)?;
            let p = PentaPolynomial::try_from(raw)?;
            ok(json(&factor(&p)?)?)
        }
        Command::Selftest { seed } => {
            let start = Instant::now();
            let criteria = run_all(*seed);
            let passed = criteria.iter().filter(|c| c.pass()).count();
            let out = SelftestOutput {
                pass: passed == criteria.len(),
                passed,
                failed: criteria.len() - passed,
                elapsed_secs: start.elapsed().as_secs_f64(),
                criteria,
            };
            let code = if out.pass { EXIT_OK } else { EXIT_USAGE };
            Ok((json(&out)?, code))
        }
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, output: Output) -> std::io::Result<()> {
    let mut text = match output {
        Output::Json(s) | Output::Text(s) => s,
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match path {
        Some(p) => std::fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t > 0.0) {
            let _ = writeln!(stderr, "error: --tol must be a positive finite number");
            return EXIT_USAGE;
        }
    }
    let mut ctx = Context {
        stdin,
        tol: cli.tol,
        text: cli.text,
    };
    let result = execute(&mut ctx, &cli.command).and_then(|(output, code)| {
        emit(stdout, cli.output.as_ref(), output)
            .map(|_| code)
            .map_err(CliError::from)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
