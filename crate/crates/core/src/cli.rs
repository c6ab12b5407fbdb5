//! The `fermat` command line tool.
//!
//! Exit codes: 0 ok, 2 parse or usage error, 3 evaluation error, 4 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::exponent::Exponent;
use crate::expr::{self, Env, Expr};
use crate::graph;
use crate::order::{self, OrderValue, Verdict};
use crate::real::FermatReal;
use crate::smooth;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_EVAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "fermat", version, about = "Arithmetic with Fermat reals")]
struct Cli {
    /// Bind a variable, `name=expr`; later bindings may use earlier ones.
    #[arg(short = 'b', long = "bind", value_name = "NAME=EXPR", global = true)]
    bind: Vec<String>,

    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression and print its canonical form.
    Eval { expr: String },
    /// Print the canonical decomposition of an expression.
    Canon { expr: String },
    /// Compare two values: LT, EQ or GT.
    Cmp { a: String, b: String },
    /// Order of a value (0 for standard reals).
    Order { expr: String },
    /// Smallest k with x^k = 0, or `none`.
    Nilpotent { expr: String },
    /// Derivative of a one-variable expression at a real point.
    Diff {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        at: f64,
    },
    /// Whether a product of powers of infinitesimals vanishes, and its order.
    Prodzero {
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        exps: Vec<u32>,
    },
    /// Drop infinitesimal terms of order at most k (`inf` keeps only the standard part).
    Iota {
        expr: String,
        #[arg(long)]
        k: String,
    },
    /// Draw the representing curve of a value.
    Plot {
        expr: String,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = PlotFormat::Svg)]
        format: PlotFormat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PlotFormat {
    Svg,
    Csv,
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            _ => EXIT_EVAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl Failure {
    fn parse(message: String) -> Self {
        Failure {
            code: EXIT_PARSE,
            message,
        }
    }

    fn io(message: String) -> Self {
        Failure {
            code: EXIT_IO,
            message,
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    match execute(&cli, stdout) {
        Ok(text) => {
            if !text.is_empty() && writeln!(stdout, "{text}").is_err() {
                return EXIT_IO;
            }
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Outcome {
    let env = bindings(&cli.bind)?;
    let json = cli.json;
    match &cli.command {
        Command::Eval { expr } | Command::Canon { expr } => {
            let x = evaluate(expr, &env)?;
            Ok(render(&x, json))
        }
        Command::Cmp { a, b } => {
            let v = compare(a, b, &env)?;
            Ok(if json {
                json!({ "verdict": v.to_string() }).to_string()
            } else {
                v.to_string()
            })
        }
        Command::Order { expr } => {
            let w = order::order(&evaluate(expr, &env)?);
            Ok(if json {
                json!({ "order": w.to_string() }).to_string()
            } else {
                w.to_string()
            })
        }
        Command::Nilpotent { expr } => {
            let k = order::nilpotency_index(&evaluate(expr, &env)?);
            Ok(match (json, k) {
                (true, _) => json!({ "index": k }).to_string(),
                (false, Some(k)) => k.to_string(),
                (false, None) => "none".to_string(),
            })
        }
        Command::Diff { expr, at } => {
            let m = differentiate(expr, *at, &env)?;
            Ok(if json {
                json!({ "derivative": m }).to_string()
            } else {
                expr::format_real(m)
            })
        }
        Command::Prodzero { orders, exps } => {
            let orders = orders
                .iter()
                .map(|s| {
                    Exponent::parse_literal(s)
                        .map_err(|e| Failure::parse(format!("invalid order `{s}`: {e}")))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let zero = order::product_power_zero(&orders, exps)?;
            let w = if zero {
                None
            } else {
                Some(order::product_power_order(&orders, exps)?)
            };
            Ok(match (json, w) {
                (true, w) => json!({ "zero": zero, "order": w.map(|w| w.to_string()) }).to_string(),
                (false, None) => "zero".to_string(),
                (false, Some(w)) => format!("nonzero, order {w}"),
            })
        }
        Command::Iota { expr, k } => {
            let k = parse_order_value(k)?;
            let x = evaluate(expr, &env)?;
            Ok(render(&x.iota(&k), json))
        }
        Command::Plot {
            expr,
            delta,
            samples,
            out,
            format,
        } => {
            let x = evaluate(expr, &env)?;
            let g = graph::sample(&x, *delta, *samples)?;
            let body = match format {
                PlotFormat::Svg => g.to_svg(),
                PlotFormat::Csv => g.to_csv(),
            };
            match out {
                Some(path) => {
                    std::fs::write(path, body)
                        .map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
                    Ok(if json {
                        json!({ "out": path.display().to_string(), "points": g.points.len() })
                            .to_string()
                    } else {
                        String::new()
                    })
                }
                None => {
                    stdout
                        .write_all(body.as_bytes())
                        .map_err(|e| Failure::io(e.to_string()))?;
                    Ok(String::new())
                }
            }
        }
    }
}

fn render(x: &FermatReal, json: bool) -> String {
    if json {
        serde_json::to_string(&expr::to_json(x)).unwrap_or_default()
    } else {
        expr::format(x)
    }
}

fn parse(text: &str) -> std::result::Result<Expr, Failure> {
    expr::parse(text).map_err(|e| Failure::from(Error::Parse(e)))
}

fn evaluate(text: &str, env: &Env) -> std::result::Result<FermatReal, Failure> {
    Ok(expr::eval(&parse(text)?, env)?)
}

fn bindings(binds: &[String]) -> std::result::Result<Env, Failure> {
    let mut env = Env::new();
    for b in binds {
        let Some((name, text)) = b.split_once('=') else {
            return Err(Failure::parse(format!(
                "binding `{b}` is not of the form name=expr"
            )));
        };
        let name = name.trim();
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid || name == "dt" {
            return Err(Failure::parse(format!("invalid variable name `{name}`")));
        }
        let value = evaluate(text, &env)?;
        env.insert(name.to_string(), value);
    }
    Ok(env)
}

/// Syntactically identical expressions are equal for every binding of their
/// variables, so they compare EQ even when some variable is unbound.
fn compare(a: &str, b: &str, env: &Env) -> std::result::Result<Verdict, Failure> {
    let (ea, eb) = (parse(a)?, parse(b)?);
    match (expr::eval(&ea, env), expr::eval(&eb, env)) {
        (Ok(x), Ok(y)) => Ok(order::compare(&x, &y)),
        (Err(Error::UnboundVariable(_)), _) | (_, Err(Error::UnboundVariable(_))) if ea == eb => {
            Ok(Verdict::Eq)
        }
        (Err(e), _) | (_, Err(e)) => Err(e.into()),
    }
}

fn differentiate(text: &str, at: f64, env: &Env) -> std::result::Result<f64, Failure> {
    let f = parse(text)?;
    let free: Vec<String> = f
        .free_variables()
        .into_iter()
        .filter(|v| !env.contains_key(v))
        .collect();
    match free.as_slice() {
        [] => Ok(0.0),
        [var] => Ok(smooth::derive_in(&f, var, at, env)?),
        _ => Err(Error::NotSmoothAtPoint {
            at,
            reason: format!("expected one free variable, found {}", free.join(", ")),
        }
        .into()),
    }
}

fn parse_order_value(text: &str) -> std::result::Result<OrderValue, Failure> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("inf") {
        return Ok(OrderValue::Infinity);
    }
    let k = Exponent::parse_literal(t)
        .map_err(|e| Failure::parse(format!("invalid order `{text}`: {e}")))?;
    if k.is_negative() {
        return Err(Failure::parse(format!(
            "order `{text}` must not be negative"
        )));
    }
    Ok(OrderValue::finite(k))
}
