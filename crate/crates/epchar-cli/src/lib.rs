//! Command-line front end for the character calculator.
//!
//! Subcommands expose each computation: `char` for weight-multiplicity
//! arrays (text, CSV, or JSON, with an optional independent cross-check),
//! `charpoly` and `eval` for the function algebra, `ramanujan` for the
//! number-theoretic kernel, `poincare` for semi-invariant dimension
//! series, and `solve-recurrence` for closed forms of linear recurrences.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on domain errors. A
//! domain diagnostic is one line on stderr, `error: ` followed by the
//! typed error name and detail.

pub mod ast;
pub mod error;
pub mod lower;
pub mod output;
pub mod parse;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use epchar::characters::{character_array, character_array_via_semiinvariants};
use epchar::exppoly::CanonicalExpPoly;
use epchar::numbers::ramanujan_sum;
use epchar::poly::PolynomialQ;
use epchar::semiinvariants::{
    brute_force_component, tensor_component_series, GradedDims,
};
use epchar::Rational;

use error::CliError;
use lower::lower_to_canonical;
use output::{
    render_closed_form, render_csv, render_json, render_series_line, render_text,
};
use parse::parse_expression;

#[derive(Parser)]
#[command(
    name = "epchar",
    version,
    about = "Characters of level-zero modules attached to exponential-polynomial functions",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the weight-multiplicity array of the module attached to EXPR.
    Char {
        /// Expression, e.g. "-delta(4)*(exp(a)+exp(b))"
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// Number of rows (k = 0 .. ROWS-1)
        #[arg(long, default_value_t = 12)]
        rows: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also compute the array through the semi-invariant route and
        /// fail (exit 2) if the two disagree anywhere.
        #[arg(long)]
        cross_check: bool,
    },
    /// Print the characteristic polynomial of EXPR (numeric bases only).
    Charpoly {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Evaluate EXPR at one point or across a window of integers.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// Single evaluation point
        #[arg(long, allow_negative_numbers = true, conflicts_with = "window")]
        at: Option<i64>,
        /// Inclusive range A B, one "m value" line per point
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        window: Option<Vec<i64>>,
    },
    /// Print the Ramanujan sum c_D(N).
    Ramanujan {
        d: u64,
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Print the dimension series of one semi-invariant component of the
    /// R-th tensor power of a graded space with the given dimensions.
    Poincare {
        /// Comma-separated dimensions by degree, e.g. "1,2,0"
        #[arg(long)]
        dims: String,
        #[arg(short)]
        r: u64,
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
        /// Series cutoff degree
        #[arg(short = 'K', default_value_t = 8)]
        cutoff: usize,
        /// Count orbits by brute-force enumeration instead of the formula.
        #[arg(long)]
        oracle: bool,
    },
    /// Solve a linear recurrence: print the closed form in the expression
    /// grammar.
    SolveRecurrence {
        /// Monic characteristic polynomial, constant term first: "c0,c1,...,1"
        #[arg(long, allow_hyphen_values = true)]
        char_poly: String,
        /// Initial values v0,v1,... (one per polynomial degree)
        #[arg(long, allow_hyphen_values = true)]
        init: String,
    },
}

enum RunError {
    Usage(String),
    Domain(CliError),
}

impl From<CliError> for RunError {
    fn from(e: CliError) -> Self {
        RunError::Domain(e)
    }
}

impl From<epchar::characters::CharactersError> for RunError {
    fn from(e: epchar::characters::CharactersError) -> Self {
        RunError::Domain(e.into())
    }
}

/// Parses and runs one invocation, writing the document to `out` and
/// diagnostics to `err`; returns the process exit status.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    1
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(document) => {
            let _ = write!(out, "{document}");
            0
        }
        Err(RunError::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            1
        }
        Err(RunError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<String, RunError> {
    match command {
        Command::Char {
            expr,
            rows,
            format,
            cross_check,
        } => cmd_char(&expr, rows, format, cross_check),
        Command::Charpoly { expr } => cmd_charpoly(&expr),
        Command::Eval { expr, at, window } => cmd_eval(&expr, at, window),
        Command::Ramanujan { d, n } => cmd_ramanujan(d, n),
        Command::Poincare {
            dims,
            r,
            n,
            cutoff,
            oracle,
        } => cmd_poincare(&dims, r, n, cutoff, oracle),
        Command::SolveRecurrence { char_poly, init } => {
            cmd_solve_recurrence(&char_poly, &init)
        }
    }
}

fn compile(expr: &str) -> Result<CanonicalExpPoly, CliError> {
    lower_to_canonical(&parse_expression(expr)?)
}

fn cmd_char(
    expr: &str,
    rows: usize,
    format: Format,
    cross_check: bool,
) -> Result<String, RunError> {
    if rows == 0 {
        return Err(RunError::Usage("--rows must be at least 1".into()));
    }
    let phi = compile(expr)?;
    let kmax = rows - 1;
    let array = character_array(&phi, kmax)?;
    if cross_check {
        let other = character_array_via_semiinvariants(&phi, kmax)?;
        if array != other {
            let detail = first_difference(&array, &other);
            return Err(CliError::CrossCheckMismatch(detail).into());
        }
    }
    Ok(match format {
        Format::Text => render_text(&array),
        Format::Csv => render_csv(&array),
        Format::Json => render_json(&array),
    })
}

fn first_difference(
    a: &epchar::characters::CharacterArray,
    b: &epchar::characters::CharacterArray,
) -> String {
    for (k, (ra, rb)) in a.rows().iter().zip(b.rows()).enumerate() {
        for (n, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                return format!("entry (k={k}, n={n}) differs: {x} vs {y}");
            }
        }
    }
    "arrays differ in shape".to_owned()
}

fn cmd_charpoly(expr: &str) -> Result<String, RunError> {
    let phi = compile(expr)?;
    let chi = phi.char_poly().map_err(CliError::from)?;
    Ok(format!("{chi}\n"))
}

fn cmd_eval(
    expr: &str,
    at: Option<i64>,
    window: Option<Vec<i64>>,
) -> Result<String, RunError> {
    let phi = compile(expr)?;
    match (at, window) {
        (Some(m), None) => {
            let value = phi.evaluate(m).map_err(CliError::from)?;
            Ok(format!("{value}\n"))
        }
        (None, Some(range)) => {
            let (a, b) = (range[0], range[1]);
            if a > b {
                return Err(RunError::Usage(format!(
                    "--window expects A <= B, got {a} {b}"
                )));
            }
            let mut s = String::new();
            for m in a..=b {
                let value = phi.evaluate(m).map_err(CliError::from)?;
                s.push_str(&format!("{m} {value}\n"));
            }
            Ok(s)
        }
        _ => Err(RunError::Usage(
            "provide exactly one of --at M or --window A B".into(),
        )),
    }
}

fn cmd_ramanujan(d: u64, n: i64) -> Result<String, RunError> {
    if d == 0 {
        return Err(RunError::Usage("D must be at least 1".into()));
    }
    Ok(format!("{}\n", ramanujan_sum(d, n)))
}

fn cmd_poincare(
    dims: &str,
    r: u64,
    n: i64,
    cutoff: usize,
    oracle: bool,
) -> Result<String, RunError> {
    if r == 0 {
        return Err(RunError::Usage("-r must be at least 1".into()));
    }
    let parsed: Result<Vec<u64>, _> =
        dims.split(',').map(|t| t.trim().parse::<u64>()).collect();
    let Ok(dims) = parsed else {
        return Err(RunError::Usage(format!(
            "--dims expects comma-separated nonnegative integers, got {dims:?}"
        )));
    };
    let space = GradedDims::new(dims);
    let series = if oracle {
        brute_force_component(&space, r, n, cutoff).map_err(CliError::from)?
    } else {
        tensor_component_series(&space.poincare_series(cutoff), r, n)
            .map_err(CliError::from)?
    };
    Ok(render_series_line(&series))
}

fn cmd_solve_recurrence(char_poly: &str, init: &str) -> Result<String, RunError> {
    let coeffs = parse_rational_list(char_poly, "--char-poly")?;
    let initial = parse_rational_list(init, "--init")?;
    let c = PolynomialQ::from_coeffs(coeffs);
    let solution =
        epchar::exppoly::recurrence_solve(&c, &initial).map_err(CliError::from)?;
    Ok(render_closed_form(&solution))
}

/// Comma-separated signed rationals: `-8, 12, -6, 1` or `1/2,3`.
fn parse_rational_list(s: &str, flag: &str) -> Result<Vec<Rational>, RunError> {
    s.split(',')
        .map(|piece| {
            parse_signed_rational(piece.trim()).ok_or_else(|| {
                RunError::Usage(format!(
                    "{flag} expects comma-separated rationals, got {piece:?}"
                ))
            })
        })
        .collect()
}

fn parse_signed_rational(t: &str) -> Option<Rational> {
    let (negative, rest) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (num, den) = match rest.split_once('/') {
        Some((n, d)) => (n, d),
        None => (rest, "1"),
    };
    if num.is_empty()
        || den.is_empty()
        || !num.bytes().all(|b| b.is_ascii_digit())
        || !den.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let numerator: epchar::BigInt = num.parse().ok()?;
    let denominator: epchar::BigInt = den.parse().ok()?;
    if denominator == epchar::BigInt::from(0) {
        return None;
    }
    let q = Rational::new(numerator, denominator);
    Some(if negative { -q } else { q })
}
