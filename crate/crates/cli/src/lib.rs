//! Command-line front end: argument parsing, command dispatch and report
//! rendering for the `fockadic` binary.

pub mod verify;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use fockadic::coherent::GammaParams;
use fockadic::metrics::{self, CommonPrefix};
use fockadic::rational::{
    format_rational, parse_rational, sqrt_to_decimal, to_decimal, RationalJson,
};
use fockadic::{IndexSequence, PadicInt, Scalar, Word};

/// Digits shown in decimal approximations.
const DECIMAL_DIGITS: u32 = 12;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fockadic",
    version,
    about = "Free coherent states, their metrics and the 2-adic integers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Weight γ0 in (0, 1), as "p/q" or an integer.
    #[arg(long, global = true, default_value = "1/2", value_parser = parse_gamma)]
    pub gamma0: Scalar,
    /// Weight γ1 in (0, 1).
    #[arg(long, global = true, default_value = "1/2", value_parser = parse_gamma)]
    pub gamma1: Scalar,
    /// Truncation depth K.
    #[arg(long, global = true, default_value_t = fockadic::DEFAULT_DEPTH)]
    pub depth: usize,
    /// 2-adic precision N.
    #[arg(long, global = true, default_value_t = fockadic::DEFAULT_PRECISION)]
    pub precision: usize,
    /// Enumeration length for ball checks.
    #[arg(long, global = true, default_value_t = 10)]
    pub n: usize,
    /// Seed for random pools.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Truncated coherent state X_U^(K) and its eigen residual.
    Coherent {
        #[arg(long, value_parser = parse_sequence)]
        u: IndexSequence,
    },
    /// Ultrametric ρ(X_U, X_V).
    Rho {
        #[arg(long, value_parser = parse_sequence)]
        u: IndexSequence,
        #[arg(long, value_parser = parse_sequence)]
        v: IndexSequence,
    },
    /// Hilbert metric τ(X_U, X_V), closed form checked against truncation.
    Tau {
        #[arg(long, value_parser = parse_sequence)]
        u: IndexSequence,
        #[arg(long, value_parser = parse_sequence)]
        v: IndexSequence,
    },
    /// Two-sided bound c0²ρ² ≤ τ² ≤ c1²ρ².
    Bounds {
        #[arg(long, value_parser = parse_sequence)]
        u: IndexSequence,
        #[arg(long, value_parser = parse_sequence)]
        v: IndexSequence,
    },
    /// Coherent balls against 2-adic balls; every prefix of length ≤ n unless one is given.
    Balls {
        #[arg(long, value_parser = parse_word)]
        prefix: Option<Word>,
    },
    /// Full property suite.
    Verify,
    /// 2-adic arithmetic on two operands: decimal integers or "lsb:<digits>".
    Padic {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

fn parse_gamma(s: &str) -> Result<Scalar, String> {
    let g = parse_rational(s).map_err(|e| e.to_string())?;
    GammaParams::uniform(g.clone()).map_err(|e| e.to_string())?;
    Ok(g)
}

fn parse_sequence(s: &str) -> Result<IndexSequence, String> {
    s.parse().map_err(|e: fockadic::Error| e.to_string())
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.parse().map_err(|e: fockadic::Error| e.to_string())
}

/// Echo of the effective configuration, included in JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub gamma0: String,
    pub gamma1: String,
    pub sequences: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefix: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub operands: Vec<String>,
    pub depth: usize,
    pub precision: usize,
    pub n: usize,
    pub seed: u64,
    pub output: OutputFormat,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Self {
        let o = &cli.options;
        let (command, sequences, prefix, operands) = match &cli.command {
            Command::Coherent { u } => ("coherent", vec![u.to_string()], None, vec![]),
            Command::Rho { u, v } => ("rho", vec![u.to_string(), v.to_string()], None, vec![]),
            Command::Tau { u, v } => ("tau", vec![u.to_string(), v.to_string()], None, vec![]),
            Command::Bounds { u, v } => {
                ("bounds", vec![u.to_string(), v.to_string()], None, vec![])
            }
            Command::Balls { prefix } => (
                "balls",
                vec![],
                prefix.as_ref().map(Word::to_string),
                vec![],
            ),
            Command::Verify => ("verify", vec![], None, vec![]),
            Command::Padic { a, b } => ("padic", vec![], None, vec![a.clone(), b.clone()]),
        };
        Self {
            command,
            gamma0: format_rational(&o.gamma0),
            gamma1: format_rational(&o.gamma1),
            sequences,
            prefix,
            operands,
            depth: o.depth,
            precision: o.precision,
            n: o.n,
            seed: o.seed,
            output: o.output,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub config: RunConfig,
    pub results: Vec<Value>,
    pub pass: bool,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_FAILURE
        }
    }

    pub fn render(&self) -> String {
        match self.config.output {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            OutputFormat::Text => self.text.clone(),
        }
    }
}

/// Error raised for inputs that parse but violate a domain constraint.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct DomainError(pub String);

impl From<fockadic::Error> for DomainError {
    fn from(e: fockadic::Error) -> Self {
        DomainError(e.to_string())
    }
}

pub fn run(cli: &Cli) -> Result<Report, DomainError> {
    let config = RunConfig::from_cli(cli);
    let o = &cli.options;
    let gammas = GammaParams::new(o.gamma0.clone(), o.gamma1.clone())?;
    if o.precision == 0 {
        return Err(fockadic::Error::ZeroPrecision.into());
    }
    let (results, pass, text) = match &cli.command {
        Command::Coherent { u } => coherent(u, &gammas, o.depth),
        Command::Rho { u, v } => rho(u, v, &gammas),
        Command::Tau { u, v } => tau(u, v, &gammas, o.depth)?,
        Command::Bounds { u, v } => bounds(u, v, &gammas, o.depth)?,
        Command::Balls { prefix } => balls(prefix.as_ref(), o.n)?,
        Command::Verify => verify::run_suite(&verify::SuiteConfig {
            seed: o.seed,
            depth: o.depth,
            precision: o.precision,
            n: o.n,
        })?,
        Command::Padic { a, b } => padic(a, b, o.precision)?,
    };
    Ok(Report {
        command: config.command,
        config,
        results,
        pass,
        text,
    })
}

type Outcome = (Vec<Value>, bool, String);

fn rational(x: &Scalar) -> Value {
    json!(RationalJson::from(x))
}

fn prefix_value(k: CommonPrefix) -> Value {
    match k {
        CommonPrefix::Length(k) => json!(k),
        CommonPrefix::Identical => json!("identical"),
    }
}

fn prefix_text(k: CommonPrefix) -> String {
    match k {
        CommonPrefix::Length(k) => k.to_string(),
        CommonPrefix::Identical => "identical".to_string(),
    }
}

fn coherent(u: &IndexSequence, gammas: &GammaParams, depth: usize) -> Outcome {
    let t = u.coherent_truncate(gammas, depth);
    let residual = t.eigen_residual();
    let top = u.level_norm(gammas, depth);
    let top_sq = &top * &top;
    let ok = residual == top_sq;
    let result = json!({
        "sequence": u.to_string(),
        "depth": depth,
        "vector": t.vector(),
        "norm_sq": rational(&t.vector().norm_squared()),
        "eigen_residual": rational(&residual),
        "top_level_norm_sq": rational(&top_sq),
        "residual_identity": ok,
    });
    let mut text = String::new();
    let _ = writeln!(text, "U = {u}, K = {depth}");
    let _ = writeln!(text, "X^(K) = {}", t.vector());
    let _ = writeln!(
        text,
        "||X^(K)||^2 = {}",
        format_rational(&t.vector().norm_squared())
    );
    let _ = writeln!(
        text,
        "eigen residual ||L X - X||^2 = {} (approx {})",
        format_rational(&residual),
        to_decimal(&residual, DECIMAL_DIGITS)
    );
    let _ = writeln!(
        text,
        "||X_K||^2 = {} -> identity {}",
        format_rational(&top_sq),
        pass_word(ok)
    );
    (vec![result], ok, text)
}

fn rho(u: &IndexSequence, v: &IndexSequence, gammas: &GammaParams) -> Outcome {
    let k = metrics::common_prefix(u, v);
    let r = metrics::rho(u, v, gammas);
    let r_sq = &r * &r;
    let result = json!({
        "u": u.to_string(),
        "v": v.to_string(),
        "common_prefix": prefix_value(k),
        "rho": rational(&r),
        "rho_sq": rational(&r_sq),
        "rho_approx": to_decimal(&r, DECIMAL_DIGITS),
    });
    let mut text = String::new();
    let _ = writeln!(
        text,
        "U = {u}, V = {v}, common prefix k = {}",
        prefix_text(k)
    );
    let _ = writeln!(text, "rho = {}", format_rational(&r));
    let _ = writeln!(text, "rho^2 = {}", format_rational(&r_sq));
    let _ = writeln!(
        text,
        "rho approx {} (decimal, approximate)",
        to_decimal(&r, DECIMAL_DIGITS)
    );
    (vec![result], true, text)
}

fn tau(
    u: &IndexSequence,
    v: &IndexSequence,
    gammas: &GammaParams,
    depth: usize,
) -> Result<Outcome, DomainError> {
    let k = metrics::common_prefix(u, v);
    let closed = metrics::tau_squared_closed(u, v, gammas)?;
    let numeric = metrics::tau_squared_numeric(u, v, gammas, depth);
    let ok = numeric.brackets(&closed);
    let result = json!({
        "u": u.to_string(),
        "v": v.to_string(),
        "common_prefix": prefix_value(k),
        "tau_sq_closed": rational(&closed),
        "tau_sq_numeric": rational(&numeric.value),
        "tail_bound": rational(&numeric.tail_bound),
        "oracle_ok": ok,
        "tau_approx": sqrt_to_decimal(&closed, DECIMAL_DIGITS),
    });
    let mut text = String::new();
    let _ = writeln!(
        text,
        "U = {u}, V = {v}, common prefix k = {}",
        prefix_text(k)
    );
    let _ = writeln!(
        text,
        "tau^2 = {} (approx {})",
        format_rational(&closed),
        to_decimal(&closed, DECIMAL_DIGITS)
    );
    let _ = writeln!(
        text,
        "tau approx {} (decimal, approximate)",
        sqrt_to_decimal(&closed, DECIMAL_DIGITS)
    );
    let _ = writeln!(
        text,
        "truncation K = {depth}: {} with tail bound {} -> {}",
        to_decimal(&numeric.value, DECIMAL_DIGITS),
        to_decimal(&numeric.tail_bound, DECIMAL_DIGITS),
        pass_word(ok)
    );
    Ok((vec![result], ok, text))
}

fn bounds(
    u: &IndexSequence,
    v: &IndexSequence,
    gammas: &GammaParams,
    depth: usize,
) -> Result<Outcome, DomainError> {
    let report = metrics::metric_report(u, v, gammas, depth)?;
    let ok = report.passed();
    let mut text = String::new();
    let _ = writeln!(text, "U = {u}, V = {v}");
    let _ = writeln!(text, "rho^2 = {}/{}", report.rho_sq.num, report.rho_sq.den);
    let _ = writeln!(
        text,
        "tau^2 = {}/{}",
        report.tau_sq_closed.num, report.tau_sq_closed.den
    );
    let _ = writeln!(
        text,
        "c0^2 = {}/{}, c1^2 = {}/{}",
        report.c0_sq.num, report.c0_sq.den, report.c1_sq.num, report.c1_sq.den
    );
    let _ = writeln!(text, "c0^2 rho^2 <= tau^2: {}", pass_word(report.lower_ok));
    let _ = writeln!(text, "tau^2 <= c1^2 rho^2: {}", pass_word(report.upper_ok));
    if let Some(c) = &report.counterexample {
        let _ = writeln!(text, "counterexample: {c}");
    }
    Ok((vec![json!(report)], ok, text))
}

fn balls(prefix: Option<&Word>, n: usize) -> Result<Outcome, DomainError> {
    let reports = match prefix {
        Some(p) => vec![metrics::check_ball_correspondence(p, n)?],
        None => metrics::check_all_ball_correspondences(n)?,
    };
    let ok = reports.iter().all(|r| r.passed());
    let mut text = String::new();
    if let [single] = reports.as_slice() {
        let _ = writeln!(
            text,
            "prefix {:?}, n = {n}: {} sequences, {} coherent members, {} 2-adic members -> {}",
            single.prefix,
            single.checked,
            single.coherent_members,
            single.padic_members,
            pass_word(single.passed())
        );
    } else {
        let checked: usize = reports.iter().map(|r| r.checked).sum();
        let _ = writeln!(
            text,
            "{} prefixes of length <= {n}, {checked} membership checks -> {}",
            reports.len(),
            pass_word(ok)
        );
    }
    for r in reports.iter().filter(|r| !r.passed()) {
        let _ = writeln!(
            text,
            "counterexample for prefix {:?}: {}",
            r.prefix,
            r.counterexample.as_deref().unwrap_or("")
        );
    }
    Ok((reports.iter().map(|r| json!(r)).collect(), ok, text))
}

fn parse_padic(text: &str, precision: usize) -> Result<PadicInt, DomainError> {
    match text.strip_prefix("lsb:") {
        Some(digits) => Ok(digits.parse()?),
        None => {
            let value: BigUint = text
                .parse()
                .map_err(|_| DomainError(format!("malformed 2-adic operand {text:?}")))?;
            Ok(PadicInt::from_integer(&value, precision)?)
        }
    }
}

fn padic(a: &str, b: &str, precision: usize) -> Result<Outcome, DomainError> {
    let a = parse_padic(a, precision)?;
    let b = parse_padic(b, precision)?;
    let sum = a.padd(&b);
    let diff = a.psub(&b);
    let distance = a.distance_exponent(&b);
    let result = json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "sum": sum.to_string(),
        "difference": diff.to_string(),
        "valuation_a": a.valuation(),
        "valuation_b": b.valuation(),
        "distance_exponent": distance,
        "sum_integer": sum.to_integer().to_string(),
        "difference_integer": diff.to_integer().to_string(),
    });
    let mut text = String::new();
    let _ = writeln!(
        text,
        "a = {a} (= {} mod 2^{})",
        a.to_integer(),
        a.precision()
    );
    let _ = writeln!(
        text,
        "b = {b} (= {} mod 2^{})",
        b.to_integer(),
        b.precision()
    );
    let _ = writeln!(text, "a + b = {sum} (= {})", sum.to_integer());
    let _ = writeln!(text, "a - b = {diff} (= {})", diff.to_integer());
    let _ = writeln!(text, "v(a) = {}, v(b) = {}", a.valuation(), b.valuation());
    let _ = writeln!(text, "|a - b|_2 = 2^-{distance}");
    Ok((vec![result], true, text))
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
