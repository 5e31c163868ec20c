//! Command-line front end: series arithmetic, matrix construction, the
//! beta-shift transforms, and batch identity verification. Documents are
//! JSON (SeriesDocument in and out, sparse triples for tables, one report
//! object per line for verify). Exit codes: 0 success/all verified,
//! 1 usage or validation error, 2 identity failure.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rdcas::coeff::{parse_coeff_expr, SymPoly, Variable};
use rdcas::dirichletseries::Dps;
use rdcas::document::{reports_exit_code, SeriesDocument, TableDocument};
use rdcas::powerseries::{
    compose_by_columns, riordan_apply, riordan_build, riordan_inv, riordan_mul,
    theorem1_transform, Fps,
};
use rdcas::rdgroup::{circ, rd_apply, rd_build, rd_inv, rd_mul, theorem3_transform};
use rdcas::suites::{run_suite, Suite};
use rdcas::Error;
use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rdcas", version, about = "Exact Riordan-group and Dirichlet-series computer algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Series arithmetic on JSON documents
    Series {
        #[command(subcommand)]
        op: SeriesOp,
    },
    /// Build and combine triangular matrices
    Matrix {
        #[command(subcommand)]
        group: MatrixGroup,
    },
    /// The beta-shift transform of a unipotent series
    Transform {
        /// Which series space the input lives in
        #[arg(value_parser = ["fps", "dps"])]
        space: String,
        /// Input series document (path or - for stdin)
        input: String,
        /// Exponent shift parameter, a coefficient expression
        #[arg(long, default_value = "beta")]
        beta: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Run a verification suite and stream one JSON report per line
    Verify {
        /// Suite name: theorem1, theorem2, theorem3, lagrange-fps,
        /// lagrange-dps, abel, un, binomf, convpoly
        suite: String,
        /// Largest index to check (suite-specific default)
        #[arg(long)]
        n_max: Option<usize>,
        /// Seed for the randomized inputs
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the report stream to a file instead of stdout
        #[arg(long)]
        output: Option<String>,
    },
}

#[derive(Subcommand)]
enum SeriesOp {
    /// Multiply two series of the same kind and order
    Mul {
        left: String,
        right: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Multiplicative inverse
    Inv {
        input: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Logarithm of a unipotent series
    Log {
        input: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Symbolic power: exponent may mention phi, beta, ln p
    Pow {
        input: String,
        /// Exponent expression, e.g. "phi" or "-2*beta"
        #[arg(long)]
        exponent: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Derivative: d/dx for fps, negated-log weighting for dps
    Derive {
        input: String,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Subcommand)]
enum MatrixGroup {
    /// Matrices (b, a) with column m generated by b x^m a^m
    Riordan {
        #[command(subcommand)]
        op: RiordanOp,
    },
    /// Matrices <b, a> with column m generated by b m^-s a^(ln m)
    Rd {
        #[command(subcommand)]
        op: RdOp,
    },
}

#[derive(Subcommand)]
enum RiordanOp {
    /// Realize the table of (b, a)
    Build {
        b: String,
        a: String,
        #[arg(long)]
        output: Option<String>,
    },
    /// Table of the product (b1, a1)(b2, a2)
    Mul {
        b1: String,
        a1: String,
        b2: String,
        a2: String,
        #[arg(long)]
        output: Option<String>,
    },
    /// Table of the group inverse
    Inv {
        b: String,
        a: String,
        #[arg(long)]
        output: Option<String>,
    },
    /// Apply (b, a) to a series
    Apply {
        b: String,
        a: String,
        f: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Composition f(x*a(x))
    Compose {
        f: String,
        a: String,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Subcommand)]
enum RdOp {
    /// Realize the table of <b, a>
    Build {
        b: String,
        a: String,
        #[arg(long)]
        output: Option<String>,
    },
    /// Table of the product <b1, a1><b2, a2>
    Mul {
        b1: String,
        a1: String,
        b2: String,
        a2: String,
        #[arg(long)]
        output: Option<String>,
    },
    /// Table of the group inverse
    Inv {
        b: String,
        a: String,
        #[arg(long)]
        output: Option<String>,
    },
    /// Apply <b, a> to a series
    Apply {
        b: String,
        a: String,
        f: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// The circle operation (b o a)_n = sum b_d [(n/d)^-s] a^(ln d)
    Circ {
        b: String,
        a: String,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Args)]
struct OutputOpts {
    /// Write the result document to a file instead of stdout
    #[arg(long)]
    output: Option<String>,
    /// Attach double-precision previews, e.g. --eval phi=1,beta=0.5;
    /// every ln p evaluates to the natural log of p
    #[arg(long)]
    eval: Option<String>,
}

enum Failure {
    Usage(String),
    Identity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::NotDivisible => Failure::Identity(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Failure {
        Failure::Usage(message)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {}", message);
            ExitCode::from(1)
        }
        Err(Failure::Identity(message)) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("stdin: {}", e)))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {}", path, e)))
    }
}

fn read_series(path: &str) -> Result<SeriesDocument, Failure> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {}", path, e)))
}

fn read_fps(path: &str) -> Result<Fps, Failure> {
    read_series(path)?.to_fps().map_err(Failure::Usage)
}

fn read_dps(path: &str) -> Result<Dps, Failure> {
    read_series(path)?.to_dps().map_err(Failure::Usage)
}

fn write_output(text: &str, output: &Option<String>) -> Result<(), Failure> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {}", path, e)))
        }
        None => {
            println!("{}", text);
            Ok(())
        }
    }
}

fn parse_eval_bindings(spec: &str) -> Result<BTreeMap<Variable, f64>, Failure> {
    let mut bindings = BTreeMap::new();
    for part in spec.split(',') {
        let part = part.trim();
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--eval expects name=value, found {:?}", part)))?;
        let var = match name.trim() {
            "phi" => Variable::Phi,
            "beta" => Variable::Beta,
            other => {
                return Err(Failure::Usage(format!(
                    "--eval binds phi or beta, found {:?}",
                    other
                )))
            }
        };
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("--eval value {:?} is not a number", value)))?;
        bindings.insert(var, value);
    }
    Ok(bindings)
}

fn attach_eval(
    doc: &mut SeriesDocument,
    coeffs: &[(usize, &SymPoly)],
    eval: &Option<String>,
) -> Result<(), Failure> {
    let Some(spec) = eval else { return Ok(()) };
    let bindings = parse_eval_bindings(spec)?;
    let mut out = BTreeMap::new();
    for &(idx, poly) in coeffs {
        if poly.is_zero() {
            continue;
        }
        let value = poly.eval_f64(&bindings).map_err(|var| {
            Failure::Usage(format!("--eval is missing a binding for {}", var.name()))
        })?;
        out.insert(idx.to_string(), value);
    }
    doc.eval = Some(out);
    Ok(())
}

fn emit_fps(a: &Fps, out: &OutputOpts) -> Result<u8, Failure> {
    let mut doc = SeriesDocument::from_fps(a);
    let coeffs: Vec<(usize, &SymPoly)> = a.coeffs().iter().enumerate().collect();
    attach_eval(&mut doc, &coeffs, &out.eval)?;
    let text = serde_json::to_string_pretty(&doc).expect("document serializes");
    write_output(&text, &out.output)?;
    Ok(0)
}

fn emit_dps(a: &Dps, out: &OutputOpts) -> Result<u8, Failure> {
    let mut doc = SeriesDocument::from_dps(a);
    let coeffs: Vec<(usize, &SymPoly)> = (1..=a.order()).map(|n| (n, a.coeff(n))).collect();
    attach_eval(&mut doc, &coeffs, &out.eval)?;
    let text = serde_json::to_string_pretty(&doc).expect("document serializes");
    write_output(&text, &out.output)?;
    Ok(0)
}

fn emit_table(doc: &TableDocument, output: &Option<String>) -> Result<u8, Failure> {
    let text = serde_json::to_string_pretty(doc).expect("document serializes");
    write_output(&text, output)?;
    Ok(0)
}

/// Series commands accept fps and dps documents alike; the document kind
/// picks the arithmetic.
fn dispatch_series(op: SeriesOp) -> Result<u8, Failure> {
    match op {
        SeriesOp::Mul { left, right, out } => {
            let l = read_series(&left)?;
            match l.kind.as_str() {
                "fps" => {
                    let a = l.to_fps().map_err(Failure::Usage)?;
                    let b = read_fps(&right)?;
                    emit_fps(&a.mul(&b)?, &out)
                }
                _ => {
                    let a = l.to_dps().map_err(Failure::Usage)?;
                    let b = read_dps(&right)?;
                    emit_dps(&a.mul(&b)?, &out)
                }
            }
        }
        SeriesOp::Inv { input, out } => {
            let doc = read_series(&input)?;
            match doc.kind.as_str() {
                "fps" => emit_fps(&doc.to_fps().map_err(Failure::Usage)?.inv()?, &out),
                _ => emit_dps(&doc.to_dps().map_err(Failure::Usage)?.inv()?, &out),
            }
        }
        SeriesOp::Log { input, out } => {
            let doc = read_series(&input)?;
            match doc.kind.as_str() {
                "fps" => emit_fps(&doc.to_fps().map_err(Failure::Usage)?.log()?, &out),
                _ => emit_dps(&doc.to_dps().map_err(Failure::Usage)?.log()?, &out),
            }
        }
        SeriesOp::Pow { input, exponent, out } => {
            let e = parse_coeff_expr(&exponent)?;
            let doc = read_series(&input)?;
            match doc.kind.as_str() {
                "fps" => emit_fps(&doc.to_fps().map_err(Failure::Usage)?.pow_sym(&e)?, &out),
                _ => emit_dps(&doc.to_dps().map_err(Failure::Usage)?.pow_sym(&e)?, &out),
            }
        }
        SeriesOp::Derive { input, out } => {
            let doc = read_series(&input)?;
            match doc.kind.as_str() {
                "fps" => emit_fps(&doc.to_fps().map_err(Failure::Usage)?.derive(), &out),
                _ => emit_dps(&doc.to_dps().map_err(Failure::Usage)?.derive(), &out),
            }
        }
    }
}

fn dispatch_riordan(op: RiordanOp) -> Result<u8, Failure> {
    match op {
        RiordanOp::Build { b, a, output } => {
            let m = riordan_build(&read_fps(&b)?, &read_fps(&a)?)?;
            emit_table(&TableDocument::from_riordan(&m), &output)
        }
        RiordanOp::Mul { b1, a1, b2, a2, output } => {
            let m1 = riordan_build(&read_fps(&b1)?, &read_fps(&a1)?)?;
            let m2 = riordan_build(&read_fps(&b2)?, &read_fps(&a2)?)?;
            emit_table(&TableDocument::from_riordan(&riordan_mul(&m1, &m2)?), &output)
        }
        RiordanOp::Inv { b, a, output } => {
            let m = riordan_build(&read_fps(&b)?, &read_fps(&a)?)?;
            emit_table(&TableDocument::from_riordan(&riordan_inv(&m)?), &output)
        }
        RiordanOp::Apply { b, a, f, out } => {
            let m = riordan_build(&read_fps(&b)?, &read_fps(&a)?)?;
            emit_fps(&riordan_apply(&m, &read_fps(&f)?)?, &out)
        }
        RiordanOp::Compose { f, a, out } => {
            emit_fps(&compose_by_columns(&read_fps(&f)?, &read_fps(&a)?)?, &out)
        }
    }
}

fn dispatch_rd(op: RdOp) -> Result<u8, Failure> {
    match op {
        RdOp::Build { b, a, output } => {
            let m = rd_build(&read_dps(&b)?, &read_dps(&a)?)?;
            emit_table(&TableDocument::from_rd(&m), &output)
        }
        RdOp::Mul { b1, a1, b2, a2, output } => {
            let m1 = rd_build(&read_dps(&b1)?, &read_dps(&a1)?)?;
            let m2 = rd_build(&read_dps(&b2)?, &read_dps(&a2)?)?;
            emit_table(&TableDocument::from_rd(&rd_mul(&m1, &m2)?), &output)
        }
        RdOp::Inv { b, a, output } => {
            let m = rd_build(&read_dps(&b)?, &read_dps(&a)?)?;
            emit_table(&TableDocument::from_rd(&rd_inv(&m)?), &output)
        }
        RdOp::Apply { b, a, f, out } => {
            let m = rd_build(&read_dps(&b)?, &read_dps(&a)?)?;
            emit_dps(&rd_apply(&m, &read_dps(&f)?)?, &out)
        }
        RdOp::Circ { b, a, out } => {
            emit_dps(&circ(&read_dps(&b)?, &read_dps(&a)?)?, &out)
        }
    }
}

fn dispatch_transform(space: &str, input: &str, beta: &str, out: &OutputOpts) -> Result<u8, Failure> {
    let beta = parse_coeff_expr(beta)?;
    if space == "fps" {
        let a = read_fps(input)?;
        let coeffs = theorem1_transform(&a, &beta)?;
        emit_fps(&Fps::from_coeffs(coeffs), out)
    } else {
        let a = read_dps(input)?;
        let coeffs = theorem3_transform(&a, &beta)?;
        let order = a.order();
        emit_dps(&Dps::from_fn(order, |n| coeffs[n].clone()), out)
    }
}

fn dispatch_verify(
    suite: &str,
    n_max: Option<usize>,
    seed: u64,
    output: &Option<String>,
) -> Result<u8, Failure> {
    let suite = Suite::parse(suite)
        .ok_or_else(|| Failure::Usage(format!("unknown suite {:?}", suite)))?;
    let n_max = n_max.unwrap_or_else(|| suite.default_n_max());
    let reports = run_suite(suite, n_max, seed)?;
    let mut lines = String::new();
    for r in &reports {
        lines.push_str(&serde_json::to_string(r).expect("report serializes"));
        lines.push('\n');
    }
    match output {
        Some(path) => {
            fs::write(path, &lines).map_err(|e| Failure::Usage(format!("{}: {}", path, e)))?
        }
        None => print!("{}", lines),
    }
    Ok(reports_exit_code(&reports) as u8)
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Series { op } => dispatch_series(op),
        Command::Matrix { group } => match group {
            MatrixGroup::Riordan { op } => dispatch_riordan(op),
            MatrixGroup::Rd { op } => dispatch_rd(op),
        },
        Command::Transform { space, input, beta, out } => {
            dispatch_transform(&space, &input, &beta, &out)
        }
        Command::Verify { suite, n_max, seed, output } => {
            dispatch_verify(&suite, n_max, seed, &output)
        }
    }
}
