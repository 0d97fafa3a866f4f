//! `interlace`: command-line driver for interlace-core.
//!
//! Exit codes: 0 success, 1 usage error, 2 unreadable or malformed input,
//! 3 the two evaluators disagreed under `--method both`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use interlace_core::census::{
    distinguish_report, hamming_report, identity_suite, tree_report, unimodality_report,
    PolyChoice, Report,
};
use interlace_core::eval::{
    evaluate, independence_polynomial, nullity_polynomial, rank_polynomial, EvalMethod,
};
use interlace_core::families::FamilySpec;
use interlace_core::graph::{enumerate_graphs, parse_edge_list, parse_graph6};
use interlace_core::{BiPoly, Error, Graph};

/// Largest order the `auto` method hands to the subset expansion.
const AUTO_EXPANSION_MAX: usize = 16;

#[derive(Parser, Debug)]
#[command(
    name = "interlace",
    version,
    about = "Exact two-variable interlace polynomials"
)]
struct Cli {
    /// Worker threads; falls back to INTERLACE_THREADS, then all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, value_enum, default_value_t = OutputMode::Text, global = true)]
    output: OutputMode,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print q(G; x, y).
    Eval {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Print the one-variable specialization chosen by --poly.
    Specialize {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        poly: Specialization,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Evaluate q(G; x, y) at exact rationals given as N or N/D.
    Value {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Print the polynomial of a named family member.
    Family {
        #[arg(long)]
        name: String,
        #[arg(long = "param", num_args = 1.., required = true)]
        params: Vec<usize>,
    },
    /// Run a report over every graph of one order.
    Census {
        /// Catalog order; the largest dimension for the hamming report.
        #[arg(long)]
        order: usize,
        #[arg(long)]
        loops: bool,
        #[arg(long, value_enum)]
        report: ReportChoice,
        #[arg(long, value_enum, default_value_t = PolyArg::Full)]
        poly: PolyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random looped graphs drawn by the identities report.
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
    /// Distinguishing counts of q_N and q_R over the trees of one order.
    Trees {
        #[arg(long)]
        order: usize,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// Overrides the format implied by the file extension.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    G6,
    El,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Auto,
    Expansion,
    Reduction,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Specialization {
    Nullity,
    Rank,
    Indep,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportChoice {
    Distinguish,
    Unimodal,
    Identities,
    Hamming,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolyArg {
    Full,
    Nullity,
    Rank,
}

impl From<PolyArg> for PolyChoice {
    fn from(p: PolyArg) -> Self {
        match p {
            PolyArg::Full => PolyChoice::Full,
            PolyArg::Nullity => PolyChoice::Nullity,
            PolyArg::Rank => PolyChoice::Rank,
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
    Mismatch(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Mismatch(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::DuplicateEdge(..) | Error::VertexOutOfRange { .. } => {
                CliError::Input(e.to_string())
            }
            Error::EvaluatorMismatch { .. } => CliError::Mismatch(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            // clap's rendering already starts with "error:"
            eprint!("{}", e.render());
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn configure_threads(flag: Option<usize>) -> Result<(), CliError> {
    let threads = match flag {
        Some(n) => Some(n),
        None => match std::env::var("INTERLACE_THREADS") {
            Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| {
                CliError::Usage(format!("INTERLACE_THREADS must be a count, got {v:?}"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Usage("thread count must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<String, CliError> {
    configure_threads(cli.threads)?;
    let json = cli.output == OutputMode::Json;
    match cli.command {
        Command::Eval { input, method } => {
            let q = polynomial(&read_graph(&input)?, method)?;
            Ok(if json {
                to_json(&q.to_json())
            } else {
                line(q.render_text())
            })
        }
        Command::Specialize {
            input,
            poly,
            method,
        } => {
            let q = polynomial(&read_graph(&input)?, method)?;
            let p = match poly {
                Specialization::Nullity => nullity_polynomial(&q),
                Specialization::Rank => rank_polynomial(&q),
                Specialization::Indep => independence_polynomial(&q),
            };
            Ok(if json {
                to_json(&p.to_json())
            } else {
                line(p.render_text())
            })
        }
        Command::Value {
            input,
            x,
            y,
            method,
        } => {
            let x0 = parse_rational("x", &x)?;
            let y0 = parse_rational("y", &y)?;
            let q = polynomial(&read_graph(&input)?, method)?;
            let value = q.evaluate(&x0, &y0);
            Ok(if json {
                to_json(&ValueJson {
                    x: x0.to_string(),
                    y: y0.to_string(),
                    value: value.to_string(),
                })
            } else {
                line(value.to_string())
            })
        }
        Command::Family { name, params } => {
            let spec = FamilySpec::parse(&name, &params)?;
            let q = spec.polynomial()?;
            Ok(if json {
                to_json(&q.to_json())
            } else {
                line(q.render_text())
            })
        }
        Command::Census {
            order,
            loops,
            report,
            poly,
            seed,
            trials,
        } => {
            let report = census(order, loops, report, poly, seed, trials)?;
            Ok(render_report(&report, json))
        }
        Command::Trees { order } => Ok(render_report(&tree_report(order)?, json)),
    }
}

fn census(
    order: usize,
    loops: bool,
    report: ReportChoice,
    poly: PolyArg,
    seed: u64,
    trials: usize,
) -> Result<Report, CliError> {
    Ok(match report {
        ReportChoice::Distinguish => {
            distinguish_report(&enumerate_graphs(order, loops)?, poly.into())?
        }
        ReportChoice::Unimodal => {
            if loops {
                return Err(CliError::Usage(
                    "the unimodal report needs loopless graphs".into(),
                ));
            }
            unimodality_report(&enumerate_graphs(order, false)?)?
        }
        ReportChoice::Identities => identity_suite(order, trials, seed)?,
        ReportChoice::Hamming => hamming_report(order)?,
    })
}

fn render_report(report: &Report, json: bool) -> String {
    if json {
        line(report.to_json())
    } else {
        report.render_text()
    }
}

fn polynomial(g: &Graph, method: Method) -> Result<BiPoly, CliError> {
    let method = match method {
        Method::Auto if g.order() <= AUTO_EXPANSION_MAX => EvalMethod::Expansion,
        Method::Auto => EvalMethod::Reduction,
        Method::Expansion => EvalMethod::Expansion,
        Method::Reduction => EvalMethod::Reduction,
        Method::Both => EvalMethod::BothCheck,
    };
    Ok(evaluate(g, method)?)
}

fn read_graph(input: &InputArgs) -> Result<Graph, CliError> {
    let format = match input.format {
        Some(f) => f,
        None => infer_format(&input.input)?,
    };
    let text = std::fs::read_to_string(&input.input)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", input.input.display())))?;
    Ok(match format {
        Format::El => parse_edge_list(&text)?,
        Format::G6 => {
            let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
            let first = lines
                .next()
                .ok_or_else(|| CliError::Input("graph6 input is empty".into()))?;
            if lines.next().is_some() {
                return Err(CliError::Input(
                    "graph6 input holds more than one graph".into(),
                ));
            }
            parse_graph6(first)?
        }
    })
}

fn infer_format(path: &Path) -> Result<Format, CliError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6") => Ok(Format::G6),
        Some("el") => Ok(Format::El),
        _ => Err(CliError::Usage(format!(
            "cannot infer the format of {}; pass --format g6 or --format el",
            path.display()
        ))),
    }
}

fn parse_rational(name: &str, s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("--{name} expects N or N/D, got {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = num.trim().parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.trim().parse().map_err(|_| bad())?;
    if den == num_bigint::BigInt::from(0) {
        return Err(CliError::Usage(format!("--{name} has a zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

#[derive(Serialize)]
struct ValueJson {
    x: String,
    y: String,
    value: String,
}

fn to_json<T: Serialize>(value: &T) -> String {
    line(serde_json::to_string_pretty(value).expect("output serializes"))
}

fn line(mut s: String) -> String {
    s.push('\n');
    s
}
