//! `exittime`: expected exit times of planar Brownian motion from the command line.

mod format;

use std::f64::consts::SQRT_2;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use exittime_core::closedform;
use exittime_core::conformal::ngram_radii;
use exittime_core::greenfn::{halfdisc_exit_time, PolarPoint};
use exittime_core::report::{estimate_all, EstimateOptions};
use exittime_core::verify::{run_suite, Check};
use exittime_core::{Domain, DomainSpec, Error, McConfig, McMethod, Method, Point2};

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "exittime", version, about = "Expected exit times of planar Brownian motion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exit time at one point by one or all methods.
    ExitTime(PointArgs),
    /// Closed-form exit-time field on an N×N grid over the domain.
    Field(FieldArgs),
    /// Vertex and inscribed radii of an n-gram.
    Radii(RadiiArgs),
    /// Run the identity suite.
    Verify(OutputArgs),
    /// Pairwise discrepancies between methods at one point.
    Compare(PointArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Series,
    Closed,
    Green,
    Mc,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum McMethodArg {
    Wos,
    Euler,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    output: OutputFormat,
}

#[derive(Args)]
struct PointArgs {
    /// Domain, e.g. `disc:r0=1`, `wedge:p=0.25`, `ngram:n=5,mu1=0.3,mu2=0.1`.
    #[arg(long)]
    domain: String,
    /// Starting point `x,y`; defaults to the domain's reference point.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    #[arg(long, value_enum, default_value = "all")]
    method: MethodArg,
    #[command(flatten)]
    out: OutputArgs,
    /// Tolerance for series, extrapolation and quadrature.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Fourier terms for series closed forms.
    #[arg(long, default_value_t = closedform::DEFAULT_TERMS)]
    terms: usize,
    #[command(flatten)]
    mc: McArgs,
}

#[derive(Args)]
struct McArgs {
    #[arg(long, value_enum, default_value = "wos")]
    mc_method: McMethodArg,
    #[arg(long, default_value_t = 100_000)]
    paths: usize,
    /// Euler time step.
    #[arg(long, default_value_t = 1e-4)]
    step: f64,
    /// Walk-on-spheres absorption distance.
    #[arg(long, default_value_t = 1e-5)]
    shell: f64,
    #[arg(long, default_value_t = 10_000_000)]
    max_steps: u64,
    #[arg(long, env = "EXITTIME_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    domain: String,
    /// Grid points per axis.
    #[arg(long, default_value_t = 21)]
    grid: usize,
    #[arg(long, default_value_t = closedform::DEFAULT_TERMS)]
    terms: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct RadiiArgs {
    #[arg(long)]
    domain: String,
    #[command(flatten)]
    out: OutputArgs,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidParameter(_) => EXIT_PARSE,
            _ => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<(String, u8), Failure>;

fn parse_domain(s: &str) -> std::result::Result<Domain, Failure> {
    s.parse::<Domain>().map_err(|e| Failure::parse(e.to_string()))
}

fn parse_point(s: &str) -> std::result::Result<Point2, Failure> {
    let bad = || Failure::parse(format!("cannot parse point `{s}`: expected `x,y`"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    let x: f64 = x.trim().parse().map_err(|_| bad())?;
    let y: f64 = y.trim().parse().map_err(|_| bad())?;
    if !(x.is_finite() && y.is_finite()) {
        return Err(bad());
    }
    Ok(Point2::new(x, y))
}

/// Point used when `--point` is omitted.
fn reference_point(spec: &DomainSpec) -> Point2 {
    match *spec {
        DomainSpec::HalfDisc { r0 } => Point2::new(0.0, (SQRT_2 - 1.0) * r0),
        DomainSpec::Wedge { .. } => Point2::new(1.0, 0.0),
        DomainSpec::CircularCutout { a, b } => Point2::new(0.5 * (b + 2.0 * a), 0.0),
        _ => Point2::ORIGIN,
    }
}

fn options(args: &PointArgs) -> EstimateOptions {
    EstimateOptions {
        tol: args.tol,
        terms: args.terms,
        mc: McConfig {
            method: match args.mc.mc_method {
                McMethodArg::Wos => McMethod::WalkOnSpheres,
                McMethodArg::Euler => McMethod::Euler,
            },
            paths: args.mc.paths,
            step: args.mc.step,
            shell: args.mc.shell,
            seed: args.mc.seed,
            max_steps: args.mc.max_steps,
        },
    }
}

fn methods(m: MethodArg) -> Vec<Method> {
    match m {
        MethodArg::Series => vec![Method::Series],
        MethodArg::Closed => vec![Method::Closed],
        MethodArg::Green => vec![Method::Green],
        MethodArg::Mc => vec![Method::Mc],
        MethodArg::All => Method::ALL.to_vec(),
    }
}

fn point_report(args: &PointArgs) -> std::result::Result<exittime_core::MethodReport, Failure> {
    let domain = parse_domain(&args.domain)?;
    let pt = match &args.point {
        Some(s) => parse_point(s)?,
        None => reference_point(domain.spec()),
    };
    let opts = options(args);
    opts.mc.validate()?;
    let report = estimate_all(&domain, pt, &methods(args.method), &opts)?;
    if !matches!(args.method, MethodArg::All) {
        if let Some(u) = report.unavailable.first() {
            return Err(Failure {
                code: EXIT_PRECONDITION,
                message: format!("{}: {}", u.method.name(), u.reason),
            });
        }
    }
    Ok(report)
}

fn exit_time(args: &PointArgs) -> Outcome {
    let report = point_report(args)?;
    let text = match args.out.output {
        OutputFormat::Csv => format::report_csv(&report),
        OutputFormat::Json => format::report_json(&report),
    };
    let code = if report.estimates.is_empty() { EXIT_PRECONDITION } else { 0 };
    Ok((text, code))
}

fn compare(args: &PointArgs) -> Outcome {
    let report = point_report(args)?;
    let text = match args.out.output {
        OutputFormat::Csv => format::discrepancies_csv(&report),
        OutputFormat::Json => format::report_json(&report),
    };
    let code = if report.discrepancies.iter().all(|d| d.consistent) { 0 } else { EXIT_VERIFY };
    Ok((text, code))
}

/// Sample window for unbounded domains.
fn window(domain: &Domain) -> (Point2, Point2) {
    if let Some(b) = domain.bounding_box() {
        return b;
    }
    match *domain.spec() {
        DomainSpec::Strip { a } => (Point2::new(-a, -a), Point2::new(a, a)),
        _ => (Point2::new(0.0, -1.0), Point2::new(2.0, 1.0)),
    }
}

fn field_value(domain: &Domain, pt: Point2, terms: usize) -> exittime_core::Result<f64> {
    match *domain.spec() {
        DomainSpec::HalfDisc { r0 } => {
            Ok(halfdisc_exit_time(PolarPoint::new(pt.norm(), pt.arg())?, r0, 1e-10)?.value)
        }
        _ => closedform::field(domain, pt, terms),
    }
}

fn field(args: &FieldArgs) -> Outcome {
    let domain = parse_domain(&args.domain)?;
    if args.grid < 2 {
        return Err(Failure::parse("grid must be at least 2"));
    }
    // fail early for domains without a closed form
    let probe = reference_point(domain.spec());
    field_value(&domain, probe, args.terms)?;
    let (lo, hi) = window(&domain);
    let n = args.grid;
    let mut rows = Vec::with_capacity(n * n);
    for j in 0..n {
        let t = j as f64 / (n - 1) as f64;
        let y = lo.y * (1.0 - t) + hi.y * t;
        for i in 0..n {
            let s = i as f64 / (n - 1) as f64;
            let mut x = lo.x * (1.0 - s) + hi.x * s;
            if x.abs() < 1e-14 * (hi.x - lo.x) {
                x = 0.0;
            }
            let pt = Point2::new(x, y);
            let u = if domain.contains(pt) {
                Some(field_value(&domain, pt, args.terms)?)
            } else {
                None
            };
            rows.push((x, y, u));
        }
    }
    let text = match args.out.output {
        OutputFormat::Csv => format::field_csv(&rows),
        OutputFormat::Json => format::field_json(&domain.spec().to_string(), &rows),
    };
    Ok((text, 0))
}

fn radii(args: &RadiiArgs) -> Outcome {
    let domain = parse_domain(&args.domain)?;
    let DomainSpec::NGram { n, mu1, mu2 } = *domain.spec() else {
        return Err(Failure {
            code: EXIT_PRECONDITION,
            message: "radii needs an n-gram domain".into(),
        });
    };
    let r = ngram_radii(n, mu1, mu2)?;
    let text = match args.out.output {
        OutputFormat::Csv => format::radii_csv(&r),
        OutputFormat::Json => format::radii_json(&domain.spec().to_string(), &r),
    };
    Ok((text, 0))
}

fn verify(args: &OutputArgs) -> Outcome {
    let checks = run_suite();
    let text = match args.output {
        OutputFormat::Csv => format::checks_csv(&checks),
        OutputFormat::Json => format::checks_json(&checks),
    };
    let code = if checks.iter().all(Check::passed) { 0 } else { EXIT_VERIFY };
    Ok((text, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::ExitTime(a) => exit_time(a),
        Command::Field(a) => field(a),
        Command::Radii(a) => radii(a),
        Command::Verify(a) => verify(a),
        Command::Compare(a) => compare(a),
    };
    match outcome {
        Ok((text, code)) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("exittime: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
