//! Front end of the `convball` binary.
//!
//! [`run`] parses arguments, dispatches and returns the process exit code, so
//! the binary and in-process callers share one path.

mod args;
mod render;
pub mod tables;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use convball_core::majorant::radius_report;
use convball_core::problems::{
    estimate_constants, gauss_legendre_rule, hammerstein_problem, logpoly_problem, planck_problem, ProblemFile,
};
use convball_core::solvers::{solve_spec, trace_order, verify_error_bounds, SolveConfig};
use convball_core::{
    BigReal, ContinuityClass, ContinuityConstants, Error, IterationMethod, OperatorSpec, Real, RootSearchConfig,
};

use args::{ClassArg, Command, ExampleArg, MethodArg, ProblemArgs, TableArg};
pub use args::{Cli, Format};
pub use render::{round_sig, SCHEMA_ESTIMATE, SCHEMA_ORDER, SCHEMA_RADIUS, SCHEMA_REPRODUCE, SCHEMA_SOLVE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_ROOT: i32 = 3;
pub const EXIT_NOT_CONVERGED: i32 = 4;
pub const EXIT_SINGULAR: i32 = 5;
pub const EXIT_MISSING_ROOT: i32 = 6;
pub const EXIT_INSUFFICIENT_DATA: i32 = 7;

/// Below this many digits an order estimate rarely has three usable errors.
pub const ORDER_MIN_DIGITS: u32 = 30;

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Check(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidConstants(_)
        | Error::InvalidConfig(_)
        | Error::Dimension { .. }
        | Error::Parse { .. }
        | Error::Arity { .. }
        | Error::ProblemFile(_)
        | Error::BallViolation { .. } => EXIT_USAGE,
        Error::NoRoot { .. } => EXIT_NO_ROOT,
        Error::MaxIterations { .. } | Error::Domain { .. } | Error::EvalDomain { .. } => EXIT_NOT_CONVERGED,
        Error::SingularJacobian { .. } => EXIT_SINGULAR,
        Error::MissingRoot => EXIT_MISSING_ROOT,
        Error::InsufficientData { .. } => EXIT_INSUFFICIENT_DATA,
    }
}

fn failure_code(f: &Failure) -> i32 {
    match f {
        Failure::Core(e) => exit_code(e),
        Failure::Usage(_) => EXIT_USAGE,
        Failure::Check(_) | Failure::Io(_) => EXIT_FAILURE,
    }
}

/// Runs one command line. Data goes to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            failure_code(&f)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Radius(a) => {
            let c = constants(a.class, a.c0, a.c, a.q)?;
            let cfg = RootSearchConfig { abs_tol: a.tol, ..RootSearchConfig::default() };
            let report = radius_report(&c, &cfg)?;
            render::radius(out, &report, a.format)?;
            Ok(())
        }
        Command::Solve(a) => {
            let (spec, name) = build_problem(&a.problem)?;
            let x0 = parse_x0(&a.x0, &spec)?;
            let cfg = SolveConfig {
                residual_tol: a.tol,
                max_iterations: a.max_iter,
                precision_digits: a.precision,
                ..SolveConfig::default()
            };
            cfg.validate()?;
            let bounds = match (a.verify_bounds, a.class, a.c0, a.c) {
                (true, Some(class), Some(c0), Some(c)) => {
                    if spec.known_root().is_none() {
                        return Err(Error::MissingRoot.into());
                    }
                    Some(radius_report(&constants(class, c0, c, a.q)?, &RootSearchConfig::default())?)
                }
                _ => None,
            };
            let job =
                SolveJob { method: method(a.method), spec: &spec, name: &name, x0: &x0, cfg, bounds, format: a.format };
            if a.precision <= convball_core::real::DOUBLE_DIGITS {
                job.run::<f64>(out)
            } else {
                job.run::<BigReal>(out)
            }
        }
        Command::Reproduce(a) => reproduce(a.table, a.rtol, a.format, out, err),
        Command::Estimate(a) => {
            let (spec, name) = build_problem(&a.problem)?;
            let e = estimate_constants(&spec, a.q, a.radius, a.samples, a.seed)?;
            render::estimate(out, &name, &e, a.format)?;
            Ok(())
        }
        Command::Order(a) => {
            let (spec, name) = build_problem(&a.problem)?;
            if spec.known_root().is_none() {
                return Err(Error::MissingRoot.into());
            }
            let x0 = parse_x0(&a.x0, &spec)?;
            if a.precision < ORDER_MIN_DIGITS {
                writeln!(
                    err,
                    "warning: {} digits is below the recommended minimum of {ORDER_MIN_DIGITS}",
                    a.precision
                )?;
            }
            let job = OrderJob {
                method: method(a.method),
                spec: &spec,
                name: &name,
                x0: &x0,
                precision: a.precision,
                format: a.format,
            };
            let result = if a.precision <= convball_core::real::DOUBLE_DIGITS {
                job.run::<f64>(out)
            } else {
                job.run::<BigReal>(out)
            };
            if let Err(Failure::Core(Error::InsufficientData { usable })) = &result {
                writeln!(
                    err,
                    "only {usable} errors lie above the rounding floor of {} digits; high-order methods \
                     reach it within two steps, rerun with --precision 64",
                    a.precision
                )?;
            }
            result
        }
    }
}

fn method(m: MethodArg) -> IterationMethod {
    match m {
        MethodArg::Newton => IterationMethod::Newton,
        MethodArg::Fifth => IterationMethod::FifthOrder,
        MethodArg::Seventh => IterationMethod::SeventhOrder,
    }
}

fn constants(class: ClassArg, c0: f64, c: f64, q: Option<f64>) -> Result<ContinuityConstants, Failure> {
    let class = match class {
        ClassArg::Lipschitz => ContinuityClass::Lipschitz,
        ClassArg::Hoelder => ContinuityClass::Hoelder,
    };
    Ok(ContinuityConstants::new(class, c0, c, q.unwrap_or(1.0))?)
}

fn build_problem(p: &ProblemArgs) -> Result<(OperatorSpec, String), Failure> {
    match (p.example, &p.problem) {
        (Some(ExampleArg::Logpoly), _) => Ok((logpoly_problem(), "logpoly".into())),
        (Some(ExampleArg::Planck), _) => Ok((planck_problem(), "planck".into())),
        (Some(ExampleArg::Hammerstein), _) => {
            if p.nodes < 2 {
                return Err(Failure::Usage(format!("--nodes must be at least 2, got {}", p.nodes)));
            }
            let spec = hammerstein_problem(p.nodes, gauss_legendre_rule(p.nodes))?;
            Ok((spec, format!("hammerstein (n = {})", p.nodes)))
        }
        (None, Some(path)) => Ok((ProblemFile::load(path)?.into_spec()?, path.display().to_string())),
        (None, None) => Err(Failure::Usage("either --example or --problem is required".into())),
    }
}

/// Comma list; one value is broadcast to every coordinate.
fn parse_x0(text: &str, spec: &OperatorSpec) -> Result<Vec<f64>, Failure> {
    let n = convball_core::Operator::<f64>::dimension(spec);
    let values = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("invalid --x0 entry '{}'", s.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    let x0 = match values.len() {
        1 => vec![values[0]; n],
        k if k == n => values,
        k => return Err(Error::Dimension { expected: n, got: k }.into()),
    };
    if !spec.domain().contains(&x0) {
        return Err(Failure::Usage("--x0 lies outside the problem's domain".into()));
    }
    Ok(x0)
}

struct SolveJob<'a> {
    method: IterationMethod,
    spec: &'a OperatorSpec,
    name: &'a str,
    x0: &'a [f64],
    cfg: SolveConfig,
    bounds: Option<convball_core::RadiusReport>,
    format: Format,
}

impl SolveJob<'_> {
    fn run<R: Real>(&self, out: &mut dyn Write) -> Result<(), Failure> {
        let sol = solve_spec::<R>(self.method, self.spec, self.x0, &self.cfg)?;
        let checks = match (&self.bounds, &sol.root) {
            (Some(report), Some(root)) => Some(verify_error_bounds(&sol.trace, root, report, self.cfg.norm)?),
            _ => None,
        };
        render::trace(out, self.name, self.cfg.precision_digits, &sol, checks.as_deref(), self.format)?;
        sol.trace.ensure_converged()?;
        if let Some(checks) = checks {
            let bad = checks.iter().filter(|c| !c.holds).count();
            if bad > 0 {
                return Err(Failure::Check(format!("{bad} of {} error bounds violated", checks.len())));
            }
        }
        Ok(())
    }
}

struct OrderJob<'a> {
    method: IterationMethod,
    spec: &'a OperatorSpec,
    name: &'a str,
    x0: &'a [f64],
    precision: u32,
    format: Format,
}

impl OrderJob<'_> {
    fn run<R: Real>(&self, out: &mut dyn Write) -> Result<(), Failure> {
        let cfg = SolveConfig {
            // Iterate down to the rounding floor of the working precision.
            residual_tol: 10f64.powi(-(self.precision as i32 - 4)),
            max_iterations: 30,
            precision_digits: self.precision,
            ..SolveConfig::default()
        };
        let sol = solve_spec::<R>(self.method, self.spec, self.x0, &cfg)?;
        let est = trace_order(&sol.trace)?;
        let errors = sol.trace.errors().unwrap_or_default();
        render::order(out, self.name, self.method, self.precision, &errors, &est, self.format)?;
        Ok(())
    }
}

fn reproduce(
    which: TableArg,
    rtol: f64,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    if !(rtol > 0.0 && rtol.is_finite()) {
        return Err(Failure::Usage(format!("--rtol must be positive, got {rtol}")));
    }
    let specs: Vec<tables::TableSpec> = tables::all()
        .into_iter()
        .filter(|t| match which {
            TableArg::One => t.id == 1,
            TableArg::Two => t.id == 2,
            TableArg::Three => t.id == 3,
            TableArg::All => true,
        })
        .collect();

    let cfg = RootSearchConfig::default();
    let reports: Vec<Result<_, Error>> = std::thread::scope(|s| {
        let handles: Vec<_> = specs
            .iter()
            .map(|t| s.spawn(move || t.constants().and_then(|c| radius_report(&c, &cfg).map(|r| (c, r)))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("radius computation panicked")).collect()
    });

    let mut results = Vec::new();
    for (spec, report) in specs.into_iter().zip(reports) {
        let (c, report) = report?;
        let computed = [report.rho[0], report.rho[1], report.rho[2], report.rho[3], report.rho_min];
        let rows: Vec<render::Row> = (0..5)
            .map(|i| {
                let expected = spec.expected[i];
                let rel_dev = (computed[i] - expected).abs() / expected.abs();
                render::Row {
                    table: spec.id,
                    index: i,
                    computed: computed[i],
                    expected,
                    rel_dev,
                    pass: rel_dev <= rtol,
                }
            })
            .collect();
        results.push((spec, c, rows));
    }
    render::reproduce(out, &results, rtol, format)?;

    let failed: Vec<&render::Row> = results.iter().flat_map(|r| &r.2).filter(|r| !r.pass).collect();
    for row in &failed {
        writeln!(
            err,
            "FAIL {}: computed {} vs published {} (relative deviation {:.3e} > {rtol})",
            row.label(),
            round_sig(row.computed, 9),
            row.expected,
            row.rel_dev
        )?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        let total: usize = results.iter().map(|r| r.2.len()).sum();
        Err(Failure::Check(format!("{} of {total} rows exceed rtol {rtol}", failed.len())))
    }
}
