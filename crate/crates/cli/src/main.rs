use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use expkernel::analysis::{estimate_density, estimate_lipschitz_exponent, RadialSchedule, DEFAULT_DIRECTIONS};
use expkernel::density::DensitySpec;
use expkernel::kernel::eval_e;
use expkernel::verify::{run_suite, Suite, DEFAULT_SEED};
use expkernel::{Error, Point};
use num_complex::Complex64;
use rayon::prelude::*;

/// Exponential kernel E_g(λ, w) of planar densities.
#[derive(Debug, Parser)]
#[command(name = "expkernel", version)]
struct Cli {
    /// Quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-6, allow_hyphen_values = true)]
    tol: f64,
    /// Worker threads (speed only; results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomised fixtures.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate E_g(λ, w) for a density file.
    Eval {
        density: PathBuf,
        /// λ as `x,y` (or a real number).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        lambda: Point,
        /// w as `x,y` (or a real number).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        w: Point,
    },
    /// Write E_g(·, w) on an n×n grid as CSV.
    Grid {
        density: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        w: Point,
        /// `xmin,xmax` of the grid.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-1,1")]
        x_range: (f64, f64),
        /// `ymin,ymax` of the grid.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-1,1")]
        y_range: (f64, f64),
        /// Nodes per axis.
        #[arg(long, default_value_t = 21)]
        n: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite (or `all`).
    Verify { suite: String },
    /// Estimate the density or the Lipschitz exponent of E at w.
    Estimate {
        density: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        w: Point,
        #[arg(long, value_enum)]
        mode: Mode,
        /// First radius; support radius / 8 by default.
        #[arg(long)]
        r0: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        ratio: f64,
        #[arg(long, default_value_t = 8)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_DIRECTIONS)]
        directions: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Gamma,
    Lipschitz,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    match parts.as_slice() {
        [x] => Ok((num(x)?, 0.0)),
        [x, y] => Ok((num(x)?, num(y)?)),
        _ => Err(format!("expected `x,y`, got '{s}'")),
    }
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = parse_pair(s)?;
    Ok(Complex64::new(x, y))
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    if !s.contains(',') {
        return Err(format!("expected `min,max`, got '{s}'"));
    }
    parse_pair(s)
}

/// Process exit codes.
mod exit {
    pub const CHECK_FAILED: u8 = 1;
    pub const CONFIG: u8 = 2;
    pub const TOLERANCE: u8 = 3;
    pub const ESTIMATOR: u8 = 4;
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TolNotReached { .. } | Error::InvalidTolerance(_) | Error::TailTooLarge { .. } => exit::TOLERANCE,
        Error::NonConvergent(_) | Error::PreconditionFailed(_) | Error::RegimeUnverified(_) => exit::ESTIMATOR,
        Error::PoleCase | Error::ZeroDivisor => exit::CHECK_FAILED,
        Error::InvalidDensity(_)
        | Error::Config(_)
        | Error::InvalidPoint(_)
        | Error::InvalidArgument(_)
        | Error::PlacementFailed { .. } => exit::CONFIG,
    }
}

enum Failure {
    Lib(Error),
    Io(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn load(path: &Path) -> Result<DensitySpec<f64>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    Ok(DensitySpec::from_json(&text)?)
}

fn fmt_complex(z: Point) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{} {sign} {}i", z.re, z.im.abs())
}

fn cmd_eval(cli: &Cli, density: &Path, lambda: Point, w: Point) -> Result<(), Failure> {
    let g = load(density)?;
    let k = eval_e(&g, lambda, w, cli.tol)?;
    let mut out = io::stdout().lock();
    writeln!(out, "E = {} ({})", fmt_complex(k.value), k.diagonal_case)?;
    writeln!(out, "|E| = {}", k.value.norm())?;
    writeln!(out, "error_estimate = {:e}", k.error_estimate)?;
    Ok(())
}

fn cmd_grid(
    cli: &Cli,
    density: &Path,
    w: Point,
    x_range: (f64, f64),
    y_range: (f64, f64),
    n: usize,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let g = load(density)?;
    if n < 2 {
        return Err(Error::InvalidArgument("grid needs n >= 2".into()).into());
    }
    let step = |(lo, hi): (f64, f64), k: usize| lo + (hi - lo) * k as f64 / (n - 1) as f64;
    let nodes: Vec<Point> = (0..n)
        .flat_map(|i| (0..n).map(move |j| Complex64::new(step(x_range, j), step(y_range, i))))
        .collect();
    let values = nodes
        .par_iter()
        .map(|&l| eval_e(&g, l, w, cli.tol))
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = String::with_capacity(nodes.len() * 128);
    csv.push_str("x,y,re_E,im_E,abs_E,err\n");
    for (p, k) in nodes.iter().zip(&values) {
        csv.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            p.re,
            p.im,
            k.value.re,
            k.value.im,
            k.value.norm(),
            k.error_estimate
        ));
    }
    match out {
        Some(path) => fs::write(path, csv)?,
        None => io::stdout().lock().write_all(csv.as_bytes())?,
    }
    Ok(())
}

fn cmd_verify(cli: &Cli, suite: &str) -> Result<(), Failure> {
    let suites = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse::<Suite>()?] };
    let mut pass = true;
    let mut out = io::stdout().lock();
    for s in suites {
        let report = run_suite(s, cli.tol, cli.seed)?;
        writeln!(out, "{report}")?;
        pass &= report.pass;
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_estimate(
    cli: &Cli,
    density: &Path,
    w: Point,
    mode: Mode,
    r0: Option<f64>,
    ratio: f64,
    count: usize,
    directions: usize,
) -> Result<(), Failure> {
    let g = load(density)?;
    let r0 = r0.unwrap_or(RadialSchedule::for_density(&g).r0);
    let schedule = RadialSchedule::new(r0, ratio, count)?;
    let mut out = io::stdout().lock();
    match mode {
        Mode::Gamma => {
            let est = estimate_density(&g, w, &schedule, cli.tol)?;
            for (r, ratio) in &est.ratios {
                writeln!(out, "r = {r:e}  ratio = {ratio:.6}")?;
            }
            writeln!(out, "gamma = {:.6}", est.gamma)?;
        }
        Mode::Lipschitz => {
            let est = estimate_lipschitz_exponent(&g, w, &schedule, directions, cli.tol)?;
            for (r, e) in &est.samples {
                writeln!(out, "r = {r:e}  max|E| = {e:e}")?;
            }
            writeln!(out, "slope = {:.6}", est.fit.slope)?;
            writeln!(out, "intercept = {:.6}", est.fit.intercept)?;
            writeln!(out, "rms = {:e}", est.fit.rms)?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    match &cli.command {
        Command::Eval { density, lambda, w } => cmd_eval(cli, density, *lambda, *w),
        Command::Grid { density, w, x_range, y_range, n, out } => {
            cmd_grid(cli, density, *w, *x_range, *y_range, *n, out.as_deref())
        }
        Command::Verify { suite } => cmd_verify(cli, suite),
        Command::Estimate { density, w, mode, r0, ratio, count, directions } => {
            cmd_estimate(cli, density, *w, *mode, *r0, *ratio, *count, *directions)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(exit::CHECK_FAILED),
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::CONFIG)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
