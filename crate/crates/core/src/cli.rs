//! Command-line front end.
//!
//! Every command selects a function with `--measure PATH` or
//! `--gallery koebe|identity|g0|hansen` and an angle with `--lambda`, then
//! writes CSV or JSON to stdout (or `--out PATH`). Human-readable summaries go
//! to stderr so that stdout stays machine-readable.
//!
//! Exit codes: 0 success, 1 verification failed, 2 invalid input,
//! 3 numerical domain error, 4 accuracy not met.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::analysis::{
    beta_trace, decade_schedule, default_gap_threshold, estimate_max_jump, growth_exponent,
    spirallikeness_margin, PolarGrid,
};
use crate::correspondence::spirallike_of;
use crate::error::{Error, Result};
use crate::gallery::{self, c0_constant, default_c, ClosedFormFunction, HansenParams};
use crate::geometry::{arg_lambda_of_log, principal_angle, SpiralAngle};
use crate::measure::BoundaryMeasure;
use crate::representation::SpiralFunction;

#[derive(Debug, Parser)]
#[command(name = "spirallike", version, about = "Spirallike functions from boundary measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Worker threads for grid evaluations.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Gallery {
    Koebe,
    Identity,
    G0,
    Hansen,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate f, log(f/z), zf'/f and arg_λ(f/z) at a point.
    Eval {
        #[command(flatten)]
        function: FunctionArgs,
        /// Point of the open unit disk, e.g. `0.3+0.4i`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Check Re(e^{-iλ} zf'/f) > 0 on a polar grid.
    Verify {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, default_value_t = 64)]
        radial: usize,
        #[arg(long, default_value_t = 256)]
        angular: usize,
        #[arg(long, default_value_t = 0.999)]
        r_max: f64,
    },
    /// Sample the boundary function β_λ(t).
    Beta {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, default_value_t = 512)]
        t_grid: usize,
        /// Radii 1 - 10^{-k} for k in K_MIN:K_MAX.
        #[arg(long, default_value = "4:6")]
        r_k: String,
    },
    /// Maximum modulus growth along r = 1 - 10^{-k}.
    Growth {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, default_value = "1:8")]
        r_k: String,
        /// Override the exponent used in the ratio column.
        #[arg(long)]
        q0: Option<f64>,
    },
    /// Maximize Q(θ) and report C₀.
    Qtheta {
        #[arg(long, default_value_t = 100_000)]
        grid: usize,
        /// Number of (θ, Q) rows written.
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
}

/// How the function under study is chosen.
#[derive(Debug, Clone, Args)]
pub struct FunctionArgs {
    /// Measure-spec JSON file.
    #[arg(long, conflicts_with = "gallery")]
    pub measure: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub gallery: Option<Gallery>,
    /// λ in (-π/2, π/2).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub lambda: f64,
    /// Hansen α.
    #[arg(long, conflicts_with = "a_jump")]
    pub alpha: Option<f64>,
    /// Hansen exponent β.
    #[arg(long, default_value_t = 1.0)]
    pub beta_exp: f64,
    /// Hansen c (default min(0.3, 0.99/log C₀)).
    #[arg(long)]
    pub c: Option<f64>,
    /// Target jump A; sets α = A/π.
    #[arg(long = "A")]
    pub a_jump: Option<f64>,
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: RunCommand,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
}

#[derive(Debug, Clone)]
pub enum RunCommand {
    Eval { function: FunctionSpec, z: Complex64 },
    Verify { function: FunctionSpec, grid: PolarGrid },
    Beta { function: FunctionSpec, t_grid: usize, schedule: Vec<f64> },
    Growth { function: FunctionSpec, schedule: Vec<f64>, q0: Option<f64> },
    Qtheta { grid: usize, samples: usize },
}

/// A resolved function selection.
#[derive(Debug, Clone)]
pub struct FunctionSpec {
    pub source: FunctionSource,
    pub angle: SpiralAngle,
}

#[derive(Debug, Clone)]
pub enum FunctionSource {
    Measure(BoundaryMeasure),
    Gallery(Gallery, Option<HansenParams>),
}

impl FunctionSpec {
    pub fn build(&self) -> Result<SpiralFunction> {
        match &self.source {
            FunctionSource::Measure(m) => Ok(SpiralFunction::from_measure(m.clone(), self.angle)),
            FunctionSource::Gallery(kind, params) => {
                let g = match kind {
                    Gallery::Identity => SpiralFunction::identity(),
                    Gallery::Koebe => SpiralFunction::koebe(),
                    Gallery::G0 => SpiralFunction::from_closed_form(ClosedFormFunction::G0),
                    Gallery::Hansen => SpiralFunction::from_closed_form(gallery::hansen_build(
                        params.expect("hansen parameters are resolved"),
                    )),
                };
                spirallike_of(&g, self.angle)
            }
        }
    }
}

fn parse_decades(spec: &str) -> Result<Vec<f64>> {
    let (lo, hi) = spec
        .split_once(':')
        .ok_or_else(|| Error::parameter(format!("r-k range `{spec}` must look like K_MIN:K_MAX")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| Error::parameter(format!("r-k bound `{s}` is not a positive integer")))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if !(lo < hi && hi <= 12) {
        return Err(Error::parameter(format!("r-k range {lo}:{hi} must satisfy k_min < k_max ≤ 12")));
    }
    decade_schedule(lo, hi)
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    Complex64::from_str(&cleaned)
        .ok()
        .filter(|z| z.is_finite())
        .ok_or_else(|| Error::parameter(format!("cannot parse complex number `{text}`")))
}

fn check_grid(name: &str, n: usize) -> Result<()> {
    if n < 16 {
        Err(Error::parameter(format!("{name} = {n} must be at least 16")))
    } else {
        Ok(())
    }
}

impl FunctionArgs {
    fn resolve(&self) -> Result<FunctionSpec> {
        let angle = SpiralAngle::new(self.lambda)?;
        let source = match (&self.measure, self.gallery) {
            (Some(path), None) => FunctionSource::Measure(BoundaryMeasure::load(path)?),
            (None, Some(Gallery::Hansen)) => {
                let alpha = match (self.alpha, self.a_jump) {
                    (Some(a), None) => a,
                    (None, Some(a)) => a / std::f64::consts::PI,
                    (None, None) => 1.0,
                    (Some(_), Some(_)) => return Err(Error::parameter("give either --alpha or --A")),
                };
                let c = self.c.unwrap_or_else(default_c);
                FunctionSource::Gallery(Gallery::Hansen, Some(HansenParams::new(alpha, self.beta_exp, c)?))
            }
            (None, Some(kind)) => FunctionSource::Gallery(kind, None),
            (None, None) => return Err(Error::parameter("select a function with --measure or --gallery")),
            (Some(_), Some(_)) => return Err(Error::parameter("--measure and --gallery are exclusive")),
        };
        Ok(FunctionSpec { source, angle })
    }
}

impl Cli {
    /// Validates flags and loads inputs.
    pub fn into_config(self) -> Result<RunConfig> {
        let command = match self.command {
            Command::Eval { function, z } => RunCommand::Eval {
                function: function.resolve()?,
                z: parse_complex(&z)?,
            },
            Command::Verify {
                function,
                radial,
                angular,
                r_max,
            } => {
                check_grid("radial", radial)?;
                check_grid("angular", angular)?;
                RunCommand::Verify {
                    function: function.resolve()?,
                    grid: PolarGrid::new(radial, angular, r_max)?,
                }
            }
            Command::Beta { function, t_grid, r_k } => {
                check_grid("t-grid", t_grid)?;
                RunCommand::Beta {
                    function: function.resolve()?,
                    t_grid,
                    schedule: parse_decades(&r_k)?,
                }
            }
            Command::Growth { function, r_k, q0 } => {
                let schedule = parse_decades(&r_k)?;
                if schedule.len() < 3 {
                    return Err(Error::parameter("growth needs at least three radii"));
                }
                RunCommand::Growth {
                    function: function.resolve()?,
                    schedule,
                    q0,
                }
            }
            Command::Qtheta { grid, samples } => {
                check_grid("samples", samples)?;
                RunCommand::Qtheta { grid, samples }
            }
        };
        Ok(RunConfig {
            command,
            out: self.out,
            format: self.format,
            threads: self.threads,
        })
    }
}

fn num(x: f64) -> String {
    format!("{x:.14e}")
}

fn pair(z: Complex64) -> serde_json::Value {
    json!([z.re, z.im])
}

/// Runs a validated configuration, writing data to `out` and summaries to
/// `log`. Returns the process exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<i32> {
    let csv = config.format == Format::Csv;
    match &config.command {
        RunCommand::Eval { function, z } => {
            let f = function.build()?;
            let log_fz = f.log_f_over_z(*z)?;
            let value = f.evaluate(*z)?;
            let dlog = f.log_derivative(*z)?;
            let arg = principal_angle(arg_lambda_of_log(log_fz, &function.angle));
            if csv {
                writeln!(out, "z_re,z_im,f_re,f_im,log_re,log_im,dlog_re,dlog_im,arg_lambda")?;
                let cells = [z.re, z.im, value.re, value.im, log_fz.re, log_fz.im, dlog.re, dlog.im, arg];
                writeln!(out, "{}", cells.map(num).join(","))?;
            } else {
                let doc = json!({
                    "z": pair(*z),
                    "f": pair(value),
                    "log_f_over_z": pair(log_fz),
                    "log_derivative": pair(dlog),
                    "arg_lambda": arg,
                });
                writeln!(out, "{doc}")?;
            }
            Ok(0)
        }
        RunCommand::Verify { function, grid } => {
            let f = function.build()?;
            let margin = spirallikeness_margin(&f, function.angle, grid)?;
            if csv {
                writeln!(out, "margin,lambda,r_max,points")?;
                writeln!(
                    out,
                    "{},{},{},{}",
                    num(margin),
                    num(function.angle.lambda()),
                    num(grid.r_max()),
                    grid.len()
                )?;
            } else {
                let doc = json!({
                    "margin": margin,
                    "lambda": function.angle.lambda(),
                    "r_max": grid.r_max(),
                    "points": grid.len(),
                });
                writeln!(out, "{doc}")?;
            }
            if let FunctionSource::Gallery(Gallery::Hansen, Some(p)) = &function.source {
                writeln!(
                    log,
                    "proven lower bound at λ = 0: {}; constraint headroom {}",
                    num(p.margin_bound()),
                    num(p.headroom())
                )?;
            }
            let ok = margin > 0.0;
            writeln!(
                log,
                "margin {} on {} points: {}",
                num(margin),
                grid.len(),
                if ok { "spirallike on grid" } else { "condition fails" }
            )?;
            Ok(if ok { 0 } else { 1 })
        }
        RunCommand::Beta {
            function,
            t_grid,
            schedule,
        } => {
            let f = function.build()?;
            let trace = beta_trace(&f, function.angle, *t_grid, schedule)?;
            let measure = f.measure();
            let aligned = |t: f64| measure.map(|m| m.argument_at(t));
            if csv {
                if measure.is_some() {
                    writeln!(out, "t,beta,beta_measure")?;
                } else {
                    writeln!(out, "t,beta")?;
                }
                for (t, b) in trace.t_samples.iter().zip(&trace.beta_values) {
                    match aligned(*t) {
                        Some(m) => writeln!(out, "{},{},{}", num(*t), num(*b), num(m))?,
                        None => writeln!(out, "{},{}", num(*t), num(*b))?,
                    }
                }
            } else {
                let rows: Vec<_> = trace
                    .t_samples
                    .iter()
                    .zip(&trace.beta_values)
                    .map(|(t, b)| json!({"t": t, "beta": b, "beta_measure": aligned(*t)}))
                    .collect();
                let record: Vec<_> = trace
                    .refinement_record
                    .iter()
                    .map(|r| json!({"radius": r.radius, "max_delta": r.max_delta}))
                    .collect();
                let doc = json!({"radius_used": trace.radius_used, "refinement": record, "samples": rows});
                writeln!(out, "{doc}")?;
            }
            let est = estimate_max_jump(&trace, default_gap_threshold(&trace))?;
            writeln!(
                log,
                "radius {}; largest jump {} at t = {}, center {}",
                num(trace.radius_used),
                num(est.jump),
                num(est.location),
                num(est.center)
            )?;
            for r in trace.refinement_record.iter().skip(1) {
                writeln!(log, "  r = {}: max change {}", num(r.radius), num(r.max_delta))?;
            }
            Ok(0)
        }
        RunCommand::Growth {
            function,
            schedule,
            q0,
        } => {
            let f = function.build()?;
            let report = growth_exponent(&f, function.angle, schedule)?;
            let q = q0.unwrap_or(report.predicted_q0);
            let ratios: Vec<f64> = report
                .rows
                .iter()
                .map(|row| (row.log_m + q * (1.0 - row.r).ln()).exp())
                .collect();
            if csv {
                writeln!(out, "r,M,E,ratio")?;
                for (row, ratio) in report.rows.iter().zip(&ratios) {
                    writeln!(out, "{},{},{},{}", num(row.r), num(row.m), num(row.e), num(*ratio))?;
                }
            } else {
                let rows: Vec<_> = report
                    .rows
                    .iter()
                    .zip(&ratios)
                    .map(|(row, ratio)| json!({"r": row.r, "M": row.m, "E": row.e, "ratio": ratio}))
                    .collect();
                let doc = json!({
                    "predicted_q0": report.predicted_q0,
                    "a_estimate": report.a_estimate,
                    "ratio_exponent": q,
                    "rows": rows,
                });
                writeln!(out, "{doc}")?;
            }
            writeln!(
                log,
                "predicted q0 = {} (A = {}); last E = {}",
                num(report.predicted_q0),
                num(report.a_estimate),
                num(report.last_exponent())
            )?;
            if ratio_grows(&ratios) {
                writeln!(log, "M(r)(1-r)^q0 increases steadily along the schedule: O-bound fails")?;
            } else {
                writeln!(log, "M(r)(1-r)^q0 shows no unbounded growth on this schedule")?;
            }
            Ok(0)
        }
        RunCommand::Qtheta { grid, samples } => {
            let report = c0_constant(*grid)?;
            let step = std::f64::consts::FRAC_PI_2 / (*samples + 1) as f64;
            let rows: Vec<(f64, f64)> = (1..=*samples)
                .map(|j| {
                    let theta = j as f64 * step;
                    gallery::q_function(theta).map(|q| (theta, q))
                })
                .collect::<Result<_>>()?;
            if csv {
                writeln!(out, "theta,Q")?;
                for (theta, q) in &rows {
                    writeln!(out, "{},{}", num(*theta), num(*q))?;
                }
            } else {
                let doc = json!({
                    "sup_q": report.sup_q,
                    "interior_max": report.interior_max,
                    "c0": report.c0,
                    "monotone": report.monotone,
                    "samples": rows,
                });
                writeln!(out, "{doc}")?;
            }
            writeln!(
                log,
                "sup Q = {}, interior max {} at θ = {}, C0 = {}, monotone on grid: {}",
                num(report.sup_q),
                num(report.interior_max),
                num(report.argmax),
                num(report.c0),
                report.monotone
            )?;
            Ok(0)
        }
    }
}

/// Strictly increasing with at least 50% total growth.
fn ratio_grows(ratios: &[f64]) -> bool {
    ratios.windows(2).all(|w| w[1] > w[0])
        && matches!((ratios.first(), ratios.last()), (Some(a), Some(b)) if *b >= 1.5 * a)
}

/// Parses arguments, runs, and reports errors; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = cli.into_config().and_then(|config| {
        if let Some(n) = config.threads {
            // Ignored if a global pool already exists.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        let stderr = io::stderr();
        let mut log = stderr.lock();
        match &config.out {
            Some(path) => {
                let mut file = BufWriter::new(File::create(path)?);
                let code = run(&config, &mut file, &mut log)?;
                file.flush()?;
                Ok(code)
            }
            None => {
                let stdout = io::stdout();
                let mut out = stdout.lock();
                run(&config, &mut out, &mut log)
            }
        }
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
