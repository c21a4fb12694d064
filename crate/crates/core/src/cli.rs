//! Command-line front end.
//!
//! Every subcommand resolves a [`RunConfig`] from an optional TOML file and
//! the flags (flags win), validates it as a [`ProblemSpec`], and writes CSV to
//! `--out` or standard output. Exit codes: 0 success, 1 usage, 2 I/O,
//! 3 solver, 4 property failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::analysis::{
    exact_surface, gnuplot_errors, gnuplot_surfaces, kernel_property_suite, linf_error,
    monotonicity_check, run_convergence, slice_report, solution_linf, solution_surface, table1_csv,
    table1_report, write_text, ConvergenceStudy, SURFACE_ALPHAS, TABLE1_T,
};
use crate::error::{Error, Result};
use crate::fractional::FractionalOrder;
use crate::kernels::{Interval, PiecewisePolyKernel1D};
use crate::solver::{
    solve_vp, solve_vp_with_data, BoundaryData, DerivativeMode, EquationSign, ProblemSpec,
    TemporalKernel, VpSolution,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_PROPERTY: i32 = 4;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "RKHS_VP_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "rkhs-vp",
    version,
    about = "Reproducing-kernel solver for the time-fractional Vakhnenko-Parkes equation"
)]
pub struct Cli {
    /// TOML file whose keys mirror the flag names; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the tanh solution on a grid.
    Exact(CommonArgs),
    /// Run the solver and write the solution grid plus an iteration report.
    Solve {
        #[command(flatten)]
        common: CommonArgs,
        /// Solve with constant data Φ ≡ VALUE, w ≡ 0 instead of the tanh traces.
        #[arg(long, value_name = "VALUE")]
        constant: Option<f64>,
    },
    /// Errors at ν = i/6, t = 0.5, n = 6 for α ∈ {0.25, 0.5, 0.75}.
    Table1(CommonArgs),
    /// L∞ errors and observed orders over a list of grid sizes.
    Convergence {
        #[command(flatten)]
        common: CommonArgs,
        /// Grid sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "4,8")]
        ns: Vec<usize>,
        /// Use these errors instead of solving (one per grid size).
        #[arg(long, value_delimiter = ',', hide = true)]
        synthetic_linf: Option<Vec<f64>>,
    },
    /// Reproducing, symmetry, semidefiniteness and continuity checks.
    KernelCheck {
        /// Add DELTA to numerator (I, J) of the lower branch: `I,J,DELTA`.
        #[arg(long, hide = true, value_delimiter = ',', allow_hyphen_values = true)]
        perturb_coefficient: Option<Vec<i64>>,
    },
    /// Surface grids, t = 0.5 slices and gnuplot scripts for several α.
    Figures(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Conformable,
    Caputo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignArg {
    Corrected,
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TemporalArg {
    Homogeneous,
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    #[default]
    Csv,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Wave speed.
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Sign of the Φ_ν w_ν term.
    #[arg(long, value_enum)]
    pub sign: Option<SignArg>,
    #[arg(long, value_enum)]
    pub temporal_kernel: Option<TemporalArg>,
    /// `a,b,T` for the domain [a, b] × [0, T].
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub domain: Option<Vec<f64>>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Grid points per axis for exported surfaces.
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Output file (directory for `figures`); standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

/// Keys accepted in the `--config` file.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub alpha: Option<f64>,
    pub n: Option<usize>,
    pub c: Option<f64>,
    pub mode: Option<ModeArg>,
    pub sign: Option<SignArg>,
    pub temporal_kernel: Option<TemporalArg>,
    pub domain: Option<[f64; 3]>,
    pub max_iter: Option<usize>,
    pub tol: Option<f64>,
    pub resolution: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<FormatArg>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub spec: ProblemSpec,
    pub resolution: usize,
    pub out: Option<PathBuf>,
    pub format: FormatArg,
}

pub const DEFAULT_RESOLUTION: usize = 50;

impl RunConfig {
    pub fn resolve(args: &CommonArgs, file: &FileConfig) -> Result<Self> {
        let alpha = args.alpha.or(file.alpha).unwrap_or(0.5);
        let n = args.n.or(file.n).unwrap_or(6);
        let mut spec = ProblemSpec::new(alpha, n)?;
        if let Some(c) = args.c.or(file.c) {
            spec.c = c;
        }
        if let Some(m) = args.mode.or(file.mode) {
            spec.derivative_mode = match m {
                ModeArg::Conformable => DerivativeMode::Conformable,
                ModeArg::Caputo => DerivativeMode::Caputo,
            };
        }
        if let Some(s) = args.sign.or(file.sign) {
            spec.sign = match s {
                SignArg::Corrected => EquationSign::Corrected,
                SignArg::Printed => EquationSign::AsPrinted,
            };
        }
        if let Some(k) = args.temporal_kernel.or(file.temporal_kernel) {
            spec.temporal_kernel = match k {
                TemporalArg::Homogeneous => TemporalKernel::Homogeneous,
                TemporalArg::Literal => TemporalKernel::Literal,
            };
        }
        let domain = match (&args.domain, file.domain) {
            (Some(d), _) if d.len() == 3 => Some([d[0], d[1], d[2]]),
            (Some(d), _) => {
                return Err(Error::invalid(format!(
                    "--domain takes a,b,T, got {} values",
                    d.len()
                )))
            }
            (None, d) => d,
        };
        if let Some([a, b, t_end]) = domain {
            spec.space = Interval::new(a, b)?;
            spec.time = Interval::new(0.0, t_end)?;
        }
        if let Some(m) = args.max_iter.or(file.max_iter) {
            spec.max_outer_iters = m;
        }
        if let Some(t) = args.tol.or(file.tol) {
            spec.tol = t;
        }
        spec.validate()?;
        let resolution = args
            .resolution
            .or(file.resolution)
            .unwrap_or(DEFAULT_RESOLUTION);
        if resolution < 2 {
            return Err(Error::invalid(format!(
                "resolution {resolution} must be at least 2"
            )));
        }
        Ok(Self {
            spec,
            resolution,
            out: args.out.clone().or_else(|| file.out.clone()),
            format: args.format.or(file.format).unwrap_or_default(),
        })
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) => EXIT_IO,
        Error::NoConvergence { .. } | Error::Singularity { .. } | Error::Conditioning { .. } => {
            EXIT_SOLVER
        }
        _ => EXIT_USAGE,
    }
}

/// Applies `RKHS_VP_THREADS` to the global pool. Ignored when unset, invalid,
/// or when the pool already exists.
pub fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    match &cli.command {
        Command::Exact(args) => cmd_exact(&RunConfig::resolve(args, &file)?, stdout),
        Command::Solve { common, constant } => cmd_solve(
            &RunConfig::resolve(common, &file)?,
            *constant,
            stdout,
            stderr,
        ),
        Command::Table1(args) => cmd_table1(&RunConfig::resolve(args, &file)?, stdout),
        Command::Convergence {
            common,
            ns,
            synthetic_linf,
        } => {
            let cfg = RunConfig::resolve(common, &file)?;
            cmd_convergence(&cfg, ns, synthetic_linf.as_deref(), stdout)
        }
        Command::KernelCheck {
            perturb_coefficient,
        } => cmd_kernel_check(perturb_coefficient.as_deref(), stdout, stderr),
        Command::Figures(args) => cmd_figures(&RunConfig::resolve(args, &file)?, stdout),
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => write_text(path, text),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

pub fn cmd_exact(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32> {
    let s = &cfg.spec;
    let grid = exact_surface(s.alpha, s.c, s.space, s.time, cfg.resolution)?;
    emit(&cfg.out, &grid.to_csv(), stdout)?;
    Ok(EXIT_OK)
}

fn report_csv(sol: &VpSolution) -> String {
    let r = &sol.report;
    let mut out = String::from("iteration,change,collocation_residual\n");
    for (k, (c, res)) in r.changes.iter().zip(&r.collocation_residuals).enumerate() {
        out.push_str(&format!("{},{c},{res}\n", k + 1));
    }
    out
}

fn report_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}.report.csv"))
}

pub fn cmd_solve(
    cfg: &RunConfig,
    constant: Option<f64>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let spec = &cfg.spec;
    let (sol, linf) = match constant {
        Some(v) => {
            let data = BoundaryData::constant(v, 0.0, spec.space)?;
            let sol = solve_vp_with_data(spec, &data)?;
            let grid = solution_surface(&sol, crate::analysis::LINF_GRID)?;
            let linf = linf_error(&vec![v; grid.len()], &grid.values)?;
            (sol, linf)
        }
        None => {
            let sol = solve_vp(spec)?;
            let linf = solution_linf(&sol)?;
            (sol, linf)
        }
    };
    let grid = solution_surface(&sol, cfg.resolution)?;
    let r = &sol.report;
    let summary = format!(
        "alpha={} n={} mode={} linf={:.6e} iterations={} converged={} orthonormality_defect={:.3e}",
        spec.alpha.get(),
        spec.n,
        spec.derivative_mode,
        linf,
        r.iterations,
        r.converged,
        r.orthonormality_defect
    );
    match &cfg.out {
        Some(path) => {
            write_text(path, &grid.to_csv())?;
            write_text(&report_path(path), &report_csv(&sol))?;
            writeln!(stdout, "{summary}")?;
        }
        None => {
            stdout.write_all(grid.to_csv().as_bytes())?;
            writeln!(stderr, "{summary}")?;
        }
    }
    if !r.converged {
        writeln!(
            stderr,
            "warning: outer iteration stopped after {} steps without meeting tol",
            r.iterations
        )?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_table1(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32> {
    let reports = table1_report(&cfg.spec)?;
    emit(&cfg.out, &table1_csv(&reports), stdout)?;
    Ok(EXIT_OK)
}

pub const ORDER_NOTE: &str =
    "# order = ln(linf(previous n) / linf(n)) / ln(n / previous n); positive when the error decreases";

pub fn cmd_convergence(
    cfg: &RunConfig,
    ns: &[usize],
    synthetic: Option<&[f64]>,
    stdout: &mut dyn Write,
) -> Result<i32> {
    if ns.len() < 2 {
        return Err(Error::invalid("convergence needs at least two grid sizes"));
    }
    let study = match synthetic {
        Some(errs) => {
            if errs.len() != ns.len() {
                return Err(Error::LengthMismatch {
                    left: errs.len(),
                    right: ns.len(),
                });
            }
            ConvergenceStudy::new(ns.iter().copied().zip(errs.iter().copied()).collect())?
        }
        None => run_convergence(&cfg.spec, ns)?,
    };
    let verdict = monotonicity_check(&study);
    let text = format!("{ORDER_NOTE}\n{}", study.to_csv());
    emit(&cfg.out, &text, stdout)?;
    if cfg.out.is_some() {
        writeln!(stdout, "monotone={}", verdict.monotone)?;
    }
    for (n1, n2, e1, e2) in &verdict.violations {
        writeln!(
            stdout,
            "# non-monotone: n={n1} linf={e1:e} -> n={n2} linf={e2:e}"
        )?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_kernel_check(
    perturb: Option<&[i64]>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let mut kernel = PiecewisePolyKernel1D::w3_constrained();
    if let Some(p) = perturb {
        if p.len() != 3 {
            return Err(Error::invalid("--perturb-coefficient takes I,J,DELTA"));
        }
        let (i, j) = (usize::try_from(p[0]), usize::try_from(p[1]));
        let (Ok(i), Ok(j)) = (i, j) else {
            return Err(Error::invalid("coefficient indices must be non-negative"));
        };
        kernel = kernel.with_perturbed_coefficient(i, j, p[2]);
    }
    let report = kernel_property_suite(&kernel)?;
    stdout.write_all(report.render().as_bytes())?;
    writeln!(
        stdout,
        "max reproducing deviation {:.3e}",
        report.max_reproducing_deviation()
    )?;
    if report.all_passed() {
        return Ok(EXIT_OK);
    }
    let names: Vec<&str> = report.failures().iter().map(|c| c.name.as_str()).collect();
    writeln!(stderr, "failed: {}", names.join(", "))?;
    Ok(EXIT_PROPERTY)
}

fn alpha_tag(a: f64) -> String {
    format!("{a}").replace('.', "p")
}

/// Writes surfaces, slices and two gnuplot scripts into `--out`
/// (default `figures`).
pub fn cmd_figures(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32> {
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
    std::fs::create_dir_all(&dir)?;
    let mut surfaces = Vec::new();
    let mut slices = Vec::new();
    for a in SURFACE_ALPHAS {
        let spec = ProblemSpec {
            alpha: FractionalOrder::new(a)?,
            ..cfg.spec.clone()
        };
        let tag = alpha_tag(a);
        let exact = exact_surface(spec.alpha, spec.c, spec.space, spec.time, cfg.resolution)?;
        let exact_name = format!("exact_alpha{tag}.csv");
        write_text(&dir.join(&exact_name), &exact.to_csv())?;
        let sol = solve_vp(&spec)?;
        let approx_name = format!("rkhsm_alpha{tag}.csv");
        write_text(
            &dir.join(&approx_name),
            &solution_surface(&sol, cfg.resolution)?.to_csv(),
        )?;
        let slice_name = format!("slice_alpha{tag}.csv");
        if spec.time.contains(TABLE1_T) {
            write_text(
                &dir.join(&slice_name),
                &slice_report(&sol, TABLE1_T, cfg.resolution)?.to_csv(),
            )?;
            slices.push((format!("alpha = {a}"), slice_name));
        }
        surfaces.push((format!("exact, alpha = {a}"), exact_name));
        surfaces.push((format!("rkhsm, alpha = {a}"), approx_name));
    }
    write_text(
        &dir.join("surfaces.gp"),
        &gnuplot_surfaces(&surfaces, "surface_"),
    )?;
    write_text(
        &dir.join("errors.gp"),
        &gnuplot_errors(&slices, "errors.png"),
    )?;
    writeln!(
        stdout,
        "wrote {} files to {}",
        surfaces.len() + slices.len() + 2,
        dir.display()
    )?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("rkhs-vp").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn flags_override_file() {
        let file = FileConfig {
            alpha: Some(0.25),
            n: Some(4),
            tol: Some(1e-6),
            ..Default::default()
        };
        let args = CommonArgs {
            alpha: Some(0.75),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(&args, &file).unwrap();
        assert_eq!(cfg.spec.alpha.get(), 0.75);
        assert_eq!(cfg.spec.n, 4);
        assert_eq!(cfg.spec.tol, 1e-6);
        assert_eq!(cfg.resolution, DEFAULT_RESOLUTION);
    }

    #[test]
    fn file_config_rejects_unknown_keys() {
        assert!(toml::from_str::<FileConfig>("alpha = 0.5\nbogus = 1").is_err());
        let f: FileConfig = toml::from_str("mode = \"caputo\"\ndomain = [0.0, 2.0, 1.5]").unwrap();
        assert_eq!(f.mode, Some(ModeArg::Caputo));
        assert_eq!(f.domain, Some([0.0, 2.0, 1.5]));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["exact", "--alpha", "1.5"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["nonsense"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["convergence", "--ns", "4"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn exact_to_stdout() {
        let (code, out, _) = run_capture(&["exact", "--alpha", "0.25", "--resolution", "3"]);
        assert_eq!(code, 0);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[0], "nu,t,value");
        assert_eq!(lines[1], "0,0,6");
    }

    #[test]
    fn synthetic_convergence() {
        let (code, out, _) = run_capture(&[
            "convergence",
            "--ns",
            "4,8",
            "--synthetic-linf",
            "0.01,0.01",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("\n8,0.01,0\n"), "{out}");
    }

    #[test]
    fn domain_flag_arity() {
        assert_eq!(run_capture(&["exact", "--domain", "0,1"]).0, EXIT_USAGE);
        let (code, out, _) = run_capture(&["exact", "--domain", "-1,1,2", "--resolution", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("\n-1,0,") && out.contains("\n1,2,"), "{out}");
    }

    #[test]
    fn missing_config_is_io_error() {
        let (code, _, err) = run_capture(&["--config", "/nonexistent/x.toml", "exact"]);
        assert_eq!(code, EXIT_IO, "{err}");
    }
}
