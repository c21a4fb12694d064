//! Error norms, convergence studies, table and surface exports, and the
//! kernel property suite.
//!
//! Every writer here is a pure function of its inputs with a fixed row order,
//! so identical runs produce byte-identical CSV.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fractional::FractionalOrder;
use crate::kernels::{
    sobolev_inner_product, InnerProductSpec, Interval, KernelSection, PiecewisePolyKernel1D,
};
use crate::nan_max;
use crate::solver::{solve_vp, ProblemSpec, VpSolution};
use crate::tanh_method::exact_solution;

pub const ERROR_CSV_HEADER: &str = "nu,t,alpha,exact,approx,abs_error";
pub const GRID_CSV_HEADER: &str = "nu,t,value";

/// Fractional orders, grid density and time level of the standard error table.
pub const TABLE1_ALPHAS: [f64; 3] = [0.25, 0.5, 0.75];
pub const TABLE1_N: usize = 6;
pub const TABLE1_T: f64 = 0.5;

/// Fractional orders used for the surface and slice exports.
pub const SURFACE_ALPHAS: [f64; 4] = [0.25, 0.5, 0.75, 0.95];

/// Side of the square grid on which `L∞` against the exact field is measured.
pub const LINF_GRID: usize = 21;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub nu: f64,
    pub t: f64,
    pub alpha: f64,
    pub exact: f64,
    pub approx: f64,
    pub abs_error: f64,
}

impl ErrorRow {
    pub fn new(nu: f64, t: f64, alpha: f64, exact: f64, approx: f64) -> Self {
        Self {
            nu,
            t,
            alpha,
            exact,
            approx,
            abs_error: (exact - approx).abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub rows: Vec<ErrorRow>,
    pub linf: f64,
    pub n: usize,
}

impl ErrorReport {
    pub fn from_rows(rows: Vec<ErrorRow>, n: usize) -> Self {
        let linf = rows.iter().fold(0.0, |m, r| nan_max(m, r.abs_error));
        Self { rows, linf, n }
    }

    /// Rows without a header line.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.nu, r.t, r.alpha, r.exact, r.approx, r.abs_error
            );
        }
        out
    }

    pub fn to_csv(&self) -> String {
        format!("{ERROR_CSV_HEADER}\n{}", self.csv_rows())
    }
}

/// `max_i |exact_i − approx_i|`.
pub fn linf_error(exact: &[f64], approx: &[f64]) -> Result<f64> {
    if exact.len() != approx.len() {
        return Err(Error::LengthMismatch {
            left: exact.len(),
            right: approx.len(),
        });
    }
    Ok(exact
        .iter()
        .zip(approx)
        .fold(0.0, |m, (a, b)| nan_max(m, (a - b).abs())))
}

/// `ln(L∞_half / L∞_full) / ln 2`; positive when the error decreases as the
/// grid is doubled.
pub fn convergence_order(linf_half: f64, linf_full: f64) -> Result<f64> {
    if !(linf_half > 0.0 && linf_full > 0.0) {
        return Err(Error::invalid(format!(
            "convergence order needs positive errors, got {linf_half} and {linf_full}"
        )));
    }
    Ok((linf_half / linf_full).ln() / std::f64::consts::LN_2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    /// `(n, L∞)` with `n` strictly increasing.
    pub entries: Vec<(usize, f64)>,
    /// Observed order between consecutive entries, `ln(e₁/e₂) / ln(n₂/n₁)`.
    /// For a doubling this is exactly [`convergence_order`].
    pub orders: Vec<f64>,
}

impl ConvergenceStudy {
    pub fn new(entries: Vec<(usize, f64)>) -> Result<Self> {
        if entries.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::invalid("grid sizes must be strictly increasing"));
        }
        let orders = entries
            .windows(2)
            .map(|w| {
                let (n1, e1) = w[0];
                let (n2, e2) = w[1];
                let base2 = convergence_order(e1, e2)?;
                Ok(base2 * std::f64::consts::LN_2 / (n2 as f64 / n1 as f64).ln())
            })
            .collect::<Result<_>>()?;
        Ok(Self { entries, orders })
    }

    pub fn to_csv(&self) -> String {
        // order column: ln(L∞ at previous n / L∞ at this n) / ln(n / previous n)
        let mut out = String::from("n,linf,order\n");
        for (k, (n, e)) in self.entries.iter().enumerate() {
            match k.checked_sub(1).map(|p| self.orders[p]) {
                Some(o) => writeln!(out, "{n},{e},{o}"),
                None => writeln!(out, "{n},{e},"),
            }
            .expect("writing to a String cannot fail");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityVerdict {
    pub monotone: bool,
    /// `(n_prev, n_next, linf_prev, linf_next)` for every pair that grew by
    /// more than the slack.
    pub violations: Vec<(usize, usize, f64, f64)>,
}

pub const MONOTONICITY_SLACK: f64 = 0.10;

/// Checks that `L∞` does not increase with `n` beyond a 10% slack.
pub fn monotonicity_check(study: &ConvergenceStudy) -> MonotonicityVerdict {
    let violations: Vec<_> = study
        .entries
        .windows(2)
        .filter(|w| w[1].1 > w[0].1 * (1.0 + MONOTONICITY_SLACK))
        .map(|w| (w[0].0, w[1].0, w[0].1, w[1].1))
        .collect();
    MonotonicityVerdict {
        monotone: violations.is_empty(),
        violations,
    }
}

/// Uniform nodes `lo, …, hi` with `count ≥ 2` entries.
pub fn uniform_nodes(interval: Interval, count: usize) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(Error::invalid(format!(
            "resolution {count} must be at least 2"
        )));
    }
    let h = interval.width() / (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            if i + 1 == count {
                interval.hi
            } else {
                interval.lo + i as f64 * h
            }
        })
        .collect())
}

/// `L∞` of `Φ` against the tanh solution on a `LINF_GRID²` grid covering the
/// closed domain.
pub fn solution_linf(solution: &VpSolution) -> Result<f64> {
    let spec = &solution.spec;
    let nus = uniform_nodes(spec.space, LINF_GRID)?;
    let ts = uniform_nodes(spec.time, LINF_GRID)?;
    Ok(nus
        .iter()
        .flat_map(|&nu| ts.iter().map(move |&t| (nu, t)))
        .map(|(nu, t)| (solution.phi(nu, t) - exact_solution(nu, t, spec.alpha, spec.c)).abs())
        .fold(0.0, nan_max))
}

/// Solves at every `n` and collects the full-domain `L∞` errors.
pub fn run_convergence(template: &ProblemSpec, ns: &[usize]) -> Result<ConvergenceStudy> {
    if ns.len() < 2 {
        return Err(Error::invalid(
            "a convergence study needs at least two grid sizes",
        ));
    }
    let entries = ns
        .par_iter()
        .map(|&n| {
            let spec = ProblemSpec {
                n,
                ..template.clone()
            };
            let sol = solve_vp(&spec)?;
            Ok((n, solution_linf(&sol)?))
        })
        .collect::<Result<Vec<_>>>()?;
    ConvergenceStudy::new(entries)
}

/// Error rows of `Φ` at `ν = a + i(b−a)/6`, `i = 1..5`, and `t = 0.5`.
pub fn table1_rows(solution: &VpSolution) -> Vec<ErrorRow> {
    let spec = &solution.spec;
    (1..TABLE1_N)
        .map(|i| {
            let nu = spec.space.lo + i as f64 * spec.space.width() / TABLE1_N as f64;
            let exact = exact_solution(nu, TABLE1_T, spec.alpha, spec.c);
            ErrorRow::new(
                nu,
                TABLE1_T,
                spec.alpha.get(),
                exact,
                solution.phi(nu, TABLE1_T),
            )
        })
        .collect()
}

/// One report per `α ∈ {0.25, 0.5, 0.75}` at `n = 6`, other settings from
/// `template`.
pub fn table1_report(template: &ProblemSpec) -> Result<Vec<ErrorReport>> {
    if !template.time.contains(TABLE1_T) {
        return Err(Error::invalid("time interval must contain t = 0.5"));
    }
    TABLE1_ALPHAS
        .par_iter()
        .map(|&a| {
            let spec = ProblemSpec {
                alpha: FractionalOrder::new(a)?,
                n: TABLE1_N,
                ..template.clone()
            };
            let sol = solve_vp(&spec)?;
            Ok(ErrorReport::from_rows(table1_rows(&sol), TABLE1_N))
        })
        .collect()
}

/// The three α blocks as one CSV.
pub fn table1_csv(reports: &[ErrorReport]) -> String {
    let mut out = format!("{ERROR_CSV_HEADER}\n");
    for r in reports {
        out.push_str(&r.csv_rows());
    }
    out
}

/// A field sampled on a rectangular grid, `ν` outer.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceGrid {
    pub nu: Vec<f64>,
    pub t: Vec<f64>,
    pub values: Vec<f64>,
}

impl SurfaceGrid {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.t.len() + j]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Long format, one row per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = format!("{GRID_CSV_HEADER}\n");
        for (i, nu) in self.nu.iter().enumerate() {
            for (j, t) in self.t.iter().enumerate() {
                let _ = writeln!(out, "{nu},{t},{}", self.value(i, j));
            }
        }
        out
    }
}

/// Samples `field` on a `resolution × resolution` grid over the closed domain.
pub fn surface_export(
    field: impl Fn(f64, f64) -> f64 + Sync,
    space: Interval,
    time: Interval,
    resolution: usize,
) -> Result<SurfaceGrid> {
    let nu = uniform_nodes(space, resolution)?;
    let t = uniform_nodes(time, resolution)?;
    let values = nu
        .par_iter()
        .flat_map_iter(|&x| t.iter().map(move |&s| (x, s)).collect::<Vec<_>>())
        .map(|(x, s)| field(x, s))
        .collect();
    Ok(SurfaceGrid { nu, t, values })
}

pub fn exact_surface(
    alpha: FractionalOrder,
    c: f64,
    space: Interval,
    time: Interval,
    resolution: usize,
) -> Result<SurfaceGrid> {
    surface_export(
        |nu, t| exact_solution(nu, t, alpha, c),
        space,
        time,
        resolution,
    )
}

pub fn solution_surface(solution: &VpSolution, resolution: usize) -> Result<SurfaceGrid> {
    surface_export(
        |nu, t| solution.phi(nu, t),
        solution.spec.space,
        solution.spec.time,
        resolution,
    )
}

/// Exact, approximate and error values along `t = t_slice`.
pub fn slice_report(solution: &VpSolution, t_slice: f64, resolution: usize) -> Result<ErrorReport> {
    let spec = &solution.spec;
    if !spec.time.contains(t_slice) {
        return Err(Error::invalid(format!(
            "slice time {t_slice} outside the domain"
        )));
    }
    let rows = uniform_nodes(spec.space, resolution)?
        .into_iter()
        .map(|nu| {
            let exact = exact_solution(nu, t_slice, spec.alpha, spec.c);
            ErrorRow::new(
                nu,
                t_slice,
                spec.alpha.get(),
                exact,
                solution.phi(nu, t_slice),
            )
        })
        .collect();
    Ok(ErrorReport::from_rows(rows, spec.n))
}

/// Gnuplot script drawing each `(title, csv)` surface with `splot`.
pub fn gnuplot_surfaces(files: &[(String, String)], output_png_prefix: &str) -> String {
    let mut out = String::from("set datafile separator ','\nset key autotitle columnhead\n");
    out.push_str("set xlabel 'nu'\nset ylabel 't'\nset terminal pngcairo size 900,700\n");
    for (k, (title, csv)) in files.iter().enumerate() {
        let _ = writeln!(out, "set output '{output_png_prefix}{k}.png'");
        let _ = writeln!(out, "set title '{title}'");
        let _ = writeln!(
            out,
            "splot '{csv}' using 1:2:3 with points pt 7 ps 0.4 title '{title}'"
        );
    }
    out
}

/// Gnuplot script plotting `abs_error` against `ν` for slice CSVs.
pub fn gnuplot_errors(files: &[(String, String)], output_png: &str) -> String {
    let mut out = String::from("set datafile separator ','\nset terminal pngcairo size 900,600\n");
    let _ = writeln!(
        out,
        "set output '{output_png}'\nset xlabel 'nu'\nset ylabel 'abs error'\nset logscale y"
    );
    let plots: Vec<String> = files
        .iter()
        .map(|(title, csv)| format!("'{csv}' using 1:6 with linespoints title '{title}'"))
        .collect();
    let _ = writeln!(out, "plot {}", plots.join(", \\\n     "));
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl PropertyCheck {
    fn new(name: &str, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            passed: max_deviation <= tolerance,
            max_deviation,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelCheckReport {
    pub checks: Vec<PropertyCheck>,
}

impl KernelCheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&PropertyCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// Largest deviation over the reproducing-property checks.
    pub fn max_reproducing_deviation(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.name.starts_with("reproducing"))
            .fold(0.0, |m, c| nan_max(m, c.max_deviation))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<28} {}  max deviation {:.3e} (tol {:.0e})",
                c.name,
                if c.passed { "PASS" } else { "FAIL" },
                c.max_deviation,
                c.tolerance
            );
        }
        out
    }
}

pub const REPRODUCING_TOL: f64 = 1e-8;
pub const SYMMETRY_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const CONTINUITY_TOL: f64 = 1e-9;

/// Evaluation points `0.1, 0.2, …, 0.9`.
pub fn reproducing_points() -> Vec<f64> {
    (1..10).map(|k| k as f64 / 10.0).collect()
}

type TestFunction = fn(f64, usize) -> f64;

/// Test functions vanishing at 0 and 1.
pub fn constrained_test_functions() -> Vec<(&'static str, TestFunction)> {
    fn p1(s: f64, d: usize) -> f64 {
        // s − s²
        match d {
            0 => s - s * s,
            1 => 1.0 - 2.0 * s,
            2 => -2.0,
            _ => 0.0,
        }
    }
    fn p2(s: f64, d: usize) -> f64 {
        // s² − s³
        match d {
            0 => s * s - s * s * s,
            1 => 2.0 * s - 3.0 * s * s,
            2 => 2.0 - 6.0 * s,
            3 => -6.0,
            _ => 0.0,
        }
    }
    fn p3(s: f64, d: usize) -> f64 {
        // s² − 2s³ + s⁴
        match d {
            0 => s * s * (1.0 - s) * (1.0 - s),
            1 => 2.0 * s - 6.0 * s * s + 4.0 * s * s * s,
            2 => 2.0 - 12.0 * s + 12.0 * s * s,
            3 => -12.0 + 24.0 * s,
            4 => 24.0,
            _ => 0.0,
        }
    }
    fn sine(s: f64, d: usize) -> f64 {
        let w = std::f64::consts::PI;
        let phase = s * w + d as f64 * std::f64::consts::FRAC_PI_2;
        w.powi(d as i32) * phase.sin()
    }
    vec![
        ("s(1-s)", p1),
        ("s^2(1-s)", p2),
        ("s^2(1-s)^2", p3),
        ("sin(pi s)", sine),
    ]
}

/// Smooth functions with no boundary restriction.
pub fn unconstrained_test_functions() -> Vec<(&'static str, TestFunction)> {
    fn affine(s: f64, d: usize) -> f64 {
        match d {
            0 => 1.0 + 2.0 * s,
            1 => 2.0,
            _ => 0.0,
        }
    }
    fn expo(s: f64, _d: usize) -> f64 {
        s.exp()
    }
    fn cosine(s: f64, d: usize) -> f64 {
        2f64.powi(d as i32) * (2.0 * s + d as f64 * std::f64::consts::FRAC_PI_2).cos()
    }
    vec![("1+2s", affine), ("exp(s)", expo), ("cos(2s)", cosine)]
}

fn reproducing_deviation(
    kernel: &PiecewisePolyKernel1D,
    order: usize,
    functions: &[(&'static str, TestFunction)],
) -> Result<f64> {
    let spec = InnerProductSpec::new(order);
    let jobs: Vec<(TestFunction, f64)> = functions
        .iter()
        .flat_map(|&(_, f)| reproducing_points().into_iter().map(move |z| (f, z)))
        .collect();
    let devs = jobs
        .par_iter()
        .map(|&(f, z)| {
            let section = KernelSection { kernel, z, dz: 0 };
            let ip = sobolev_inner_product(&f, &section, &spec, Interval::unit())?;
            Ok((ip - f(z, 0)).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(devs.into_iter().fold(0.0, nan_max))
}

fn symmetry_deviation(kernel: &PiecewisePolyKernel1D, samples: usize) -> f64 {
    let pts: Vec<f64> = (0..samples)
        .map(|k| k as f64 / (samples - 1) as f64)
        .collect();
    pts.iter()
        .flat_map(|&s| pts.iter().map(move |&z| (s, z)))
        .map(|(s, z)| (kernel.eval(s, z) - kernel.eval(z, s)).abs())
        .fold(0.0, nan_max)
}

/// Negative part of the smallest Gram eigenvalue on `count` interior points.
fn psd_deviation(kernel: &PiecewisePolyKernel1D, count: usize) -> f64 {
    let pts: Vec<f64> = (0..count)
        .map(|k| (k as f64 + 0.5) / count as f64)
        .collect();
    let gram = DMatrix::from_fn(count, count, |i, j| {
        0.5 * (kernel.eval(pts[i], pts[j]) + kernel.eval(pts[j], pts[i]))
    });
    let min = SymmetricEigen::new(gram).eigenvalues.min();
    (-min).max(0.0)
}

/// Largest branch mismatch of partials of total order `≤ 2r − 2` on the
/// diagonal.
fn continuity_deviation(kernel: &PiecewisePolyKernel1D) -> f64 {
    let top = 2 * kernel.smoothness_order() - 2;
    let mut worst: f64 = 0.0;
    for z in reproducing_points() {
        for ds in 0..=top {
            for dz in 0..=(top - ds) {
                let lo = kernel.eval_branch(false, z, z, ds, dz);
                let hi = kernel.eval_branch(true, z, z, ds, dz);
                worst = worst.max((lo - hi).abs());
            }
        }
    }
    worst
}

/// Reproducing, symmetry, semidefiniteness and diagonal continuity checks for
/// a constrained third-order spatial kernel, plus reproducing for the
/// first-order kernel `1 + min(s, z)`.
pub fn kernel_property_suite(spatial: &PiecewisePolyKernel1D) -> Result<KernelCheckReport> {
    let w1 = PiecewisePolyKernel1D::w1();
    let checks = vec![
        PropertyCheck::new(
            "reproducing (order 3)",
            reproducing_deviation(spatial, 3, &constrained_test_functions())?,
            REPRODUCING_TOL,
        ),
        PropertyCheck::new(
            "reproducing (order 1)",
            reproducing_deviation(&w1, 1, &unconstrained_test_functions())?,
            REPRODUCING_TOL,
        ),
        PropertyCheck::new("symmetry", symmetry_deviation(spatial, 101), SYMMETRY_TOL),
        PropertyCheck::new("positive semidefinite", psd_deviation(spatial, 24), PSD_TOL),
        PropertyCheck::new(
            "diagonal continuity",
            continuity_deviation(spatial),
            CONTINUITY_TOL,
        ),
    ];
    Ok(KernelCheckReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn linf_basics() {
        assert_eq!(linf_error(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(linf_error(&[1.0, 2.0], &[1.5, 1.0]).unwrap(), 1.0);
        assert!(matches!(
            linf_error(&[1.0], &[]),
            Err(Error::LengthMismatch { .. })
        ));
        // a NaN sample must not hide behind a finite maximum
        assert!(linf_error(&[1.0, 2.0, 3.0], &[1.0, f64::NAN, 3.5])
            .unwrap()
            .is_nan());
        assert!(linf_error(&[f64::NAN, 0.0], &[0.0, 9.0]).unwrap().is_nan());
    }

    #[test]
    fn orders() {
        assert_abs_diff_eq!(convergence_order(0.04, 0.01).unwrap(), 2.0, epsilon = 1e-15);
        assert_eq!(convergence_order(0.3, 0.3).unwrap(), 0.0);
        assert_abs_diff_eq!(convergence_order(0.02, 0.01).unwrap(), 1.0, epsilon = 1e-15);
        assert!(convergence_order(0.0, 0.1).is_err());
        assert!(convergence_order(0.1, -1.0).is_err());
    }

    #[test]
    fn study_orders_use_grid_ratio() {
        let s = ConvergenceStudy::new(vec![(4, 0.04), (8, 0.01), (16, 0.01)]).unwrap();
        assert_abs_diff_eq!(s.orders[0], 2.0, epsilon = 1e-14);
        assert_eq!(s.orders[1], 0.0);
        assert!(ConvergenceStudy::new(vec![(8, 0.1), (4, 0.2)]).is_err());
        assert!(s.to_csv().starts_with("n,linf,order\n4,0.04,\n8,0.01,"));
    }

    #[test]
    fn monotonicity() {
        let ok = ConvergenceStudy::new(vec![(4, 0.03), (8, 0.01)]).unwrap();
        assert!(monotonicity_check(&ok).monotone);
        let bad = ConvergenceStudy::new(vec![(4, 0.01), (8, 0.03)]).unwrap();
        let v = monotonicity_check(&bad);
        assert!(!v.monotone);
        assert_eq!(v.violations, vec![(4, 8, 0.01, 0.03)]);
        let slack = ConvergenceStudy::new(vec![(4, 0.0100), (8, 0.0105)]).unwrap();
        assert!(monotonicity_check(&slack).monotone);
    }

    #[test]
    fn exact_surface_shape_and_corner() {
        let a = FractionalOrder::new(0.25).unwrap();
        let g = exact_surface(a, 0.001, Interval::unit(), Interval::unit(), 7).unwrap();
        assert_eq!(g.len(), 49);
        assert_eq!(g.value(0, 0), 6.0);
        assert_eq!(g.nu[6], 1.0);
        assert_eq!(g.to_csv().lines().count(), 50);
        assert!(exact_surface(a, 0.001, Interval::unit(), Interval::unit(), 1).is_err());
    }

    #[test]
    fn nodes_hit_endpoints() {
        let v = uniform_nodes(Interval { lo: -1.0, hi: 2.0 }, 4).unwrap();
        assert_eq!(v, vec![-1.0, 0.0, 1.0, 2.0]);
    }

    #[test]
    fn w1_passes_the_generic_checks() {
        let k = PiecewisePolyKernel1D::w1();
        assert!(symmetry_deviation(&k, 33) <= SYMMETRY_TOL);
        assert!(psd_deviation(&k, 12) <= PSD_TOL);
    }

    #[test]
    fn error_report_csv() {
        let r = ErrorReport::from_rows(vec![ErrorRow::new(0.5, 0.5, 0.5, 2.0, 1.5)], 6);
        assert_eq!(r.linf, 0.5);
        assert_eq!(
            r.to_csv(),
            "nu,t,alpha,exact,approx,abs_error\n0.5,0.5,0.5,2,1.5,0.5\n"
        );
    }

    #[test]
    fn gnuplot_text_references_files() {
        let s = gnuplot_surfaces(&[("exact".into(), "exact.csv".into())], "fig");
        assert!(s.contains("splot 'exact.csv'"));
        let e = gnuplot_errors(
            &[("a".into(), "a.csv".into()), ("b".into(), "b.csv".into())],
            "e.png",
        );
        assert!(e.contains("'a.csv' using 1:6") && e.contains("'b.csv' using 1:6"));
    }
}
