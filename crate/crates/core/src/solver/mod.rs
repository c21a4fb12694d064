//! Reproducing-kernel solution of the coupled system
//!
//! ```text
//! Φ w_νν − Φ_ν w_ν + Φ² w = 0,   w = D_t^α Φ
//! ```
//!
//! with Dirichlet data for `Φ` at `t = 0`, `ν = a`, `ν = b` and matching
//! traces for `w`.
//!
//! Both fields are split as `Φ = w₁ + f₁`, `w = w₂ + f₂` with transfinite
//! offsets `f₁, f₂` carrying the data. `w₂` lives in the trial space spanned
//! by `ψᵢ = ∂²_z K((ν,t),(z,u))|_{(νᵢ,tᵢ)}` and solves `w₂,νν = F` by
//! collocation, where
//!
//! ```text
//! F = −f₂,νν + (σ Φ_ν w_ν − Φ² w) / Φ
//! ```
//!
//! is frozen at the previous iterate (`σ = +1` for the sign-corrected
//! equation). `Φ` is recovered as `f₁ + I^α w₂ + κ(t)·ĝ₁(ν)` where `I^α` is
//! the conformable or Riemann–Liouville integral, `κ = I^α 1` and `ĝ₁` is the
//! initial `w` profile minus its linear interpolant; this keeps `Φ` exact on
//! the three condition curves. The integrals of the trial functions are taken
//! in closed form, so no time grid is needed.

mod basis;
mod boundary;
mod series;

pub use basis::{
    collocation_points, gram_matrix, orthonormality_defect, orthonormalize, BasisSystem,
    CollocationSet,
};
pub use boundary::{build_homogenizer, BoundaryData, Homogenizer, Profile, TransfiniteSurface};
pub use series::{solve_linear, SeriesSolution};

use std::str::FromStr;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::fractional::{
    conformable_clock, conformable_integral, rl_clock, rl_integral, FractionalOrder, SampledSignal,
};
use crate::kernels::Interval;
use crate::tanh_method::ExactSolutionParams;

/// Which time operator couples `w` to `Φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeMode {
    #[default]
    Conformable,
    Caputo,
}

impl DerivativeMode {
    /// `I^α 1` at `t`.
    pub fn clock(self, t: f64, alpha: FractionalOrder) -> f64 {
        match self {
            DerivativeMode::Conformable => conformable_clock(t, alpha),
            DerivativeMode::Caputo => rl_clock(t, alpha),
        }
    }

    /// `I^α [s ↦ min(s, u)]` at `t`, in closed form.
    pub fn ramp_integral(self, t: f64, u: f64, alpha: FractionalOrder) -> f64 {
        let a = alpha.get();
        match self {
            DerivativeMode::Conformable => {
                if t <= u {
                    t.powf(a + 1.0) / (a + 1.0)
                } else {
                    u.powf(a + 1.0) / (a + 1.0) + u * (t.powf(a) - u.powf(a)) / a
                }
            }
            DerivativeMode::Caputo => {
                (t.powf(a + 1.0) - (t - u).max(0.0).powf(a + 1.0)) / gamma(a + 2.0)
            }
        }
    }
}

impl FromStr for DerivativeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "conformable" => Ok(Self::Conformable),
            "caputo" => Ok(Self::Caputo),
            other => Err(Error::invalid(format!("unknown derivative mode '{other}'"))),
        }
    }
}

impl std::fmt::Display for DerivativeMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DerivativeMode::Conformable => "conformable",
            DerivativeMode::Caputo => "caputo",
        })
    }
}

/// Sign of the `Φ_ν w_ν` term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EquationSign {
    /// `Φ w_νν − Φ_ν w_ν + Φ² w = 0`, satisfied by the tanh solution.
    #[default]
    Corrected,
    /// `Φ w_νν + Φ_ν w_ν + Φ² w = 0`, the form as usually printed.
    AsPrinted,
}

impl EquationSign {
    fn sigma(self) -> f64 {
        match self {
            EquationSign::Corrected => 1.0,
            EquationSign::AsPrinted => -1.0,
        }
    }
}

impl FromStr for EquationSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "corrected" => Ok(Self::Corrected),
            "printed" | "as-printed" => Ok(Self::AsPrinted),
            other => Err(Error::invalid(format!("unknown equation sign '{other}'"))),
        }
    }
}

/// Temporal factor of the tensor kernel, on the unit interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TemporalKernel {
    /// `min(t, u)`; trial functions vanish at `t = 0`.
    #[default]
    Homogeneous,
    /// `1 + min(t, u)`, the full `W₂¹` kernel.
    Literal,
}

impl TemporalKernel {
    pub fn eval(self, t: f64, u: f64) -> f64 {
        match self {
            TemporalKernel::Homogeneous => t.min(u),
            TemporalKernel::Literal => 1.0 + t.min(u),
        }
    }

    /// `I^α` of `s ↦ K(s/T, u/T)` from 0 to `t`, physical times.
    pub fn integral(
        self,
        t: f64,
        u: f64,
        horizon: f64,
        mode: DerivativeMode,
        alpha: FractionalOrder,
    ) -> f64 {
        let ramp = mode.ramp_integral(t, u, alpha) / horizon;
        match self {
            TemporalKernel::Homogeneous => ramp,
            TemporalKernel::Literal => mode.clock(t, alpha) + ramp,
        }
    }
}

impl FromStr for TemporalKernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "homogeneous" | "min" => Ok(Self::Homogeneous),
            "literal" | "one-plus-min" => Ok(Self::Literal),
            other => Err(Error::invalid(format!("unknown temporal kernel '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub alpha: FractionalOrder,
    pub space: Interval,
    pub time: Interval,
    pub n: usize,
    pub c: f64,
    pub derivative_mode: DerivativeMode,
    pub sign: EquationSign,
    pub temporal_kernel: TemporalKernel,
    pub max_outer_iters: usize,
    pub tol: f64,
    pub phi_floor: f64,
}

impl ProblemSpec {
    /// Unit square, `c = 0.001`, conformable coupling, corrected sign.
    pub fn new(alpha: f64, n: usize) -> Result<Self> {
        let spec = Self {
            alpha: FractionalOrder::new(alpha)?,
            space: Interval::unit(),
            time: Interval::unit(),
            n,
            c: 0.001,
            derivative_mode: DerivativeMode::Conformable,
            sign: EquationSign::Corrected,
            temporal_kernel: TemporalKernel::Homogeneous,
            max_outer_iters: 50,
            tol: 1e-8,
            phi_floor: 1e-6,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid(format!("n = {} must be at least 2", self.n)));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::invalid("tol must be positive"));
        }
        if self.phi_floor.is_nan() || self.phi_floor <= 0.0 {
            return Err(Error::invalid("phi_floor must be positive"));
        }
        if self.max_outer_iters == 0 {
            return Err(Error::invalid("max_outer_iters must be at least 1"));
        }
        if self.time.lo != 0.0 {
            return Err(Error::invalid("time interval must start at 0"));
        }
        Interval::new(self.space.lo, self.space.hi)?;
        Interval::new(self.time.lo, self.time.hi)?;
        if !self.c.is_finite() {
            return Err(Error::invalid("wave speed c must be finite"));
        }
        Ok(())
    }

    pub fn exact(&self) -> Result<ExactSolutionParams> {
        ExactSolutionParams::new(self.alpha, self.c)
    }
}

pub fn build_boundary_data(spec: &ProblemSpec) -> Result<BoundaryData> {
    spec.validate()?;
    BoundaryData::from_exact(&spec.exact()?, spec.space)
}

/// Fields of the previous iterate at one collocation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointState {
    pub nu: f64,
    pub t: f64,
    pub phi: f64,
    pub phi_nu: f64,
    pub w: f64,
    pub w_nu: f64,
}

/// `F = −f₂,νν + (σ Φ_ν w_ν − Φ² w) / Φ`, the right-hand side of `w₂,νν = F`.
pub fn rhs_functional(
    state: &PointState,
    f2_nunu: f64,
    sign: EquationSign,
    phi_floor: f64,
) -> Result<f64> {
    if state.phi.is_nan() || state.phi.abs() < phi_floor {
        return Err(Error::Singularity {
            nu: state.nu,
            t: state.t,
            phi: state.phi,
            floor: phi_floor,
        });
    }
    let s = sign.sigma();
    Ok(-f2_nunu + (s * state.phi_nu * state.w_nu - state.phi * state.phi * state.w) / state.phi)
}

/// `Φ(ν, ·) = h₁(ν) + I^α w(ν, ·)` on a sampled time line.
pub fn update_phi(
    h1_value: f64,
    w: &SampledSignal,
    mode: DerivativeMode,
    alpha: FractionalOrder,
) -> Result<SampledSignal> {
    match mode {
        DerivativeMode::Conformable => conformable_integral(w, alpha, h1_value),
        DerivativeMode::Caputo => {
            let mut out = rl_integral(w, alpha)?;
            out.values.iter_mut().for_each(|v| *v += h1_value);
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct IterationReport {
    pub iterations: usize,
    pub converged: bool,
    /// `max |Φᵏ − Φᵏ⁻¹|` over the collocation points, per iteration.
    pub changes: Vec<f64>,
    /// `max |L w₂ₙ − F|` over the collocation points, per iteration.
    pub collocation_residuals: Vec<f64>,
    pub orthonormality_defect: f64,
    pub jitter: f64,
}

/// Result of [`solve_vp`]: `w` as a kernel series and `Φ` evaluable anywhere.
#[derive(Clone)]
pub struct VpSolution {
    pub spec: ProblemSpec,
    pub w: SeriesSolution,
    pub homogenizer: Homogenizer,
    pub report: IterationReport,
    /// `Φ` at the collocation points after the final iteration.
    pub collocation_phi: Vec<f64>,
}

impl std::fmt::Debug for VpSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VpSolution")
            .field("spec", &self.spec)
            .field("report", &self.report)
            .finish_non_exhaustive()
    }
}

impl VpSolution {
    fn time_term(&self, nu: f64, t: f64, d: usize) -> f64 {
        let basis = &self.w.basis;
        let (mode, alpha) = (self.spec.derivative_mode, self.spec.alpha);
        let series: f64 = self
            .w
            .nodal
            .iter()
            .enumerate()
            .filter(|(_, g)| **g != 0.0)
            .map(|(k, g)| {
                g * basis.spatial_factor(k, nu, d) * basis.temporal_integral(k, t, mode, alpha)
            })
            .sum();
        series + mode.clock(t, alpha) * self.homogenizer.f2.initial_bubble(nu, d)
    }

    /// `Φ(ν, t)`.
    pub fn phi(&self, nu: f64, t: f64) -> f64 {
        self.homogenizer.f1.value(nu, t) + self.time_term(nu, t, 0)
    }

    /// `Φ_ν(ν, t)`.
    pub fn phi_nu(&self, nu: f64, t: f64) -> f64 {
        self.homogenizer.f1.d_nu(nu, t, 1) + self.time_term(nu, t, 1)
    }

    /// `w(ν, t) = w₂ₙ + f₂`.
    pub fn w(&self, nu: f64, t: f64) -> f64 {
        self.w.evaluate(nu, t)
    }

    pub fn in_domain(&self, nu: f64, t: f64) -> bool {
        self.spec.space.contains(nu) && self.spec.time.contains(t)
    }
}

/// `Φ(ν, t)` with a domain check.
pub fn evaluate_solution(solution: &VpSolution, nu: f64, t: f64) -> Result<f64> {
    if !solution.in_domain(nu, t) {
        return Err(Error::invalid(format!(
            "({nu}, {t}) outside [{}, {}] × [{}, {}]",
            solution.spec.space.lo,
            solution.spec.space.hi,
            solution.spec.time.lo,
            solution.spec.time.hi
        )));
    }
    Ok(solution.phi(nu, t))
}

/// Solves with boundary data taken from the tanh solution.
pub fn solve_vp(spec: &ProblemSpec) -> Result<VpSolution> {
    let data = build_boundary_data(spec)?;
    solve_vp_with_data(spec, &data)
}

/// Precomputed trial-function values at the collocation points.
struct CollocationTables {
    w0: DMatrix<f64>,
    w1: DMatrix<f64>,
    p0: DMatrix<f64>,
    p1: DMatrix<f64>,
}

impl CollocationTables {
    fn new(basis: &BasisSystem, mode: DerivativeMode, alpha: FractionalOrder) -> Self {
        let m = basis.len();
        let pts = &basis.collocation.points;
        let rows: Vec<Vec<[f64; 4]>> = pts
            .par_iter()
            .map(|&(nu, t)| {
                (0..m)
                    .map(|k| {
                        let a0 = basis.spatial_factor(k, nu, 0);
                        let a1 = basis.spatial_factor(k, nu, 1);
                        let b = basis.temporal_factor(k, t);
                        let ib = basis.temporal_integral(k, t, mode, alpha);
                        [a0 * b, a1 * b, a0 * ib, a1 * ib]
                    })
                    .collect()
            })
            .collect();
        let table = |q: usize| DMatrix::from_fn(m, m, |j, k| rows[j][k][q]);
        Self {
            w0: table(0),
            w1: table(1),
            p0: table(2),
            p1: table(3),
        }
    }
}

pub fn solve_vp_with_data(spec: &ProblemSpec, data: &BoundaryData) -> Result<VpSolution> {
    spec.validate()?;
    let (mode, alpha) = (spec.derivative_mode, spec.alpha);
    let homogenizer = build_homogenizer(data, spec.space);
    let collocation = collocation_points(spec.n, spec.space, spec.time)?;
    let basis = Arc::new(BasisSystem::new(
        collocation,
        spec.space,
        spec.time,
        spec.temporal_kernel,
    )?);
    let tables = CollocationTables::new(&basis, mode, alpha);
    let pts = basis.collocation.points.clone();
    let (f1, f2) = (&homogenizer.f1, &homogenizer.f2);

    let column = |f: &dyn Fn(f64, f64) -> f64| {
        DVector::from_iterator(pts.len(), pts.iter().map(|&(nu, t)| f(nu, t)))
    };
    let f1_v = column(&|nu, t| f1.value(nu, t));
    let f1_nu = column(&|nu, t| f1.d_nu(nu, t, 1));
    let f2_v = column(&|nu, t| f2.value(nu, t));
    let f2_nu = column(&|nu, t| f2.d_nu(nu, t, 1));
    let f2_nunu = column(&|nu, t| f2.d_nu(nu, t, 2));
    let bubble = column(&|nu, t| mode.clock(t, alpha) * f2.initial_bubble(nu, 0));
    let bubble_nu = column(&|nu, t| mode.clock(t, alpha) * f2.initial_bubble(nu, 1));

    let mut report = IterationReport {
        orthonormality_defect: basis.orthonormality_defect(),
        jitter: basis.jitter,
        ..Default::default()
    };

    // Φ⁰ = f₁, w⁰ = f₂
    let mut phi = f1_v.clone();
    let mut phi_nu = f1_nu.clone();
    let mut w = f2_v.clone();
    let mut w_nu = f2_nu.clone();
    let mut series = solve_linear(basis.clone(), &vec![0.0; basis.len()])?;

    for _ in 0..spec.max_outer_iters {
        let rhs: Vec<f64> = (0..pts.len())
            .map(|j| {
                let state = PointState {
                    nu: pts[j].0,
                    t: pts[j].1,
                    phi: phi[j],
                    phi_nu: phi_nu[j],
                    w: w[j],
                    w_nu: w_nu[j],
                };
                rhs_functional(&state, f2_nunu[j], spec.sign, spec.phi_floor)
            })
            .collect::<Result<_>>()?;
        series = solve_linear(basis.clone(), &rhs)?;
        let gamma = DVector::from_column_slice(&series.nodal);

        w = &tables.w0 * &gamma + &f2_v;
        w_nu = &tables.w1 * &gamma + &f2_nu;
        let next_phi = &tables.p0 * &gamma + &f1_v + &bubble;
        phi_nu = &tables.p1 * &gamma + &f1_nu + &bubble_nu;

        let change = next_phi
            .iter()
            .zip(phi.iter())
            .fold(0.0, |m, (a, b)| crate::nan_max(m, (a - b).abs()));
        phi = next_phi;
        report.iterations += 1;
        report.changes.push(change);
        report
            .collocation_residuals
            .push(series.collocation_residual());
        if !change.is_finite() {
            return Err(Error::NoConvergence {
                iterations: report.iterations,
                residual: change,
                last_iterate: phi.iter().copied().collect(),
            });
        }
        if change < spec.tol {
            report.converged = true;
            break;
        }
    }

    series.offset = Some(homogenizer.f2.clone());
    Ok(VpSolution {
        spec: spec.clone(),
        w: series,
        homogenizer,
        report,
        collocation_phi: phi.iter().copied().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rhs_constant_state_is_zero() {
        let s = PointState {
            nu: 0.5,
            t: 0.5,
            phi: 6.0,
            phi_nu: 0.0,
            w: 0.0,
            w_nu: 0.0,
        };
        assert_eq!(
            rhs_functional(&s, 0.0, EquationSign::Corrected, 1e-6).unwrap(),
            0.0
        );
    }

    #[test]
    fn rhs_reduces_without_gradient() {
        let s = PointState {
            nu: 0.5,
            t: 0.5,
            phi: 4.0,
            phi_nu: 0.0,
            w: 0.3,
            w_nu: 7.0,
        };
        let f = rhs_functional(&s, 0.25, EquationSign::Corrected, 1e-6).unwrap();
        assert_abs_diff_eq!(f, -0.25 - 4.0 * 0.3, epsilon = 1e-15);
    }

    #[test]
    fn rhs_sign_flag() {
        let s = PointState {
            nu: 0.5,
            t: 0.5,
            phi: 2.0,
            phi_nu: 1.0,
            w: 0.0,
            w_nu: 3.0,
        };
        assert_eq!(
            rhs_functional(&s, 0.0, EquationSign::Corrected, 1e-6).unwrap(),
            1.5
        );
        assert_eq!(
            rhs_functional(&s, 0.0, EquationSign::AsPrinted, 1e-6).unwrap(),
            -1.5
        );
    }

    #[test]
    fn rhs_singularity() {
        let s = PointState {
            nu: 0.2,
            t: 0.4,
            phi: 1e-9,
            phi_nu: 0.0,
            w: 0.0,
            w_nu: 0.0,
        };
        match rhs_functional(&s, 0.0, EquationSign::Corrected, 1e-6) {
            Err(Error::Singularity { nu, t, .. }) => assert_eq!((nu, t), (0.2, 0.4)),
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn spec_validation() {
        assert!(ProblemSpec::new(0.5, 1).is_err());
        assert!(ProblemSpec::new(0.0, 6).is_err());
        let mut s = ProblemSpec::new(0.5, 6).unwrap();
        s.tol = 0.0;
        assert!(s.validate().is_err());
        let mut s = ProblemSpec::new(0.5, 6).unwrap();
        s.time = Interval { lo: 0.5, hi: 1.0 };
        assert!(s.validate().is_err());
    }

    #[test]
    fn enum_parsing() {
        assert_eq!(
            "Caputo".parse::<DerivativeMode>().unwrap(),
            DerivativeMode::Caputo
        );
        assert_eq!(
            "printed".parse::<EquationSign>().unwrap(),
            EquationSign::AsPrinted
        );
        assert_eq!(
            "literal".parse::<TemporalKernel>().unwrap(),
            TemporalKernel::Literal
        );
        assert!("riesz".parse::<DerivativeMode>().is_err());
    }

    #[test]
    fn ramp_integrals_reduce_classically() {
        let one = FractionalOrder::new(1.0).unwrap();
        for mode in [DerivativeMode::Conformable, DerivativeMode::Caputo] {
            // ∫₀¹ min(s, 0.4) ds = 0.08 + 0.4·0.6
            assert_abs_diff_eq!(mode.ramp_integral(1.0, 0.4, one), 0.32, epsilon = 1e-14);
            assert_abs_diff_eq!(mode.clock(0.7, one), 0.7, epsilon = 1e-15);
        }
    }

    #[test]
    fn update_phi_zero_signal() {
        let g = crate::fractional::TimeGrid::new(1.0, 16).unwrap();
        let w = SampledSignal::sample(g, |_| 0.0);
        for mode in [DerivativeMode::Conformable, DerivativeMode::Caputo] {
            let phi = update_phi(4.5, &w, mode, FractionalOrder::new(0.3).unwrap()).unwrap();
            assert!(phi.values.iter().all(|&v| v == 4.5));
        }
    }
}
