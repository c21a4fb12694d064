//! Fractional operators on uniform time grids.
//!
//! - Caputo derivative by the L1 product rule.
//! - Riemann–Liouville integral by product trapezoid (exact for piecewise-linear data).
//! - Conformable derivative `t^{1−α} f′(t)` and its inverse, the weighted
//!   integral `∫₀ᵗ s^{α−1} w(s) ds`, also exact for piecewise-linear data.
//!
//! `α = 1` reduces every operator to its classical counterpart.

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::kernels::Smooth1D;

/// Order `α ∈ (0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::invalid(format!(
                "fractional order {alpha} not in (0, 1]"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }
}

/// Nodes `t_j = j·T/N`, `j = 0..=N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_end: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t_end: f64, steps: usize) -> Result<Self> {
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::invalid(format!(
                "time horizon {t_end} must be positive"
            )));
        }
        if steps == 0 {
            return Err(Error::invalid("time grid needs at least one step"));
        }
        Ok(Self { t_end, steps })
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn step(&self) -> f64 {
        self.t_end / self.steps as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        if j == self.steps {
            self.t_end
        } else {
            j as f64 * self.step()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.steps).map(|j| self.node(j))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    pub grid: TimeGrid,
    pub values: Vec<f64>,
}

impl SampledSignal {
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.steps() + 1 {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: grid.steps() + 1,
            });
        }
        Ok(Self { grid, values })
    }

    pub fn sample(grid: TimeGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().map(f).collect();
        Self { grid, values }
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("grid has at least two nodes")
    }
}

/// Caputo derivative of order α at every node; node 0 is set to zero.
pub fn caputo_l1(f: &SampledSignal, alpha: FractionalOrder) -> Result<SampledSignal> {
    let a = alpha.get();
    let dt = f.grid.step();
    let n = f.grid.steps();
    let v = &f.values;
    if alpha.is_classical() {
        let mut out = Vec::with_capacity(n + 1);
        out.push((v[1] - v[0]) / dt);
        out.extend((1..=n).map(|j| (v[j] - v[j - 1]) / dt));
        return SampledSignal::new(f.grid, out);
    }
    let b: Vec<f64> = (0..n)
        .map(|k| ((k + 1) as f64).powf(1.0 - a) - (k as f64).powf(1.0 - a))
        .collect();
    let scale = dt.powf(-a) / gamma(2.0 - a);
    let diffs: Vec<f64> = (1..=n).map(|j| v[j] - v[j - 1]).collect();
    let mut out = vec![0.0; n + 1];
    for (j, slot) in out.iter_mut().enumerate().skip(1) {
        let acc: f64 = (0..j).map(|k| b[k] * diffs[j - k - 1]).sum();
        *slot = scale * acc;
    }
    SampledSignal::new(f.grid, out)
}

/// Riemann–Liouville integral `I^α f` with `f` taken piecewise linear.
pub fn rl_integral(f: &SampledSignal, alpha: FractionalOrder) -> Result<SampledSignal> {
    let a = alpha.get();
    let dt = f.grid.step();
    let n = f.grid.steps();
    let v = &f.values;
    let p = |x: f64| x.powf(a + 1.0);
    let scale = dt.powf(a) / gamma(a + 2.0);
    let mut out = vec![0.0; n + 1];
    for (j, slot) in out.iter_mut().enumerate().skip(1) {
        let jf = j as f64;
        let mut acc = (p(jf - 1.0) - (jf - 1.0 - a) * jf.powf(a)) * v[0];
        for (k, &vk) in v.iter().enumerate().take(j).skip(1) {
            let m = (j - k) as f64;
            acc += (p(m + 1.0) - 2.0 * p(m) + p(m - 1.0)) * vk;
        }
        acc += v[j];
        *slot = scale * acc;
    }
    SampledSignal::new(f.grid, out)
}

/// `t^{1−α} f′(t)`.
///
/// At `t = 0` the value is only defined in the classical case; for `α < 1` it
/// is an evaluation error (the caller must supply the limit itself).
pub fn conformable_deriv(f: &dyn Smooth1D, t: f64, alpha: FractionalOrder) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain {
            what: "t",
            value: t,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    if t == 0.0 {
        if alpha.is_classical() {
            return Ok(f.derivative(0.0, 1));
        }
        return Err(Error::invalid(
            "conformable derivative at t = 0 requires α = 1",
        ));
    }
    Ok(t.powf(1.0 - alpha.get()) * f.derivative(t, 1))
}

/// `initial + ∫₀ᵗ s^{α−1} w(s) ds` at every node, `w` taken piecewise linear.
pub fn conformable_integral(
    w: &SampledSignal,
    alpha: FractionalOrder,
    initial: f64,
) -> Result<SampledSignal> {
    let a = alpha.get();
    let n = w.grid.steps();
    let dt = w.grid.step();
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = initial;
    out.push(acc);
    for k in 0..n {
        let (lo, hi) = (w.grid.node(k), w.grid.node(k + 1));
        // ∫ s^{α−1} and ∫ s^α over the panel, closed form
        let m0 = (hi.powf(a) - lo.powf(a)) / a;
        let m1 = (hi.powf(a + 1.0) - lo.powf(a + 1.0)) / (a + 1.0);
        let slope = (w.values[k + 1] - w.values[k]) / dt;
        acc += w.values[k] * m0 + slope * (m1 - lo * m0);
        out.push(acc);
    }
    SampledSignal::new(w.grid, out)
}

/// `∫₀ᵗ s^{α−1} ds = t^α/α`, the conformable integral of one.
pub fn conformable_clock(t: f64, alpha: FractionalOrder) -> f64 {
    t.powf(alpha.get()) / alpha.get()
}

/// `I^α 1 = t^α / Γ(1+α)`.
pub fn rl_clock(t: f64, alpha: FractionalOrder) -> f64 {
    t.powf(alpha.get()) / gamma(1.0 + alpha.get())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn half() -> FractionalOrder {
        FractionalOrder::new(0.5).unwrap()
    }

    #[test]
    fn order_validation() {
        assert!(FractionalOrder::new(0.0).is_err());
        assert!(FractionalOrder::new(1.2).is_err());
        assert!(FractionalOrder::new(f64::NAN).is_err());
        assert!(FractionalOrder::new(1.0).unwrap().is_classical());
    }

    #[test]
    fn grid_and_signal_shapes() {
        let g = TimeGrid::new(2.0, 4).unwrap();
        assert_eq!(g.nodes().collect::<Vec<_>>(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert!(TimeGrid::new(0.0, 4).is_err());
        assert!(TimeGrid::new(1.0, 0).is_err());
        assert!(SampledSignal::new(g, vec![0.0; 4]).is_err());
    }

    #[test]
    fn caputo_of_constant_is_zero() {
        let g = TimeGrid::new(1.0, 64).unwrap();
        let f = SampledSignal::sample(g, |_| 5.0);
        let d = caputo_l1(&f, half()).unwrap();
        assert!(d.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn caputo_of_linear() {
        let g = TimeGrid::new(1.0, 512).unwrap();
        let f = SampledSignal::sample(g, |t| t);
        let d = caputo_l1(&f, half()).unwrap();
        assert_abs_diff_eq!(d.last(), 2.0 / std::f64::consts::PI.sqrt(), epsilon = 1e-4);
    }

    #[test]
    fn caputo_of_square() {
        let g = TimeGrid::new(1.0, 512).unwrap();
        let f = SampledSignal::sample(g, |t| t * t);
        let d = caputo_l1(&f, half()).unwrap();
        assert_abs_diff_eq!(d.last(), 2.0 / gamma(2.5), epsilon = 1e-3);
    }

    #[test]
    fn caputo_classical_limit_is_difference_quotient() {
        let g = TimeGrid::new(1.0, 100).unwrap();
        let f = SampledSignal::sample(g, |t| 3.0 * t + 1.0);
        let d = caputo_l1(&f, FractionalOrder::new(1.0).unwrap()).unwrap();
        for v in d.values {
            assert_abs_diff_eq!(v, 3.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn rl_integral_of_zero_and_one() {
        let g = TimeGrid::new(1.0, 64).unwrap();
        let z = rl_integral(&SampledSignal::sample(g, |_| 0.0), half()).unwrap();
        assert!(z.values.iter().all(|&v| v == 0.0));
        let one = rl_integral(&SampledSignal::sample(g, |_| 1.0), half()).unwrap();
        for (t, v) in g.nodes().zip(&one.values) {
            assert_abs_diff_eq!(*v, rl_clock(t, half()), epsilon = 1e-12);
        }
        assert_abs_diff_eq!(
            one.last(),
            std::f64::consts::FRAC_2_SQRT_PI,
            epsilon = 1e-12
        );
    }

    #[test]
    fn rl_integral_classical_is_trapezoid() {
        let g = TimeGrid::new(1.0, 10).unwrap();
        let f = SampledSignal::sample(g, |t| t);
        let i = rl_integral(&f, FractionalOrder::new(1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(i.last(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn rl_inverts_caputo() {
        let g = TimeGrid::new(1.0, 512).unwrap();
        let f = SampledSignal::sample(g, |t| t * t);
        let back = rl_integral(&caputo_l1(&f, half()).unwrap(), half()).unwrap();
        for (a, b) in f.values.iter().zip(&back.values) {
            assert!((a - (b + f.values[0])).abs() < 5e-3);
        }
    }

    #[test]
    fn conformable_deriv_examples() {
        let a = half();
        let clock = |t: f64, d: usize| match d {
            0 => t.powf(0.5) / 0.5,
            1 => t.powf(-0.5),
            _ => unreachable!(),
        };
        for t in [0.1, 0.5, 2.0] {
            assert_abs_diff_eq!(
                conformable_deriv(&clock, t, a).unwrap(),
                1.0,
                epsilon = 1e-14
            );
        }
        let constant = |_: f64, d: usize| if d == 0 { 3.0 } else { 0.0 };
        assert_eq!(conformable_deriv(&constant, 0.7, a).unwrap(), 0.0);
        let sq = |t: f64, d: usize| if d == 0 { t * t } else { 2.0 * t };
        assert_abs_diff_eq!(
            conformable_deriv(&sq, 4.0, a).unwrap(),
            16.0,
            epsilon = 1e-12
        );
        assert!(conformable_deriv(&sq, 0.0, a).is_err());
        let one = FractionalOrder::new(1.0).unwrap();
        assert_eq!(conformable_deriv(&sq, 0.0, one).unwrap(), 0.0);
        assert!(conformable_deriv(&sq, -1.0, one).is_err());
    }

    #[test]
    fn conformable_integral_examples() {
        let g = TimeGrid::new(1.0, 32).unwrap();
        let zero = conformable_integral(&SampledSignal::sample(g, |_| 0.0), half(), 2.5).unwrap();
        assert!(zero.values.iter().all(|&v| v == 2.5));
        let one = conformable_integral(&SampledSignal::sample(g, |_| 1.0), half(), 0.0).unwrap();
        assert_abs_diff_eq!(one.last(), 2.0, epsilon = 1e-13);
    }

    #[test]
    fn conformable_integral_exact_for_linear() {
        // ∫₀¹ s^{-1/2} (1 + 2s) ds = 2 + 4/3
        let g = TimeGrid::new(1.0, 7).unwrap();
        let v = conformable_integral(&SampledSignal::sample(g, |t| 1.0 + 2.0 * t), half(), 0.0)
            .unwrap();
        assert_abs_diff_eq!(v.last(), 2.0 + 4.0 / 3.0, epsilon = 1e-13);
    }
}
