use std::sync::Arc;

use super::{Interval, PiecewisePolyKernel1D};
use crate::error::{Error, Result};

/// A function on the line that can report derivatives up to some order.
pub trait Smooth1D {
    fn derivative(&self, x: f64, order: usize) -> f64;

    fn value(&self, x: f64) -> f64 {
        self.derivative(x, 0)
    }

    /// Interior points where high derivatives may jump.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

impl<F> Smooth1D for F
where
    F: Fn(f64, usize) -> f64,
{
    fn derivative(&self, x: f64, order: usize) -> f64 {
        self(x, order)
    }
}

impl<T: Smooth1D + ?Sized> Smooth1D for Arc<T> {
    fn derivative(&self, x: f64, order: usize) -> f64 {
        (**self).derivative(x, order)
    }

    fn breakpoints(&self) -> Vec<f64> {
        (**self).breakpoints()
    }
}

/// Polynomial with coefficients in increasing powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial1D(pub Vec<f64>);

impl Smooth1D for Polynomial1D {
    fn derivative(&self, x: f64, order: usize) -> f64 {
        self.0
            .iter()
            .enumerate()
            .skip(order)
            .rev()
            .fold(0.0, |acc, (i, &c)| {
                let f = ((i + 1 - order)..=i).fold(1.0, |a, v| a * v as f64);
                acc * x + c * f
            })
    }
}

/// Kernel section `s ↦ ∂^dz_z K(s, z)` at a fixed `z`.
#[derive(Debug, Clone, Copy)]
pub struct KernelSection<'a> {
    pub kernel: &'a PiecewisePolyKernel1D,
    pub z: f64,
    pub dz: usize,
}

impl Smooth1D for KernelSection<'_> {
    fn derivative(&self, x: f64, order: usize) -> f64 {
        self.kernel.eval_deriv(x, self.z, order, self.dz)
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.z]
    }
}

/// Parameters of the `W₂ʳ` inner product and its composite Gauss–Legendre rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InnerProductSpec {
    pub order: usize,
    pub quadrature_panels: usize,
    pub quadrature_nodes_per_panel: usize,
}

impl InnerProductSpec {
    pub fn new(order: usize) -> Self {
        Self {
            order,
            quadrature_panels: 32,
            quadrature_nodes_per_panel: 8,
        }
    }
}

const REFINE_TOL: f64 = 1e-12;
const MAX_PANELS: usize = 1 << 14;

/// `Σ_{i<r} f⁽ⁱ⁾(a)g⁽ⁱ⁾(a) + ∫_a^b f⁽ʳ⁾g⁽ʳ⁾`.
///
/// The integral is split at the breakpoints of `f` and `g`; each piece is
/// computed on `spec.quadrature_panels` panels and the panel count doubled
/// until two successive values agree to 1e-12.
pub fn sobolev_inner_product(
    f: &dyn Smooth1D,
    g: &dyn Smooth1D,
    spec: &InnerProductSpec,
    interval: Interval,
) -> Result<f64> {
    if spec.order == 0 {
        return Err(Error::invalid("inner product order must be at least 1"));
    }
    if spec.quadrature_panels == 0 || spec.quadrature_nodes_per_panel == 0 {
        return Err(Error::invalid(
            "quadrature needs at least one panel and one node",
        ));
    }
    let interval = Interval::new(interval.lo, interval.hi)?;
    let r = spec.order;
    let a = interval.lo;
    let boundary: f64 = (0..r)
        .map(|i| f.derivative(a, i) * g.derivative(a, i))
        .sum();

    let (nodes, weights) = gauss_legendre(spec.quadrature_nodes_per_panel);
    let integrand = |x: f64| f.derivative(x, r) * g.derivative(x, r);
    let mut cuts: Vec<f64> = f
        .breakpoints()
        .into_iter()
        .chain(g.breakpoints())
        .filter(|x| *x > interval.lo && *x < interval.hi)
        .collect();
    cuts.push(interval.lo);
    cuts.push(interval.hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut total = boundary;
    for w in cuts.windows(2) {
        let piece = Interval { lo: w[0], hi: w[1] };
        let mut panels = spec.quadrature_panels;
        let mut previous = composite(&integrand, piece, panels, &nodes, &weights);
        loop {
            panels *= 2;
            let current = composite(&integrand, piece, panels, &nodes, &weights);
            if (current - previous).abs() < REFINE_TOL || panels >= MAX_PANELS {
                total += current;
                break;
            }
            previous = current;
        }
    }
    Ok(total)
}

fn composite(
    integrand: &dyn Fn(f64) -> f64,
    interval: Interval,
    panels: usize,
    nodes: &[f64],
    weights: &[f64],
) -> f64 {
    let h = interval.width() / panels as f64;
    (0..panels)
        .map(|p| {
            let mid = interval.lo + (p as f64 + 0.5) * h;
            nodes
                .iter()
                .zip(weights)
                .map(|(&x, &w)| w * integrand(mid + 0.5 * h * x))
                .sum::<f64>()
                * 0.5
                * h
        })
        .sum()
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
