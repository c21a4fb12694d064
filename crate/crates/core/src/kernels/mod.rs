//! Reproducing kernels on the unit interval and their tensor products.
//!
//! Every kernel here is a symmetric piecewise polynomial with one breakpoint on
//! the diagonal `s = z`. Coefficients are stored as exact integer numerators
//! over a common denominator so derivatives of any order are exact up to the
//! final division.

mod inner_product;
mod poly;

pub use inner_product::{
    gauss_legendre, sobolev_inner_product, InnerProductSpec, KernelSection, Polynomial1D, Smooth1D,
};
pub use poly::BivariatePoly;

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::invalid(format!("degenerate interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn unit() -> Self {
        Self { lo: 0.0, hi: 1.0 }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

/// Affine bijection between an interval and `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    lo: f64,
    width: f64,
}

impl AffineMap {
    pub fn to_unit(&self, x: f64) -> f64 {
        (x - self.lo) / self.width
    }

    pub fn from_unit(&self, u: f64) -> f64 {
        self.lo + u * self.width
    }

    /// Chain-rule factor picked up by a derivative of the given order taken in
    /// physical coordinates: `d/dx = (1/width) d/du`.
    pub fn derivative_factor(&self, order: usize) -> f64 {
        self.width.powi(-(order as i32))
    }
}

pub fn affine_map(domain: Interval) -> Result<AffineMap> {
    let domain = Interval::new(domain.lo, domain.hi)?;
    Ok(AffineMap {
        lo: domain.lo,
        width: domain.width(),
    })
}

/// Symmetric kernel `K(s, z)` stored as two polynomial branches: `low` on
/// `s ≤ z` and `high` on `s > z`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePolyKernel1D {
    low: BivariatePoly,
    high: BivariatePoly,
    denominator: i64,
    smoothness_order: usize,
    vanishes_at: Vec<f64>,
}

// Numerators of the W₂³[0,1] kernel over 18720, as (power of s, power of z, coefficient).
const W3_LOW: [(usize, usize, i64); 26] = [
    (1, 1, 4320),
    (1, 2, -3600),
    (1, 3, -1200),
    (1, 4, 600),
    (1, 5, -120),
    (2, 1, -3600),
    (2, 2, 3780),
    (2, 3, -300),
    (2, 4, 150),
    (2, 5, -30),
    (3, 1, -1200),
    (3, 2, 1260),
    (3, 3, -100),
    (3, 4, 50),
    (3, 5, -10),
    (4, 1, -180),
    (4, 2, 150),
    (4, 3, 50),
    (4, 4, -25),
    (4, 5, 5),
    (5, 0, 156),
    (5, 1, -120),
    (5, 2, -30),
    (5, 3, -10),
    (5, 4, 5),
    (5, 5, -1),
];

const W3_HIGH: [(usize, usize, i64); 26] = [
    (0, 5, 156),
    (1, 1, 4320),
    (1, 2, -3600),
    (1, 3, -1200),
    (1, 4, -180),
    (1, 5, -120),
    (2, 1, -3600),
    (2, 2, 3780),
    (2, 3, 1260),
    (2, 4, 150),
    (2, 5, -30),
    (3, 1, -1200),
    (3, 2, -300),
    (3, 3, -100),
    (3, 4, 50),
    (3, 5, -10),
    (4, 1, 600),
    (4, 2, 150),
    (4, 3, 50),
    (4, 4, -25),
    (4, 5, 5),
    (5, 1, -120),
    (5, 2, -30),
    (5, 3, -10),
    (5, 4, 5),
    (5, 5, -1),
];

impl PiecewisePolyKernel1D {
    pub fn from_branches(
        low: BivariatePoly,
        high: BivariatePoly,
        denominator: i64,
        smoothness_order: usize,
        vanishes_at: Vec<f64>,
    ) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::invalid("kernel denominator must be nonzero"));
        }
        if smoothness_order == 0 {
            return Err(Error::invalid("smoothness order must be at least 1"));
        }
        Ok(Self {
            low,
            high,
            denominator,
            smoothness_order,
            vanishes_at,
        })
    }

    /// Kernel of `{h ∈ W₂³[0,1] : h(0) = h(1) = 0}` under
    /// `⟨f,g⟩ = Σ_{i<3} f⁽ⁱ⁾(0)g⁽ⁱ⁾(0) + ∫ f‴g‴`.
    pub fn w3_constrained() -> Self {
        Self {
            low: BivariatePoly::from_terms(5, &W3_LOW),
            high: BivariatePoly::from_terms(5, &W3_HIGH),
            denominator: 18720,
            smoothness_order: 3,
            vanishes_at: vec![0.0, 1.0],
        }
    }

    /// `1 + min(s, z)`, the kernel of `W₂¹[0,1]` with `⟨f,g⟩ = f(0)g(0) + ∫ f′g′`.
    pub fn w1() -> Self {
        Self {
            low: BivariatePoly::from_terms(1, &[(0, 0, 1), (1, 0, 1)]),
            high: BivariatePoly::from_terms(1, &[(0, 0, 1), (0, 1, 1)]),
            denominator: 1,
            smoothness_order: 1,
            vanishes_at: Vec::new(),
        }
    }

    /// `min(s, z)`, the kernel of `{f ∈ W₂¹[0,1] : f(0) = 0}` with `⟨f,g⟩ = ∫ f′g′`.
    pub fn w1_homogeneous() -> Self {
        Self {
            low: BivariatePoly::from_terms(1, &[(1, 0, 1)]),
            high: BivariatePoly::from_terms(1, &[(0, 1, 1)]),
            denominator: 1,
            smoothness_order: 1,
            vanishes_at: vec![0.0],
        }
    }

    /// Returns a copy with `delta` added to one numerator of the low branch.
    /// Only used to check that the property suite notices a broken kernel.
    pub fn with_perturbed_coefficient(&self, i: usize, j: usize, delta: i64) -> Self {
        let mut out = self.clone();
        out.low.add_to(i, j, delta);
        out
    }

    pub fn smoothness_order(&self) -> usize {
        self.smoothness_order
    }

    pub fn vanishes_at(&self) -> &[f64] {
        &self.vanishes_at
    }

    pub fn low_branch(&self) -> &BivariatePoly {
        &self.low
    }

    pub fn high_branch(&self) -> &BivariatePoly {
        &self.high
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn eval(&self, s: f64, z: f64) -> f64 {
        self.eval_deriv(s, z, 0, 0)
    }

    /// `∂^ds_s ∂^dz_z K(s, z)`; the low branch is used on the diagonal.
    pub fn eval_deriv(&self, s: f64, z: f64, ds: usize, dz: usize) -> f64 {
        let branch = if s <= z { &self.low } else { &self.high };
        branch.eval_deriv(s, z, ds, dz) / self.denominator as f64
    }

    /// Evaluates one branch regardless of the ordering of `s` and `z`.
    pub fn eval_branch(&self, high: bool, s: f64, z: f64, ds: usize, dz: usize) -> f64 {
        let branch = if high { &self.high } else { &self.low };
        branch.eval_deriv(s, z, ds, dz) / self.denominator as f64
    }
}

fn check_unit(what: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value,
            lo: 0.0,
            hi: 1.0,
        })
    }
}

/// `1 + min(ν, η)` on `[0,1]²`.
pub fn w1_kernel(nu: f64, eta: f64) -> Result<f64> {
    check_unit("nu", nu)?;
    check_unit("eta", eta)?;
    Ok(1.0 + nu.min(eta))
}

/// `min(t, u)` on `[0,1]²`.
pub fn w1h_kernel(t: f64, u: f64) -> Result<f64> {
    check_unit("t", t)?;
    check_unit("u", u)?;
    Ok(t.min(u))
}

/// Mixed derivative of the W₂³ kernel, orders up to three in each argument.
pub fn w3_kernel_deriv(s: f64, z: f64, ds: usize, dz: usize) -> Result<f64> {
    check_unit("s", s)?;
    check_unit("z", z)?;
    for order in [ds, dz] {
        if order > 3 {
            return Err(Error::DerivativeOrder { order, max: 3 });
        }
    }
    Ok(w3().eval_deriv(s, z, ds, dz))
}

fn w3() -> &'static PiecewisePolyKernel1D {
    use std::sync::OnceLock;
    static KERNEL: OnceLock<PiecewisePolyKernel1D> = OnceLock::new();
    KERNEL.get_or_init(PiecewisePolyKernel1D::w3_constrained)
}

/// Derivative orders `(dν, dt, dz, du)` for a tensor kernel evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TensorOrders {
    pub d_nu: usize,
    pub d_t: usize,
    pub d_z: usize,
    pub d_u: usize,
}

/// Product kernel `K((ν,t),(z,u)) = K_s(ν,z) · K_t(t,u)` on the unit square.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorKernel2D {
    pub spatial: PiecewisePolyKernel1D,
    pub temporal: PiecewisePolyKernel1D,
}

impl TensorKernel2D {
    pub fn new(spatial: PiecewisePolyKernel1D, temporal: PiecewisePolyKernel1D) -> Self {
        Self { spatial, temporal }
    }

    /// The default W^(3,1) kernel: constrained `R³` in space and `min` in time.
    pub fn w31_homogeneous() -> Self {
        Self::new(
            PiecewisePolyKernel1D::w3_constrained(),
            PiecewisePolyKernel1D::w1_homogeneous(),
        )
    }

    pub fn eval_deriv(&self, x: (f64, f64), y: (f64, f64), orders: TensorOrders) -> f64 {
        self.spatial.eval_deriv(x.0, y.0, orders.d_nu, orders.d_z)
            * self.temporal.eval_deriv(x.1, y.1, orders.d_t, orders.d_u)
    }
}

pub fn tensor_kernel_deriv(
    kernel: &TensorKernel2D,
    x: (f64, f64),
    y: (f64, f64),
    orders: TensorOrders,
) -> Result<f64> {
    for (what, v) in [("nu", x.0), ("t", x.1), ("z", y.0), ("u", y.1)] {
        check_unit(what, v)?;
    }
    for order in [orders.d_nu, orders.d_z] {
        if order > 3 {
            return Err(Error::DerivativeOrder { order, max: 3 });
        }
    }
    for order in [orders.d_t, orders.d_u] {
        if order > 1 {
            return Err(Error::DerivativeOrder { order, max: 1 });
        }
    }
    Ok(kernel.eval_deriv(x, y, orders))
}
