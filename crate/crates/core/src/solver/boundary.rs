use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernels::{Interval, Smooth1D};
use crate::tanh_method::ExactSolutionParams;

/// A one-variable profile with derivatives, shareable across threads.
pub type Profile = Arc<dyn Smooth1D + Send + Sync>;

const CORNER_TOL: f64 = 1e-10;

/// Initial and lateral data for `Φ` (`h₁, h₂, h₃`) and for `w` (`g₁, g₂, g₃`).
///
/// `h₁`/`g₁` are functions of ν and must provide ν-derivatives up to order 1
/// (`h₁`) and 2 (`g₁`); the lateral traces are functions of t and only their
/// values are used.
#[derive(Clone)]
pub struct BoundaryData {
    pub h1: Profile,
    pub h2: Profile,
    pub h3: Profile,
    pub g1: Profile,
    pub g2: Profile,
    pub g3: Profile,
    pub space: Interval,
}

impl std::fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoundaryData")
            .field("space", &self.space)
            .finish_non_exhaustive()
    }
}

impl BoundaryData {
    /// Validates corner compatibility `h₂(0) = h₁(a)`, `h₃(0) = h₁(b)` and the
    /// same for the `g`s.
    pub fn new(h: [Profile; 3], g: [Profile; 3], space: Interval) -> Result<Self> {
        let [h1, h2, h3] = h;
        let [g1, g2, g3] = g;
        let checks = [
            ("h2(0) vs h1(a)", h2.value(0.0), h1.value(space.lo)),
            ("h3(0) vs h1(b)", h3.value(0.0), h1.value(space.hi)),
            ("g2(0) vs g1(a)", g2.value(0.0), g1.value(space.lo)),
            ("g3(0) vs g1(b)", g3.value(0.0), g1.value(space.hi)),
        ];
        for (what, x, y) in checks {
            if (x - y).abs() > CORNER_TOL {
                return Err(Error::invalid(format!(
                    "incompatible corner data: {what} = {x} vs {y}"
                )));
            }
        }
        Ok(Self {
            h1,
            h2,
            h3,
            g1,
            g2,
            g3,
            space,
        })
    }

    /// Data sampled from the tanh solution and its conformable time derivative.
    pub fn from_exact(exact: &ExactSolutionParams, space: Interval) -> Result<Self> {
        let (a, b) = (space.lo, space.hi);
        let e = Arc::new(exact.clone());
        let h1: Profile = {
            let e = e.clone();
            Arc::new(move |nu: f64, d: usize| e.phi_nu(nu, 0.0, d))
        };
        let g1: Profile = {
            let e = e.clone();
            Arc::new(move |nu: f64, d: usize| e.w_nu(nu, 0.0, d))
        };
        let trace = |x: f64, phi: bool| -> Profile {
            let e = e.clone();
            Arc::new(move |t: f64, d: usize| {
                assert_eq!(d, 0, "lateral traces are used by value only");
                if phi {
                    e.phi(x, t)
                } else {
                    e.w(x, t)
                }
            })
        };
        Self::new(
            [h1, trace(a, true), trace(b, true)],
            [g1, trace(a, false), trace(b, false)],
            space,
        )
    }

    /// `Φ ≡ phi`, `w ≡ w` everywhere.
    pub fn constant(phi: f64, w: f64, space: Interval) -> Result<Self> {
        let c =
            |v: f64| -> Profile { Arc::new(move |_: f64, d: usize| if d == 0 { v } else { 0.0 }) };
        Self::new([c(phi), c(phi), c(phi)], [c(w), c(w), c(w)], space)
    }
}

/// Transfinite interpolant of initial and lateral data on `[a, b] × [0, T]`:
///
/// `f(ν,t) = h₁(ν) + h₂(t) − h₁(a) + λ(ν)·[h₃(t) − h₂(t) − h₁(b) + h₁(a)]`,
/// `λ = (ν − a)/(b − a)`.
#[derive(Clone)]
pub struct TransfiniteSurface {
    initial: Profile,
    left: Profile,
    right: Profile,
    space: Interval,
    initial_at_a: f64,
    initial_at_b: f64,
}

impl TransfiniteSurface {
    pub fn new(initial: Profile, left: Profile, right: Profile, space: Interval) -> Self {
        let initial_at_a = initial.value(space.lo);
        let initial_at_b = initial.value(space.hi);
        Self {
            initial,
            left,
            right,
            space,
            initial_at_a,
            initial_at_b,
        }
    }

    fn lambda(&self, nu: f64) -> f64 {
        (nu - self.space.lo) / self.space.width()
    }

    fn bridge(&self, t: f64) -> f64 {
        self.right.value(t) - self.left.value(t) - self.initial_at_b + self.initial_at_a
    }

    pub fn value(&self, nu: f64, t: f64) -> f64 {
        if nu == self.space.lo {
            return self.left.value(t);
        }
        if nu == self.space.hi {
            return self.right.value(t);
        }
        self.initial.value(nu) + self.left.value(t) - self.initial_at_a
            + self.lambda(nu) * self.bridge(t)
    }

    /// `∂^order f / ∂ν^order`, `order ≥ 1`.
    pub fn d_nu(&self, nu: f64, t: f64, order: usize) -> f64 {
        match order {
            0 => self.value(nu, t),
            1 => self.initial.derivative(nu, 1) + self.bridge(t) / self.space.width(),
            _ => self.initial.derivative(nu, order),
        }
    }

    /// Initial profile minus its linear interpolant between `a` and `b`;
    /// vanishes at both ends.
    pub fn initial_bubble(&self, nu: f64, order: usize) -> f64 {
        let slope = (self.initial_at_b - self.initial_at_a) / self.space.width();
        match order {
            0 => {
                if nu == self.space.lo || nu == self.space.hi {
                    return 0.0;
                }
                self.initial.value(nu) - self.initial_at_a - slope * (nu - self.space.lo)
            }
            1 => self.initial.derivative(nu, 1) - slope,
            _ => self.initial.derivative(nu, order),
        }
    }
}

/// Offsets that carry the data: `Φ = w₁ + f₁`, `w = w₂ + f₂` with `w₁, w₂`
/// vanishing at `t = 0`, `ν = a` and `ν = b`.
#[derive(Clone)]
pub struct Homogenizer {
    pub f1: TransfiniteSurface,
    pub f2: TransfiniteSurface,
}

pub fn build_homogenizer(data: &BoundaryData, space: Interval) -> Homogenizer {
    Homogenizer {
        f1: TransfiniteSurface::new(data.h1.clone(), data.h2.clone(), data.h3.clone(), space),
        f2: TransfiniteSurface::new(data.g1.clone(), data.g2.clone(), data.g3.clone(), space),
    }
}
