//! Meshless reproducing-kernel solver for the time-fractional Vakhnenko–Parkes
//! equation
//!
//! ```text
//! D_t^α Φ_νν − Φ D_t^α Φ_ν + Φ² D_t^α Φ = 0,   (ν, t) ∈ [a, b] × [0, T]
//! ```
//!
//! reformulated through `w = D_t^α Φ` as the spatial problem
//! `Φ w_νν − Φ_ν w_ν + Φ² w = 0` coupled to a fractional integral in time.
//!
//! The crate is organised bottom-up:
//!
//! - [`kernels`]: piecewise-polynomial reproducing kernels of `W₂³` and `W₂¹`,
//!   their tensor products and the Sobolev inner products they reproduce.
//! - [`fractional`]: Caputo (L1), Riemann–Liouville and conformable operators
//!   on uniform grids.
//! - [`tanh_method`]: tanh-ansatz traveling waves with exact polynomial
//!   arithmetic in `Y = tanh ξ`, and the closed-form solution used as the
//!   reference.
//! - [`solver`]: homogenization, collocation, orthonormalized kernel basis and
//!   the fixed-point coupling of `w` and `Φ`.
//! - [`analysis`]: error norms, convergence orders, the ν-slice error table
//!   and surface exports.
//! - [`cli`]: the `rkhs-vp` command line.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod fractional;
pub mod kernels;
pub mod solver;
pub mod tanh_method;

pub use error::{Error, Result};

/// `max` that lets a NaN through instead of discarding it.
pub(crate) fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}
