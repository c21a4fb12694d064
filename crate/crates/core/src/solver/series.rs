use std::sync::Arc;

use nalgebra::DVector;

use super::basis::BasisSystem;
use super::boundary::TransfiniteSurface;
use crate::error::{Error, Result};

/// `w₂ₙ(x) = Σᵢ Aᵢ ψ̄ᵢ(x)` with `ψ̄ᵢ = Σ_{k≤i} β_ik ψ_k`, plus an optional
/// homogenization offset.
#[derive(Clone)]
pub struct SeriesSolution {
    pub basis: Arc<BasisSystem>,
    /// `Aᵢ = Σ_{k≤i} β_ik F(p_k)`
    pub coefficients: Vec<f64>,
    /// Weights on the raw `ψ_k`: `γ = βᵀ A`.
    pub nodal: Vec<f64>,
    pub rhs: Vec<f64>,
    pub offset: Option<TransfiniteSurface>,
}

impl std::fmt::Debug for SeriesSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SeriesSolution")
            .field("coefficients", &self.coefficients)
            .field("has_offset", &self.offset.is_some())
            .finish_non_exhaustive()
    }
}

impl SeriesSolution {
    /// `Σ γ_k ∂^d_ν ψ_k(ν, t)` without the offset.
    pub fn series_nu(&self, nu: f64, t: f64, d: usize) -> f64 {
        self.nodal
            .iter()
            .enumerate()
            .filter(|(_, g)| **g != 0.0)
            .map(|(k, g)| {
                g * self.basis.spatial_factor(k, nu, d) * self.basis.temporal_factor(k, t)
            })
            .sum()
    }

    pub fn series(&self, nu: f64, t: f64) -> f64 {
        self.series_nu(nu, t, 0)
    }

    /// Series value plus the offset surface, if any.
    pub fn evaluate(&self, nu: f64, t: f64) -> f64 {
        let base = self.series(nu, t);
        match &self.offset {
            Some(f) => base + f.value(nu, t),
            None => base,
        }
    }

    /// `max_j |(L w₂ₙ)(p_j) − F(p_j)|`.
    pub fn collocation_residual(&self) -> f64 {
        let gamma = DVector::from_column_slice(&self.nodal);
        let lw = &self.basis.gram * gamma;
        lw.iter()
            .zip(&self.rhs)
            .fold(0.0, |m, (a, b)| crate::nan_max(m, (a - b).abs()))
    }
}

/// Projects onto the orthonormalized trial system given `F` at the
/// collocation points.
pub fn solve_linear(basis: Arc<BasisSystem>, f_values: &[f64]) -> Result<SeriesSolution> {
    if f_values.len() != basis.len() {
        return Err(Error::LengthMismatch {
            left: f_values.len(),
            right: basis.len(),
        });
    }
    let f = DVector::from_column_slice(f_values);
    let coeffs = &basis.beta * &f;
    let nodal = basis.beta.tr_mul(&coeffs);
    Ok(SeriesSolution {
        coefficients: coeffs.iter().copied().collect(),
        nodal: nodal.iter().copied().collect(),
        rhs: f_values.to_vec(),
        basis,
        offset: None,
    })
}
