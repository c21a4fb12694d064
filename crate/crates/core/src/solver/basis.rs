use nalgebra::DMatrix;
use rayon::prelude::*;

use super::{DerivativeMode, TemporalKernel};
use crate::error::{Error, Result};
use crate::fractional::FractionalOrder;
use crate::kernels::{affine_map, AffineMap, Interval, PiecewisePolyKernel1D};

/// Collocation points `(a + i(b−a)/n, jT/n)`, `i = 1..n−1`, `j = 1..n`,
/// ordered with `i` outer.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationSet {
    pub n: usize,
    pub points: Vec<(f64, f64)>,
}

impl CollocationSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn collocation_points(n: usize, space: Interval, time: Interval) -> Result<CollocationSet> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "grid density n = {n} must be at least 2"
        )));
    }
    let points = (1..n)
        .flat_map(|i| {
            let nu = space.lo + i as f64 * space.width() / n as f64;
            (1..=n).map(move |j| (nu, time.lo + j as f64 * time.width() / n as f64))
        })
        .collect();
    Ok(CollocationSet { n, points })
}

/// Trial system `ψᵢ = L_y K(x, y)|_{y = pᵢ}` for `L = ∂²/∂ν²`, its Gram
/// matrix and the lower-triangular orthonormalization coefficients.
#[derive(Debug, Clone)]
pub struct BasisSystem {
    pub collocation: CollocationSet,
    spatial: PiecewisePolyKernel1D,
    temporal: TemporalKernel,
    space_map: AffineMap,
    time_map: AffineMap,
    horizon: f64,
    pub gram: DMatrix<f64>,
    pub beta: DMatrix<f64>,
    pub jitter: f64,
}

impl BasisSystem {
    pub fn new(
        collocation: CollocationSet,
        space: Interval,
        time: Interval,
        temporal: TemporalKernel,
    ) -> Result<Self> {
        let spatial = PiecewisePolyKernel1D::w3_constrained();
        let space_map = affine_map(space)?;
        let time_map = affine_map(time)?;
        let gram = gram_matrix(&collocation, &spatial, temporal, &space_map, &time_map);
        let (beta, jitter) = orthonormalize(&gram)?;
        Ok(Self {
            collocation,
            spatial,
            temporal,
            space_map,
            time_map,
            horizon: time.width(),
            gram,
            beta,
            jitter,
        })
    }

    pub fn len(&self) -> usize {
        self.collocation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.collocation.is_empty()
    }

    pub fn temporal_kernel(&self) -> TemporalKernel {
        self.temporal
    }

    /// `∂^d_ν` of the spatial factor of `ψᵢ`:
    /// `J^{2+d} ∂^d_s ∂²_z R³(ν̂, ν̂ᵢ)`.
    pub fn spatial_factor(&self, i: usize, nu: f64, d: usize) -> f64 {
        let zi = self.space_map.to_unit(self.collocation.points[i].0);
        let s = self.space_map.to_unit(nu);
        self.space_map.derivative_factor(2 + d) * self.spatial.eval_deriv(s, zi, d, 2)
    }

    pub fn temporal_factor(&self, i: usize, t: f64) -> f64 {
        let ti = self.collocation.points[i].1;
        self.temporal
            .eval(self.time_map.to_unit(t), self.time_map.to_unit(ti))
    }

    /// Fractional time integral of the temporal factor of `ψᵢ`, from 0 to `t`.
    pub fn temporal_integral(
        &self,
        i: usize,
        t: f64,
        mode: DerivativeMode,
        alpha: FractionalOrder,
    ) -> f64 {
        let ti = self.collocation.points[i].1;
        self.temporal.integral(t, ti, self.horizon, mode, alpha)
    }

    pub fn psi(&self, i: usize, x: (f64, f64)) -> Result<f64> {
        if i >= self.len() {
            return Err(Error::invalid(format!(
                "basis index {i} out of range (M = {})",
                self.len()
            )));
        }
        Ok(self.spatial_factor(i, x.0, 0) * self.temporal_factor(i, x.1))
    }

    /// `(L ψᵢ)(x)`, used for the collocation residual.
    pub fn l_psi(&self, i: usize, x: (f64, f64)) -> f64 {
        let zi = self.space_map.to_unit(self.collocation.points[i].0);
        let s = self.space_map.to_unit(x.0);
        self.space_map.derivative_factor(4)
            * self.spatial.eval_deriv(s, zi, 2, 2)
            * self.temporal_factor(i, x.1)
    }

    /// `‖β G βᵀ − I‖_max`.
    pub fn orthonormality_defect(&self) -> f64 {
        orthonormality_defect(&self.beta, &self.gram)
    }
}

/// `G_ij = ⟨ψᵢ, ψⱼ⟩ = (Lψⱼ)(pᵢ) = J⁴ ∂²_s∂²_z R³(ν̂ᵢ, ν̂ⱼ) · K_t(t̂ᵢ, t̂ⱼ)`.
pub fn gram_matrix(
    points: &CollocationSet,
    spatial: &PiecewisePolyKernel1D,
    temporal: TemporalKernel,
    space_map: &AffineMap,
    time_map: &AffineMap,
) -> DMatrix<f64> {
    let m = points.len();
    let scale = space_map.derivative_factor(4);
    let unit: Vec<(f64, f64)> = points
        .points
        .iter()
        .map(|&(nu, t)| (space_map.to_unit(nu), time_map.to_unit(t)))
        .collect();
    // upper triangle only, mirrored so the matrix is exactly symmetric
    let rows: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|i| {
            let (si, ti) = unit[i];
            unit[i..]
                .iter()
                .map(|&(sj, tj)| scale * spatial.eval_deriv(si, sj, 2, 2) * temporal.eval(ti, tj))
                .collect()
        })
        .collect();
    DMatrix::from_fn(m, m, |i, j| {
        if i <= j {
            rows[i][j - i]
        } else {
            rows[j][i - j]
        }
    })
}

const JITTER_ATTEMPTS: usize = 3;

/// Lower-triangular `β` with `β G βᵀ = I`, i.e. `β = L⁻¹` for `G = LLᵀ`.
///
/// Row `i` of `β` holds the Gram–Schmidt coefficients of `ψ̄ᵢ` in terms of
/// `ψ₁..ψᵢ`. If the factorization breaks down, `10^{k−1}·1e−12·tr(G)/M` is
/// added to the diagonal on attempt `k`.
pub fn orthonormalize(gram: &DMatrix<f64>) -> Result<(DMatrix<f64>, f64)> {
    let m = gram.nrows();
    if m == 0 || gram.ncols() != m {
        return Err(Error::invalid("Gram matrix must be square and non-empty"));
    }
    let base = 1e-12 * gram.trace() / m as f64;
    let mut last = (0, 0.0);
    for attempt in 0..=JITTER_ATTEMPTS {
        let jitter = if attempt == 0 {
            0.0
        } else {
            base * 10f64.powi(attempt as i32 - 1)
        };
        match cholesky(gram, jitter) {
            Ok(l) => return Ok((lower_inverse(&l), jitter)),
            Err(fail) => last = fail,
        }
    }
    Err(Error::Conditioning {
        attempts: JITTER_ATTEMPTS,
        row: last.0,
        pivot: last.1,
    })
}

fn cholesky(a: &DMatrix<f64>, jitter: f64) -> std::result::Result<DMatrix<f64>, (usize, f64)> {
    let m = a.nrows();
    let mut l = DMatrix::<f64>::zeros(m, m);
    for j in 0..m {
        let mut d = a[(j, j)] + jitter;
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !d.is_finite() || d <= 0.0 {
            return Err((j, d));
        }
        let djj = d.sqrt();
        l[(j, j)] = djj;
        for i in (j + 1)..m {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

fn lower_inverse(l: &DMatrix<f64>) -> DMatrix<f64> {
    let m = l.nrows();
    let mut inv = DMatrix::<f64>::zeros(m, m);
    for col in 0..m {
        inv[(col, col)] = 1.0 / l[(col, col)];
        for i in (col + 1)..m {
            let mut s = 0.0;
            for k in col..i {
                s -= l[(i, k)] * inv[(k, col)];
            }
            inv[(i, col)] = s / l[(i, i)];
        }
    }
    inv
}

pub fn orthonormality_defect(beta: &DMatrix<f64>, gram: &DMatrix<f64>) -> f64 {
    let product = beta * gram * beta.transpose();
    let m = product.nrows();
    let mut worst = 0.0f64;
    for i in 0..m {
        for j in 0..m {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((product[(i, j)] - target).abs());
        }
    }
    worst
}
