//! Traveling-wave solutions by the tanh method.
//!
//! Under `ξ = kν − c t^α/α` with conformable time derivatives the
//! Vakhnenko–Parkes equation `Φ w_νν − Φ_ν w_ν + Φ² w = 0`, `w = D_t^α Φ`,
//! reduces (after dividing by `−c`) to
//!
//! ```text
//! k²(ΦΦ‴ − Φ′Φ″) + Φ²Φ′ = 0
//! ```
//!
//! which integrates once to `k²(ΦΦ″ − (Φ′)²) + Φ³/3 = A`. Substituting
//! `Φ = Σ aᵢ Yⁱ`, `Y = tanh ξ`, turns both into polynomials in `Y`; this
//! module builds them exactly, solves the coefficient system and exposes the
//! resulting closed-form solution `Φ = 6 − 6 tanh²(ν − c t^α/α)`.

mod ypoly;

pub use ypoly::YPolynomial;

use nalgebra::{DMatrix, DVector};
use num_rational::Rational64;
use num_traits::Num;

use crate::error::{Error, Result};
use crate::fractional::{conformable_clock, FractionalOrder};

/// `Φ(ξ) = Σ_{i=0}^{m} aᵢ tanhⁱ ξ` with `ξ = kν − c t^α/α`.
#[derive(Debug, Clone, PartialEq)]
pub struct TanhAnsatz<T = f64> {
    pub coeffs: Vec<T>,
    pub k: T,
    pub c: T,
}

impl<T: Num + Clone> TanhAnsatz<T> {
    pub fn new(coeffs: Vec<T>, k: T, c: T) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::invalid(
                "ansatz needs m ≥ 1, i.e. at least two coefficients",
            ));
        }
        Ok(Self { coeffs, k, c })
    }

    pub fn m(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn phi(&self) -> YPolynomial<T> {
        YPolynomial::new(self.coeffs.clone())
    }
}

/// Reduced traveling-wave residual `k²(ΦΦ‴ − Φ′Φ″) + Φ²Φ′`.
pub fn reduced_residual<T: Num + Clone>(ansatz: &TanhAnsatz<T>) -> YPolynomial<T> {
    let phi = ansatz.phi();
    let d1 = phi.d_dxi();
    let d2 = d1.d_dxi();
    let d3 = d2.d_dxi();
    let k2 = ansatz.k.clone() * ansatz.k.clone();
    let dispersive = &(&phi * &d3) - &(&d1 * &d2);
    let nonlinear = &(&phi * &phi) * &d1;
    &dispersive.scale(&k2) + &nonlinear
}

/// Once-integrated residual `k²(ΦΦ″ − (Φ′)²) + Φ³/3 − A`.
pub fn integrated_residual<T: Num + Clone>(ansatz: &TanhAnsatz<T>, a: &T) -> YPolynomial<T> {
    let phi = ansatz.phi();
    let d1 = phi.d_dxi();
    let d2 = d1.d_dxi();
    let k2 = ansatz.k.clone() * ansatz.k.clone();
    let three = T::one() + T::one() + T::one();
    let cube = &(&phi * &phi) * &phi;
    let dispersive = &(&phi * &d2) - &(&d1 * &d1);
    let sum = &dispersive.scale(&k2) + &cube.scale(&(T::one() / three));
    &sum - &YPolynomial::constant(a.clone())
}

/// Product `Π Φ^(dᵢ)` appearing in a reduced ODE, described by its
/// derivative orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceTerm {
    pub derivative_orders: Vec<usize>,
}

impl BalanceTerm {
    pub fn new(derivative_orders: &[usize]) -> Self {
        Self {
            derivative_orders: derivative_orders.to_vec(),
        }
    }

    /// Y-degree of the term for an ansatz of degree `m`; each `d/dξ` adds one.
    pub fn degree(&self, m: usize) -> usize {
        self.derivative_orders.iter().map(|d| m + d).sum()
    }
}

/// Homogeneous balance between two terms of the reduced ODE: the `m` at
/// which their leading Y-degrees coincide.
pub fn balance(dispersive: &BalanceTerm, nonlinear: &BalanceTerm) -> Result<usize> {
    let (p1, q1) = (
        dispersive.derivative_orders.len() as i64,
        dispersive.derivative_orders.iter().sum::<usize>() as i64,
    );
    let (p2, q2) = (
        nonlinear.derivative_orders.len() as i64,
        nonlinear.derivative_orders.iter().sum::<usize>() as i64,
    );
    if p1 == p2 {
        return Err(Error::invalid(
            "terms of equal nonlinearity cannot be balanced",
        ));
    }
    let (num, den) = (q2 - q1, p1 - p2);
    if num % den != 0 || num / den < 1 {
        return Err(Error::invalid(format!(
            "balance gives non-integer or non-positive m = {num}/{den}"
        )));
    }
    Ok((num / den) as usize)
}

/// Degree of the tanh ansatz for the integrated Vakhnenko–Parkes form:
/// `ΦΦ″` (degree `2m+2`) against `Φ³` (degree `3m`).
pub fn hbp_balance() -> usize {
    balance(&BalanceTerm::new(&[0, 2]), &BalanceTerm::new(&[0, 0, 0]))
        .expect("VP balance is well posed")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    pub max_iters: usize,
    pub tol: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            max_iters: 100,
            tol: 1e-12,
        }
    }
}

/// Solves the Y-coefficient equations of the integrated residual (A = 0) for
/// `a₀..a_m` at fixed `k` by Gauss–Newton with the analytic Jacobian.
pub fn solve_coefficients(
    m: usize,
    k_fixed: f64,
    guess: &[f64],
    opts: NewtonOptions,
) -> Result<TanhAnsatz<f64>> {
    if guess.len() != m + 1 {
        return Err(Error::LengthMismatch {
            left: guess.len(),
            right: m + 1,
        });
    }
    if guess.iter().any(|g| !g.is_finite()) || !k_fixed.is_finite() {
        return Err(Error::invalid("non-finite guess"));
    }
    let rows = (3 * m).max(2 * m + 2) + 1;
    let mut ansatz = TanhAnsatz::new(guess.to_vec(), k_fixed, 0.0)?;
    let mut resid = f64::INFINITY;
    for _ in 0..=opts.max_iters {
        let r = integrated_residual(&ansatz, &0.0);
        resid = r.max_abs_coeff();
        if resid < opts.tol {
            return Ok(ansatz);
        }
        let rv = DVector::from_iterator(rows, (0..rows).map(|i| r.coeff(i)));
        let jac = coefficient_jacobian(&ansatz, rows);
        let step = jac
            .svd(true, true)
            .solve(&rv, 1e-14)
            .map_err(|e| Error::invalid(format!("least-squares step failed: {e}")))?;
        for (a, d) in ansatz.coeffs.iter_mut().zip(step.iter()) {
            *a -= d;
        }
        if ansatz.coeffs.iter().any(|a| !a.is_finite()) {
            break;
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iters,
        residual: resid,
        last_iterate: ansatz.coeffs,
    })
}

/// Column `i` holds the Y-coefficients of `∂R/∂aᵢ` where
/// `R = k²(ΦΦ″ − (Φ′)²) + Φ³/3`:
/// `∂R/∂aᵢ = k²(YⁱΦ″ + Φ(Yⁱ)″ − 2Φ′(Yⁱ)′) + Φ²Yⁱ`.
fn coefficient_jacobian(ansatz: &TanhAnsatz<f64>, rows: usize) -> DMatrix<f64> {
    let phi = ansatz.phi();
    let d1 = phi.d_dxi();
    let d2 = d1.d_dxi();
    let phi2 = &phi * &phi;
    let k2 = ansatz.k * ansatz.k;
    let mut jac = DMatrix::zeros(rows, ansatz.coeffs.len());
    for i in 0..ansatz.coeffs.len() {
        let e = YPolynomial::<f64>::monomial(i);
        let e1 = e.d_dxi();
        let e2 = e1.d_dxi();
        let disp = &(&(&e * &d2) + &(&phi * &e2)) - &(&d1 * &e1).scale(&2.0);
        let col = &disp.scale(&k2) + &(&phi2 * &e);
        for r in 0..rows {
            jac[(r, i)] = col.coeff(r);
        }
    }
    jac
}

/// `6 − 6 tanh²(ν − c t^α/α)`, `t ≥ 0`.
pub fn exact_solution(nu: f64, t: f64, alpha: FractionalOrder, c: f64) -> f64 {
    let y = (nu - c * conformable_clock(t, alpha)).tanh();
    6.0 * (1.0 - y) * (1.0 + y)
}

/// Conformable time derivative of [`exact_solution`]:
/// `12c·tanh ξ·sech² ξ`. At `t = 0` this is the `ξ = ν` limit.
pub fn exact_w(nu: f64, t: f64, alpha: FractionalOrder, c: f64) -> f64 {
    let y = (nu - c * conformable_clock(t, alpha)).tanh();
    12.0 * c * y * (1.0 - y) * (1.0 + y)
}

/// Highest ν-derivative of `Φ` the evaluator precomputes.
const MAX_NU_ORDER: usize = 5;

/// The tanh solution `a₀ = 6, a₁ = 0, a₂ = −6, k = 1` with free speed `c`.
///
/// Construction re-derives both residuals in rational arithmetic and fails if
/// either is not identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSolutionParams {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub k: f64,
    pub c: f64,
    pub alpha: FractionalOrder,
    // D^d Φ as polynomials in Y, d = 0..=MAX_NU_ORDER
    derivatives: Vec<YPolynomial<f64>>,
}

impl ExactSolutionParams {
    pub fn new(alpha: FractionalOrder, c: f64) -> Result<Self> {
        let r = Rational64::from_integer;
        let exact = TanhAnsatz::new(vec![r(6), r(0), r(-6)], r(1), r(0))?;
        if !reduced_residual(&exact).is_zero() || !integrated_residual(&exact, &r(0)).is_zero() {
            return Err(Error::invalid("tanh solution fails its residual identity"));
        }
        let phi = exact.phi().to_f64();
        let derivatives = (0..=MAX_NU_ORDER).map(|d| phi.nth_d_dxi(d)).collect();
        Ok(Self {
            a0: 6.0,
            a1: 0.0,
            a2: -6.0,
            k: 1.0,
            c,
            alpha,
            derivatives,
        })
    }

    pub fn xi(&self, nu: f64, t: f64) -> f64 {
        self.k * nu - self.c * conformable_clock(t, self.alpha)
    }

    pub fn phi(&self, nu: f64, t: f64) -> f64 {
        exact_solution(nu, t, self.alpha, self.c)
    }

    /// `∂^order Φ / ∂ν^order`.
    pub fn phi_nu(&self, nu: f64, t: f64, order: usize) -> f64 {
        assert!(
            order <= MAX_NU_ORDER,
            "ν-derivative order {order} not precomputed"
        );
        self.derivatives[order].eval_f64(self.xi(nu, t).tanh())
    }

    pub fn w(&self, nu: f64, t: f64) -> f64 {
        exact_w(nu, t, self.alpha, self.c)
    }

    /// `∂^order w / ∂ν^order` where `w = −c Φ′(ξ)`.
    pub fn w_nu(&self, nu: f64, t: f64, order: usize) -> f64 {
        -self.c * self.phi_nu(nu, t, order + 1)
    }
}
