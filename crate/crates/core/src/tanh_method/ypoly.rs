use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Num, ToPrimitive};

/// Polynomial in `Y = tanh ξ` with coefficients of `Y⁰, Y¹, …`.
///
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct YPolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Num + Clone> YPolynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `Y^power`
    pub fn monomial(power: usize) -> Self {
        let mut c = vec![T::zero(); power + 1];
        c[power] = T::one();
        Self { coeffs: c }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `Y^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// `d/dY`
    pub fn d_dy(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut factor = T::zero();
        for c in self.coeffs.iter().skip(1) {
            factor = factor + T::one();
            out.push(c.clone() * factor.clone());
        }
        Self::new(out)
    }

    /// `d/dξ = (1 − Y²) d/dY`, since `d tanh ξ / dξ = 1 − tanh² ξ`.
    pub fn d_dxi(&self) -> Self {
        let p = self.d_dy();
        let one_minus_y2 = Self::new(vec![T::one(), T::zero(), T::zero() - T::one()]);
        &one_minus_y2 * &p
    }

    pub fn nth_d_dxi(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.d_dxi())
    }

    pub fn eval(&self, y: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * y.clone() + c.clone())
    }
}

impl<T: Num + Clone + ToPrimitive> YPolynomial<T> {
    pub fn to_f64(&self) -> YPolynomial<f64> {
        YPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| c.to_f64().expect("coefficient representable as f64"))
                .collect(),
        )
    }
}

impl YPolynomial<f64> {
    pub fn eval_f64(&self, y: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl<T: Num + Clone> Add for &YPolynomial<T> {
    type Output = YPolynomial<T>;

    fn add(self, rhs: Self) -> YPolynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        YPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Num + Clone> Sub for &YPolynomial<T> {
    type Output = YPolynomial<T>;

    fn sub(self, rhs: Self) -> YPolynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        YPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Num + Clone> Neg for &YPolynomial<T> {
    type Output = YPolynomial<T>;

    fn neg(self) -> YPolynomial<T> {
        YPolynomial::new(self.coeffs.iter().map(|c| T::zero() - c.clone()).collect())
    }
}

impl<T: Num + Clone> Mul for &YPolynomial<T> {
    type Output = YPolynomial<T>;

    fn mul(self, rhs: Self) -> YPolynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return YPolynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        YPolynomial::new(out)
    }
}
