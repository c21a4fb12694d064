/// Dense bivariate polynomial `Σ c[i][j] sⁱ zʲ` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    degree: usize,
    // row-major, c[i * (degree + 1) + j] multiplies sⁱ zʲ
    coeffs: Vec<i64>,
}

impl BivariatePoly {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![0; (degree + 1) * (degree + 1)],
        }
    }

    pub fn from_terms(degree: usize, terms: &[(usize, usize, i64)]) -> Self {
        let mut p = Self::zero(degree);
        for &(i, j, c) in terms {
            p.add_to(i, j, c);
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, i: usize, j: usize) -> i64 {
        self.coeffs[i * (self.degree + 1) + j]
    }

    pub(crate) fn add_to(&mut self, i: usize, j: usize, delta: i64) {
        assert!(
            i <= self.degree && j <= self.degree,
            "term s^{i} z^{j} exceeds degree"
        );
        self.coeffs[i * (self.degree + 1) + j] += delta;
    }

    /// Exchanges the roles of `s` and `z`.
    pub fn swapped(&self) -> Self {
        let mut out = Self::zero(self.degree);
        for i in 0..=self.degree {
            for j in 0..=self.degree {
                out.coeffs[j * (self.degree + 1) + i] = self.coeff(i, j);
            }
        }
        out
    }

    pub fn eval_deriv(&self, s: f64, z: f64, ds: usize, dz: usize) -> f64 {
        if ds > self.degree || dz > self.degree {
            return 0.0;
        }
        let zs = derivative_powers(z, self.degree, dz);
        let mut total = 0.0;
        // Horner in s over the differentiated rows
        for i in (ds..=self.degree).rev() {
            let mut row = 0.0;
            for (j, zj) in zs.iter().enumerate().skip(dz) {
                let c = self.coeff(i, j);
                if c != 0 {
                    row += c as f64 * zj;
                }
            }
            total = total * s + row * falling(i, ds);
        }
        total
    }
}

/// `dᵈ/dxᵈ xʲ` evaluated at `x` for `j = 0..=degree`.
fn derivative_powers(x: f64, degree: usize, d: usize) -> Vec<f64> {
    let mut out = vec![0.0; degree + 1];
    let mut pow = 1.0;
    for (j, slot) in out.iter_mut().enumerate().skip(d) {
        *slot = falling(j, d) * pow;
        pow *= x;
    }
    out
}

fn falling(n: usize, k: usize) -> f64 {
    ((n + 1 - k)..=n).fold(1.0, |acc, v| acc * v as f64)
}
