use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Truncated Maclaurin series `a₀ + a₁z + ... + a_M z^M`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Requires at least `a₀, a₁` and finite coefficients.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(invalid("power series needs truncation order M >= 1"));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(invalid("power series has a non-finite coefficient"));
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    fn raw(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(coeffs.len() >= 2);
        PowerSeries { coeffs }
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); order.max(1) + 1];
        c[1] = Complex64::new(1.0, 0.0);
        PowerSeries::raw(c)
    }

    /// `(1 + z)^α` to order `M`.
    pub fn binomial(alpha: f64, order: usize) -> Self {
        // c_{k+1} = c_k (α − k)/(k + 1)
        let mut c = Vec::with_capacity(order.max(1) + 1);
        let mut v = 1.0;
        for k in 0..=order.max(1) {
            c.push(Complex64::new(v, 0.0));
            v *= (alpha - k as f64) / (k + 1) as f64;
        }
        PowerSeries::raw(c)
    }

    /// `1/(1 − z) = Σ z^k`.
    pub fn geometric(order: usize) -> Self {
        PowerSeries::raw(vec![Complex64::new(1.0, 0.0); order.max(1) + 1])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// Horner evaluation of the truncated series.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let m = self.order().min(other.order());
        let mut c = vec![Complex64::new(0.0, 0.0); m + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(m + 1) {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(m + 1 - i) {
                c[i + j] += a * b;
            }
        }
        PowerSeries::raw(c)
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let m = self.order().min(other.order());
        PowerSeries::raw((0..=m).map(|k| self.coeffs[k] + other.coeffs[k]).collect())
    }

    pub fn scale(&self, s: Complex64) -> PowerSeries {
        PowerSeries::raw(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `f(z) + c`.
    pub fn add_constant(&self, c: Complex64) -> PowerSeries {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// `f(z^k)` keeping the same truncation order.
    pub fn stretch(&self, k: usize) -> PowerSeries {
        let m = self.order();
        let mut c = vec![Complex64::new(0.0, 0.0); m + 1];
        for (j, &a) in self.coeffs.iter().enumerate() {
            if j * k > m {
                break;
            }
            c[j * k] = a;
        }
        PowerSeries::raw(c)
    }

    /// `∫₀^z f`, raising the order by one.
    pub fn integrate(&self) -> PowerSeries {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(Complex64::new(0.0, 0.0));
        for (k, &a) in self.coeffs.iter().enumerate() {
            c.push(a / (k + 1) as f64);
        }
        PowerSeries::raw(c)
    }

    /// `1/f` (requires `a₀ ≠ 0`).
    pub fn reciprocal(&self) -> Result<PowerSeries> {
        let a0 = self.coeffs[0];
        if a0 == Complex64::new(0.0, 0.0) {
            return Err(invalid("reciprocal of a series with zero constant term"));
        }
        let m = self.order();
        let mut c = vec![Complex64::new(0.0, 0.0); m + 1];
        c[0] = a0.inv();
        for k in 1..=m {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.coeffs[j] * c[k - j];
            }
            c[k] = -acc / a0;
        }
        Ok(PowerSeries::raw(c))
    }

    /// `|a_n|²` for `n = 0..=M`.
    pub fn squared_moduli(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rejects_short_or_nonfinite() {
        assert!(PowerSeries::from_real(&[1.0]).is_err());
        assert!(PowerSeries::from_real(&[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn binomial_times_binomial() {
        // (1+z)^{1/2} squared is 1 + z
        let s = PowerSeries::binomial(0.5, 30);
        let sq = s.mul(&s);
        assert!((sq.coeff(0) - c(1.0)).norm() < 1e-15);
        assert!((sq.coeff(1) - c(1.0)).norm() < 1e-15);
        for k in 2..=30 {
            assert!(sq.coeff(k).norm() < 1e-15, "{k}");
        }
    }

    #[test]
    fn reciprocal_of_one_minus_z() {
        let f = PowerSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0]).unwrap();
        let g = f.reciprocal().unwrap();
        assert_eq!(g, PowerSeries::geometric(4));
    }

    #[test]
    fn stretch_and_integrate() {
        let g = PowerSeries::geometric(6).stretch(2).integrate();
        // ∫ 1/(1 − z²) = z + z³/3 + z⁵/5 + ...
        assert!((g.coeff(1) - c(1.0)).norm() < 1e-16);
        assert!(g.coeff(2).norm() == 0.0);
        assert!((g.coeff(5) - c(0.2)).norm() < 1e-16);
        let z = c(0.3);
        assert!((g.eval(z).re - 0.3f64.atanh()).abs() < 1e-4);
    }
}
