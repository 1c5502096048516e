use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use super::{lemma1_adaptive, PowerSeries, DEFAULT_ORDER};
use crate::accel::{exponent_families, sum_extrapolated, SumPlan};
use crate::error::{invalid, Result};
use crate::report::ExitTimeEstimate;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `f(z) = i(1 + z − √2 √(1 + z²))/(z − 1)`, principal square root: maps the
/// unit disc onto the upper half of the unit disc with `f(0) = i(√2 − 1)`.
pub fn halfdisc_map(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    I * (one + z - SQRT_2 * (one + z * z).sqrt()) / (z - one)
}

/// Maclaurin coefficients of [`halfdisc_map`] by series arithmetic.
pub fn halfdisc_coefficients(order: usize) -> Result<PowerSeries> {
    if order < 2 {
        return Err(invalid("half-disc series needs order >= 2"));
    }
    let root = PowerSeries::binomial(0.5, order).stretch(2);
    let mut linear = vec![Complex64::new(0.0, 0.0); order + 1];
    linear[0] = Complex64::new(1.0, 0.0);
    linear[1] = Complex64::new(1.0, 0.0);
    let numerator = PowerSeries::new(linear)?.add(&root.scale(Complex64::new(-SQRT_2, 0.0)));
    // 1/(z − 1) = −Σ z^k
    Ok(numerator.mul(&PowerSeries::geometric(order)).scale(-I))
}

/// Expected exit time of the half disc from `i(√2 − 1)` by the coefficient sum `½ Σ |a_n|²`.
pub fn halfdisc_exit_time(tol: f64) -> Result<ExitTimeEstimate> {
    lemma1_adaptive(halfdisc_coefficients, tol, DEFAULT_ORDER, 1 << 16)
}

/// `Σ_{m≥1} [1 − (1/√2) Σ_{ℓ≤⌊m/2⌋} C(1/2, ℓ)]²`, the same quantity written
/// through tails of the binomial series of `√2`; equals half the exit time.
pub fn halfdisc_tail_sum(tol: f64) -> Result<f64> {
    let mut m = 1usize;
    let mut partial_binom = 1.0; // Σ_{ℓ≤0} C(1/2, ℓ)
    let mut c = 1.0; // C(1/2, ℓ) at ℓ = ⌊m/2⌋
    let mut ell = 0usize;
    let next = || {
        while ell < m / 2 {
            c *= (0.5 - ell as f64) / (ell + 1) as f64;
            ell += 1;
            partial_binom += c;
        }
        m += 1;
        let t = 1.0 - partial_binom / SQRT_2;
        t * t
    };
    // The bracket behaves like ±ℓ^{−3/2}; the squared terms come in equal pairs.
    let plan = SumPlan {
        exponents: exponent_families(&[-2.0], 8, 8),
        first_checkpoint: 64,
        tol: tol.max(1e-15),
        max_terms: 1 << 22,
    };
    sum_extrapolated(next, &plan).map(|e| e.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_term() {
        let s = halfdisc_coefficients(10).unwrap();
        assert!((s.coeff(0) - I * (SQRT_2 - 1.0)).norm() < 1e-15);
        assert!((halfdisc_map(Complex64::new(0.0, 0.0)) - s.coeff(0)).norm() < 1e-15);
    }

    #[test]
    fn series_reproduces_map() {
        let s = halfdisc_coefficients(400).unwrap();
        for &(r, t) in &[(0.3, 0.4), (0.5, 2.0), (0.6, -1.0)] {
            let z = Complex64::from_polar(r, t);
            assert!((s.eval(z) - halfdisc_map(z)).norm() < 1e-12);
        }
    }

    #[test]
    fn image_is_upper_half_disc() {
        for k in 0..40 {
            let z = Complex64::from_polar(0.97, 0.3 + k as f64 * 0.157);
            let w = halfdisc_map(z);
            assert!(w.im > 0.0 && w.norm() < 1.0, "{z} -> {w}");
        }
    }

    #[test]
    fn matches_closed_value() {
        let want = 2.0 * (SQRT_2 - 1.0 - 1.0 / PI);
        let e = halfdisc_exit_time(1e-8).unwrap();
        assert!((e.value - want).abs() < 1e-8, "{e:?} {want}");
        let t = halfdisc_tail_sum(1e-12).unwrap();
        assert!((t - want / 2.0).abs() < 1e-10, "{t}");
    }
}
