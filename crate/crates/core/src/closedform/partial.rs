//! Partial-fraction expansions behind the square-centre series, evaluated by
//! extrapolated truncated sums.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::accel::{exponent_families, sum_extrapolated, SumPlan};
use crate::error::{invalid, Result};

fn plan(bases: &[f64], tol: f64) -> SumPlan {
    SumPlan {
        exponents: exponent_families(bases, 6, 6),
        first_checkpoint: 64,
        tol: tol.max(1e-15),
        max_terms: 1 << 22,
    }
}

fn not_integer(x: f64, odd_only: bool) -> Result<()> {
    let r = x.round();
    let hit = (x - r).abs() < 1e-12 && (!odd_only || r.rem_euclid(2.0) == 1.0);
    if hit {
        return Err(invalid(format!("partial-fraction sum has a pole at x = {x}")));
    }
    Ok(())
}

/// `(4x/π) Σ_{k≥1} 1/((2k − 1)² − x²)`, which equals `tan(πx/2)`.
pub fn tan_partial_fractions(x: f64, tol: f64) -> Result<f64> {
    not_integer(x, true)?;
    let mut k = 0usize;
    let s = sum_extrapolated(
        || {
            k += 1;
            let o = (2 * k - 1) as f64;
            1.0 / (o * o - x * x)
        },
        &plan(&[-1.0], tol),
    )?;
    Ok(4.0 * x / PI * s.value)
}

/// `1/(πx) + (2x/π) Σ_{k≥1} 1/(x² − k²)`, which equals `cot(πx)`.
pub fn cot_partial_fractions(x: f64, tol: f64) -> Result<f64> {
    not_integer(x, false)?;
    let mut k = 0usize;
    let s = sum_extrapolated(
        || {
            k += 1;
            let kf = k as f64;
            1.0 / (x * x - kf * kf)
        },
        &plan(&[-1.0], tol),
    )?;
    Ok(1.0 / (PI * x) + 2.0 * x / PI * s.value)
}

/// `(4/π) Σ_{k≥0} (−1)^k (2k + 1)/((2k + 1)² + x²)`, which equals `sech(πx/2)`.
pub fn sech_partial_fractions(x: f64, tol: f64) -> Result<f64> {
    let mut k = 0usize;
    let s = sum_extrapolated(
        || {
            let o = (2 * k + 1) as f64;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            k += 1;
            sign * o / (o * o + x * x)
        },
        &plan(&[-1.0], tol),
    )?;
    Ok(4.0 / PI * s.value)
}

/// `Σ_{m≥1} (−1)^m / ((2m − 1)((2m − 1)² + x²))`.
pub fn alternating_cubic_sum(x: f64, tol: f64) -> Result<f64> {
    let mut m = 0usize;
    let s = sum_extrapolated(
        || {
            m += 1;
            let o = (2 * m - 1) as f64;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            sign / (o * (o * o + x * x))
        },
        &plan(&[-3.0], tol),
    )?;
    Ok(s.value)
}

/// `(π/8x²)[−2 + cot w + tan w]` with `w = (π/4)(ix + 1)`, the closed value of
/// [`alternating_cubic_sum`]; its `x → 0` limit is `−π³/32`.
pub fn alternating_cubic_closed(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        // cot w + tan w − 2 = 2(sech t − 1), t = πx/2
        let t = 0.5 * PI * x;
        let t2 = t * t;
        let sech_minus_one = t2 * (-0.5 + t2 * (5.0 / 24.0 - t2 * 61.0 / 720.0));
        return PI / (4.0 * x * x) * sech_minus_one;
    }
    let w = Complex64::new(PI / 4.0, PI / 4.0 * x);
    let bracket = Complex64::new(-2.0, 0.0) + 1.0 / w.tan() + w.tan();
    PI / (8.0 * x * x) * bracket.re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tan_and_cot() {
        for x in [0.3, 1.5, 2.5] {
            let t = tan_partial_fractions(x, 1e-13).unwrap();
            assert!((t - (PI * x / 2.0).tan()).abs() < 1e-10, "{x}: {t}");
            let c = cot_partial_fractions(x, 1e-13).unwrap();
            assert!((c - 1.0 / (PI * x).tan()).abs() < 1e-10, "{x}: {c}");
        }
        assert!(tan_partial_fractions(1.0, 1e-10).is_err());
    }

    #[test]
    fn sech() {
        for x in [0.3f64, 1.0, 2.5] {
            let s = sech_partial_fractions(x, 1e-13).unwrap();
            assert!((s - 1.0 / (PI * x / 2.0).cosh()).abs() < 1e-10, "{x}: {s}");
        }
    }

    #[test]
    fn alternating_cubic() {
        for (x, want) in [
            (0.5, -0.769_879_610_790_26),
            (1.0, -0.472_388_080_584_41),
            (2.0, -0.179_411_106_386_90),
        ] {
            assert!((alternating_cubic_closed(x) - want).abs() < 1e-13);
            let s = alternating_cubic_sum(x, 1e-14).unwrap();
            assert!((s - want).abs() < 1e-12, "{x}: {s}");
        }
        let small = alternating_cubic_closed(5e-4);
        let big = alternating_cubic_closed(2e-3);
        assert!((small + PI.powi(3) / 32.0).abs() < 1e-6 && (big + PI.powi(3) / 32.0).abs() < 1e-5);
    }
}
