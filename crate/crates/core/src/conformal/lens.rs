use num_complex::Complex64;

use super::{lemma1_exit_time, PowerSeries};
use crate::error::{invalid, Result};
use crate::report::ExitTimeEstimate;

/// Maclaurin coefficients of `z(w) = (−1 + √(1 + w²))/w = Σ_ℓ C(1/2, ℓ+1) w^{2ℓ+1}`,
/// the inverse of `w = 2z/(1 − z²)`, which maps the unit disc onto the lens
/// `|z − 1| < √2, |z + 1| < √2`.
pub fn lens_coefficients(order: usize) -> Result<PowerSeries> {
    if order < 1 {
        return Err(invalid("order must be at least 1"));
    }
    let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
    let mut binom = 0.5; // C(1/2, 1)
    let mut k = 1usize;
    while 2 * k - 1 <= order {
        c[2 * k - 1] = Complex64::new(binom, 0.0);
        binom *= (0.5 - k as f64) / (k + 1) as f64;
        k += 1;
    }
    PowerSeries::new(c)
}

/// `w = 2z/(1 − z²)`, mapping the lens onto the unit disc.
pub fn lens_forward_map(z: Complex64) -> Result<Complex64> {
    let d = Complex64::new(1.0, 0.0) - z * z;
    if d.norm() < 1e-300 {
        return Err(invalid("lens map is singular at z = ±1"));
    }
    Ok(2.0 * z / d)
}

/// Expected exit time of the lens from the origin (`2/π − 1/2`).
pub fn lens_exit_time(tol: f64) -> Result<ExitTimeEstimate> {
    lemma1_exit_time(&lens_coefficients(1 << 16)?, tol)
}
