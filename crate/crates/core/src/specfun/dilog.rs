use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Result};

// B_{2k} / (2k+1)! for k = 1..15.
const BERNOULLI_OVER_FACT: [f64; 15] = [
    1.0 / 36.0,
    -1.0 / 3600.0,
    1.0 / 211_680.0,
    -1.0 / 10_886_400.0,
    1.0 / 526_901_760.0,
    -4.064_761_645_144_226e-11,
    8.921_691_020_456_453e-13,
    -1.993_929_586_072_108e-14,
    4.518_980_029_619_918e-16,
    -1.035_651_761_218_125e-17,
    2.395_218_621_026_186_7e-19,
    -5.581_785_874_325_009e-21,
    1.309_150_755_418_321_3e-22,
    -3.087_419_802_426_740_3e-24,
    7.315_975_652_702_203e-26,
];

/// Principal-branch dilogarithm `Li₂(z) = Σ zⁿ/n²` on the closed unit disc.
pub fn dilog(z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if !r.is_finite() || r > 1.0 + 1e-12 {
        return Err(invalid(format!("dilog argument |z| = {r} outside the unit disc")));
    }
    let one = Complex64::new(1.0, 0.0);
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    if z == one {
        return Ok(Complex64::new(PI * PI / 6.0, 0.0));
    }
    if z.re > 0.5 {
        let w = one - z;
        return Ok(Complex64::new(PI * PI / 6.0, 0.0) - z.ln() * w.ln() - bernoulli_series(w));
    }
    Ok(bernoulli_series(z))
}

/// Real dilogarithm on `[-1, 1]`.
pub fn dilog_real(x: f64) -> Result<f64> {
    dilog(Complex64::new(x, 0.0)).map(|v| v.re)
}

/// `Li₂(z) = Σ B_n uⁿ⁺¹/(n+1)!` with `u = −ln(1 − z)`, valid for `Re z ≤ 1/2`,
/// `|z| ≤ 1` where `|u| < 1.3`.
fn bernoulli_series(z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    let u2 = u * u;
    let mut sum = u - u2 / 4.0;
    let mut power = u;
    for c in BERNOULLI_OVER_FACT {
        power *= u2;
        let term = power * c;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(z: Complex64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut p = z;
        for n in 1..2000 {
            sum += p / (n * n) as f64;
            p *= z;
        }
        sum
    }

    #[test]
    fn known_values() {
        assert_eq!(dilog(Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
        assert!((dilog_real(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((dilog_real(-1.0).unwrap() + PI * PI / 12.0).abs() < 1e-14);
        let ln2 = std::f64::consts::LN_2;
        assert!((dilog_real(0.5).unwrap() - (PI * PI / 12.0 - ln2 * ln2 / 2.0)).abs() < 1e-15);
        // Li₂(i) = −π²/48 + i·G (Catalan's constant)
        let v = dilog(Complex64::new(0.0, 1.0)).unwrap();
        assert!((v.re + PI * PI / 48.0).abs() < 1e-14);
        assert!((v.im - 0.915_965_594_177_219_015).abs() < 1e-14);
    }

    #[test]
    fn matches_direct_series_inside() {
        for &(re, im) in &[(0.3, 0.2), (-0.6, 0.1), (0.7, -0.4), (0.1, 0.75), (-0.5, -0.5)] {
            let z = Complex64::new(re, im);
            assert!((dilog(z).unwrap() - direct(z)).norm() < 1e-13, "{z}");
        }
    }

    #[test]
    fn unit_circle_real_part() {
        // Re Li₂(e^{iθ}) = π²/6 − θ(2π − θ)/4 for 0 ≤ θ ≤ 2π
        for k in 1..24 {
            let t = 2.0 * PI * k as f64 / 24.0;
            let v = dilog(Complex64::from_polar(1.0, t)).unwrap();
            let want = PI * PI / 6.0 - t * (2.0 * PI - t) / 4.0;
            assert!((v.re - want).abs() < 1e-13, "{t}: {} vs {want}", v.re);
        }
    }

    #[test]
    fn rejects_outside_disc() {
        assert!(dilog(Complex64::new(1.5, 0.0)).is_err());
    }
}
