use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `sin(πx)` with exact reduction of the argument modulo 2.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    // r in [-1, 1]
    if r.abs() == 1.0 || r == 0.0 {
        return 0.0;
    }
    if r.abs() <= 0.25 {
        (PI * r).sin()
    } else if r > 0.0 {
        (PI * (0.5 - r)).cos()
    } else {
        -(PI * (0.5 + r)).cos()
    }
}

fn lanczos_sum(x: f64) -> f64 {
    // x here is the shifted argument (Γ(x+1)).
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    acc
}

/// The gamma function for real arguments.
pub fn gamma(x: f64) -> Result<f64> {
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x < 0.5 {
        return Ok(PI / (sin_pi(x) * gamma(1.0 - x)?));
    }
    if x == x.floor() && x <= 30.0 {
        let mut f = 1.0;
        for k in 2..x as u32 {
            f *= k as f64;
        }
        return Ok(f);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // Split the power so t^(z+1/2) does not overflow before e^-t damps it.
    let half = t.powf(0.5 * (z + 0.5));
    Ok((2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(z))
}

/// `ln|Γ(x)|` together with the sign of `Γ(x)`.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x < 0.5 {
        let s = sin_pi(x);
        let (lg, sg) = ln_gamma_signed(1.0 - x)?;
        return Ok((PI.ln() - s.abs().ln() - lg, s.signum() * sg));
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok((LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln(), 1.0))
}

/// `ln|Γ(x)|`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    ln_gamma_signed(x).map(|(l, _)| l)
}

/// `B(x, y) = Γ(x)Γ(y)/Γ(x+y)`.
pub fn beta(x: f64, y: f64) -> Result<f64> {
    if is_pole(x) || is_pole(y) {
        return Err(Error::Pole(if is_pole(x) { x } else { y }));
    }
    if is_pole(x + y) {
        return Err(Error::Pole(x + y));
    }
    let big = x.abs().max(y.abs()).max((x + y).abs());
    if big < 150.0 {
        return Ok(gamma(x)? * gamma(y)? / gamma(x + y)?);
    }
    let (lx, sx) = ln_gamma_signed(x)?;
    let (ly, sy) = ln_gamma_signed(y)?;
    let (lxy, sxy) = ln_gamma_signed(x + y)?;
    Ok(sx * sy * sxy * (lx + ly - lxy).exp())
}

/// Rising factorial `(a)_k = a(a+1)···(a+k−1)`, `(a)_0 = 1`.
pub fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}

/// Generalized binomial coefficient `C(α, k) = α(α−1)···(α−k+1)/k!`.
pub fn binomial(alpha: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (alpha - j as f64) / (j + 1) as f64)
}
