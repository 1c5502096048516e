use std::f64::consts::{PI, SQRT_2};

use crate::error::{invalid, Error, Result};
use crate::specfun::{beta, pfq, HyperParams, DEFAULT_MAX_TERMS};

use super::EDGE;

fn sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `sinh(ks)/sinh(kh)` for `|s| ≤ h`, without overflow.
fn sinh_ratio(k: f64, s: f64, h: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    let t = s.abs();
    s.signum() * (k * (t - h)).exp() * (-(-2.0 * k * t).exp_m1()) / (-(-2.0 * k * h).exp_m1())
}

/// `cosh(αy)/cosh(αb)` for `|y| ≤ b`, without overflow.
fn cosh_ratio(alpha: f64, y: f64, b: f64) -> f64 {
    let t = y.abs();
    (alpha * (t - b)).exp() * (1.0 + (-2.0 * alpha * t).exp()) / (1.0 + (-2.0 * alpha * b).exp())
}

fn check_terms(terms: usize) -> Result<()> {
    if terms == 0 {
        return Err(invalid("at least one series term is required"));
    }
    Ok(())
}

/// Triangle with legs `|x| ≤ a/2`, `|y| ≤ a/2` on `x = a/2`, `y = a/2` and
/// hypotenuse on `y = −x`: `k_n = (2n+1)π/a`, and
/// `Σ_n (−1)^n cos(k_n s)/(2n+1)³ = (π³/32)(1 − 4s²/a²)` on `|s| ≤ a/2`.
struct RightTriangle {
    a: f64,
    terms: usize,
}

impl RightTriangle {
    fn k(&self, n: usize) -> f64 {
        (2 * n + 1) as f64 * PI / self.a
    }

    /// Remainder `Σ_{n≥N} (−1)^n cos(k_n s)/(2n+1)³`.
    fn remainder(&self, s: f64) -> f64 {
        let full = PI.powi(3) / 32.0 * (1.0 - 4.0 * s * s / (self.a * self.a));
        let head: f64 = (0..self.terms)
            .map(|n| sign(n) * (self.k(n) * s).cos() / ((2 * n + 1) as f64).powi(3))
            .sum();
        full - head
    }

    /// `Σ_n (−1)^n/(2n+1)³ · sinh(k_n y) cos(k_n x)/sinh(k_n a/2)`.
    fn half_sum(&self, x: f64, y: f64) -> f64 {
        let h = self.a / 2.0;
        let head: f64 = (0..self.terms)
            .map(|n| {
                let k = self.k(n);
                sign(n) * sinh_ratio(k, y, h) * (k * x).cos() / ((2 * n + 1) as f64).powi(3)
            })
            .sum();
        head + sinh_ratio(self.k(self.terms), y, h) * self.remainder(x)
    }

    fn u(&self, x: f64, y: f64) -> f64 {
        let a = self.a;
        let psi = -x * y + 0.5 * a * (x + y)
            - 4.0 * a * a / PI.powi(3) * (self.half_sum(x, y) + self.half_sum(y, x));
        psi - 0.5 * (x * x + y * y)
    }
}

fn right_triangle(x: f64, y: f64, a: f64, terms: usize) -> Result<RightTriangle> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(invalid("a must be positive"));
    }
    check_terms(terms)?;
    let slack = EDGE * a;
    if x > a / 2.0 + slack || y > a / 2.0 + slack || x + y < -slack {
        return Err(Error::NotInterior { x, y });
    }
    Ok(RightTriangle { a, terms })
}

/// Isosceles right triangle with legs of length `a` on `x = a/2` and
/// `y = a/2` and hypotenuse on `y = −x`, summed to `terms` Fourier terms.
pub fn isosceles_right_u(x: f64, y: f64, a: f64, terms: usize) -> Result<f64> {
    Ok(right_triangle(x, y, a, terms)?.u(x, y))
}

/// The same solution restricted to the diagonal `y = x`:
/// `−2x² + ax − (8a²/π³) Σ_n (−1)^n sinh(k_n x) cos(k_n x)/((2n+1)³ sinh(k_n a/2))`.
pub fn isosceles_right_diagonal_u(x: f64, a: f64, terms: usize) -> Result<f64> {
    let t = right_triangle(x, x, a, terms)?;
    let h = a / 2.0;
    let head: f64 = (0..terms)
        .map(|n| {
            let k = t.k(n);
            sign(n) * sinh_ratio(k, x, h) * (k * x).cos() / ((2 * n + 1) as f64).powi(3)
        })
        .sum();
    let tail = sinh_ratio(t.k(terms), x, h) * t.remainder(x);
    Ok(-2.0 * x * x + a * x - 8.0 * a * a / PI.powi(3) * (head + tail))
}

/// Rectangle `|x| < a`, `|y| < b`:
/// `a² − x² − (4/a) Σ_n (−1)^n cosh(α_n y) cos(α_n x)/(α_n³ cosh(α_n b))`,
/// `α_n = (n + ½)π/a`. The series runs along the shorter side.
pub fn rectangle_u(x: f64, y: f64, a: f64, b: f64, terms: usize) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(invalid("rectangle half-sides must be positive"));
    }
    check_terms(terms)?;
    if x.abs() > a * (1.0 + EDGE) || y.abs() > b * (1.0 + EDGE) {
        return Err(Error::NotInterior { x, y });
    }
    if a > b {
        return rectangle_u(y, x, b, a, terms);
    }
    let alpha = |n: usize| (n as f64 + 0.5) * PI / a;
    let mut head = 0.0;
    let mut cos_head = 0.0;
    for n in 0..terms {
        let al = alpha(n);
        let c = sign(n) * (al * x).cos() / al.powi(3);
        cos_head += c;
        head += c * cosh_ratio(al, y, b);
    }
    // Σ_n (−1)^n cos(α_n x)/α_n³ = (a/4)(a² − x²)
    let remainder = 0.25 * a * (a * a - x * x) - cos_head;
    let tail = cosh_ratio(alpha(terms), y, b) * remainder;
    Ok(a * a - x * x - 4.0 / a * (head + tail))
}

/// Representation used for the centre of the square `|x|, |y| < 1/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareForm {
    /// `8/B²(1/4, 1/2) · ₄F₃(1/4, 1/4, 1/2, 1/2; 5/4, 5/4, 1; 1)`.
    Hypergeometric,
    /// `(64/π⁴) Σ_{m,n≥1} (−1)^{m+n}/((2m−1)(2n−1)((2m−1)² + (2n−1)²))`.
    DoubleSine,
    /// `½ − 4√2 Σ_n (−1)^n/(α_n³ cosh(α_n/√2))`, `α_n = (n + ½)π√2`.
    SingleSeries,
}

/// Expected exit time from the centre of the square inscribed in the unit
/// circle, in one of three independent representations.
pub fn square_center_exit_time(form: SquareForm, tol: f64) -> Result<f64> {
    match form {
        SquareForm::Hypergeometric => {
            let b = beta(0.25, 0.5)?;
            let p = HyperParams::new(&[0.25, 0.25, 0.5, 0.5], &[1.25, 1.25, 1.0], 1.0);
            Ok(8.0 / (b * b) * pfq(&p, tol, DEFAULT_MAX_TERMS)?.re)
        }
        SquareForm::DoubleSine => double_sine(tol),
        SquareForm::SingleSeries => {
            let mut sum = 0.0;
            for n in 0.. {
                let al = (n as f64 + 0.5) * PI * SQRT_2;
                let term = sign(n) / (al.powi(3) * (al / SQRT_2).cosh());
                sum += term;
                if term.abs() < tol * 1e-3 || !term.is_finite() {
                    break;
                }
            }
            Ok(0.5 - 4.0 * SQRT_2 * sum)
        }
    }
}

/// Square partial sums averaged over consecutive sizes, doubled until stable.
fn double_sine(tol: f64) -> Result<f64> {
    let partial = |k: usize| -> f64 {
        let mut total = 0.0;
        for n in 1..=k {
            let q = (2 * n - 1) as f64;
            let mut inner = 0.0;
            for m in 1..=k {
                let p = (2 * m - 1) as f64;
                inner += sign(m) / (p * (p * p + q * q));
            }
            total += sign(n) * inner / q;
        }
        total
    };
    let averaged = |k: usize| 0.5 * (partial(k) + partial(k + 1)) * 64.0 / PI.powi(4);
    let mut k = 32;
    let mut last = averaged(k);
    while k < 1 << 12 {
        k *= 2;
        let next = averaged(k);
        if (next - last).abs() <= tol {
            return Ok(next);
        }
        last = next;
    }
    Err(Error::NotConverged {
        terms: k * k,
        partial: last,
        estimate: f64::NAN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn triangle_boundary_vanishes() {
        let a = 1.0;
        for terms in [1, 10, 60] {
            for s in [-0.45, -0.2, 0.0, 0.1, 0.37, 0.5] {
                assert!(isosceles_right_u(0.5, s, a, terms).unwrap().abs() < 1e-13);
                assert!(isosceles_right_u(s, 0.5, a, terms).unwrap().abs() < 1e-13);
                assert!(isosceles_right_u(s, -s, a, terms).unwrap().abs() < 1e-13);
            }
        }
        assert!(isosceles_right_u(0.6, 0.0, a, 60).is_err());
        assert!(isosceles_right_u(-0.3, 0.1, a, 60).is_err());
    }

    #[test]
    fn diagonal_form_agrees() {
        for a in [1.0, 2.5] {
            for t in [0.05, 0.2, 0.33, 0.49] {
                let x = t * a;
                let d = isosceles_right_diagonal_u(x, a, 60).unwrap();
                let u = isosceles_right_u(x, x, a, 60).unwrap();
                assert!((d - u).abs() < 1e-12, "{a} {x}: {d} {u}");
            }
        }
    }

    #[test]
    fn triangle_converges_in_terms() {
        let a = 1.0;
        let want = isosceles_right_u(0.2, 0.1, a, 400).unwrap();
        assert!((isosceles_right_u(0.2, 0.1, a, 10).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn rectangle_boundary_and_symmetry() {
        let (a, b) = (1.0, 0.6);
        for s in [-0.9, -0.3, 0.0, 0.55, 1.0] {
            assert!(rectangle_u(s, b, a, b, 60).unwrap().abs() < 1e-13);
            assert!(rectangle_u(a, s * b, a, b, 60).unwrap().abs() < 1e-13);
        }
        let u = rectangle_u(0.3, 0.2, a, b, 60).unwrap();
        assert!((rectangle_u(-0.3, -0.2, a, b, 60).unwrap() - u).abs() < 1e-15);
        let swapped = rectangle_u(0.2, 0.3, b, a, 60).unwrap();
        assert!((swapped - u).abs() < 1e-14);
    }

    #[test]
    fn long_rectangle_is_a_strip() {
        let a = 0.7;
        for x in [0.0, 0.3, 0.65] {
            let u = rectangle_u(x, 0.0, a, 20.0 * a, 60).unwrap();
            assert!((u - (a * a - x * x)).abs() < 1e-8);
        }
    }

    #[test]
    fn square_forms_agree() {
        let h = square_center_exit_time(SquareForm::Hypergeometric, 1e-12).unwrap();
        let d = square_center_exit_time(SquareForm::DoubleSine, 1e-9).unwrap();
        let s = square_center_exit_time(SquareForm::SingleSeries, 1e-14).unwrap();
        let r = rectangle_u(0.0, 0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 60).unwrap();
        assert!((h - s).abs() < 1e-10, "{h} {s}");
        assert!((d - s).abs() < 1e-8, "{d} {s}");
        assert!((r - s).abs() < 1e-15, "{r} {s}");
        assert!((s - 0.294_685_413_126_528).abs() < 1e-9, "{s}");
    }
}
