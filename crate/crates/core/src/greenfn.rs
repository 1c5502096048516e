//! Green-function route for the disc and the upper half disc
//! `|z| < r0, Im z > 0`.
//!
//! With the kernel `G ≥ 0` below, the expected exit time is
//! `u(z) = 2 ∫∫ G(z, ζ) dA(ζ)`. Integrating the log-kernel expansion over the
//! angle gives dilogarithms; the remaining radial integrals are elementary
//! antiderivatives of `ρ Li₂(cρ)` and `ρ Li₂(s/ρ)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quad::integrate_pieces;
use crate::report::{ExitTimeEstimate, Method};
use crate::specfun::dilog;

/// A point `r e^{iθ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    pub r: f64,
    pub theta: f64,
}

impl PolarPoint {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() || !theta.is_finite() {
            return Err(invalid(format!("polar point needs finite r >= 0, got ({r}, {theta})")));
        }
        Ok(PolarPoint { r, theta })
    }

    fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }
}

/// Which angle combination a log kernel carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelSign {
    /// `cos(θ − φ)`.
    Difference,
    /// `cos(θ + φ)`.
    Sum,
}

fn check_radius(r0: f64) -> Result<()> {
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(invalid(format!("r0 must be positive, got {r0}")));
    }
    Ok(())
}

fn in_closed_halfdisc(p: PolarPoint, r0: f64) -> bool {
    let z = p.to_complex();
    p.r <= r0 * (1.0 + 1e-12) && z.im >= -1e-12 * r0
}

/// Dirichlet Green function of the half disc of radius `r0`, built from the
/// disc Green function and its reflection in the real axis, normalized to be
/// positive inside:
/// `(1/4π)[ln(N₊/M₊) − ln(N₋/M₋)]` with
/// `N∓ = r² + ρ² − 2rρ cos(θ ∓ φ)`, `M∓ = r0² + r²ρ²/r0² − 2rρ cos(θ ∓ φ)`.
pub fn halfdisc_green(z: PolarPoint, zeta: PolarPoint, r0: f64) -> Result<f64> {
    check_radius(r0)?;
    for p in [z, zeta] {
        if !in_closed_halfdisc(p, r0) {
            let c = p.to_complex();
            return Err(Error::NotInterior { x: c.re, y: c.im });
        }
    }
    if (z.to_complex() - zeta.to_complex()).norm() <= 1e-14 * r0 {
        return Err(invalid("Green function is singular at coincident points"));
    }
    let (r, rho) = (z.r, zeta.r);
    let ratio = |angle: f64| {
        let c = 2.0 * r * rho * angle.cos();
        let n = r * r + rho * rho - c;
        let m = r0 * r0 + (r * rho / r0).powi(2) - c;
        (n / m).ln()
    };
    Ok((ratio(z.theta + zeta.theta) - ratio(z.theta - zeta.theta)) / (4.0 * PI))
}

/// `2 ln max(r, ρ) − 2 Σ_{k≤K} (1/k)(min/max)^k cos(k x)`, the Fourier
/// expansion of `ln(r² + ρ² − 2rρ cos x)`.
pub fn log_kernel_expansion(r: f64, rho: f64, x: f64, terms: usize) -> Result<f64> {
    if !(r >= 0.0 && rho >= 0.0) {
        return Err(invalid("radii must be nonnegative"));
    }
    if r == rho {
        return Err(invalid("log-kernel expansion needs r != rho"));
    }
    let (lo, hi) = if r < rho { (r, rho) } else { (rho, r) };
    let q = lo / hi;
    let mut power = 1.0;
    let mut sum = 0.0;
    for k in 1..=terms {
        power *= q;
        if power == 0.0 {
            break;
        }
        sum += power * (k as f64 * x).cos() / k as f64;
    }
    Ok(2.0 * hi.ln() - 2.0 * sum)
}

/// `∫₀^{nπ} ln(a² − 2ab cos x + b²) dx = 2πn ln max(|a|, |b|)`.
pub fn log_cosine_integral(a: f64, b: f64, n: u32) -> Result<f64> {
    if a.abs() == b.abs() || n == 0 {
        return Err(invalid("need |a| != |b| and n >= 1"));
    }
    Ok(2.0 * PI * n as f64 * a.abs().max(b.abs()).ln())
}

/// `Im[Li₂(x e^{iθ}) − Li₂(−x e^{iθ})] = Σ_{k odd} 2 x^k sin(kθ)/k²`.
fn odd_dilog(x: f64, theta: f64) -> Result<f64> {
    let w = Complex64::from_polar(x, theta);
    Ok((dilog(w)? - dilog(-w)?).im)
}

/// `∫₀^π ln(r² + ρ² − 2rρ cos(θ ∓ φ)) dφ` for `r > ρ`, as `2π ln r` plus
/// four dilogarithms; `Difference` is the upper sign.
pub fn angular_dilog_integral(r: f64, rho: f64, theta: f64, sign: KernelSign) -> Result<f64> {
    if !(r > rho && rho >= 0.0) {
        return Err(invalid(format!("need r > rho >= 0, got r = {r}, rho = {rho}")));
    }
    let x = rho / r;
    let e = Complex64::from_polar(1.0, theta);
    let ec = e.conj();
    let bracket = dilog(-ec * x)? - dilog(ec * x)? - dilog(-e * x)? + dilog(e * x)?;
    let i_bracket = Complex64::new(0.0, 1.0) * bracket;
    let s = match sign {
        KernelSign::Difference => 1.0,
        KernelSign::Sum => -1.0,
    };
    Ok(2.0 * PI * r.ln() + s * i_bracket.re)
}

/// Antiderivative of `ρ Li₂(cρ)` vanishing at `ρ = 0`:
/// `(1/8c²)[4c²ρ² Li₂(cρ) + 2(c²ρ² − 1) ln(1 − cρ) − cρ(2 + cρ)]`.
pub fn radial_dilog_integral_a9(c: f64, rho: f64) -> Result<f64> {
    if (c * rho).abs() > 1.0 + 1e-14 {
        return Err(invalid(format!("|c rho| must not exceed 1, got {}", c * rho)));
    }
    Ok(a9(Complex64::new(c, 0.0), rho)?.re)
}

fn a9(c: Complex64, rho: f64) -> Result<Complex64> {
    let t = c * rho;
    if rho == 0.0 || c.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if t.norm() < 0.5 {
        // Σ c^n ρ^{n+2}/(n²(n+2)); the closed form cancels badly here
        let mut sum = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        for n in 1..200 {
            power *= t;
            let nf = n as f64;
            let term = power / (nf * nf * (nf + 2.0));
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        return Ok(sum * rho * rho);
    }
    let one = Complex64::new(1.0, 0.0);
    let log_term = if (one - t).norm() < 1e-300 {
        Complex64::new(0.0, 0.0)
    } else {
        2.0 * (t * t - one) * (one - t).ln()
    };
    Ok((4.0 * t * t * dilog(t)? + log_term - t * (2.0 + t)) / (8.0 * c * c))
}

/// Antiderivative of `ρ Li₂(s/ρ)` for `ρ > s > 0`:
/// `¼[2ρ² Li₂(s/ρ) + s(ρ + s ln(ρ − s)) − ρ² ln(1 − s/ρ)]`.
pub fn radial_dilog_integral_a11(s: f64, rho: f64) -> Result<f64> {
    if !(rho > s && s > 0.0) {
        return Err(invalid(format!("need rho > s > 0, got s = {s}, rho = {rho}")));
    }
    Ok(a11(Complex64::new(s, 0.0), rho)?.re)
}

fn a11(s: Complex64, rho: f64) -> Result<Complex64> {
    let q = s / rho;
    let one = Complex64::new(1.0, 0.0);
    let rho2 = rho * rho;
    Ok((2.0 * rho2 * dilog(q)? + s * (rho + s * (rho - s).ln()) - rho2 * (one - q).ln()) / 4.0)
}

fn check_interior(pt: PolarPoint, r0: f64) -> Result<()> {
    check_radius(r0)?;
    let z = pt.to_complex();
    if !(pt.r > 0.0 && pt.r < r0 && z.im > 0.0) {
        return Err(Error::NotInterior { x: z.re, y: z.im });
    }
    Ok(())
}

/// `u = (2/π) ∫₀^{r0} ρ [T(min/max) − T(rρ/r0²)] dρ` by quadrature, where
/// `T(x) = Im[Li₂(x e^{iθ}) − Li₂(−x e^{iθ})]`.
fn halfdisc_quadrature(pt: PolarPoint, r0: f64, tol: f64) -> Result<(f64, f64, usize)> {
    let (r, theta) = (pt.r, pt.theta);
    let f = |rho: f64| {
        let x = if rho < r { rho / r } else { r / rho };
        let direct = odd_dilog(x, theta).unwrap_or(f64::NAN);
        let image = odd_dilog(r * rho / (r0 * r0), theta).unwrap_or(f64::NAN);
        rho * (direct - image)
    };
    let q = integrate_pieces(f, &[0.0, r, r0], tol)?;
    if !q.value.is_finite() {
        return Err(Error::Quadrature {
            tol,
            estimate: f64::NAN,
        });
    }
    Ok((2.0 / PI * q.value, 2.0 / PI * q.error, q.evaluations))
}

/// The same integral with every radial piece done by the dilogarithm
/// antiderivatives: with `a = ±e^{iθ}`,
/// `u = (2/π) Im Σ ±[A9(a/r, r) + A11(ar, r0) − A11(ar, r) − A9(ar/r0², r0)]`.
fn halfdisc_dilog_form(pt: PolarPoint, r0: f64) -> Result<f64> {
    let (r, theta) = (pt.r, pt.theta);
    let mut total = 0.0;
    for sgn in [1.0, -1.0] {
        let a = Complex64::from_polar(sgn, theta);
        let inner = a9(a / r, r)?;
        let outer = a11(a * r, r0)? - a11(a * r, r)?;
        let image = a9(a * r / (r0 * r0), r0)?;
        total += sgn * (inner + outer - image).im;
    }
    Ok(2.0 / PI * total)
}

/// Expected exit time from an interior point of the half disc of radius `r0`.
///
/// The angular integrals are done in dilogarithms and the radial integral both
/// by quadrature to `tol` and by the dilogarithm antiderivatives; the value is
/// the antiderivative form and the error their difference plus the quadrature
/// error estimate.
pub fn halfdisc_exit_time(pt: PolarPoint, r0: f64, tol: f64) -> Result<ExitTimeEstimate> {
    check_interior(pt, r0)?;
    let (quad, quad_err, evals) = halfdisc_quadrature(pt, r0, tol)?;
    let exact = halfdisc_dilog_form(pt, r0)?;
    let error = (exact - quad).abs() + quad_err;
    if error > 1e3 * tol.max(1e-13) * exact.abs().max(1.0) {
        return Err(Error::PathDisagreement { a: exact, b: quad });
    }
    Ok(ExitTimeEstimate::new(exact, Method::Green, error, evals))
}

/// Expected exit time at radius `r` of the disc of radius `r0` by the Green
/// integral: after the angular integrals reduce to `2π ln max`,
/// `u = −2 ∫₀^{r0} ρ [ln max(ρ, r) − ln r0] dρ`.
pub fn disc_exit_time_via_green(r: f64, r0: f64) -> Result<f64> {
    check_radius(r0)?;
    if !(r >= 0.0 && r < r0) {
        return Err(Error::NotInterior { x: r, y: 0.0 });
    }
    let f = |rho: f64| rho * (rho.max(r).ln() - r0.ln());
    let points: Vec<f64> = if r > 0.0 { vec![0.0, r, r0] } else { vec![0.0, r0] };
    let q = integrate_pieces(f, &points, 1e-14)?;
    Ok(-2.0 * q.value)
}

/// Numerical `∫₀^π ln(r² + ρ² − 2rρ cos(θ ∓ φ)) dφ`, split at the kernel's
/// minimum.
pub fn angular_log_quadrature(r: f64, rho: f64, theta: f64, sign: KernelSign, tol: f64) -> Result<f64> {
    let s = match sign {
        KernelSign::Difference => -1.0,
        KernelSign::Sum => 1.0,
    };
    let f = |phi: f64| (r * r + rho * rho - 2.0 * r * rho * (theta + s * phi).cos()).ln();
    let peak = (-s * theta).rem_euclid(2.0 * PI);
    let mut points = vec![0.0];
    if peak > 0.0 && peak < PI {
        points.push(peak);
    }
    points.push(PI);
    Ok(integrate_pieces(f, &points, tol)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate;
    use crate::specfun::dilog_real;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn pp(r: f64, t: f64) -> PolarPoint {
        PolarPoint::new(r, t).unwrap()
    }

    #[test]
    fn green_symmetry_and_boundary() {
        let z = pp(0.4, 1.1);
        let w = pp(0.7, 2.3);
        let g = halfdisc_green(z, w, 1.0).unwrap();
        assert!(g > 0.0);
        assert!((g - halfdisc_green(w, z, 1.0).unwrap()).abs() < 1e-15);
        assert!(halfdisc_green(z, pp(0.5, 0.0), 1.0).unwrap().abs() < 1e-15);
        assert!(halfdisc_green(z, pp(1.0, 0.8), 1.0).unwrap().abs() < 1e-15);
        assert!(halfdisc_green(z, z, 1.0).is_err());
    }

    #[test]
    fn log_kernel() {
        assert_eq!(log_kernel_expansion(2.0, 0.0, 0.3, 10).unwrap(), 2.0 * 2f64.ln());
        let v = log_kernel_expansion(1.0, 0.5, 0.7, 200).unwrap();
        assert!((v - (1.25 - 0.7f64.cos()).ln()).abs() < 1e-10);
        let swapped = log_kernel_expansion(0.5, 1.0, 0.7, 200).unwrap();
        assert!((v - swapped).abs() < 1e-12);
        assert!(log_kernel_expansion(1.0, 1.0, 0.7, 10).is_err());
    }

    #[test]
    fn angular_integrals() {
        for sign in [KernelSign::Difference, KernelSign::Sum] {
            let v = angular_dilog_integral(1.0, 0.5, PI / 3.0, sign).unwrap();
            let q = angular_log_quadrature(1.0, 0.5, PI / 3.0, sign, 1e-13).unwrap();
            assert!((v - q).abs() < 1e-10, "{v} {q}");
            let zero = angular_dilog_integral(1.7, 0.6, 0.0, sign).unwrap();
            assert!((zero - 2.0 * PI * 1.7f64.ln()).abs() < 1e-14);
        }
        assert_eq!(angular_dilog_integral(3.0, 0.0, 1.0, KernelSign::Sum).unwrap(), 2.0 * PI * 3f64.ln());
        assert!(angular_dilog_integral(0.5, 0.5, 1.0, KernelSign::Sum).is_err());
    }

    #[test]
    fn a9_antiderivative() {
        assert_eq!(radial_dilog_integral_a9(0.8, 0.0).unwrap(), 0.0);
        let h = 1e-5;
        let d = (radial_dilog_integral_a9(0.8, 0.5 + h).unwrap()
            - radial_dilog_integral_a9(0.8, 0.5 - h).unwrap())
            / (2.0 * h);
        assert!((d - 0.5 * dilog_real(0.4).unwrap()).abs() < 1e-6);
        let q = integrate(|x| x * dilog_real(x).unwrap(), 0.0, 1.0, 1e-13).unwrap().value;
        assert!((radial_dilog_integral_a9(1.0, 1.0).unwrap() - q).abs() < 1e-9);
        // closed form and series branch meet
        let lo = radial_dilog_integral_a9(0.9, 0.5555).unwrap();
        let c = Complex64::new(0.9, 0.0);
        let t = c * 0.5555;
        let one = Complex64::new(1.0, 0.0);
        let closed = (4.0 * t * t * dilog(t).unwrap() + 2.0 * (t * t - one) * (one - t).ln() - t * (2.0 + t))
            / (8.0 * c * c);
        assert!((lo - closed.re).abs() < 1e-15);
    }

    #[test]
    fn a11_antiderivative() {
        assert!(radial_dilog_integral_a11(1e-12, 1.0).unwrap().abs() < 1e-11);
        let h = 1e-5;
        let d = (radial_dilog_integral_a11(0.3, 1.0 + h).unwrap()
            - radial_dilog_integral_a11(0.3, 1.0 - h).unwrap())
            / (2.0 * h);
        assert!((d - dilog_real(0.3).unwrap()).abs() < 1e-6);
        let q = integrate(|x| x * dilog_real(0.3 / x).unwrap(), 1.0, 2.0, 1e-13).unwrap().value;
        let v = radial_dilog_integral_a11(0.3, 2.0).unwrap() - radial_dilog_integral_a11(0.3, 1.0).unwrap();
        assert!((v - q).abs() < 1e-9);
        assert!(radial_dilog_integral_a11(1.0, 0.5).is_err());
    }

    #[test]
    fn halfdisc_reference_values() {
        let e = halfdisc_exit_time(pp(SQRT_2 - 1.0, FRAC_PI_2), 1.0, 1e-12).unwrap();
        assert!((e.value - 0.191_807_352_378_608_754_5).abs() < 1e-12, "{e:?}");
        assert!((e.value - 2.0 * (SQRT_2 - 1.0 - 1.0 / PI)).abs() < 1e-12);
        let e = halfdisc_exit_time(pp(0.3, FRAC_PI_4), 1.0, 1e-12).unwrap();
        assert!((e.value - 0.131_864_992_950_572).abs() < 1e-12, "{e:?}");
        let e = halfdisc_exit_time(pp(0.5, 1.0), 2.0, 1e-12).unwrap();
        assert!((e.value - 0.535_836_597_238_89).abs() < 1e-12, "{e:?}");
        let near = halfdisc_exit_time(pp(0.999, 1.0), 1.0, 1e-10).unwrap();
        assert!(near.value > 0.0 && near.value < 0.01);
        assert!(halfdisc_exit_time(pp(0.5, -0.1), 1.0, 1e-10).is_err());
    }

    #[test]
    fn halfdisc_matches_double_quadrature() {
        let z = pp(0.45, 1.2);
        let inner = |rho: f64| {
            let g = |phi: f64| halfdisc_green(z, pp(rho, phi), 1.0).unwrap_or(0.0);
            rho * integrate_pieces(g, &[0.0, z.theta, PI], 1e-11).unwrap().value
        };
        let u = 2.0 * integrate_pieces(inner, &[0.0, z.r, 1.0], 1e-10).unwrap().value;
        let e = halfdisc_exit_time(z, 1.0, 1e-12).unwrap();
        assert!((u - e.value).abs() < 1e-7, "{u} {}", e.value);
    }

    #[test]
    fn disc_route() {
        assert!((disc_exit_time_via_green(0.0, 1.0).unwrap() - 0.5).abs() < 1e-12);
        assert!((disc_exit_time_via_green(0.6, 1.0).unwrap() - 0.32).abs() < 1e-12);
        assert!((disc_exit_time_via_green(1.3, 2.0).unwrap() - 0.5 * (4.0 - 1.69)).abs() < 1e-12);
        assert!(disc_exit_time_via_green(1.0 - 1e-9, 1.0).unwrap().abs() < 1e-8);
        assert!(disc_exit_time_via_green(1.0, 1.0).is_err());
    }

    #[test]
    fn log_cosine_closed_form() {
        for (a, b, n) in [(2.0, 1.0, 1), (1.0, 3.0, 2), (0.5, 0.2, 1)] {
            let f = |x: f64| (a * a - 2.0 * a * b * f64::cos(x) + b * b).ln();
            let q = integrate(f, 0.0, n as f64 * PI, 1e-14).unwrap().value;
            assert!((q - log_cosine_integral(a, b, n).unwrap()).abs() < 1e-10);
        }
    }
}
