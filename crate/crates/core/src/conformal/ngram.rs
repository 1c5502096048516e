use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{lemma1_adaptive, PowerSeries, DEFAULT_ORDER};
use crate::domains::DomainSpec;
use crate::error::{invalid, Error, Result};
use crate::quad::integrate;
use crate::report::ExitTimeEstimate;
use crate::specfun::{appell_f1, appell_f1_at_unit_y, AppellParams};

/// Vertex and circle radii of an n-gram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NGramRadii {
    /// Larger of the two vertex radii.
    pub circumradius: f64,
    /// Smaller of the two vertex radii.
    pub inradius: f64,
    /// `|w(1)|`, vertex on the positive real axis (exterior angle `πμ2`).
    pub axis_vertex: f64,
    /// `|w(e^{iπ/n})|`, vertex at angle `π/n` (exterior angle `πμ1`).
    pub mid_vertex: f64,
    /// Radius of the largest disc about the origin inside the polygon.
    pub inscribed_radius: f64,
}

fn check(n: u32, mu1: f64, mu2: f64) -> Result<()> {
    DomainSpec::NGram { n, mu1, mu2 }.validate()
}

/// Coefficients `c_k` of `(1 − w)^{−μ2}(1 + w)^{−μ1}` from
/// `(1 − w²)h′ = ((μ2 − μ1) + (μ1 + μ2)w) h`.
fn integrand_coefficients(mu1: f64, mu2: f64, count: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(count);
    c.push(1.0);
    if count > 1 {
        c.push(mu2 - mu1);
    }
    for k in 1..count.saturating_sub(1) {
        let kf = k as f64;
        let next = ((mu2 - mu1) * c[k] + (kf - 1.0 + mu1 + mu2) * c[k - 1]) / (kf + 1.0);
        c.push(next);
    }
    c
}

/// Maclaurin coefficients of `w(z) = ∫₀^z (1 − ζⁿ)^{−μ2}(1 + ζⁿ)^{−μ1} dζ`;
/// only indices `≡ 1 (mod n)` are nonzero and `a₁ = 1`.
pub fn ngram_coefficients(n: u32, mu1: f64, mu2: f64, order: usize) -> Result<PowerSeries> {
    check(n, mu1, mu2)?;
    let n = n as usize;
    if order < n + 1 {
        return Err(invalid(format!("order must be at least n + 1 = {}", n + 1)));
    }
    let count = (order - 1) / n + 1;
    let c = integrand_coefficients(mu1, mu2, count);
    let mut a = vec![Complex64::new(0.0, 0.0); order + 1];
    for (k, &ck) in c.iter().enumerate() {
        let idx = n * k + 1;
        a[idx] = Complex64::new(ck / idx as f64, 0.0);
    }
    PowerSeries::new(a)
}

/// Expected exit time from the origin of the n-gram by the coefficient sum `½ Σ |a_n|²`.
pub fn ngram_exit_time(n: u32, mu1: f64, mu2: f64, tol: f64) -> Result<ExitTimeEstimate> {
    check(n, mu1, mu2)?;
    lemma1_adaptive(|m| ngram_coefficients(n, mu1, mu2, m), tol, DEFAULT_ORDER, 1 << 21)
}

/// Truncated sum `½ Σ_{m<terms} [Σ_j (−1)^j C(−μ2, j) C(−μ1, m−j)]² / (nm+1)²`
/// evaluated with explicit binomial coefficients (no tail).
pub fn ngram_exit_time_direct(n: u32, mu1: f64, mu2: f64, terms: usize) -> Result<f64> {
    check(n, mu1, mu2)?;
    let binoms = |alpha: f64| {
        let mut v = Vec::with_capacity(terms);
        let mut c = 1.0;
        for j in 0..terms {
            v.push(c);
            c *= (alpha - j as f64) / (j + 1) as f64;
        }
        v
    };
    let b2 = binoms(-mu2);
    let b1 = binoms(-mu1);
    let mut total = 0.0;
    for m in 0..terms {
        let inner: f64 = (0..=m)
            .map(|j| if j % 2 == 0 { 1.0 } else { -1.0 } * b2[j] * b1[m - j])
            .sum();
        let d = (n as usize * m + 1) as f64;
        total += inner * inner / (d * d);
    }
    Ok(0.5 * total)
}

/// Vertex radii `(|w(1)|, |w(e^{iπ/n})|)` through the `₂F₁` reductions of
/// `w(z) = z F1(1/n; μ1, μ2; 1 + 1/n; −zⁿ, zⁿ)`.
pub fn ngram_vertex_radii(n: u32, mu1: f64, mu2: f64) -> Result<(f64, f64)> {
    check(n, mu1, mu2)?;
    let a = 1.0 / n as f64;
    let c = 1.0 + a;
    let axis = appell_f1_at_unit_y(a, mu1, mu2, c, -1.0)?;
    // At z = e^{iπ/n} the arguments are (1, −1); swap the two variables.
    let mid = appell_f1_at_unit_y(a, mu2, mu1, c, -1.0)?;
    Ok((axis, mid))
}

/// Vertex radii by Appell `F1` at `(x, y) = (−1, 1)` and `(1, −1)`, each
/// evaluated by double series and Euler integral.
pub fn ngram_vertex_radii_appell(n: u32, mu1: f64, mu2: f64, tol: f64) -> Result<(f64, f64)> {
    check(n, mu1, mu2)?;
    let a = 1.0 / n as f64;
    let p = |x: f64, y: f64| AppellParams {
        a,
        b1: mu1,
        b2: mu2,
        c: 1.0 + a,
        x,
        y,
    };
    Ok((appell_f1(&p(-1.0, 1.0), tol)?, appell_f1(&p(1.0, -1.0), tol)?))
}

/// Vertex radii by quadrature of the Schwarz–Christoffel integrand along the
/// rays to `1` and `e^{iπ/n}`.
pub fn ngram_vertex_radii_quadrature(n: u32, mu1: f64, mu2: f64, tol: f64) -> Result<(f64, f64)> {
    check(n, mu1, mu2)?;
    let axis = ray_integral(n, mu2, mu1, tol)?;
    let mid = ray_integral(n, mu1, mu2, tol)?;
    Ok((axis, mid))
}

/// `∫₀¹ (1 − tⁿ)^{−μ}(1 + tⁿ)^{−ν} dt` with `1 − t = s^{1/(1−μ)}` near `t = 1`.
fn ray_integral(n: u32, mu: f64, nu: f64, tol: f64) -> Result<f64> {
    let n = n as i32;
    let left = integrate(
        |t: f64| (1.0 - t.powi(n)).powf(-mu) * (1.0 + t.powi(n)).powf(-nu),
        0.0,
        0.5,
        tol,
    )?;
    let g = 1.0 - mu;
    let right = integrate(
        |s: f64| {
            let t = 1.0 - s.powf(1.0 / g);
            // (1 − tⁿ)/(1 − t) = 1 + t + ... + t^{n−1}
            let q: f64 = (0..n).map(|j| t.powi(j)).sum();
            q.powf(-mu) * (1.0 + t.powi(n)).powf(-nu) / g
        },
        0.0,
        0.5f64.powf(g),
        tol,
    )?;
    Ok(left.value + right.value)
}

/// Circumradius and inradius of the n-gram, computed through the `₂F₁`
/// reductions and through Appell `F1` (agreement to 1e-9), and checked
/// against quadrature of the Schwarz–Christoffel integral (1e-8).
pub fn ngram_radii(n: u32, mu1: f64, mu2: f64) -> Result<NGramRadii> {
    let (axis, mid) = ngram_vertex_radii(n, mu1, mu2)?;
    let (axis_f1, mid_f1) = ngram_vertex_radii_appell(n, mu1, mu2, 1e-11)?;
    let (axis_q, mid_q) = ngram_vertex_radii_quadrature(n, mu1, mu2, 1e-13)?;
    for (v, other, limit) in [
        (axis, axis_f1, 1e-9),
        (mid, mid_f1, 1e-9),
        (axis, axis_q, 1e-8),
        (mid, mid_q, 1e-8),
    ] {
        if (v - other).abs() > limit {
            return Err(Error::PathDisagreement { a: v, b: other });
        }
    }
    let half = PI / n as f64;
    let v1 = (mid * half.cos(), mid * half.sin());
    let edge = (v1.0 - axis).hypot(v1.1);
    Ok(NGramRadii {
        circumradius: axis.max(mid),
        inradius: axis.min(mid),
        axis_vertex: axis,
        mid_vertex: mid,
        inscribed_radius: axis * mid * half.sin() / edge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lacunary_structure() {
        let s = ngram_coefficients(5, 0.3, 0.1, 200).unwrap();
        assert_eq!(s.coeff(1).re, 1.0);
        for k in 0..=200 {
            if k % 5 != 1 {
                assert_eq!(s.coeff(k).norm(), 0.0);
            }
        }
    }

    #[test]
    fn recurrence_matches_cauchy_product() {
        let (mu1, mu2) = (0.3, 0.1);
        let k = 300;
        let rec = integrand_coefficients(mu1, mu2, k + 1);
        let minus = PowerSeries::binomial(-mu2, k);
        let alt: Vec<Complex64> = minus
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, &c)| if j % 2 == 0 { c } else { -c })
            .collect();
        let prod = PowerSeries::new(alt).unwrap().mul(&PowerSeries::binomial(-mu1, k));
        for j in 0..=k {
            assert!((prod.coeff(j).re - rec[j]).abs() < 1e-14, "{j}");
        }
    }

    #[test]
    fn direct_form_agrees_with_series() {
        let (n, mu1, mu2) = (5, 0.3, 0.1);
        let terms = 400;
        let s = ngram_coefficients(n, mu1, mu2, n as usize * (terms - 1) + 1).unwrap();
        let lemma: f64 = 0.5 * s.squared_moduli()[1..].iter().sum::<f64>();
        let direct = ngram_exit_time_direct(n, mu1, mu2, terms).unwrap();
        assert!((lemma - direct).abs() < 1e-13, "{lemma} {direct}");
    }

    #[test]
    fn radii_paths_agree() {
        let r = ngram_radii(5, 0.3, 0.1).unwrap();
        assert!((r.axis_vertex - 0.988_963_311_440_634).abs() < 1e-12);
        assert!((r.mid_vertex - 1.096_274_275_742_305).abs() < 1e-12);
        assert!(r.circumradius >= r.inradius && r.inradius > 0.570884);
        assert!((r.inscribed_radius - 0.976_787_531_986_272).abs() < 1e-12);
    }

    #[test]
    fn symmetric_case_has_equal_radii() {
        let r = ngram_radii(4, 0.25, 0.25).unwrap();
        assert!((r.circumradius - r.inradius).abs() < 1e-13);
    }

    #[test]
    fn pentagram() {
        // tips of angle π/5, reflex inner corners of angle 7π/5
        let r = ngram_radii(5, 0.8, -0.4).unwrap();
        assert!(r.mid_vertex > r.axis_vertex);
        assert!(r.inscribed_radius > 0.570884 && r.inscribed_radius <= r.inradius);
        // regular star: tip radius / inner radius = cos(π/5)/cos(2π/5)
        let ratio = (PI / 5.0).cos() / (2.0 * PI / 5.0).cos();
        assert!((r.circumradius / r.inradius - ratio).abs() < 1e-10, "{r:?}");
        let e = ngram_exit_time(5, 0.8, -0.4, 1e-8).unwrap();
        assert!(e.value > 0.5 * r.inscribed_radius.powi(2) && e.value < 0.5 * r.circumradius.powi(2));
    }

    #[test]
    fn rejects_bad_angles() {
        assert!(ngram_coefficients(5, 1.2, -0.8, 100).is_err());
        assert!(ngram_coefficients(5, 0.3, 0.2, 100).is_err());
    }
}
