use super::gamma::gamma;
use super::hyper::{gauss_unit, hyp2f1, is_nonpositive_integer, DEFAULT_MAX_TERMS};
use crate::accel::{exponent_families, sum_extrapolated, SumPlan};
use crate::error::{invalid, Error, Result};
use crate::quad::integrate;

/// Parameters of Appell's `F1(a; b1, b2; c; x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppellParams {
    pub a: f64,
    pub b1: f64,
    pub b2: f64,
    pub c: f64,
    pub x: f64,
    pub y: f64,
}

impl AppellParams {
    fn validate(&self) -> Result<()> {
        if is_nonpositive_integer(self.c) {
            return Err(invalid(format!("Appell F1 with c = {}", self.c)));
        }
        for (name, v) in [("x", self.x), ("y", self.y)] {
            if !(-1.0..=1.0).contains(&v) {
                return Err(invalid(format!("Appell F1 argument {name} = {v} outside [-1, 1]")));
            }
        }
        Ok(())
    }

    /// Exponent of `(1 − u)` at the upper end of the Euler integral.
    fn endpoint_exponent(&self) -> f64 {
        let mut g = self.c - self.a;
        if self.x == 1.0 {
            g -= self.b1;
        }
        if self.y == 1.0 {
            g -= self.b2;
        }
        g
    }
}

/// `F1` by both the double series and the Euler integral, checked against each
/// other to `10·tol`. When the integral form does not apply (`c ≤ a` or
/// `a ≤ 0`) the series value is returned alone.
pub fn appell_f1(params: &AppellParams, tol: f64) -> Result<f64> {
    let series = appell_f1_series(params, tol)?;
    if !(params.c > params.a && params.a > 0.0) {
        return Ok(series);
    }
    let integral = appell_f1_integral(params, tol)?;
    if (series - integral).abs() > 10.0 * tol * series.abs().max(1.0) {
        return Err(Error::PathDisagreement {
            a: series,
            b: integral,
        });
    }
    Ok(series)
}

/// Double series summed as `Σ_m (a)_m (b1)_m / ((c)_m m!) x^m ₂F₁(a+m, b2; c+m; y)`.
pub fn appell_f1_series(params: &AppellParams, tol: f64) -> Result<f64> {
    params.validate()?;
    let AppellParams { a, b1, b2, c, x, y } = *params;
    // At y = 1 the inner sum is Gauss's Γ ratio, whose dependence on m is
    // folded into the outer coefficient recurrence to avoid overflow.
    let unit_y = y == 1.0;
    let scale = if unit_y { gauss_unit(a, b2, c)? } else { 1.0 };
    let inner = |m: usize| -> Result<f64> {
        if unit_y {
            Ok(scale)
        } else {
            hyp2f1(a + m as f64, b2, c + m as f64, y)
        }
    };
    let coeff_ratio = |m: usize| {
        let m = m as f64;
        let r = (a + m) * (b1 + m) / ((c + m) * (m + 1.0)) * x;
        if unit_y {
            r * (c + m) / (c + m - b2)
        } else {
            r
        }
    };

    if x.abs() < 1.0 {
        let mut coeff = 1.0;
        let mut sum = inner(0)?;
        let mut quiet = 0;
        for m in 0..DEFAULT_MAX_TERMS {
            coeff *= coeff_ratio(m);
            if coeff == 0.0 {
                return Ok(sum);
            }
            let term = coeff * inner(m + 1)?;
            sum += term;
            let rho = coeff_ratio(m + 1).abs();
            let tail = if rho < 1.0 { term.abs() / (1.0 - rho) } else { f64::INFINITY };
            if tail <= tol * 1e-2 * sum.abs() {
                quiet += 1;
                if quiet == 3 {
                    return Ok(sum);
                }
            } else {
                quiet = 0;
            }
        }
        return Err(Error::NotConverged {
            terms: DEFAULT_MAX_TERMS,
            partial: sum,
            estimate: f64::NAN,
        });
    }

    // |x| = 1: outer terms decay like m^σ with σ = a + b1 − c − 1 (+ b2 when
    // the inner series sits at y = 1).
    let sigma = a + b1 - c - 1.0 + if y == 1.0 { b2 } else { 0.0 };
    let (lead, stride) = if x == 1.0 {
        if sigma >= -1.0 {
            return Err(invalid("Appell F1 double series diverges at x = 1"));
        }
        (sigma + 1.0, 1)
    } else {
        (sigma, 2)
    };
    let mut coeff = 1.0;
    let mut m = 0usize;
    let mut failure: Option<Error> = None;
    let next = || {
        if m > 0 {
            coeff *= coeff_ratio(m - 1);
        }
        let v = match inner(m) {
            Ok(v) => coeff * v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        };
        m += 1;
        v
    };
    let plan = SumPlan {
        exponents: exponent_families(&[lead], 8, 8),
        first_checkpoint: 64 * stride,
        tol: tol.max(1e-15),
        max_terms: 1 << 18,
    };
    let out = sum_extrapolated(next, &plan);
    if let Some(e) = failure {
        return Err(e);
    }
    out.map(|e| e.value)
}

/// Euler integral
/// `Γ(c)/(Γ(a)Γ(c−a)) ∫₀¹ u^{a−1}(1−u)^{c−a−1}(1−xu)^{−b1}(1−yu)^{−b2} du`,
/// requiring `c > a > 0`. Endpoint power singularities are removed by
/// `u = t^{1/a}` on `[0, 1/2]` and `1 − u = s^{1/γ}` on `[1/2, 1]`.
pub fn appell_f1_integral(params: &AppellParams, tol: f64) -> Result<f64> {
    params.validate()?;
    let AppellParams { a, b1, b2, c, x, y } = *params;
    if a <= 0.0 || c <= a {
        return Err(invalid(format!(
            "Euler integral for F1 needs c > a > 0 (a = {a}, c = {c})"
        )));
    }
    let g = params.endpoint_exponent();
    if g <= 0.0 {
        return Err(invalid("Appell F1 integral diverges at u = 1"));
    }
    let qtol = (tol * 1e-2).max(1e-15);

    // Factors that stay smooth at u = 1 (those with argument exactly 1 are
    // folded into γ).
    let smooth_right = move |u: f64| {
        let mut v = u.powf(a - 1.0);
        if x != 1.0 {
            v *= (1.0 - x * u).powf(-b1);
        }
        if y != 1.0 {
            v *= (1.0 - y * u).powf(-b2);
        }
        v
    };
    let full = move |u: f64| {
        (1.0 - u).powf(c - a - 1.0) * (1.0 - x * u).powf(-b1) * (1.0 - y * u).powf(-b2)
    };

    let left = integrate(
        |t: f64| full(t.powf(1.0 / a)) / a,
        0.0,
        0.5f64.powf(a),
        qtol,
    )?;
    let right = integrate(
        |s: f64| {
            let u = 1.0 - s.powf(1.0 / g);
            smooth_right(u) / g
        },
        0.0,
        0.5f64.powf(g),
        qtol,
    )?;
    let prefactor = gamma(c)? / (gamma(a)? * gamma(c - a)?);
    Ok(prefactor * (left.value + right.value))
}

/// `₂F₁` reduction at `y = 1`:
/// `F1(a; b1, b2; c; x, 1) = Γ(c)Γ(c−a−b2)/(Γ(c−a)Γ(c−b2)) ₂F₁(a, b1; c−b2; x)`.
pub fn appell_f1_at_unit_y(a: f64, b1: f64, b2: f64, c: f64, x: f64) -> Result<f64> {
    Ok(gauss_unit(a, b2, c)? * hyp2f1(a, b1, c - b2, x)?)
}

/// `₂F₁` reduction on the diagonal: `F1(a; b1, b2; c; x, x) = ₂F₁(a, b1+b2; c; x)`.
pub fn appell_f1_diagonal(a: f64, b1: f64, b2: f64, c: f64, x: f64) -> Result<f64> {
    hyp2f1(a, b1 + b2, c, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hyper::pfq_real;

    fn pfq_check(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
        pfq_real(&[a, b], &[c], x, 1e-15, DEFAULT_MAX_TERMS)
    }

    fn p(a: f64, b1: f64, b2: f64, c: f64, x: f64, y: f64) -> AppellParams {
        AppellParams { a, b1, b2, c, x, y }
    }

    #[test]
    fn origin_is_one() {
        let v = appell_f1(&p(0.7, 0.3, 1.2, 2.5, 0.0, 0.0), 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn single_variable_limit() {
        // y = 0 leaves ₂F₁(a, b1; c; x)
        let v = appell_f1(&p(1.0 / 3.0, 0.25, 0.2, 2.0, 0.5, 0.0), 1e-12).unwrap();
        let want = pfq_check(1.0 / 3.0, 0.25, 2.0, 0.5).unwrap();
        assert!((v - want).abs() < 1e-13);
    }

    #[test]
    fn integral_rejects_bad_parameters() {
        assert!(appell_f1_integral(&p(1.5, 0.1, 0.1, 1.0, 0.2, 0.2), 1e-10).is_err());
        assert!(appell_f1_integral(&p(-0.5, 0.1, 0.1, 1.0, 0.2, 0.2), 1e-10).is_err());
        // the series still works when the integral does not apply
        assert!(appell_f1(&p(1.5, 0.1, 0.1, 1.0, 0.2, 0.2), 1e-10).is_ok());
    }

    #[test]
    fn unit_arguments_both_paths() {
        // the n-gram configuration: (x, y) = (−1, 1) and (1, −1)
        let (n, mu1, mu2) = (5.0, 0.3, 0.1);
        for (x, y) in [(-1.0, 1.0), (1.0, -1.0)] {
            let q = p(1.0 / n, mu1, mu2, 1.0 + 1.0 / n, x, y);
            let s = appell_f1_series(&q, 1e-12).unwrap();
            let i = appell_f1_integral(&q, 1e-12).unwrap();
            assert!((s - i).abs() < 1e-10, "{x} {y}: {s} vs {i}");
        }
    }
}
