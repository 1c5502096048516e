
use num_complex::Complex64;

use super::PowerSeries;
use crate::accel::{exponent_families, sum_extrapolated, SumPlan};
use crate::error::{invalid, DivergenceReason, Error, Result};
use crate::report::{ExitTimeEstimate, Method};

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("wedge parameter p must lie in (0, 1], got {p}")))
    }
}

/// Coefficients of `(1 + z)^q / (1 − z)^p` as the Cauchy product of the two
/// binomial series.
pub fn wedge_coefficients(p: f64, q: f64, order: usize) -> Result<PowerSeries> {
    check_p(p)?;
    if order < 1 {
        return Err(invalid("order must be at least 1"));
    }
    // (1 − z)^{−p} = Σ (p)_k/k! z^k
    let mut rising = Vec::with_capacity(order + 1);
    let mut v = 1.0;
    for k in 0..=order {
        rising.push(Complex64::new(v, 0.0));
        v *= (p + k as f64) / (k + 1) as f64;
    }
    Ok(PowerSeries::binomial(q, order).mul(&PowerSeries::new(rising)?))
}

/// The same coefficients from the first-order recurrence implied by
/// `(1 − z²) f′ = ((p + q) + (p − q) z) f`:
/// `(m+1) a_{m+1} = (p+q) a_m + (m−1+p−q) a_{m−1}`.
pub fn wedge_coefficients_recurrence(p: f64, q: f64, order: usize) -> Vec<f64> {
    let mut a = Vec::with_capacity(order + 1);
    a.push(1.0);
    if order >= 1 {
        a.push(p + q);
    }
    for m in 1..order {
        let mf = m as f64;
        let next = ((p + q) * a[m] + (mf - 1.0 + p - q) * a[m - 1]) / (mf + 1.0);
        a.push(next);
    }
    a
}

/// Expected exit time from `1` of the wedge `|arg z| < πp/2`, the image of
/// the disc under `((1 + z)/(1 − z))^p`.
///
/// `|a_m|²` carries the singular exponents `m^{2p−2}`, `m^{−2p−2}` and the
/// alternating cross term `(−1)^m m^{−2}`; partial sums at even checkpoints
/// are extrapolated against those three families.
pub fn wedge_exit_time(p: f64, tol: f64) -> Result<ExitTimeEstimate> {
    check_p(p)?;
    if p >= 0.5 {
        let a = wedge_coefficients_recurrence(p, p, 4096);
        let partial = 0.5 * a[1..].iter().map(|v| v * v).sum::<f64>();
        return Err(Error::DivergenceSuspected {
            reason: DivergenceReason::KnownInfinite,
            partial,
            tail: f64::INFINITY,
        });
    }
    let mut a_prev = 1.0; // a_0
    let mut a_cur = 2.0 * p; // a_1
    let mut m = 1usize;
    let next = || {
        let term = a_cur * a_cur;
        let mf = m as f64;
        let a_next = (2.0 * p * a_cur + (mf - 1.0) * a_prev) / (mf + 1.0);
        a_prev = a_cur;
        a_cur = a_next;
        m += 1;
        term
    };
    let plan = SumPlan {
        exponents: exponent_families(&[2.0 * p - 1.0, -2.0 * p - 1.0, -2.0], 3, 8),
        first_checkpoint: 64,
        tol: tol.max(1e-15),
        max_terms: 1 << 22,
    };
    let sum = sum_extrapolated(next, &plan)?;
    Ok(ExitTimeEstimate::new(
        0.5 * sum.value,
        Method::Series,
        0.5 * sum.error,
        sum.terms,
    ))
}

/// `½(sec(πp) − 1)`.
#[cfg(test)]
pub(crate) fn wedge_exact(p: f64) -> f64 {
    0.5 * (1.0 / (std::f64::consts::PI * p).cos() - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{beta, pfq_real};

    #[test]
    fn p_equals_q_equals_one() {
        let s = wedge_coefficients(1.0, 1.0, 20).unwrap();
        assert_eq!(s.coeff(0).re, 1.0);
        for m in 1..=20 {
            assert!((s.coeff(m).re - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn first_coefficient() {
        for &(p, q) in &[(0.3, 0.7), (0.25, 0.25), (1.0, -0.5)] {
            let s = wedge_coefficients(p, q, 5).unwrap();
            assert!((s.coeff(1).re - (p + q)).abs() < 1e-15);
        }
        let s = wedge_coefficients(0.25, 0.25, 1).unwrap();
        assert_eq!(s.coeff(1).re, 0.5);
    }

    #[test]
    fn recurrence_matches_convolution() {
        for &(p, q) in &[(0.1, 0.1), (0.4, 0.4), (0.3, 0.8)] {
            let conv = wedge_coefficients(p, q, 500).unwrap();
            let rec = wedge_coefficients_recurrence(p, q, 500);
            for m in 0..=500 {
                let c = conv.coeff(m).re;
                assert!((c - rec[m]).abs() <= 1e-13 * c.abs().max(1e-3), "{p} {q} {m}");
            }
        }
    }

    #[test]
    fn hypergeometric_form_of_coefficients() {
        // a_m = ₂F₁(−m, −p; 1 − m − p; −1) / (m B(m, p)) when q = p
        for &p in &[0.1, 0.25, 0.4] {
            let s = wedge_coefficients(p, p, 30).unwrap();
            for m in 1..=30usize {
                let mf = m as f64;
                let f = pfq_real(&[-mf, -p], &[1.0 - mf - p], -1.0, 1e-16, 100).unwrap();
                let want = f / (mf * beta(mf, p).unwrap());
                let got = s.coeff(m).re;
                assert!((got - want).abs() < 1e-12 * want.abs().max(1.0), "{p} {m}: {got} {want}");
            }
        }
    }

    #[test]
    fn exit_time_matches_secant() {
        for &p in &[0.1, 0.25, 0.4] {
            let e = wedge_exit_time(p, 1e-12).unwrap();
            let want = wedge_exact(p);
            assert!(((e.value - want) / want).abs() < 1e-9, "{p}: {e:?} vs {want}");
        }
    }

    #[test]
    fn divergent_regime() {
        for p in [0.5, 0.55, 1.0] {
            assert!(matches!(
                wedge_exit_time(p, 1e-8),
                Err(Error::DivergenceSuspected {
                    reason: DivergenceReason::KnownInfinite,
                    ..
                })
            ));
        }
    }
}
