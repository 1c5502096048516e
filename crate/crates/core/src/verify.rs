//! Identity suite: every check compares two independent evaluations of the
//! same quantity and reports the residual against a tolerance.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::accel::{exponent_families, sum_extrapolated, SumPlan};
use crate::closedform::{
    alternating_cubic_closed, alternating_cubic_sum, cot_partial_fractions, sech_partial_fractions,
    square_center_exit_time, tan_partial_fractions, SquareForm,
};
use crate::conformal::{
    halfdisc_exit_time, halfdisc_tail_sum, lens_exit_time, lens_forward_map, mgon_exit_time, ngram_exit_time,
    ngram_radii, wedge_exit_time,
};
use crate::error::{DivergenceReason, Error, Result};
use crate::greenfn::{
    angular_dilog_integral, angular_log_quadrature, disc_exit_time_via_green, halfdisc_exit_time as green_halfdisc,
    log_cosine_integral, radial_dilog_integral_a11, radial_dilog_integral_a9, KernelSign, PolarPoint,
};
use crate::quad::integrate;
use crate::specfun::{
    appell_f1_integral, appell_f1_series, dilog_real, gamma, hyp2f1, pfq, AppellParams, HyperParams,
    DEFAULT_MAX_TERMS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Passes, but a competing closed form is known to be wrong.
    KnownIssue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub status: Status,
    pub note: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

fn check(name: &str, tolerance: f64, residual: impl FnOnce() -> Result<f64>) -> Check {
    match residual() {
        Ok(r) => Check {
            name: name.to_string(),
            residual: r,
            tolerance,
            status: if r <= tolerance { Status::Pass } else { Status::Fail },
            note: None,
        },
        Err(e) => Check {
            name: name.to_string(),
            residual: f64::NAN,
            tolerance,
            status: Status::Fail,
            note: Some(e.to_string()),
        },
    }
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values.into_iter().try_fold(0.0f64, |m, v| Ok(m.max(v?)))
}

/// `Σ_{n≥1} C(1/2, (n+1)/2)² zⁿ` over odd `n`.
fn lens_generating_sum(z: f64) -> Result<f64> {
    let mut c = 0.5; // C(1/2, 1)
    let mut k = 1usize;
    let mut power = z;
    let plan = SumPlan {
        exponents: exponent_families(&[-2.0], 6, 6),
        first_checkpoint: 64,
        tol: 1e-15,
        max_terms: 1 << 22,
    };
    let s = sum_extrapolated(
        || {
            let term = c * c * power;
            c *= (0.5 - k as f64) / (k + 1) as f64;
            k += 1;
            power *= z * z;
            term
        },
        &plan,
    )?;
    Ok(s.value)
}

fn gauss_checks() -> Vec<Check> {
    vec![check("gauss 2F1(p,p;1;1) = Γ(1-2p)/Γ(1-p)² at p = 0.1..0.4", 1e-9, || {
        max_of([0.1, 0.2, 0.3, 0.4].map(|p: f64| {
            let series = pfq(&HyperParams::new(&[p, p], &[1.0], 1.0), 1e-13, DEFAULT_MAX_TERMS)?.re;
            let exact = gamma(1.0 - 2.0 * p)? / gamma(1.0 - p)?.powi(2);
            Ok((series - exact).abs())
        }))
    })]
}

fn appell_checks() -> Vec<Check> {
    let (a, b1, b2, c, x) = (1.0 / 3.0, 0.25, 0.2, 2.0, 0.5);
    let p = |y: f64| AppellParams { a, b1, b2, c, x, y };
    vec![
        check("appell F1(x, x) = 2F1(a, b1+b2; c; x)", 1e-11, || {
            let want = hyp2f1(a, b1 + b2, c, x)?;
            let s = appell_f1_series(&p(x), 1e-14)?;
            let i = appell_f1_integral(&p(x), 1e-14)?;
            Ok((s - want).abs().max((i - want).abs()))
        }),
        check("appell F1(x, 1) = gamma ratio · 2F1(a, b1; c-b2; x)", 1e-11, || {
            let want = gamma(c)? * gamma(c - a - b2)? / (gamma(c - a)? * gamma(c - b2)?) * hyp2f1(a, b1, c - b2, x)?;
            let s = appell_f1_series(&p(1.0), 1e-14)?;
            let i = appell_f1_integral(&p(1.0), 1e-14)?;
            Ok((s - want).abs().max((i - want).abs()))
        }),
    ]
}

fn wedge_checks() -> Vec<Check> {
    vec![
        check("wedge series = (sec πp - 1)/2, p = 0.1, 0.25, 0.4 (relative)", 1e-8, || {
            max_of([0.1, 0.25, 0.4].map(|p: f64| {
                let want = 0.5 * (1.0 / (PI * p).cos() - 1.0);
                Ok(((wedge_exit_time(p, 1e-12)?.value - want) / want).abs())
            }))
        }),
        check("wedge p = 1/4: 1 + 2E = √2", 1e-9, || {
            Ok((1.0 + 2.0 * wedge_exit_time(0.25, 1e-12)?.value - SQRT_2).abs())
        }),
        check("wedge p = 0.55 flagged divergent", 0.0, || match wedge_exit_time(0.55, 1e-10) {
            Err(Error::DivergenceSuspected {
                reason: DivergenceReason::KnownInfinite,
                ..
            }) => Ok(0.0),
            _ => Ok(1.0),
        }),
    ]
}

fn halfdisc_checks() -> Vec<Check> {
    let want = 2.0 * (SQRT_2 - 1.0 - 1.0 / PI);
    vec![
        check("half disc series = 2(√2 - 1 - 1/π)", 1e-8, || {
            Ok((halfdisc_exit_time(1e-9)?.value - want).abs())
        }),
        check("half disc binomial tail sum = √2 - 1 - 1/π", 1e-10, || {
            Ok((halfdisc_tail_sum(1e-13)? - want / 2.0).abs())
        }),
        check("half disc Green integral at i(√2 - 1)", 1e-10, || {
            let pt = PolarPoint::new(SQRT_2 - 1.0, PI / 2.0)?;
            Ok((green_halfdisc(pt, 1.0, 1e-12)?.value - want).abs())
        }),
    ]
}

fn lens_checks() -> Vec<Check> {
    let want = 2.0 / PI - 0.5;
    let mut exit = check("lens exit time = 2/π - 1/2", 1e-9, || Ok((lens_exit_time(1e-10)?.value - want).abs()));
    if exit.status == Status::Pass {
        exit.status = Status::KnownIssue;
        exit.note = Some("the alternative value 1/π - 1/2 is negative and is not a valid exit time".into());
    }
    vec![
        check("lens generating function = (2F1(-1/2,-1/2;1;z²) - 1)/z", 1e-12, || {
            max_of([0.3, 0.7, 1.0].map(|z: f64| {
                let closed = (hyp2f1(-0.5, -0.5, 1.0, z * z)? - 1.0) / z;
                Ok((lens_generating_sum(z)? - closed).abs())
            }))
        }),
        exit,
        check("lens forward map |w| = 1 on both arcs", 1e-12, || {
            max_of((0..100).map(|k| {
                let t = (k as f64 + 0.5) / 100.0;
                let phi = 0.75 * PI + 0.5 * PI * t;
                let z = if k % 2 == 0 {
                    Complex64::new(1.0, 0.0) + Complex64::from_polar(SQRT_2, phi)
                } else {
                    Complex64::new(-1.0, 0.0) - Complex64::from_polar(SQRT_2, phi)
                };
                Ok((lens_forward_map(z)?.norm() - 1.0).abs())
            }))
        }),
    ]
}

fn polygon_checks() -> Vec<Check> {
    vec![
        check("m-gon m = 3 equals 1/6 (relative)", 1e-9, || {
            Ok((mgon_exit_time(3, 1e-13)?.value * 6.0 - 1.0).abs())
        }),
        check("m-gon m = 64 within 1e-3 of 1/2", 1e-3, || Ok((0.5 - mgon_exit_time(64, 1e-12)?.value).abs())),
        check("square centre: hypergeometric vs single series", 1e-10, || {
            let s = square_center_exit_time(SquareForm::SingleSeries, 1e-15)?;
            Ok((square_center_exit_time(SquareForm::Hypergeometric, 1e-13)? - s).abs())
        }),
        check("square centre: double sine series vs single series", 1e-8, || {
            let s = square_center_exit_time(SquareForm::SingleSeries, 1e-15)?;
            Ok((square_center_exit_time(SquareForm::DoubleSine, 1e-10)? - s).abs())
        }),
        check("n-gram n = 2, mu = 1/2: series / R² = m-gon m = 4", 1e-8, || {
            let r = ngram_radii(2, 0.5, 0.5)?;
            let e = ngram_exit_time(2, 0.5, 0.5, 1e-11)?.value / r.circumradius.powi(2);
            Ok((e - mgon_exit_time(4, 1e-13)?.value).abs())
        }),
        check("n-gram radii agree across paths; inscribed radius > 0.570884", 0.0, || {
            let family = [(3, 0.5, 1.0 / 6.0), (4, 0.3, 0.2), (5, 0.3, 0.1), (5, 0.8, -0.4), (8, 0.2, 0.05)];
            max_of(family.map(|(n, m1, m2)| {
                let r = ngram_radii(n, m1, m2)?;
                Ok(if r.inscribed_radius > 0.570884 && r.circumradius >= r.inradius { 0.0 } else { 1.0 })
            }))
        }),
    ]
}

fn partial_fraction_checks() -> Vec<Check> {
    vec![
        check("tan(πx/2) partial fractions, x = 0.3, 1.5, 2.5", 1e-10, || {
            max_of([0.3, 1.5, 2.5].map(|x: f64| Ok((tan_partial_fractions(x, 1e-14)? - (PI * x / 2.0).tan()).abs())))
        }),
        check("cot(πx) partial fractions, x = 0.3, 1.5, 2.5", 1e-10, || {
            max_of([0.3, 1.5, 2.5].map(|x: f64| Ok((cot_partial_fractions(x, 1e-14)? - 1.0 / (PI * x).tan()).abs())))
        }),
        check("sech(πx/2) partial fractions, x = 0.3, 1, 2.5", 1e-10, || {
            max_of(
                [0.3, 1.0, 2.5].map(|x: f64| Ok((sech_partial_fractions(x, 1e-14)? - 1.0 / (PI * x / 2.0).cosh()).abs())),
            )
        }),
        check("alternating cubic sum = tan/cot closed form, x = 0.5, 1, 2", 1e-12, || {
            max_of([0.5, 1.0, 2.0].map(|x| Ok((alternating_cubic_sum(x, 1e-15)? - alternating_cubic_closed(x)).abs())))
        }),
    ]
}

fn appendix_checks() -> Vec<Check> {
    vec![
        check("∫ ln(a² - 2ab cos x + b²) over [0, nπ] = 2πn ln max", 1e-10, || {
            max_of([(2.0, 1.0, 1u32), (1.0, 3.0, 2), (0.5, 0.2, 1)].map(|(a, b, n)| {
                let f = |x: f64| (a * a - 2.0 * a * b * x.cos() + b * b).ln();
                let q = integrate(f, 0.0, n as f64 * PI, 1e-14)?.value;
                Ok((q - log_cosine_integral(a, b, n)?).abs())
            }))
        }),
        check("angular dilogarithm integral vs quadrature, 3x3x3 grid, both signs", 1e-10, || {
            let mut cases = Vec::new();
            for r in [1.0, 1.5, 2.5] {
                for frac in [0.2, 0.5, 0.8] {
                    for theta in [0.4, PI / 3.0, 2.5] {
                        for sign in [KernelSign::Difference, KernelSign::Sum] {
                            cases.push((r, frac * r, theta, sign));
                        }
                    }
                }
            }
            max_of(cases.into_iter().map(|(r, rho, theta, sign)| {
                let exact = angular_dilog_integral(r, rho, theta, sign)?;
                Ok((exact - angular_log_quadrature(r, rho, theta, sign, 1e-14)?).abs())
            }))
        }),
        check("ρ Li2(cρ) antiderivative: derivative at (0.8, 0.5)", 1e-6, || {
            let h = 1e-5;
            let d = (radial_dilog_integral_a9(0.8, 0.5 + h)? - radial_dilog_integral_a9(0.8, 0.5 - h)?) / (2.0 * h);
            Ok((d - 0.5 * dilog_real(0.4)?).abs())
        }),
        check("ρ Li2(cρ) antiderivative: ∫₀¹ ρ Li2(ρ) dρ", 1e-9, || {
            let q = integrate(|x| x * dilog_real(x).unwrap_or(f64::NAN), 0.0, 1.0, 1e-14)?.value;
            Ok((radial_dilog_integral_a9(1.0, 1.0)? - q).abs())
        }),
        check("ρ Li2(s/ρ) antiderivative: derivative at (0.3, 1)", 1e-6, || {
            let h = 1e-5;
            let d = (radial_dilog_integral_a11(0.3, 1.0 + h)? - radial_dilog_integral_a11(0.3, 1.0 - h)?) / (2.0 * h);
            Ok((d - dilog_real(0.3)?).abs())
        }),
        check("ρ Li2(s/ρ) antiderivative: ∫₁² ρ Li2(0.3/ρ) dρ", 1e-9, || {
            let q = integrate(|x| x * dilog_real(0.3 / x).unwrap_or(f64::NAN), 1.0, 2.0, 1e-14)?.value;
            Ok((radial_dilog_integral_a11(0.3, 2.0)? - radial_dilog_integral_a11(0.3, 1.0)? - q).abs())
        }),
        check("disc Green integral = (r0² - r²)/2", 1e-10, || {
            max_of([(0.0, 1.0), (0.6, 1.0), (0.5, 2.0)].map(|(r, r0): (f64, f64)| {
                Ok((disc_exit_time_via_green(r, r0)? - 0.5 * (r0 * r0 - r * r)).abs())
            }))
        }),
        check("half disc Green integral at (0.3, π/4) by two radial routes", 1e-10, || {
            Ok(green_halfdisc(PolarPoint::new(0.3, FRAC_PI_4)?, 1.0, 1e-13)?.error)
        }),
    ]
}

/// Run every check.
pub fn run_suite() -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(gauss_checks());
    out.extend(appell_checks());
    out.extend(wedge_checks());
    out.extend(halfdisc_checks());
    out.extend(lens_checks());
    out.extend(polygon_checks());
    out.extend(partial_fraction_checks());
    out.extend(appendix_checks());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let checks = run_suite();
        for c in &checks {
            assert!(c.passed(), "{c:?}");
        }
        let lens: Vec<_> = checks.iter().filter(|c| c.status == Status::KnownIssue).collect();
        assert_eq!(lens.len(), 1);
    }
}
