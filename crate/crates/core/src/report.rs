//! Per-domain tables combining every applicable method.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::closedform;
use crate::conformal::{
    halfdisc_exit_time, lemma1_exit_time, lens_exit_time, mgon_exit_time, ngram_exit_time,
    wedge_exit_time, PowerSeries, DEFAULT_ORDER,
};
use crate::domains::{Domain, DomainSpec, Point2};
use crate::error::{Error, Result};
use crate::greenfn::{self, PolarPoint};
use crate::montecarlo::{simulate, McConfig};

/// Which route produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Half the sum of squared Maclaurin coefficients, or a hypergeometric
    /// closed form derived from it.
    Series,
    /// Exact solution of the Poisson problem.
    Closed,
    /// Integration of the Dirichlet Green function.
    Green,
    /// Monte Carlo simulation.
    Mc,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Series, Method::Closed, Method::Green, Method::Mc];

    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Closed => "closed",
            Method::Green => "green",
            Method::Mc => "mc",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// A single exit-time value with its error indicator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExitTimeEstimate {
    pub value: f64,
    pub method: Method,
    /// Truncation/tail bound for deterministic routes, standard error for
    /// Monte Carlo.
    pub error: f64,
    /// Series terms, quadrature evaluations or simulated paths.
    pub count: usize,
}

impl ExitTimeEstimate {
    pub fn new(value: f64, method: Method, error: f64, count: usize) -> Self {
        ExitTimeEstimate {
            value,
            method,
            error,
            count,
        }
    }
}

/// Settings shared by [`estimate`] and [`estimate_all`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateOptions {
    /// Tolerance for series, extrapolation and quadrature.
    pub tol: f64,
    /// Fourier terms for series closed forms.
    pub terms: usize,
    pub mc: McConfig,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        EstimateOptions {
            tol: 1e-10,
            terms: closedform::DEFAULT_TERMS,
            mc: McConfig::default(),
        }
    }
}

/// A method that produced no value, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Unavailable {
    pub method: Method,
    pub reason: String,
}

/// Difference between two estimates and whether it is within their combined
/// error (three standard errors when Monte Carlo is involved).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub first: Method,
    pub second: Method,
    pub difference: f64,
    pub allowed: f64,
    pub consistent: bool,
}

/// Every requested method at one point of one domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodReport {
    pub domain: DomainSpec,
    pub point: Point2,
    pub estimates: Vec<ExitTimeEstimate>,
    pub unavailable: Vec<Unavailable>,
    pub discrepancies: Vec<Discrepancy>,
}

fn not_applicable(msg: &str) -> Error {
    Error::NotApplicable(msg.to_string())
}

fn same_point(a: Point2, b: Point2) -> bool {
    a.dist(b) <= 1e-12 * (1.0 + b.norm())
}

/// Coefficient sum for the Möbius map of the unit disc onto `|w| < r0` sending 0
/// to `c`: `a_n = r0(1 − |c/r0|²)(−conj(c/r0))^{n−1}`.
fn disc_series(pt: Point2, r0: f64, tol: f64) -> Result<ExitTimeEstimate> {
    let c = Complex64::from(pt) / r0;
    let mut coeffs = vec![c * r0];
    let scale = r0 * (1.0 - c.norm_sqr());
    let mut power = Complex64::new(1.0, 0.0);
    for _ in 1..=DEFAULT_ORDER {
        coeffs.push(scale * power);
        power *= -c.conj();
    }
    lemma1_exit_time(&PowerSeries::new(coeffs)?, tol)
}

fn series_estimate(domain: &Domain, pt: Point2, tol: f64) -> Result<ExitTimeEstimate> {
    let origin_only = |what: &str| -> Result<()> {
        if same_point(pt, Point2::ORIGIN) {
            Ok(())
        } else {
            Err(not_applicable(&format!("the {what} series gives the exit time from the origin only")))
        }
    };
    match *domain.spec() {
        DomainSpec::Disc { r0 } => disc_series(pt, r0, tol),
        DomainSpec::HalfDisc { r0 } => {
            let centre = Point2::new(0.0, (2f64.sqrt() - 1.0) * r0);
            if !same_point(pt, centre) {
                return Err(not_applicable("the half-disc series gives the exit time from i(√2 − 1)r0 only"));
            }
            let mut e = halfdisc_exit_time(tol)?;
            e.value *= r0 * r0;
            e.error *= r0 * r0;
            Ok(e)
        }
        DomainSpec::Wedge { p } => {
            if pt.y.abs() > 1e-12 * pt.x.abs() {
                return Err(not_applicable("the wedge series gives the exit time on the axis only"));
            }
            let mut e = wedge_exit_time(p, tol)?;
            e.value *= pt.x * pt.x;
            e.error *= pt.x * pt.x;
            Ok(e)
        }
        DomainSpec::RegularPolygon { m } => {
            origin_only("m-gon")?;
            mgon_exit_time(m, tol)
        }
        DomainSpec::NGram { n, mu1, mu2 } => {
            origin_only("n-gram")?;
            ngram_exit_time(n, mu1, mu2, tol)
        }
        DomainSpec::Lens => {
            origin_only("lens")?;
            lens_exit_time(tol)
        }
        _ => Err(not_applicable("no conformal series for this domain")),
    }
}

fn green_estimate(domain: &Domain, pt: Point2, tol: f64) -> Result<ExitTimeEstimate> {
    match *domain.spec() {
        DomainSpec::Disc { r0 } => {
            let v = greenfn::disc_exit_time_via_green(pt.norm(), r0)?;
            Ok(ExitTimeEstimate::new(v, Method::Green, 0.0, 0))
        }
        DomainSpec::HalfDisc { r0 } => {
            greenfn::halfdisc_exit_time(PolarPoint::new(pt.norm(), pt.arg())?, r0, tol.max(1e-13))
        }
        _ => Err(not_applicable("Green function available for the disc and half disc only")),
    }
}

/// One method at one point.
pub fn estimate(domain: &Domain, pt: Point2, method: Method, opts: &EstimateOptions) -> Result<ExitTimeEstimate> {
    if !domain.contains(pt) {
        return Err(Error::NotInterior { x: pt.x, y: pt.y });
    }
    match method {
        Method::Series => series_estimate(domain, pt, opts.tol),
        Method::Closed => {
            let v = closedform::field(domain, pt, opts.terms)?;
            Ok(ExitTimeEstimate::new(v, Method::Closed, 0.0, opts.terms))
        }
        Method::Green => green_estimate(domain, pt, opts.tol),
        Method::Mc => {
            if let DomainSpec::Wedge { p } = *domain.spec() {
                if p >= 0.5 {
                    return Err(Error::NotApplicable(
                        "wedge with p >= 1/2 has infinite expected exit time; sample means would not converge".into(),
                    ));
                }
            }
            let r = simulate(domain, pt, &opts.mc)?;
            Ok(ExitTimeEstimate::new(r.mean, Method::Mc, r.std_error, r.paths_used))
        }
    }
}

/// Pairwise differences between estimates.
pub fn discrepancies(estimates: &[ExitTimeEstimate]) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for (i, a) in estimates.iter().enumerate() {
        for b in &estimates[i + 1..] {
            let difference = (a.value - b.value).abs();
            let allowed = if a.method == Method::Mc || b.method == Method::Mc {
                3.0 * a.error.hypot(b.error)
            } else {
                a.error + b.error + 1e-9 * a.value.abs().max(b.value.abs()).max(1.0)
            };
            out.push(Discrepancy {
                first: a.method,
                second: b.method,
                difference,
                allowed,
                consistent: difference <= allowed,
            });
        }
    }
    out
}

/// Run `methods` at `pt`; methods that do not apply are listed with the reason.
pub fn estimate_all(domain: &Domain, pt: Point2, methods: &[Method], opts: &EstimateOptions) -> Result<MethodReport> {
    if !domain.contains(pt) {
        return Err(Error::NotInterior { x: pt.x, y: pt.y });
    }
    let mut estimates = Vec::new();
    let mut unavailable = Vec::new();
    for &method in methods {
        match estimate(domain, pt, method, opts) {
            Ok(e) => estimates.push(e),
            Err(e) => unavailable.push(Unavailable {
                method,
                reason: e.to_string(),
            }),
        }
    }
    let discrepancies = discrepancies(&estimates);
    Ok(MethodReport {
        domain: *domain.spec(),
        point: pt,
        estimates,
        unavailable,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> EstimateOptions {
        EstimateOptions {
            mc: McConfig {
                paths: 2000,
                seed: 4,
                ..McConfig::default()
            },
            ..EstimateOptions::default()
        }
    }

    #[test]
    fn disc_all_methods() {
        let d: Domain = "disc:r0=2".parse().unwrap();
        let pt = Point2::new(0.6, -0.8);
        let r = estimate_all(&d, pt, &Method::ALL, &opts()).unwrap();
        assert_eq!(r.estimates.len(), 4, "{r:?}");
        for e in &r.estimates {
            assert!((e.value - 1.5).abs() < 1e-9 || e.method == Method::Mc, "{e:?}");
        }
        assert!(r.discrepancies.iter().all(|d| d.consistent), "{r:?}");
    }

    #[test]
    fn unavailable_methods_are_listed() {
        let d: Domain = "ellipse:a=2,b=1".parse().unwrap();
        let r = estimate_all(&d, Point2::new(0.5, 0.1), &[Method::Series, Method::Closed, Method::Green], &opts())
            .unwrap();
        assert_eq!(r.estimates.len(), 1);
        assert_eq!(r.unavailable.len(), 2);
        assert!(r.discrepancies.is_empty());
    }

    #[test]
    fn halfdisc_series_and_green() {
        let d: Domain = "halfdisc:r0=2".parse().unwrap();
        let pt = Point2::new(0.0, 2.0 * (2f64.sqrt() - 1.0));
        let s = estimate(&d, pt, Method::Series, &opts()).unwrap();
        let g = estimate(&d, pt, Method::Green, &opts()).unwrap();
        assert!((s.value - g.value).abs() < 1e-8, "{s:?} {g:?}");
    }

    #[test]
    fn wedge_axis_scaling() {
        let d: Domain = "wedge:p=0.25".parse().unwrap();
        let s = estimate(&d, Point2::new(2.0, 0.0), Method::Series, &opts()).unwrap();
        let c = estimate(&d, Point2::new(2.0, 0.0), Method::Closed, &opts()).unwrap();
        assert!((s.value - c.value).abs() < 1e-8, "{s:?} {c:?}");
    }
}
