//! Conformal-map route: Maclaurin coefficients of maps from the unit disc and
//! the functional `E_{f(0)}[τ] = ½ Σ_{n≥1} |a_n|²`.

mod halfdisc;
mod lens;
mod mgon;
mod ngram;
mod series;
mod wedge;

pub use halfdisc::{halfdisc_coefficients, halfdisc_exit_time, halfdisc_map, halfdisc_tail_sum};
pub use lens::{lens_coefficients, lens_exit_time, lens_forward_map};
pub use mgon::mgon_exit_time;
pub use ngram::{
    ngram_coefficients, ngram_exit_time, ngram_exit_time_direct, ngram_radii, ngram_vertex_radii,
    ngram_vertex_radii_appell, ngram_vertex_radii_quadrature, NGramRadii,
};
pub use series::PowerSeries;
pub use wedge::{wedge_coefficients, wedge_coefficients_recurrence, wedge_exit_time};

use crate::error::{invalid, DivergenceReason, Error, Result};
use crate::report::{ExitTimeEstimate, Method};

/// Default truncation order for coefficient sums `½ Σ |a_n|²`.
pub const DEFAULT_ORDER: usize = 4096;

/// Trailing window used by the monotonicity test.
const WINDOW: usize = 100;
/// Fewer nonzero coefficients than this in the last decade: no tail fit.
const MIN_FIT: usize = 10;
const SLOW_MARGIN: f64 = 0.02;

/// `½ Σ_{n≥1} |a_n|²` with a fitted tail.
///
/// The squared moduli over the last decade of indices (nonzero entries only,
/// so lacunary series are handled) are fitted by a power law and by a
/// geometric law; the better fit extrapolates the omitted tail, which is added
/// to the value and reported as the error. Divergence is suspected when the
/// trailing 100 nonzero entries never decrease, when the fitted decay is too
/// slow to be summable, or when the tail exceeds `tol`.
pub fn lemma1_exit_time(series: &PowerSeries, tol: f64) -> Result<ExitTimeEstimate> {
    let sq = series.squared_moduli();
    let m = series.order();
    let partial = 0.5 * neumaier(sq[1..].iter().copied());
    let nonzero: Vec<(usize, f64)> = sq
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &v)| v > 0.0)
        .map(|(n, &v)| (n, v))
        .collect();
    if nonzero.is_empty() {
        return Err(invalid("constant map has no exit-time functional"));
    }
    if nonzero.len() >= WINDOW {
        let w = &nonzero[nonzero.len() - WINDOW..];
        if w.windows(2).all(|p| p[1].1 >= p[0].1) {
            return Err(Error::DivergenceSuspected {
                reason: DivergenceReason::NonDecreasing,
                partial,
                tail: f64::INFINITY,
            });
        }
    }
    let lo = m / 10;
    let fit: Vec<(f64, f64)> = nonzero
        .iter()
        .filter(|(n, _)| *n > lo)
        .map(|&(n, v)| (n as f64, v.ln()))
        .collect();
    if fit.len() < MIN_FIT {
        return Ok(ExitTimeEstimate::new(partial, Method::Series, 0.0, m));
    }
    let density = fit.len() as f64 / (m - lo) as f64;
    let mf = m as f64;

    let power = least_squares(fit.iter().map(|&(n, lv)| (n.ln(), lv)));
    let geometric = least_squares(fit.iter().copied());
    let tail = if geometric.rss < power.rss && geometric.slope < 0.0 {
        let lambda = -geometric.slope;
        let step = 1.0 / density;
        let c = geometric.intercept.exp();
        c * (-lambda * mf).exp() * (-lambda * step).exp() / (1.0 - (-lambda * step).exp())
    } else {
        let s = -power.slope;
        // Exponents this close to 1 cannot be told apart from divergence.
        if s <= 1.0 + SLOW_MARGIN {
            return Err(Error::DivergenceSuspected {
                reason: DivergenceReason::SlowDecay,
                partial,
                tail: f64::INFINITY,
            });
        }
        density * power.intercept.exp() * mf.powf(1.0 - s) / (s - 1.0)
    };
    let half_tail = 0.5 * tail;
    if !(half_tail <= tol) {
        return Err(Error::DivergenceSuspected {
            reason: DivergenceReason::TailAboveTolerance,
            partial,
            tail: half_tail,
        });
    }
    Ok(ExitTimeEstimate::new(partial + half_tail, Method::Series, half_tail, m))
}

/// Coefficient sum with the order doubled from `start` until the tail is below
/// `tol` or `cap` is reached.
pub(crate) fn lemma1_adaptive(
    build: impl Fn(usize) -> Result<PowerSeries>,
    tol: f64,
    start: usize,
    cap: usize,
) -> Result<ExitTimeEstimate> {
    let mut order = start;
    loop {
        let series = build(order)?;
        match lemma1_exit_time(&series, tol) {
            Err(Error::DivergenceSuspected {
                reason: DivergenceReason::TailAboveTolerance,
                ..
            }) if order < cap => order *= 2,
            other => return other,
        }
    }
}

struct Fit {
    slope: f64,
    intercept: f64,
    rss: f64,
}

fn least_squares(points: impl Iterator<Item = (f64, f64)> + Clone) -> Fit {
    let n = points.clone().count() as f64;
    let (sx, sy) = points.clone().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (sxx, sxy) = points
        .clone()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx).powi(2), b + (x - mx) * (y - my)));
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss = points.map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    Fit {
        slope,
        intercept,
        rss,
    }
}

/// Compensated summation.
pub(crate) fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn identity_map_gives_one_half() {
        for order in [1, 8, 4096] {
            let e = lemma1_exit_time(&PowerSeries::identity(order), 1e-12).unwrap();
            assert_eq!(e.value, 0.5);
        }
    }

    #[test]
    fn koebe_is_flagged() {
        let coeffs: Vec<Complex64> = (0..=4096).map(|n| Complex64::new(n as f64, 0.0)).collect();
        let r = lemma1_exit_time(&PowerSeries::new(coeffs).unwrap(), 1e-8);
        assert!(matches!(
            r,
            Err(Error::DivergenceSuspected {
                reason: DivergenceReason::NonDecreasing,
                ..
            })
        ));
    }

    #[test]
    fn harmonic_decay_is_flagged() {
        // |a_n|² = 1/n is not summable
        let coeffs: Vec<Complex64> = (0..=4096)
            .map(|n| Complex64::new(if n == 0 { 0.0 } else { (n as f64).powf(-0.5) }, 0.0))
            .collect();
        let r = lemma1_exit_time(&PowerSeries::new(coeffs).unwrap(), 1e-8);
        assert!(matches!(
            r,
            Err(Error::DivergenceSuspected {
                reason: DivergenceReason::SlowDecay,
                ..
            })
        ));
    }

    #[test]
    fn tail_fit_recovers_power_law_sum() {
        // |a_n|² = n^{-3}: ½ζ(3)
        let coeffs: Vec<Complex64> = (0..=4096)
            .map(|n| Complex64::new(if n == 0 { 0.0 } else { (n as f64).powf(-1.5) }, 0.0))
            .collect();
        let e = lemma1_exit_time(&PowerSeries::new(coeffs).unwrap(), 1e-6).unwrap();
        let zeta3 = 1.202_056_903_159_594_3;
        assert!((e.value - 0.5 * zeta3).abs() < 1e-10, "{e:?}");
    }

    #[test]
    fn geometric_decay() {
        let coeffs: Vec<Complex64> = (0..=200).map(|n| Complex64::new(0.5f64.powi(n), 0.0)).collect();
        let e = lemma1_exit_time(&PowerSeries::new(coeffs).unwrap(), 1e-12).unwrap();
        // ½ Σ_{n≥1} 4^{-n} = 1/6
        assert!((e.value - 1.0 / 6.0).abs() < 1e-15);
    }
}
