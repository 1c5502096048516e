//! Limits of slowly convergent series by generalized Richardson extrapolation.
//!
//! Series whose terms behave like `k^-s (c0 + c1/k + ...)` (hypergeometric
//! series at unit argument, squared coefficients of maps with algebraic
//! boundary singularities) have partial sums
//!
//! ```text
//! S_N = S + Σ_j e_j N^{λ_j}
//! ```
//!
//! with known exponents `λ_j < 0`. Sampling `S_N` at `N = N0·2^i` and solving
//! the small linear system for `S` removes the leading terms one per sample.

use crate::error::{Error, Result};

/// Result of an extrapolated summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    /// Shift of the extrapolated value caused by the newest checkpoint.
    pub error: f64,
    pub terms: usize,
}

/// Estimate `S` from samples `(N, S_N)` given the correction exponents.
///
/// Uses the last `exponents.len() + 1` samples. Returns `None` when there are
/// too few samples or the system is singular.
pub fn richardson(samples: &[(f64, f64)], exponents: &[f64]) -> Option<f64> {
    let k = exponents.len();
    if samples.len() < k + 1 {
        return None;
    }
    let used = &samples[samples.len() - (k + 1)..];
    let n_ref = used.last()?.0;
    let dim = k + 1;
    let mut a = vec![0.0; dim * dim];
    let mut b = vec![0.0; dim];
    for (row, &(n, s)) in used.iter().enumerate() {
        a[row * dim] = 1.0;
        let x = n / n_ref;
        for (col, &e) in exponents.iter().enumerate() {
            a[row * dim + col + 1] = x.powf(e);
        }
        b[row] = s;
    }
    solve_dense(&mut a, &mut b, dim)?;
    Some(b[0])
}

/// Exponent list `base, base-1, base-2, ...` merged across families,
/// deduplicated, sorted from slowest to fastest decay, truncated to `count`.
pub fn exponent_families(bases: &[f64], per_family: usize, count: usize) -> Vec<f64> {
    let mut all: Vec<f64> = bases
        .iter()
        .flat_map(|&b| (0..per_family).map(move |j| b - j as f64))
        .collect();
    all.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    all.dedup_by(|x, y| (*x - *y).abs() < 1e-9);
    all.truncate(count);
    all
}

/// Parameters for [`sum_extrapolated`].
#[derive(Debug, Clone)]
pub struct SumPlan {
    /// Correction exponents for `S_N − S`, slowest first.
    pub exponents: Vec<f64>,
    /// First checkpoint (must be even for alternating series).
    pub first_checkpoint: usize,
    pub tol: f64,
    pub max_terms: usize,
}

/// Sum successive terms produced by `next_term`, extrapolating the partial sums
/// at `N0, 2N0, 4N0, ...` until two consecutive extrapolations agree to `tol`
/// (relative, or absolute when the value is below 1).
pub fn sum_extrapolated(mut next_term: impl FnMut() -> f64, plan: &SumPlan) -> Result<Extrapolated> {
    let mut samples: Vec<(f64, f64)> = Vec::new();
    let mut partial = 0.0;
    let mut compensation = 0.0;
    let mut n = 0usize;
    let mut checkpoint = plan.first_checkpoint.max(2);
    let mut previous: Option<f64> = None;
    let mut last_shift = f64::INFINITY;
    while checkpoint <= plan.max_terms {
        while n < checkpoint {
            // Kahan summation: partial sums feed a difference-based solve.
            let y = next_term() - compensation;
            let t = partial + y;
            compensation = (t - partial) - y;
            partial = t;
            n += 1;
        }
        samples.push((n as f64, partial));
        let k = plan.exponents.len().min(samples.len() - 1);
        if k >= 1 {
            if let Some(estimate) = richardson(&samples, &plan.exponents[..k]) {
                if let Some(prev) = previous {
                    last_shift = (estimate - prev).abs();
                    let scale = estimate.abs().max(1.0);
                    if last_shift <= plan.tol * scale && samples.len() >= 4 {
                        return Ok(Extrapolated {
                            value: estimate,
                            error: last_shift,
                            terms: n,
                        });
                    }
                }
                previous = Some(estimate);
            }
        }
        checkpoint *= 2;
    }
    Err(Error::NotConverged {
        terms: n,
        partial: previous.unwrap_or(partial),
        estimate: last_shift,
    })
}

/// Gaussian elimination with partial pivoting; solution overwrites `b`.
fn solve_dense(a: &mut [f64], b: &mut [f64], n: usize) -> Option<()> {
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i * n + col]
                .abs()
                .partial_cmp(&a[j * n + col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot * n + col].abs() < 1e-300 {
            return None;
        }
        if pivot != col {
            for c in 0..n {
                a.swap(pivot * n + c, col * n + c);
            }
            b.swap(pivot, col);
        }
        for row in col + 1..n {
            let factor = a[row * n + col] / a[col * n + col];
            if factor != 0.0 {
                for c in col..n {
                    a[row * n + c] -= factor * a[col * n + c];
                }
                b[row] -= factor * b[col];
            }
        }
    }
    for row in (0..n).rev() {
        let mut acc = b[row];
        for c in row + 1..n {
            acc -= a[row * n + c] * b[c];
        }
        b[row] = acc / a[row * n + row];
    }
    Some(())
}
