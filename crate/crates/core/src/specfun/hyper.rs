use num_complex::Complex64;

use super::gamma::gamma;
use crate::accel::{exponent_families, sum_extrapolated, SumPlan};
use crate::error::{invalid, Error, Result};

/// Default cap on series terms; unit-argument sums stop well before this.
pub const DEFAULT_MAX_TERMS: usize = 1 << 22;

/// Parameters of `pFq(a_1..a_p; b_1..b_q; x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperParams {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub argument: Complex64,
}

impl HyperParams {
    pub fn new(upper: &[f64], lower: &[f64], x: f64) -> Self {
        Self::complex(upper, lower, Complex64::new(x, 0.0))
    }

    pub fn complex(upper: &[f64], lower: &[f64], z: Complex64) -> Self {
        HyperParams {
            upper: upper.to_vec(),
            lower: lower.to_vec(),
            argument: z,
        }
    }

    /// Order at which the series terminates (last nonzero index), if any.
    pub fn terminates_at(&self) -> Option<usize> {
        self.upper
            .iter()
            .filter(|&&a| is_nonpositive_integer(a))
            .map(|&a| (-a) as usize)
            .min()
    }

    fn validate(&self) -> Result<()> {
        let p = self.upper.len();
        let q = self.lower.len();
        if p > q + 1 {
            return Err(invalid(format!("pFq with p = {p} > q + 1 = {}", q + 1)));
        }
        if self.upper.iter().chain(&self.lower).any(|v| !v.is_finite())
            || !self.argument.re.is_finite()
            || !self.argument.im.is_finite()
        {
            return Err(invalid("non-finite hypergeometric parameter"));
        }
        let stop = self.terminates_at();
        for &b in &self.lower {
            if is_nonpositive_integer(b) {
                let zero_at = (-b) as usize;
                match stop {
                    Some(m) if m <= zero_at => {}
                    _ => return Err(invalid(format!("lower parameter {b} is a nonpositive integer"))),
                }
            }
        }
        Ok(())
    }

    /// `Σb − Σa`, which controls convergence on the unit circle.
    fn excess(&self) -> f64 {
        self.lower.iter().sum::<f64>() - self.upper.iter().sum::<f64>()
    }

    fn ratio(&self, k: usize) -> f64 {
        let k = k as f64;
        let num: f64 = self.upper.iter().map(|a| a + k).product();
        let den: f64 = self.lower.iter().map(|b| b + k).product();
        num / (den * (k + 1.0))
    }
}

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Generalized hypergeometric series `pFq(a; b; x)`.
///
/// Terminating series are summed exactly. Inside the unit disc the series is
/// summed until `|term| ≤ tol·|sum|` (inflated by the geometric tail factor)
/// holds for three consecutive terms. At `x = ±1` with `p = q + 1` the partial
/// sums are extrapolated in `N` using their known power-law corrections.
pub fn pfq(params: &HyperParams, tol: f64, max_terms: usize) -> Result<Complex64> {
    params.validate()?;
    let z = params.argument;
    if let Some(m) = params.terminates_at() {
        return Ok(terminating(params, m));
    }
    let p = params.upper.len();
    let q = params.lower.len();
    if p <= q || z.norm() < 1.0 {
        return loop_sum(params, tol, max_terms);
    }
    // p = q + 1 on the unit circle.
    let s = params.excess();
    if z.im == 0.0 && z.re == 1.0 {
        if s <= 0.0 {
            return Err(invalid(format!("pFq diverges at x = 1 (Σb − Σa = {s})")));
        }
        return unit_sum(params, -s, 1, tol, max_terms).map(|v| Complex64::new(v, 0.0));
    }
    if z.im == 0.0 && z.re == -1.0 {
        if s <= -1.0 {
            return Err(invalid(format!("pFq diverges at x = -1 (Σb − Σa = {s})")));
        }
        return unit_sum(params, -s - 1.0, 2, tol, max_terms).map(|v| Complex64::new(v, 0.0));
    }
    if z.norm() > 1.0 {
        return Err(invalid(format!("|x| = {} > 1 outside the disc of convergence", z.norm())));
    }
    Err(Error::NotApplicable(
        "pFq on the unit circle away from x = ±1".into(),
    ))
}

/// Real-argument convenience wrapper around [`pfq`].
pub fn pfq_real(upper: &[f64], lower: &[f64], x: f64, tol: f64, max_terms: usize) -> Result<f64> {
    pfq(&HyperParams::new(upper, lower, x), tol, max_terms).map(|v| v.re)
}

fn terminating(params: &HyperParams, m: usize) -> Complex64 {
    let z = params.argument;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..m {
        term *= z * params.ratio(k);
        sum += term;
    }
    sum
}

fn loop_sum(params: &HyperParams, tol: f64, max_terms: usize) -> Result<Complex64> {
    let z = params.argument;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut quiet = 0;
    for k in 0..max_terms {
        let r = params.ratio(k);
        term *= z * r;
        sum += term;
        // Tail of a series whose ratio has settled near |r·z| < 1.
        let rho = (r * z.norm()).abs();
        let tail = if rho < 1.0 { term.norm() / (1.0 - rho) } else { f64::INFINITY };
        if tail <= tol * sum.norm() || term.norm() == 0.0 {
            quiet += 1;
            if quiet == 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NotConverged {
        terms: max_terms,
        partial: sum.re,
        estimate: term.norm(),
    })
}

/// Sum at `x = ±1`: the terms behave like `k^{σ−1}` (times `(−1)^k`), so the
/// partial-sum error expands in powers `N^{λ−j}` with `λ = lead`.
fn unit_sum(params: &HyperParams, lead: f64, stride: usize, tol: f64, max_terms: usize) -> Result<f64> {
    let x = params.argument.re;
    let mut term = 1.0;
    let mut k = 0usize;
    let mut first = true;
    let next = || {
        if first {
            first = false;
            return 1.0;
        }
        term *= x * params.ratio(k);
        k += 1;
        term
    };
    let plan = SumPlan {
        exponents: exponent_families(&[lead], 8, 8),
        first_checkpoint: 64 * stride,
        tol: tol.max(1e-15),
        max_terms,
    };
    sum_extrapolated(next, &plan).map(|e| e.value)
}

/// Gauss's ₂F₁ for real arguments in `[-1, 1]`.
///
/// Uses the exact finite sum when terminating, Gauss's closed form at `x = 1`
/// and a Pfaff transformation for `x < −1/2`.
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(invalid(format!("hyp2f1 argument {x} outside [-1, 1]")));
    }
    let params = HyperParams::new(&[a, b], &[c], x);
    params.validate()?;
    if params.terminates_at().is_some() {
        return pfq(&params, 1e-16, DEFAULT_MAX_TERMS).map(|v| v.re);
    }
    if x == 1.0 {
        return gauss_unit(a, b, c);
    }
    if x < -0.5 {
        // Pfaff on whichever upper parameter keeps the new series shorter.
        let w = x / (x - 1.0);
        let (p, q) = if (a * (c - b)).abs() <= (b * (c - a)).abs() { (a, b) } else { (b, a) };
        let inner = pfq_real(&[p, c - q], &[c], w, 1e-16, DEFAULT_MAX_TERMS)?;
        return Ok((1.0 - x).powf(-p) * inner);
    }
    pfq(&params, 1e-16, DEFAULT_MAX_TERMS).map(|v| v.re)
}

/// `₂F₁(a, b; c; 1) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b))`, valid for `c − a − b > 0`.
pub fn gauss_unit(a: f64, b: f64, c: f64) -> Result<f64> {
    if c - a - b <= 0.0 {
        return Err(invalid(format!("₂F₁ diverges at 1 (c − a − b = {})", c - a - b)));
    }
    // 1/Γ vanishes at the poles of c − a or c − b.
    if is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b) {
        return Ok(0.0);
    }
    Ok(gamma(c)? * gamma(c - a - b)? / (gamma(c - a)? * gamma(c - b)?))
}
