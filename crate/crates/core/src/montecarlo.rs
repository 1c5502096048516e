//! Monte Carlo estimates of expected exit times.
//!
//! Two estimators: Euler stepping of Brownian motion with a fixed time step,
//! and walk on spheres, which jumps to a uniform point on the largest circle
//! about the current point that fits in the domain and credits the expected
//! exit time `d²/2` of that disc. Each path draws from its own ChaCha8 stream
//! (`seed`, path index), so results do not depend on thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::domains::{Domain, DomainSpec, Point2};
use crate::error::{invalid, Error, Result};

/// Path simulation scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum McMethod {
    Euler,
    WalkOnSpheres,
}

impl std::str::FromStr for McMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euler" => Ok(McMethod::Euler),
            "wos" | "walk_on_spheres" | "walk-on-spheres" => Ok(McMethod::WalkOnSpheres),
            _ => Err(invalid(format!("unknown Monte Carlo method `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub method: McMethod,
    pub paths: usize,
    /// Euler time step.
    pub step: f64,
    /// Walk-on-spheres absorption distance.
    pub shell: f64,
    pub seed: u64,
    /// Cap on Euler steps or sphere jumps per path.
    pub max_steps: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            method: McMethod::WalkOnSpheres,
            paths: 100_000,
            step: 1e-4,
            shell: 1e-5,
            seed: 0,
            max_steps: 10_000_000,
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.paths < 100 {
            return Err(invalid(format!("need at least 100 paths, got {}", self.paths)));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(invalid("step must be positive"));
        }
        if !(self.shell > 0.0 && self.shell.is_finite()) {
            return Err(invalid("shell must be positive"));
        }
        if self.max_steps == 0 {
            return Err(invalid("max_steps must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McResult {
    pub mean: f64,
    pub std_error: f64,
    pub paths_used: usize,
    /// Paths stopped by `max_steps`; their truncated times are included.
    pub truncated_paths: usize,
    /// Bound on the systematic error, where one is known. Walk on spheres in a
    /// convex domain of width at most `W` stops with residual expected time
    /// `u ≤ shell · W`; nonconvex and wedge domains get `None`, as does Euler,
    /// whose step bias is not bounded.
    pub bias_bound: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
struct PathOutcome {
    time: f64,
    truncated: bool,
}

fn path_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn wos_path(domain: &Domain, start: Point2, shell: f64, max_steps: u64, rng: &mut ChaCha8Rng) -> PathOutcome {
    let mut p = start;
    let mut time = 0.0;
    for _ in 0..max_steps {
        let d = domain.distance_unchecked(p);
        if d < shell {
            return PathOutcome {
                time,
                truncated: false,
            };
        }
        time += 0.5 * d * d;
        let angle: f64 = rng.random::<f64>() * TAU;
        let (s, c) = angle.sin_cos();
        p = Point2::new(p.x + d * c, p.y + d * s);
    }
    PathOutcome {
        time,
        truncated: true,
    }
}

fn euler_path(domain: &Domain, start: Point2, step: f64, max_steps: u64, rng: &mut ChaCha8Rng) -> PathOutcome {
    let sd = step.sqrt();
    let mut p = start;
    for n in 1..=max_steps {
        let dx: f64 = rng.sample(StandardNormal);
        let dy: f64 = rng.sample(StandardNormal);
        p = Point2::new(p.x + sd * dx, p.y + sd * dy);
        if !domain.contains(p) {
            return PathOutcome {
                time: n as f64 * step,
                truncated: false,
            };
        }
    }
    PathOutcome {
        time: max_steps as f64 * step,
        truncated: true,
    }
}

/// Sum by recursive halving, so the rounding does not depend on how the
/// values were produced.
fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 32 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

fn summarize(times: &[f64], truncated: usize, bias_bound: Option<f64>) -> Result<McResult> {
    let n = times.len();
    if truncated == n {
        return Err(Error::AllPathsTruncated(n));
    }
    let mean = pairwise_sum(times) / n as f64;
    let dev: Vec<f64> = times.iter().map(|t| (t - mean).powi(2)).collect();
    let var = pairwise_sum(&dev) / (n as f64 - 1.0);
    Ok(McResult {
        mean,
        std_error: (var / n as f64).sqrt(),
        paths_used: n,
        truncated_paths: truncated,
        bias_bound,
    })
}

/// Upper bound on the width of a convex domain (the bounding-box diagonal, or
/// the strip width); `None` when the domain is not convex or the width is
/// infinite.
fn convex_width(domain: &Domain) -> Option<f64> {
    match *domain.spec() {
        DomainSpec::Strip { a } => Some(2.0 * a),
        DomainSpec::Wedge { .. } | DomainSpec::CircularCutout { .. } => None,
        DomainSpec::NGram { mu1, mu2, .. } if mu1 < 0.0 || mu2 < 0.0 => None,
        _ => domain.bounding_box().map(|(lo, hi)| (hi.x - lo.x).hypot(hi.y - lo.y)),
    }
}

fn run_paths(cfg: &McConfig, one: impl Fn(&mut ChaCha8Rng) -> PathOutcome + Sync) -> Vec<PathOutcome> {
    (0..cfg.paths)
        .into_par_iter()
        .map(|i| one(&mut path_rng(cfg.seed, i)))
        .collect()
}

/// Mean exit time from `start` over `cfg.paths` simulated paths.
pub fn simulate(domain: &Domain, start: Point2, cfg: &McConfig) -> Result<McResult> {
    cfg.validate()?;
    if !domain.contains(start) {
        return Err(Error::NotInterior {
            x: start.x,
            y: start.y,
        });
    }
    let (outcomes, bias) = match cfg.method {
        McMethod::WalkOnSpheres => (
            run_paths(cfg, |rng| wos_path(domain, start, cfg.shell, cfg.max_steps, rng)),
            convex_width(domain).map(|w| cfg.shell * w),
        ),
        McMethod::Euler => (
            run_paths(cfg, |rng| euler_path(domain, start, cfg.step, cfg.max_steps, rng)),
            None,
        ),
    };
    let times: Vec<f64> = outcomes.iter().map(|o| o.time).collect();
    let truncated = outcomes.iter().filter(|o| o.truncated).count();
    summarize(&times, truncated, bias)
}

/// Euler estimates for several step sizes from the same Brownian paths.
///
/// `steps` must be decreasing and each a whole multiple of the last. The finest
/// path is simulated and every coarser path is its subsequence, so the coarse
/// exit is never earlier than the fine one.
pub fn euler_refinement(
    domain: &Domain,
    start: Point2,
    steps: &[f64],
    paths: usize,
    seed: u64,
    max_time: f64,
) -> Result<Vec<McResult>> {
    let fine = *steps.last().ok_or_else(|| invalid("no step sizes given"))?;
    let ratios: Vec<u64> = steps
        .iter()
        .map(|&h| {
            let k = (h / fine).round();
            if k >= 1.0 && (h / fine - k).abs() < 1e-9 * k {
                Ok(k as u64)
            } else {
                Err(invalid(format!("step {h} is not a multiple of {fine}")))
            }
        })
        .collect::<Result<_>>()?;
    if ratios.windows(2).any(|w| w[0] <= w[1]) {
        return Err(invalid("steps must be strictly decreasing"));
    }
    McConfig {
        method: McMethod::Euler,
        paths,
        step: fine,
        shell: 1.0,
        seed,
        max_steps: 1,
    }
    .validate()?;
    if !domain.contains(start) {
        return Err(Error::NotInterior {
            x: start.x,
            y: start.y,
        });
    }
    let cap = (max_time / fine).ceil() as u64;
    let sd = fine.sqrt();
    let per_path: Vec<Vec<(f64, bool)>> = (0..paths)
        .into_par_iter()
        .map(|i| {
            let mut rng = path_rng(seed, i);
            let mut p = start;
            let mut exit: Vec<Option<f64>> = vec![None; ratios.len()];
            let mut n = 0u64;
            while n < cap && exit.iter().any(Option::is_none) {
                let dx: f64 = rng.sample(StandardNormal);
                let dy: f64 = rng.sample(StandardNormal);
                p = Point2::new(p.x + sd * dx, p.y + sd * dy);
                n += 1;
                if !domain.contains(p) {
                    for (e, &k) in exit.iter_mut().zip(&ratios) {
                        if e.is_none() && n % k == 0 {
                            *e = Some(n as f64 * fine);
                        }
                    }
                }
            }
            exit.iter()
                .map(|e| e.map_or((cap as f64 * fine, true), |t| (t, false)))
                .collect()
        })
        .collect();
    (0..ratios.len())
        .map(|j| {
            let times: Vec<f64> = per_path.iter().map(|v| v[j].0).collect();
            let truncated = per_path.iter().filter(|v| v[j].1).count();
            summarize(&times, truncated, None)
        })
        .collect()
}

/// Truncated means `E[min(τ, cap·step)]` from `(1, 0)` in the wedge
/// `|arg z| < πp/2`, one per step cap.
///
/// Euler paths with time step `step`; after each step that stays inside, the
/// path is also absorbed with the Brownian-bridge crossing probability
/// `exp(−2 d₀ d₁ / step)` of the nearest edge, which removes the leading
/// discretization bias. Paths are shared across caps, so the sequence is
/// nondecreasing; it levels off at `½(sec πp − 1)` for `p < ½` and keeps
/// growing when the expectation is infinite.
pub fn wedge_divergence_probe(
    p: f64,
    caps: &[u64],
    paths: usize,
    step: f64,
    seed: u64,
) -> Result<Vec<McResult>> {
    let domain = Domain::new(crate::domains::DomainSpec::Wedge { p })?;
    if caps.is_empty() || caps.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("caps must be nonempty and increasing"));
    }
    let top = *caps.last().unwrap_or(&1);
    McConfig {
        method: McMethod::Euler,
        paths,
        step,
        shell: 1.0,
        seed,
        max_steps: top,
    }
    .validate()?;
    let start = Point2::new(1.0, 0.0);
    let sd = step.sqrt();
    let per_path: Vec<Vec<(f64, bool)>> = (0..paths)
        .into_par_iter()
        .map(|i| {
            let mut rng = path_rng(seed, i);
            let mut pt = start;
            let mut d0 = domain.distance_unchecked(pt);
            let mut n = 0u64;
            let mut exited = false;
            while n < top && !exited {
                let dx: f64 = rng.sample(StandardNormal);
                let dy: f64 = rng.sample(StandardNormal);
                pt = Point2::new(pt.x + sd * dx, pt.y + sd * dy);
                n += 1;
                if !domain.contains(pt) {
                    exited = true;
                } else {
                    let d1 = domain.distance_unchecked(pt);
                    let u: f64 = rng.random();
                    exited = u < (-2.0 * d0 * d1 / step).exp();
                    d0 = d1;
                }
            }
            caps.iter()
                .map(|&cap| {
                    if exited && n <= cap {
                        (n as f64 * step, false)
                    } else {
                        (cap as f64 * step, true)
                    }
                })
                .collect()
        })
        .collect();
    (0..caps.len())
        .map(|j| {
            let times: Vec<f64> = per_path.iter().map(|v| v[j].0).collect();
            let truncated = per_path.iter().filter(|v| v[j].1).count();
            let mut r = summarize(&times, truncated.min(paths - 1), None)?;
            r.truncated_paths = truncated;
            Ok(r)
        })
        .collect()
}
