//! Expected exit times of planar Brownian motion.
//!
//! Four independent routes compute `E_z[τ]`, the mean time for a standard
//! planar Brownian motion started at `z` to leave a simply connected domain:
//!
//! - [`conformal`]: Maclaurin coefficients `a_n` of a conformal map `f` of the
//!   unit disc, with `E_{f(0)}[τ] = ½ Σ_{n≥1} |a_n|²`.
//! - [`closedform`]: exact solutions of `∇²u = −2` with `u = 0` on the boundary.
//! - [`greenfn`]: integration of the Dirichlet Green function (disc, half disc).
//! - [`montecarlo`]: walk-on-spheres and Euler simulation.
//!
//! [`specfun`] holds the special-function kernel (gamma, `pFq`, Appell `F1`,
//! dilogarithm) the analytic routes are built on, and [`report`] combines the
//! routes into per-domain tables.

pub mod accel;
pub mod closedform;
pub mod conformal;
pub mod domains;
mod error;
pub mod greenfn;
pub mod montecarlo;
pub mod quad;
pub mod report;
pub mod specfun;
pub mod verify;

pub use conformal::{NGramRadii, PowerSeries};
pub use domains::{Domain, DomainSpec, Point2};
pub use error::{DivergenceReason, Error, Result};
pub use montecarlo::{McConfig, McMethod, McResult};
pub use report::{estimate, estimate_all, EstimateOptions, ExitTimeEstimate, Method, MethodReport};

pub use num_complex::Complex64;
