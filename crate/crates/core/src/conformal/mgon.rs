use crate::error::{invalid, Result};
use crate::report::{ExitTimeEstimate, Method};
use crate::specfun::{beta, pfq, HyperParams, DEFAULT_MAX_TERMS};

/// Expected exit time from the centre of the regular `m`-gon inscribed in the
/// unit circle:
/// `m²/(2B²(1/m, 1 − 2/m)) · ₄F₃(1/m, 1/m, 2/m, 2/m; 1+1/m, 1+1/m, 1; 1)`.
pub fn mgon_exit_time(m: u32, tol: f64) -> Result<ExitTimeEstimate> {
    if m < 3 {
        return Err(invalid(format!("m-gon needs m >= 3, got {m}")));
    }
    let mf = m as f64;
    let k = 1.0 / mf;
    let b = beta(k, 1.0 - 2.0 * k)?;
    let params = HyperParams::new(&[k, k, 2.0 * k, 2.0 * k], &[1.0 + k, 1.0 + k, 1.0], 1.0);
    let f = pfq(&params, tol, DEFAULT_MAX_TERMS)?.re;
    let value = mf * mf / (2.0 * b * b) * f;
    Ok(ExitTimeEstimate::new(value, Method::Series, tol * value.abs(), 0))
}
