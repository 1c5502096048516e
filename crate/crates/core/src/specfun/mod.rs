//! Special-function kernel: gamma and beta, generalized hypergeometric series,
//! Appell `F1` and the complex dilogarithm.

mod appell;
mod dilog;
mod gamma;
mod hyper;

pub use appell::{
    appell_f1, appell_f1_at_unit_y, appell_f1_diagonal, appell_f1_integral, appell_f1_series,
    AppellParams,
};
pub use dilog::{dilog, dilog_real};
pub use gamma::{beta, binomial, gamma, ln_gamma, ln_gamma_signed, pochhammer};
pub use hyper::{gauss_unit, hyp2f1, pfq, pfq_real, HyperParams, DEFAULT_MAX_TERMS};
