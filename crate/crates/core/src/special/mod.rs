//! Real-argument special functions used throughout the solver: gamma,
//! signed log-gamma, digamma, Kummer M, Tricomi Psi and Whittaker W.
//!
//! All functions are pure; they can be called concurrently from any number
//! of threads.

mod gamma;
mod hyper;

pub use gamma::{
    digamma, gamma, gamma_ratio, lgamma_signed, ln_gamma_ratio_shifted, LogGammaValue, POLE_TOL,
};
pub use hyper::{kummer_m, tricomi_u, tricomi_u_asymptotic, whittaker_w};

/// Errors from special-function evaluation.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum SpecialError {
    /// Argument within tolerance of a non-positive integer pole of Gamma/psi.
    #[error("argument {0} is within 1e-12 of a non-positive-integer pole")]
    Pole(f64),
    /// A hypergeometric `b` parameter at (or too close to) a degenerate
    /// integer value.
    #[error("parameter b = {0} is too close to an integer")]
    ParameterPole(f64),
}
