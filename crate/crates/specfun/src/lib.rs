//! Complex-argument special functions: the gamma function, Kummer's confluent
//! hypergeometric function ₁F₁ and Hermite functions of arbitrary complex degree.
//!
//! All routines are pure; the ₁F₁ and Hermite evaluators report the path they took
//! and a heuristic error estimate alongside the value.

mod dd;
mod gamma;
mod hermite;
mod kummer;

use num_complex::Complex64;
use thiserror::Error;

pub use gamma::{gamma_complex, recip_gamma};
pub use hermite::hermite_h;
pub use kummer::{kummer_1f1, MAX_TERMS, SWITCH_RADIUS};

/// Evaluation path taken by [`kummer_1f1`] or [`hermite_h`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Series,
    KummerTransformed,
    Asymptotic,
    Polynomial,
    /// Taylor-stepped integration of the Kummer equation.
    Continuation,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpecFunResult {
    pub value: Complex64,
    /// Heuristic absolute error bound, always `>= 0`.
    pub est_error: f64,
    pub method: Method,
}

impl SpecFunResult {
    pub fn rel_error(&self) -> f64 {
        let n = self.value.norm();
        if n > 0.0 {
            self.est_error / n
        } else {
            self.est_error
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SpecFunError {
    #[error("gamma function pole at z = {0}")]
    Pole(Complex64),
    #[error("1F1 lower parameter b = {0} is a non-positive integer")]
    ParameterPole(Complex64),
    #[error("non-finite argument")]
    NonFinite,
    #[error("result overflows double precision")]
    Overflow,
    #[error("no convergence after {terms} terms: partial value {partial}, estimated error {est_error:e}")]
    NoConvergence {
        partial: Complex64,
        est_error: f64,
        terms: usize,
    },
}

pub(crate) fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
