//! Epstein zeta functions of binary forms and the special functions they need.
//!
//! `Z_Q(s) = sum over nonzero (x, y) of Q(x, y)^-s = sum_n r_Q(n) n^-s` is
//! evaluated either from a sieved table ([`epstein_direct`]) or from the
//! Chowla-Selberg expansion ([`epstein_chowla_selberg`]), which also gives the
//! continuation to `0 < s < 1`. Higher moments `Z_{Q,k}(s) = sum r_Q(n)^k n^-s`
//! live in [`moments`].

mod epstein;
pub mod moments;
pub mod special;

use std::fmt;

use crate::lattice::BinaryForm;
use crate::num::Real;

pub use epstein::{
    chowla_selberg_raw, epstein_chowla_selberg, epstein_direct, epstein_direct_from_table,
    form_of_table, functional_eq_residual, EXCLUDED_RADIUS,
};
pub use moments::{conjecture_probe, higher_moment_truncated, wilson_structure_check, ProbeRow};
pub use special::{bessel_k, eta_beta, gamma_fn, riemann_zeta};

/// How an [`EpsteinEvaluation`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Sum over a sieved representation table plus a tail term.
    Direct,
    ChowlaSelberg,
    /// Chowla-Selberg at `1 - s`, mapped back through `Lambda(s) = Lambda(1 - s)`.
    FunctionalEquation,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::ChowlaSelberg => "chowla_selberg",
            Method::FunctionalEquation => "functional_equation",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `Z_{Q,k}(s)` with the method used and an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsteinEvaluation<T> {
    pub form: BinaryForm,
    pub s: T,
    /// Moment order; 1 for `Z_Q` itself.
    pub k: u32,
    pub value: T,
    pub method: Method,
    pub error_estimate: T,
}

impl<T: Real> EpsteinEvaluation<T> {
    /// Whether two evaluations agree within the sum of their error estimates.
    pub fn agrees_with(&self, other: &Self) -> bool {
        (self.value - other.value).abs() <= self.error_estimate + other.error_estimate
    }
}

/// Tolerances for the series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialFunctionConfig<T> {
    /// Stop a convergent series once its tail bound falls below this.
    pub target_abs_tolerance: T,
    pub max_series_terms: usize,
    /// Upper limit on Bessel terms in the Chowla-Selberg remainder.
    pub bessel_term_cap: usize,
}

impl<T: Real> Default for SpecialFunctionConfig<T> {
    fn default() -> Self {
        let floor = T::epsilon() * T::lit(16.0);
        Self {
            target_abs_tolerance: T::lit(1e-12).max(floor),
            max_series_terms: 10_000,
            bessel_term_cap: 500,
        }
    }
}

impl<T: Real> SpecialFunctionConfig<T> {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.target_abs_tolerance > T::zero()) {
            return Err(crate::error::domain("tolerance must be positive"));
        }
        if self.bessel_term_cap == 0 || self.max_series_terms == 0 {
            return Err(crate::error::domain("term caps must be positive"));
        }
        Ok(())
    }
}
