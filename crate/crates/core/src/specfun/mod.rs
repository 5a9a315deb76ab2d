//! Special functions: complex log-Gamma, Gauss ₂F₁, Ferrers functions,
//! hyperspherical harmonics, Bessel `J` and the plane-wave normalizations.

pub mod bessel;
pub mod gamma;
pub mod harmonics;
pub mod hypergeometric;
pub mod legendre;
pub mod normalization;

pub use bessel::bessel_j;
pub use gamma::{gamma, ln_gamma, rgamma};
pub use harmonics::{hypersph_y, HarmonicIndex};
pub use hypergeometric::{gauss_2f1, gauss_2f1_complement};
pub use legendre::assoc_legendre_p;
pub use normalization::{d_abs, d_abs_derived, d_abs_with, norm_k, DConvention};

use crate::error::{Error, Result};

/// Tolerances shared by the series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunConfig {
    pub series_tol: f64,
    pub max_terms: usize,
    /// Argument above which ₂F₁ is evaluated through the `1 − v` expansion.
    pub connection_switch: f64,
}

impl Default for SpecFunConfig {
    fn default() -> Self {
        Self { series_tol: 1e-16, max_terms: 20_000, connection_switch: 0.5 }
    }
}

impl SpecFunConfig {
    pub fn new(series_tol: f64, max_terms: usize, connection_switch: f64) -> Result<Self> {
        if !(series_tol > 0.0 && series_tol < 1e-6) {
            return Err(Error::InvalidArgument(format!("series_tol = {series_tol} outside (0, 1e-6)")));
        }
        if !(0.3..=0.7).contains(&connection_switch) {
            return Err(Error::InvalidArgument(format!(
                "connection_switch = {connection_switch} outside [0.3, 0.7]"
            )));
        }
        if max_terms == 0 {
            return Err(Error::InvalidArgument("max_terms must be positive".into()));
        }
        Ok(Self { series_tol, max_terms, connection_switch })
    }
}
