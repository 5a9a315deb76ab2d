//! Normalization constants of the hyperbolic plane waves and the modulus of
//! the intertwiner constant `d(ρ)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::ln_gamma;
use crate::error::{Error, Result};

/// `cos((n−1)π/2)` evaluated exactly.
fn cos_half_pi(n: usize) -> f64 {
    match (n - 1) % 4 {
        0 => 1.0,
        2 => -1.0,
        _ => 0.0,
    }
}

fn abs_gamma(z: Complex64) -> Result<f64> {
    Ok(ln_gamma(z)?.re.exp())
}

fn check_rho(rho: f64) -> Result<()> {
    if rho == 0.0 {
        return Err(Error::Pole("ρ = 0 (sinh πρ vanishes)".into()));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidArgument(format!("ρ = {rho} must be positive")));
    }
    Ok(())
}

/// `₁K` (`alpha = 1`) or `₂K` (`alpha = 2`) as functions of `n`, `l_{n−2}`, `ρ`.
pub fn norm_k(alpha: u8, n: usize, l: u32, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} < 2")));
    }
    let h = (n as f64 - 1.0) / 2.0;
    let lf = l as f64;
    let lo = abs_gamma(Complex64::new((lf + h) / 2.0, rho / 2.0))?;
    let hi = abs_gamma(Complex64::new((lf + h + 1.0) / 2.0, rho / 2.0))?;
    let parity = if l % 2 == 0 { 1.0 } else { -1.0 };
    let c = cos_half_pi(n);
    let pr = PI * rho;
    match alpha {
        1 => Ok(PI * (pr.cosh() - parity * c) * (lo / hi).powi(2) / pr.sinh()),
        2 => Ok(PI * (pr.cosh() + parity * c) * (hi / lo).powi(2) / pr.sinh()),
        _ => Err(Error::InvalidArgument(format!("α = {alpha} must be 1 or 2"))),
    }
}

/// Which closed form of `|d(ρ)|` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DConvention {
    /// The three-case expression with `coth πρ` for even `n`.
    Printed,
    /// The expression re-derived from the Bessel integral; agrees with the
    /// printed one for odd `n` and carries `tanh πρ` for even `n`.
    #[default]
    Derived,
}

/// `(2π)^{−(n+1)/2} |Γ((n−1)/2 + iρ)| / |Γ(−iρ)|`.
fn d_prefactor(n: usize, rho: f64) -> Result<f64> {
    let h = (n as f64 - 1.0) / 2.0;
    let num = abs_gamma(Complex64::new(h, rho))?;
    let den = abs_gamma(Complex64::new(0.0, -rho))?;
    Ok((2.0 * PI).powf(-(n as f64 + 1.0) / 2.0) * num / den)
}

/// `|d(ρ)|` in the three-case form.
pub fn d_abs(n: usize, j: i64, k: i64, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let pre = d_prefactor(n, rho)?;
    let pr = PI * rho;
    let case = if n % 2 == 0 {
        PI * (2.0 * (1.0 + 1.0 / pr.tanh())).sqrt()
    } else if (n as i64 - 1 + 2 * (j - k)).rem_euclid(4) == 0 {
        PI * (1.0 + (0.5 * pr).tanh())
    } else {
        PI * (1.0 + 1.0 / (0.5 * pr).tanh())
    };
    Ok(pre * case)
}

/// `|d(ρ)| = (2π)^{−(n+1)/2}|Γ(h+iρ)/Γ(−iρ)|·π e^{πρ/2}/|sin π(u − iρ/2)|`
/// with `u = (n + 2j ∓ 1)/4`, upper sign for odd `k`.
pub fn d_abs_derived(n: usize, j: i64, k: i64, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let pre = d_prefactor(n, rho)?;
    let shift = if k.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
    let u = (n as f64 + 2.0 * j as f64 + shift) / 4.0;
    let s = Complex64::new(PI * u, -0.5 * PI * rho).sin().norm();
    Ok(pre * PI * (0.5 * PI * rho).exp() / s)
}

pub fn d_abs_with(conv: DConvention, n: usize, j: i64, k: i64, rho: f64) -> Result<f64> {
    match conv {
        DConvention::Printed => d_abs(n, j, k, rho),
        DConvention::Derived => d_abs_derived(n, j, k, rho),
    }
}
