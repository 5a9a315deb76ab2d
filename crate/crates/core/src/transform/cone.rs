//! The Fourier pair on the null cone.
//!
//! Points of the cone are `(s, t′, x′)` with `s > 0`, `t′ = ±1` and
//! `x′ ∈ S^{n−1}`. The kernel couples two directions through
//! `a = −t′τ′ + x′·χ′` and reads
//! `K(a) = |a|^p [Θ(a) + e^{iπ(h + iρ)} Θ(−a)]`, `h = (n−1)/2`, with
//! `p = −h − iρ` for the forward map and the complex conjugate kernel for the
//! inverse.
//!
//! For fixed `(t′, x′)` the set `a = 0` is the single point `χ′ = ±x′`, and in
//! geodesic polar coordinates around it the integrand behaves like
//! `θ^{−1 + 2iκ}` with `κ = Im p`. That singularity is not absolutely
//! integrable; its value is fixed by analytic continuation in the exponent,
//! which is applied here exactly by subtracting the `θ → 0` limit of the smooth
//! cofactor and integrating the subtracted piece in closed form.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::mellin::{mellin_forward, MellinWindow};
use crate::error::{Error, Result};
use crate::geometry::sphere_volume;
use crate::quadrature::{gauss_legendre, orthonormal_complement, SphereGrid};
use crate::specfun::{d_abs_with, DConvention};

/// How the discrete measure on `τ′ ∈ {−1, +1}` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TauMeasure {
    /// `∫dτ′ g = g(+1) + g(−1)`.
    #[default]
    Unsigned,
    /// `∫dτ′ g = g(+1) − g(−1)`.
    Signed,
}

impl TauMeasure {
    fn weight(self, tau: i8) -> f64 {
        match self {
            TauMeasure::Unsigned => 1.0,
            TauMeasure::Signed => f64::from(tau),
        }
    }
}

/// Quadrature for the angular integral around the singular point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeGrid {
    /// Number of dyadic panels in `θ ∈ (0, π]`.
    pub levels: usize,
    /// Gauss–Legendre order per panel.
    pub order: usize,
    /// Product rule on the orthogonal sphere `S^{n−2}` (ignored for `n = 2`).
    pub sub_polar: usize,
    pub sub_phi: usize,
}

impl Default for ConeGrid {
    fn default() -> Self {
        Self { levels: 36, order: 16, sub_polar: 10, sub_phi: 16 }
    }
}

/// A kernel `|a|^p [Θ(a) + q Θ(−a)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeKernel {
    pub power: Complex64,
    pub negative_phase: Complex64,
}

impl ConeKernel {
    /// `p = −h − iρ`, `q = e^{iπ(h + iρ)}`.
    pub fn forward(n: usize, rho: f64) -> Self {
        let h = (n as f64 - 1.0) / 2.0;
        Self {
            power: Complex64::new(-h, -rho),
            negative_phase: (Complex64::i() * PI * Complex64::new(h, rho)).exp(),
        }
    }

    /// `p = −h + iρ`, `q = e^{iπ(−h + iρ)}`, the complex conjugate of the forward kernel.
    pub fn inverse(n: usize, rho: f64) -> Self {
        let h = (n as f64 - 1.0) / 2.0;
        Self {
            power: Complex64::new(-h, rho),
            negative_phase: (Complex64::i() * PI * Complex64::new(-h, rho)).exp(),
        }
    }

    pub fn eval(&self, a: f64) -> Complex64 {
        let m = (self.power * a.abs().ln()).exp();
        if a > 0.0 {
            m
        } else {
            m * self.negative_phase
        }
    }
}

/// Result of a kernel integral with the size of the innermost dropped panel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeValue {
    pub value: Complex64,
    pub inner_remainder: f64,
}

fn unit(x: &[f64]) -> Result<Vec<f64>> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(norm > 0.0) {
        return Err(Error::InvalidArgument("direction must be nonzero".into()));
    }
    Ok(x.iter().map(|v| v / norm).collect())
}

fn check_sign(t: i8) -> Result<()> {
    if t == 1 || t == -1 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("t′ = {t} must be ±1")))
    }
}

/// `∫_{S^{n−2}} ϖ(cos θ c + sin θ ω) dω` with the rule `sub`.
fn sphere_average<F>(varpi: &F, tau: i8, c: &[f64], basis: &[Vec<f64>], sub: &[(Vec<f64>, f64)], theta: f64) -> Complex64
where
    F: Fn(i8, &[f64]) -> Complex64,
{
    let (s, co) = theta.sin_cos();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut chi = vec![0.0; c.len()];
    for (omega, w) in sub {
        for (k, ck) in c.iter().enumerate() {
            chi[k] = co * ck;
        }
        for (b, o) in basis.iter().zip(omega) {
            for (ck, bk) in chi.iter_mut().zip(b) {
                *ck += s * o * bk;
            }
        }
        acc += varpi(tau, &chi) * *w;
    }
    acc
}

/// `∫∫ K(a) ϖ(τ′, χ′) dτ′ dχ′` at the cone direction `(t, x)`.
pub fn apply_kernel<F>(
    kernel: &ConeKernel,
    varpi: F,
    t: i8,
    x: &[f64],
    measure: TauMeasure,
    grid: &ConeGrid,
) -> Result<ConeValue>
where
    F: Fn(i8, &[f64]) -> Complex64,
{
    check_sign(t)?;
    let n = x.len();
    if n < 2 {
        return Err(Error::InvalidArgument("cone directions need n ≥ 2".into()));
    }
    let kappa = kernel.power.im;
    if kappa == 0.0 {
        return Err(Error::Pole("ρ = 0 in the cone kernel".into()));
    }
    let x = unit(x)?;
    let sub: Vec<(Vec<f64>, f64)> = if n == 2 {
        vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)]
    } else {
        SphereGrid::product(n - 1, grid.sub_polar, grid.sub_phi)
            .nodes
            .into_iter()
            .map(|nd| (nd.u, nd.weight))
            .collect()
    };
    let expo = Complex64::new(-1.0, 2.0 * kappa);
    let two_pow = (kernel.power + (n as f64 - 2.0)) * 2f64.ln();
    let mut total = Complex64::new(0.0, 0.0);
    let mut remainder: f64 = 0.0;
    for tau in [1i8, -1] {
        let w = measure.weight(tau);
        // τ′ = t puts the zero of a at χ′ = x with a ≤ 0; τ′ = −t at χ′ = −x with a ≥ 0.
        let (c, phase): (Vec<f64>, Complex64) = if tau == t {
            (x.clone(), kernel.negative_phase)
        } else {
            (x.iter().map(|v| -v).collect(), Complex64::new(1.0, 0.0))
        };
        let basis = orthonormal_complement(&c);
        // |a|^p sin^{n−2}θ = θ^{−1+2iκ} G(θ).
        let cofactor = |theta: f64| -> Complex64 {
            let (s, co) = (0.5 * theta).sin_cos();
            let ratio = if theta == 0.0 { 0.5 } else { s / theta };
            (two_pow + expo * ratio.ln()).exp() * co.powi(n as i32 - 2)
                * sphere_average(&varpi, tau, &c, &basis, &sub, theta)
        };
        let g0 = (two_pow + expo * 0.5f64.ln()).exp() * sphere_volume(n - 2) * varpi(tau, &c);
        let mut acc = g0 * (Complex64::new(0.0, 2.0 * kappa) * PI.ln()).exp() / Complex64::new(0.0, 2.0 * kappa);
        let mut last = Complex64::new(0.0, 0.0);
        for level in 0..grid.levels {
            let hi = PI * 0.5f64.powi(level as i32);
            let lo = 0.5 * hi;
            last = gauss_legendre(grid.order, lo, hi)
                .into_iter()
                .map(|(th, wt)| (expo * th.ln()).exp() * (cofactor(th) - g0) * wt)
                .sum();
            acc += last;
        }
        remainder = remainder.max(last.norm());
        total += acc * phase * w;
    }
    Ok(ConeValue { value: total, inner_remainder: remainder })
}

/// Options shared by the cone transforms.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConeOptions {
    pub grid: ConeGrid,
    pub mellin: MellinWindow,
    pub measure: TauMeasure,
    pub d_convention: DConvention,
    /// Harmonic degrees `(j, k)` selecting `|d|` in the inverse. Only odd `n`
    /// depends on it, through the parity of `j − k`.
    pub sector: (i64, i64),
}

/// `ψ(τ′, χ′, ρ)` for a cone function `h(t′, x′, s)`: the Mellin transform in
/// `s` followed by the forward kernel.
pub fn cone_fourier_forward<H>(h: H, n: usize, rho: f64, tau: i8, chi: &[f64], opts: &ConeOptions) -> Result<ConeValue>
where
    H: Fn(i8, &[f64], f64) -> Complex64,
{
    crate::error::check_len(n, chi.len())?;
    let err = std::cell::RefCell::new(None);
    let varpi = |t: i8, x: &[f64]| match mellin_forward(|s| h(t, x, s), n, rho, &opts.mellin) {
        Ok(w) => w.value,
        Err(e) => {
            err.borrow_mut().get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let out = apply_kernel(&ConeKernel::forward(n, rho), varpi, tau, chi, opts.measure, &opts.grid)?;
    match err.into_inner() {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// `|d(ρ)|` for either sign of `ρ`. The closed form carries `e^{πρ/2}`
/// while every other factor is even in `ρ`.
pub fn d_weight(conv: DConvention, n: usize, sector: (i64, i64), rho: f64) -> Result<f64> {
    let d = d_abs_with(conv, n, sector.0, sector.1, rho.abs())?;
    Ok(if rho < 0.0 { d * (PI * rho).exp() } else { d })
}

/// `h(t, x)` at `s` from a spectrum `ψ(τ′, χ′, ρ)` given on the nodes `rhos`
/// (with weights): `(1/2π) Σ w |d(ρ)|² s^{−h+iρ} ∫∫ K̄(a) ψ dτ′ dχ′`.
pub fn cone_fourier_inverse<P>(
    psi: P,
    n: usize,
    t: i8,
    x: &[f64],
    s: f64,
    rhos: &[(f64, f64)],
    opts: &ConeOptions,
) -> Result<Complex64>
where
    P: Fn(i8, &[f64], f64) -> Complex64,
{
    crate::error::check_len(n, x.len())?;
    if !(s > 0.0) {
        return Err(Error::InvalidArgument(format!("s = {s} must be positive")));
    }
    let h = (n as f64 - 1.0) / 2.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for &(rho, w) in rhos {
        let d = d_weight(opts.d_convention, n, opts.sector, rho)?;
        let inner = apply_kernel(&ConeKernel::inverse(n, rho), |tau, chi| psi(tau, chi, rho), t, x, opts.measure, &opts.grid)?;
        acc += inner.value * Complex64::new(-h * s.ln(), rho * s.ln()).exp() * (w * d * d);
    }
    Ok(acc / (2.0 * PI))
}
