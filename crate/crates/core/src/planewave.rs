//! Principal-series plane waves.
//!
//! Two families are provided: the ambient waves `Ψ_μ(x, ξ)` labelled by a
//! null covector on the absolute, and the hyperbolic waves `_αΨ^{ρ,m}_{l…}`
//! built from a Gauss hypergeometric radial factor and a hyperspherical
//! harmonic.

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fd::{d1, d2, richardson, sphere_laplacian};
use crate::geometry::{AbsoluteCovector, AmbientPoint, HyperChart, SpacetimeConfig};
use crate::specfun::hypergeometric::{connection_coefficients, gauss_2f1_complement};
use crate::specfun::{hypersph_y, norm_k, HarmonicIndex};

/// The triple `(μ, μ′, σ)` of a principal-series mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalMass {
    cfg: SpacetimeConfig,
    mu: f64,
    mu_prime: f64,
    sigma: Complex64,
}

/// `μ′ = √(μ²R² − (n−1)²/4)` and `σ = −(n−1)/2 + iμ′`.
pub fn principal_mass(cfg: &SpacetimeConfig, mu: f64) -> Result<PrincipalMass> {
    let mu_min = cfg.mu_min();
    if !(mu.is_finite() && mu >= mu_min) {
        return Err(Error::ComplementarySeries { mu, mu_min });
    }
    let h = (cfg.n() as f64 - 1.0) / 2.0;
    let mr = mu * cfg.r();
    // (μR − h)(μR + h) avoids cancellation near the threshold.
    let mu_prime = ((mr - h) * (mr + h)).max(0.0).sqrt();
    Ok(PrincipalMass { cfg: *cfg, mu, mu_prime, sigma: Complex64::new(-h, mu_prime) })
}

impl PrincipalMass {
    /// The mass whose `μ′` equals the spectral parameter `ρ`.
    pub fn from_rho(cfg: &SpacetimeConfig, rho: f64) -> Result<Self> {
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(Error::InvalidArgument(format!("ρ = {rho} must be non-negative")));
        }
        let h = (cfg.n() as f64 - 1.0) / 2.0;
        let mu = (rho * rho + h * h).sqrt() / cfg.r();
        Ok(PrincipalMass { cfg: *cfg, mu, mu_prime: rho, sigma: Complex64::new(-h, rho) })
    }

    pub fn cfg(&self) -> &SpacetimeConfig {
        &self.cfg
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn mu_prime(&self) -> f64 {
        self.mu_prime
    }

    pub fn sigma(&self) -> Complex64 {
        self.sigma
    }

    /// `|μ²R² + σ(n−1+σ)|`.
    pub fn sigma_defect(&self) -> f64 {
        let n1 = self.cfg.n() as f64 - 1.0;
        let mr = self.mu * self.cfg.r();
        (mr * mr + self.sigma * (self.sigma + n1)).norm()
    }
}

/// An ambient plane wave `Ψ_μ(·, ξ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientWave {
    pub xi: AbsoluteCovector,
    pub mass: PrincipalMass,
}

impl AmbientWave {
    pub fn new(xi: AbsoluteCovector, mass: PrincipalMass) -> Result<Self> {
        crate::error::check_len(mass.cfg.ambient_dim(), xi.components().len())?;
        Ok(Self { xi, mass })
    }
}

/// `Ψ_μ` as a function of the scalar `x·ξ`.
///
/// The negative branch carries the factor `e^{−π(i(n−1)/2 + μ′)}`; no complex
/// logarithm of a negative number is taken.
pub fn psi_of_dot(mass: &PrincipalMass, dot: f64) -> Result<Complex64> {
    if dot == 0.0 || !dot.is_finite() {
        return Err(Error::SingularSurface);
    }
    let ratio = (dot / (mass.mu * mass.cfg.r())).abs();
    let modulus = mass.sigma * ratio.ln();
    let value = modulus.exp();
    if dot > 0.0 {
        Ok(value)
    } else {
        let h = -mass.sigma.re;
        Ok(value * Complex64::new(-PI * mass.mu_prime, -PI * h).exp())
    }
}

pub fn psi_ambient(wave: &AmbientWave, x: &AmbientPoint) -> Result<Complex64> {
    let dot = x.dot(&AmbientPoint::new(wave.xi.components().to_vec()));
    psi_of_dot(&wave.mass, dot)
}

/// Sign of the exponent `iρ` in the radial factor `(cosh β)^{−(n−1)/2 ∓ iρ}`.
///
/// With the hypergeometric parameters as given, only `−iρ` solves the radial
/// equation; `AsPrinted` keeps `+iρ` for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HyperConvention {
    #[default]
    Corrected,
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A hyperbolic plane wave `_αΨ^{ρ,m}_{l₁…l_{n−2}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperWave {
    alpha: u8,
    rho: f64,
    idx: HarmonicIndex,
    convention: HyperConvention,
}

impl HyperWave {
    pub fn new(alpha: u8, rho: f64, idx: HarmonicIndex) -> Result<Self> {
        Self::with_convention(alpha, rho, idx, HyperConvention::default())
    }

    pub fn with_convention(alpha: u8, rho: f64, idx: HarmonicIndex, convention: HyperConvention) -> Result<Self> {
        if alpha != 1 && alpha != 2 {
            return Err(Error::InvalidArgument(format!("α = {alpha} must be 1 or 2")));
        }
        if rho == 0.0 {
            return Err(Error::Pole("ρ = 0 makes the normalization singular".into()));
        }
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::InvalidArgument(format!("ρ = {rho} must be positive")));
        }
        Ok(Self { alpha, rho, idx, convention })
    }

    pub fn alpha(&self) -> u8 {
        self.alpha
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn index(&self) -> &HarmonicIndex {
        &self.idx
    }

    pub fn convention(&self) -> HyperConvention {
        self.convention
    }

    pub fn n(&self) -> usize {
        self.idx.n()
    }

    /// `(n−1)/2`.
    fn h(&self) -> f64 {
        (self.n() as f64 - 1.0) / 2.0
    }

    /// Hypergeometric parameters `(a, b, c)`.
    fn params(&self) -> (Complex64, Complex64, Complex64) {
        let l = self.idx.degree() as f64;
        let n = self.n() as f64;
        let i_rho = Complex64::new(0.0, self.rho);
        if self.alpha == 1 {
            ((i_rho + l + (n + 1.0) / 2.0) / 2.0, (i_rho - l - (n - 5.0) / 2.0) / 2.0, Complex64::new(1.5, 0.0))
        } else {
            ((i_rho + l + (n - 1.0) / 2.0) / 2.0, (i_rho - l - (n - 3.0) / 2.0) / 2.0, Complex64::new(0.5, 0.0))
        }
    }

    /// `2/√₁K` or `1/√₂K`.
    fn prefactor(&self) -> Result<f64> {
        let k = norm_k(self.alpha, self.n(), self.idx.degree(), self.rho)?;
        Ok(if self.alpha == 1 { 2.0 } else { 1.0 } / k.sqrt())
    }

    fn exponent(&self) -> Complex64 {
        match self.convention {
            HyperConvention::Corrected => Complex64::new(-self.h(), -self.rho),
            HyperConvention::AsPrinted => Complex64::new(-self.h(), self.rho),
        }
    }
}

pub fn parity(wave: &HyperWave) -> Parity {
    if (wave.alpha as u32 + wave.idx.degree()) % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// `ln cosh β` without overflow.
fn ln_cosh(beta: f64) -> f64 {
    let b = beta.abs();
    b + (-2.0 * b).exp().ln_1p() - std::f64::consts::LN_2
}

/// The radial factor `V(β)` including the normalization, so that
/// `Ψ = V(β)·Y(angles)`.
pub fn radial_factor(wave: &HyperWave, beta: f64) -> Result<Complex64> {
    RadialFactor::new(wave)?.eval(beta)
}

/// `V(β)` with the parameters and normalization computed once, for repeated
/// evaluation along a grid.
#[derive(Debug, Clone, Copy)]
pub struct RadialFactor {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    exponent: Complex64,
    prefactor: f64,
    odd: bool,
}

impl RadialFactor {
    pub fn new(wave: &HyperWave) -> Result<Self> {
        let (a, b, c) = wave.params();
        Ok(Self { a, b, c, exponent: wave.exponent(), prefactor: wave.prefactor()?, odd: wave.alpha == 1 })
    }

    pub fn eval(&self, beta: f64) -> Result<Complex64> {
        let lc = ln_cosh(beta);
        let w = (-2.0 * lc).exp();
        let f = gauss_2f1_complement(self.a, self.b, self.c, w)?;
        let mut v = f * (self.exponent * lc).exp() * self.prefactor;
        if self.odd {
            v *= beta.tanh();
        }
        Ok(v)
    }
}

pub fn psi_hyper(wave: &HyperWave, chart: &HyperChart) -> Result<Complex64> {
    let y = hypersph_y(&wave.idx, &chart.polar, chart.phi)?;
    Ok(radial_factor(wave, beta_checked(chart.beta)?)? * y)
}

fn beta_checked(beta: f64) -> Result<f64> {
    if beta.is_finite() {
        Ok(beta)
    } else {
        Err(Error::InvalidArgument(format!("β = {beta}")))
    }
}

/// Which degree enters the centrifugal term of the radial equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OdePotential {
    /// `l_{n−2}`, the degree whose sphere-Laplacian eigenvalue separates out.
    #[default]
    TopDegree,
    /// `l₁`, as the equation is printed.
    FirstDegree,
}

/// Finite-difference scheme for the residual checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Stencil {
    /// Three-point central differences, error `O(h²)`.
    #[default]
    Central,
    /// Central differences at `2h` and `h` combined by Richardson, error `O(h⁴)`.
    Richardson,
}

/// `max_β |V″ + (n−1) tanh β V′ + (ρ² + (n−1)²/4 + l(l+n−2)/cosh²β) V| / max_β |V|`
/// with central differences of step `h`.
pub fn radial_ode_residual(wave: &HyperWave, betas: &[f64], h: f64, potential: OdePotential) -> Result<f64> {
    radial_ode_residual_with(wave, betas, h, potential, Stencil::Central)
}

pub fn radial_ode_residual_with(
    wave: &HyperWave,
    betas: &[f64],
    h: f64,
    potential: OdePotential,
    stencil: Stencil,
) -> Result<f64> {
    let n = wave.n() as f64;
    let l = match potential {
        OdePotential::TopDegree => wave.idx.degree(),
        OdePotential::FirstDegree => wave.idx.l().first().copied().unwrap_or(wave.idx.m().unsigned_abs() as u32),
    } as f64;
    let hh = wave.h();
    let radial = RadialFactor::new(wave)?;
    let err = RefCell::new(None);
    let v = |b: f64| match radial.eval(b) {
        Ok(z) => z,
        Err(e) => {
            err.borrow_mut().get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let res_at = |b: f64, step: f64| {
        d2(v, b, step)
            + d1(v, b, step) * ((n - 1.0) * b.tanh())
            + v(b) * (wave.rho * wave.rho + hh * hh + l * (l + n - 2.0) / b.cosh().powi(2))
    };
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &b in betas {
        let res = match stencil {
            Stencil::Central => res_at(b, h),
            Stencil::Richardson => richardson(res_at(b, 2.0 * h), res_at(b, h), 2),
        };
        worst = worst.max(res.norm());
        scale = scale.max(v(b).norm());
    }
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(worst / scale)
}

/// `□ f` at a chart point for `R = cfg.r()`:
/// `R^{−2} [−∂²_β − (n−1) tanh β ∂_β + Δ/cosh²β] f`, with steps `h` in `β`
/// and in every angle.
pub fn box_hyper<F>(cfg: &SpacetimeConfig, f: F, chart: &HyperChart, h: f64) -> Result<Complex64>
where
    F: Fn(&HyperChart) -> Result<Complex64>,
{
    crate::error::check_len(cfg.n() - 2, chart.polar.len())?;
    for &p in &chart.polar {
        if p - h <= 0.0 || p + h >= PI {
            return Err(Error::Domain(format!("polar angle {p} too close to a coordinate singularity")));
        }
    }
    let err = RefCell::new(None);
    let eval = |c: &HyperChart| match f(c) {
        Ok(z) => z,
        Err(e) => {
            err.borrow_mut().get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let along_beta = |b: f64| eval(&HyperChart { beta: b, ..chart.clone() });
    let beta = chart.beta;
    let n = cfg.n() as f64;
    let radial = -d2(along_beta, beta, h) - d1(along_beta, beta, h) * ((n - 1.0) * beta.tanh());
    let angular = sphere_laplacian(
        |polar: &[f64], phi: f64| eval(&HyperChart { beta, polar: polar.to_vec(), phi }),
        &chart.polar,
        chart.phi,
        h,
    );
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    let r2 = cfg.r() * cfg.r();
    Ok((radial + angular * (1.0 / beta.cosh().powi(2))) * (1.0 / r2))
}

/// `|(□ − μ²)Ψ| / |Ψ|` in the unit-radius chart, `μ² = ρ² + (n−1)²/4`.
pub fn dalembert_residual(wave: &HyperWave, chart: &HyperChart, h: f64) -> Result<f64> {
    dalembert_residual_with(wave, chart, h, Stencil::Central)
}

pub fn dalembert_residual_with(wave: &HyperWave, chart: &HyperChart, h: f64, stencil: Stencil) -> Result<f64> {
    let cfg = SpacetimeConfig::new(wave.n(), 1.0)?;
    let psi = psi_hyper(wave, chart)?;
    if psi.norm() == 0.0 {
        return Err(Error::Domain("wave vanishes at the sample point".into()));
    }
    let boxed = match stencil {
        Stencil::Central => box_hyper(&cfg, |c| psi_hyper(wave, c), chart, h)?,
        Stencil::Richardson => richardson(
            box_hyper(&cfg, |c| psi_hyper(wave, c), chart, 2.0 * h)?,
            box_hyper(&cfg, |c| psi_hyper(wave, c), chart, h)?,
            2,
        ),
    };
    let mu2 = wave.rho * wave.rho + wave.h() * wave.h();
    Ok((boxed - psi * mu2).norm() / psi.norm())
}

/// Large-`β` form of the wave from the connection formula:
/// `V ≈ pre·sgn·(C₁ cosh^{e}β + C₂ cosh^{e+2iρ}β)` where `e` is the exponent
/// of the chosen convention.
pub fn asymptotic_two_branch(wave: &HyperWave, chart: &HyperChart) -> Result<Complex64> {
    let (a, b, c) = wave.params();
    let (c1, c2) = connection_coefficients(a, b, c)?;
    let lc = ln_cosh(chart.beta);
    let e = wave.exponent();
    let two = Complex64::new(0.0, 2.0 * wave.rho);
    let mut v = (c1 * (e * lc).exp() + c2 * ((e + two) * lc).exp()) * wave.prefactor()?;
    if wave.alpha == 1 {
        v *= chart.beta.signum();
    }
    Ok(v * hypersph_y(&wave.idx, &chart.polar, chart.phi)?)
}

/// The single-term leading behaviour `D′ (cosh β)^{−(n−1)/2 + 3iρ} Y` with
/// `D′` matched to the wave at a reference `β₀`.
#[derive(Debug, Clone)]
pub struct LeadingTerm {
    wave: HyperWave,
    d_prime: Complex64,
}

impl LeadingTerm {
    pub fn fit(wave: &HyperWave, beta0: f64) -> Result<Self> {
        let v = radial_factor(wave, beta0)?;
        let d_prime = v / Self::profile(wave, beta0);
        Ok(Self { wave: wave.clone(), d_prime })
    }

    fn profile(wave: &HyperWave, beta: f64) -> Complex64 {
        (Complex64::new(-wave.h(), 3.0 * wave.rho) * ln_cosh(beta)).exp()
    }

    pub fn d_prime(&self) -> Complex64 {
        self.d_prime
    }

    pub fn eval(&self, chart: &HyperChart) -> Result<Complex64> {
        let y = hypersph_y(&self.wave.idx, &chart.polar, chart.phi)?;
        Ok(self.d_prime * Self::profile(&self.wave, chart.beta) * y)
    }
}
