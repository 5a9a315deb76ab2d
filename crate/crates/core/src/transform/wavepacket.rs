//! Wavepackets at a fixed principal-series mass.
//!
//! The ambient form integrates `f̂(ξ) Ψ_μ(x, ξ)` over the section `ξ₀ = 1` of
//! the absolute, where the cone measure is half the round measure of the
//! direction sphere, and multiplies by `|d(μ′)|²`. The hyperbolic form is a
//! finite sum of hyperbolic plane waves.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::cone::d_weight;
use super::profile::AbsoluteProfile;
use crate::error::{Error, Result};
use crate::geometry::{AmbientPoint, HyperChart};
use crate::planewave::{psi_hyper, psi_of_dot, HyperWave, PrincipalMass};
use crate::quadrature::SphereGrid;
use crate::specfun::{DConvention, HarmonicIndex};

/// Sizes of the cap rule used for the ambient synthesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureGrid {
    /// Gauss–Legendre nodes in the geodesic radius of the cap.
    pub theta: usize,
    /// Polar nodes per angle on the orthogonal sphere.
    pub polar: usize,
    /// Azimuthal nodes on the orthogonal sphere.
    pub phi: usize,
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self { theta: 24, polar: 12, phi: 24 }
    }
}

impl QuadratureGrid {
    /// Roughly doubles every node count.
    pub fn refined(&self) -> Self {
        Self { theta: 2 * self.theta, polar: 2 * self.polar, phi: 2 * self.phi }
    }

    pub fn rule(&self, profile: &AbsoluteProfile) -> SphereGrid {
        SphereGrid::cap(profile.center(), profile.delta(), self.theta, self.polar, self.phi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WavepacketSpec {
    pub profile: AbsoluteProfile,
    pub mass: PrincipalMass,
    pub grid: QuadratureGrid,
    pub d_convention: DConvention,
}

impl WavepacketSpec {
    pub fn new(profile: AbsoluteProfile, mass: PrincipalMass, grid: QuadratureGrid) -> Result<Self> {
        if profile.n() != mass.cfg().n() {
            return Err(Error::DimensionMismatch { expected: mass.cfg().n(), got: profile.n() });
        }
        if mass.mu_prime() == 0.0 {
            return Err(Error::Pole("μ′ = 0: |d(μ′)| is singular".into()));
        }
        Ok(Self { profile, mass, grid, d_convention: DConvention::default() })
    }

    /// `|d(μ′)|²` in the `(j, k) = (0, 0)` sector.
    pub fn d_squared(&self) -> Result<f64> {
        let d = d_weight(self.d_convention, self.mass.cfg().n(), (0, 0), self.mass.mu_prime())?;
        Ok(d * d)
    }
}

/// A synthesized value and the number of quadrature nodes dropped because
/// they fell on the singular surface `x·ξ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Synthesis {
    pub value: Complex64,
    pub dropped: usize,
}

fn synthesize(spec: &WavepacketSpec, rule: &SphereGrid, x: &AmbientPoint) -> Result<Synthesis> {
    crate::error::check_len(spec.mass.cfg().ambient_dim(), x.dim())?;
    let xs = x.components();
    let scale = x.size().max(spec.mass.cfg().r());
    let mut acc = Complex64::new(0.0, 0.0);
    let mut dropped = 0;
    for node in &rule.nodes {
        let amp = spec.profile.at_direction(&node.u);
        if amp == 0.0 {
            continue;
        }
        // x·ξ with ξ = (1, u).
        let dot = -xs[0] + xs[1..].iter().zip(&node.u).map(|(a, b)| a * b).sum::<f64>();
        if dot.abs() <= 1e-13 * scale {
            dropped += 1;
            continue;
        }
        acc += psi_of_dot(&spec.mass, dot)? * (0.5 * node.weight * amp);
    }
    Ok(Synthesis { value: acc * spec.d_squared()?, dropped })
}

/// `f(x) = |d(μ′)|² ∫_𝒜 f̂(ξ) Ψ_μ(x, ξ) d𝒜`.
pub fn wavepacket_ambient(spec: &WavepacketSpec, x: &AmbientPoint) -> Result<Synthesis> {
    synthesize(spec, &spec.grid.rule(&spec.profile), x)
}

/// Whether a value met the requested quadrature tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadStatus {
    Converged,
    AccuracyWarning,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckedSynthesis {
    pub synthesis: Synthesis,
    /// `|f(grid) − f(refined grid)|`.
    pub error_estimate: f64,
    pub status: QuadStatus,
}

/// The ambient wavepacket with an error estimate from a refined grid.
pub fn wavepacket_ambient_checked(spec: &WavepacketSpec, x: &AmbientPoint, tol: f64) -> Result<CheckedSynthesis> {
    let coarse = wavepacket_ambient(spec, x)?;
    let fine = synthesize(spec, &spec.grid.refined().rule(&spec.profile), x)?;
    let error_estimate = (fine.value - coarse.value).norm();
    let status = if error_estimate <= tol { QuadStatus::Converged } else { QuadStatus::AccuracyWarning };
    Ok(CheckedSynthesis { synthesis: fine, error_estimate, status })
}

/// Coefficients `_αχ^{ρ,m}_{l…}` at a fixed `ρ`, keyed by `(α, index)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HyperCoeffs {
    pub rho: f64,
    pub entries: BTreeMap<(u8, HarmonicIndex), Complex64>,
    /// Bound on what the finite truncation or window leaves out.
    pub tail_bound: f64,
}

impl HyperCoeffs {
    pub fn new(rho: f64) -> Self {
        Self { rho, entries: BTreeMap::new(), tail_bound: 0.0 }
    }

    pub fn insert(&mut self, alpha: u8, idx: HarmonicIndex, value: Complex64) {
        self.entries.insert((alpha, idx), value);
    }

    pub fn get(&self, alpha: u8, idx: &HarmonicIndex) -> Complex64 {
        self.entries.get(&(alpha, idx.clone())).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let entries = self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        Self { rho: self.rho, entries, tail_bound: self.tail_bound * c.norm() }
    }
}

/// `Σ χ Ψ` over the stored modes at `ρ = coeffs.rho`.
pub fn wavepacket_hyper(coeffs: &HyperCoeffs, chart: &HyperChart) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for ((alpha, idx), chi) in &coeffs.entries {
        if *chi == Complex64::new(0.0, 0.0) {
            continue;
        }
        let wave = HyperWave::new(*alpha, coeffs.rho, idx.clone())?;
        acc += chi * psi_hyper(&wave, chart)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{absolute_covector, from_hyper, SpacetimeConfig};
    use crate::planewave::{box_hyper, principal_mass, AmbientWave};
    use crate::specfun::d_abs_derived;

    fn setup(n: usize, delta: f64) -> WavepacketSpec {
        let cfg = SpacetimeConfig::new(n, 1.0).unwrap();
        let mut center = vec![0.0; n];
        center[n - 1] = 1.0;
        let profile = AbsoluteProfile::new(center, delta, 1.0).unwrap();
        let mass = principal_mass(&cfg, 2.0).unwrap();
        WavepacketSpec::new(profile, mass, QuadratureGrid::default()).unwrap()
    }

    #[test]
    fn zero_profile_and_linearity() {
        let spec = setup(3, 0.4);
        let x = from_hyper(spec.mass.cfg(), &HyperChart::new(0.3, vec![0.5], 1.0)).unwrap();
        let zero = WavepacketSpec { profile: spec.profile.scaled(0.0), ..spec.clone() };
        assert_eq!(wavepacket_ambient(&zero, &x).unwrap().value, Complex64::new(0.0, 0.0));
        let base = wavepacket_ambient(&spec, &x).unwrap().value;
        let tripled = WavepacketSpec { profile: spec.profile.scaled(-3.0), ..spec.clone() };
        assert!((wavepacket_ambient(&tripled, &x).unwrap().value + base * 3.0).norm() < 1e-13 * base.norm());
        assert_eq!(spec.d_squared().unwrap(), d_abs_derived(3, 0, 0, spec.mass.mu_prime()).unwrap().powi(2));
    }

    #[test]
    fn small_cap_collapses_to_a_single_plane_wave() {
        let cfg = SpacetimeConfig::new(3, 1.0).unwrap();
        let x = cfg.origin();
        let mut prev = f64::INFINITY;
        for delta in [0.2, 0.1, 0.05] {
            let spec = setup(3, delta);
            let got = wavepacket_ambient(&spec, &x).unwrap().value;
            let mass_integral: f64 =
                spec.grid.rule(&spec.profile).nodes.iter().map(|nd| 0.5 * nd.weight * spec.profile.at_direction(&nd.u)).sum();
            let wave = AmbientWave::new(absolute_covector(&[0.0, 0.0, 1.0]).unwrap(), spec.mass).unwrap();
            let single = crate::planewave::psi_ambient(&wave, &x).unwrap() * spec.d_squared().unwrap() * mass_integral;
            let rel = (got - single).norm() / single.norm();
            assert!(rel < prev && rel < 0.05, "δ {delta}: {rel}");
            prev = rel;
        }
    }

    #[test]
    fn quadrature_converges_and_the_field_solves_the_wave_equation() {
        let spec = setup(3, 0.5);
        let cfg = *spec.mass.cfg();
        let chart = HyperChart::new(0.2, vec![0.6], 0.4);
        let x = from_hyper(&cfg, &chart).unwrap();
        let checked = wavepacket_ambient_checked(&spec, &x, 1e-8).unwrap();
        assert_eq!(checked.status, QuadStatus::Converged, "{}", checked.error_estimate);
        assert_eq!(checked.synthesis.dropped, 0);
        let f = |c: &HyperChart| wavepacket_ambient(&spec, &from_hyper(&cfg, c)?).map(|s| s.value);
        let psi = f(&chart).unwrap();
        let mu2 = spec.mass.mu().powi(2);
        let res = |h: f64| (box_hyper(&cfg, f, &chart, h).unwrap() - psi * mu2).norm() / psi.norm();
        let (coarse, fine) = (res(4e-3), res(2e-3));
        assert!(((coarse / fine).log2() - 2.0).abs() < 0.3, "{coarse} {fine}");
    }

    #[test]
    fn hyperbolic_form() {
        let idx = HarmonicIndex::new(3, 1, vec![2]).unwrap();
        let chart = HyperChart::new(0.8, vec![1.1], 0.3);
        let mut one = HyperCoeffs::new(1.4);
        one.insert(2, idx.clone(), Complex64::new(1.0, 0.0));
        let wave = HyperWave::new(2, 1.4, idx.clone()).unwrap();
        assert_eq!(wavepacket_hyper(&one, &chart).unwrap(), psi_hyper(&wave, &chart).unwrap());
        // χ_{−m} = conj χ_m gives a real field, since the radial factor is real.
        let mut sym = HyperCoeffs::new(1.4);
        let c = Complex64::new(0.3, -0.8);
        for alpha in [1, 2] {
            sym.insert(alpha, idx.clone(), c);
            sym.insert(alpha, HarmonicIndex::new(3, -1, vec![2]).unwrap(), c.conj());
        }
        let v = wavepacket_hyper(&sym, &chart).unwrap();
        assert!(v.im.abs() < 1e-13 * v.norm(), "{v}");
    }

    #[test]
    fn cauchy_surface_restriction_is_smooth() {
        // Second differences along φ at fixed β stay bounded as the step shrinks.
        let mut coeffs = HyperCoeffs::new(1.0);
        for m in -2..=2i64 {
            coeffs.insert(2, HarmonicIndex::new(3, m, vec![2]).unwrap(), Complex64::new(1.0 / (1.0 + m.abs() as f64), 0.0));
        }
        let at = |phi: f64| wavepacket_hyper(&coeffs, &HyperChart::new(1.5, vec![0.9], phi)).unwrap();
        let second = |h: f64| ((at(0.7 + h) + at(0.7 - h) - at(0.7) * 2.0) / (h * h)).norm();
        let (a, b) = (second(1e-2), second(5e-3));
        assert!((a - b).abs() < 1e-3 * a.max(1e-12));
    }
}
