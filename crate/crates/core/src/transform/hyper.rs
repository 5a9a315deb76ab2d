//! The Fourier pair in the hyperbolic chart.
//!
//! Forward: `χ(ρ) = ∫ conj(Ψ_ρ) f dΣ` with `dΣ = Rⁿ cosh^{n−1}β dβ dΩ`.
//! Inverse: `f = ∫₀^∞ dρ (ρ / 2Rⁿ) Σ χ(ρ) Ψ_ρ`. The density follows from
//! `∫ Ψ_ρ conj(Ψ_ρ′) dΣ = Rⁿ (2/ρ) δ(ρ − ρ′)` for the normalized waves.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use super::wavepacket::HyperCoeffs;
use crate::error::{check_len, Error, Result};
use crate::geometry::{HyperChart, SpacetimeConfig};
use crate::planewave::{HyperWave, RadialFactor};
use crate::quadrature::{composite_gauss_legendre, uniform_edges, SphereGrid};
use crate::specfun::{hypersph_y, HarmonicIndex};

/// Quadrature for `dΣ` on the window `|β| ≤ β_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperGrid {
    pub beta_max: f64,
    pub beta_panels: usize,
    pub order: usize,
    pub sphere_polar: usize,
    pub sphere_phi: usize,
}

impl Default for HyperGrid {
    fn default() -> Self {
        Self { beta_max: 12.0, beta_panels: 96, order: 12, sphere_polar: 12, sphere_phi: 16 }
    }
}

/// A function on the chart sampled once on a [`HyperGrid`].
#[derive(Debug, Clone)]
pub struct HyperSamples {
    cfg: SpacetimeConfig,
    betas: Vec<(f64, f64)>,
    sphere: SphereGrid,
    /// Row-major in `(β, sphere node)`.
    values: Vec<Complex64>,
}

impl HyperSamples {
    pub fn sample<F>(cfg: &SpacetimeConfig, f: F, grid: &HyperGrid) -> Result<Self>
    where
        F: Fn(&HyperChart) -> Result<Complex64> + Sync,
    {
        if !(grid.beta_max > 0.0) || grid.beta_panels == 0 || grid.order == 0 {
            return Err(Error::InvalidArgument(format!("degenerate grid {grid:?}")));
        }
        let betas = composite_gauss_legendre(&uniform_edges(-grid.beta_max, grid.beta_max, grid.beta_panels), grid.order);
        let sphere = SphereGrid::product(cfg.n(), grid.sphere_polar, grid.sphere_phi);
        let rows: Vec<Result<Vec<Complex64>>> = betas
            .par_iter()
            .map(|&(beta, _)| {
                sphere
                    .nodes
                    .iter()
                    .map(|nd| f(&HyperChart { beta, polar: nd.polar.clone(), phi: nd.phi }))
                    .collect()
            })
            .collect();
        let mut values = Vec::with_capacity(betas.len() * sphere.len());
        for row in rows {
            values.extend(row?);
        }
        Ok(Self { cfg: *cfg, betas, sphere, values })
    }

    /// Angular projections `Σ_Ω w conj(Y) f` per β node.
    fn project(&self, idx: &HarmonicIndex) -> Result<Vec<Complex64>> {
        let ys: Vec<Complex64> =
            self.sphere.nodes.iter().map(|nd| hypersph_y(idx, &nd.polar, nd.phi).map(|y| y.conj() * nd.weight)).collect::<Result<_>>()?;
        let m = ys.len();
        Ok((0..self.betas.len())
            .map(|i| self.values[i * m..(i + 1) * m].iter().zip(&ys).map(|(f, y)| f * y).sum())
            .collect())
    }

    /// `χ(ρ)` for every mode with top degree at most `l_max`.
    pub fn forward(&self, rho: f64, l_max: u32) -> Result<HyperCoeffs> {
        let n = self.cfg.n();
        let rn = self.cfg.r().powi(n as i32);
        let mut out = HyperCoeffs::new(rho);
        let edges = [self.betas[0].0, self.betas[self.betas.len() - 1].0];
        let mut radial: HashMap<(u8, u32), (Vec<Complex64>, [Complex64; 2])> = HashMap::new();
        for idx in HarmonicIndex::enumerate(n, l_max) {
            let proj = self.project(&idx)?;
            for alpha in [1u8, 2] {
                let key = (alpha, idx.degree());
                if !radial.contains_key(&key) {
                    let r = RadialFactor::new(&HyperWave::new(alpha, rho, idx.clone())?)?;
                    let vals = self.betas.iter().map(|&(b, _)| r.eval(b)).collect::<Result<Vec<_>>>()?;
                    let ends = [r.eval(edges[0])?, r.eval(edges[1])?];
                    radial.insert(key, (vals, ends));
                }
                let (vals, _) = &radial[&key];
                let chi: Complex64 = self
                    .betas
                    .iter()
                    .zip(vals)
                    .zip(&proj)
                    .map(|((&(b, w), v), p)| v.conj() * p * (w * b.cosh().powi(n as i32 - 1)))
                    .sum();
                // Size of the integrand at the window edges, per unit β.
                let last = proj.len() - 1;
                let tail = [(0, edges[0]), (last, edges[1])]
                    .iter()
                    .zip(radial[&key].1.iter())
                    .map(|(&(i, b), v)| (v * proj[i]).norm() * b.cosh().powi(n as i32 - 1))
                    .fold(0.0, f64::max);
                out.tail_bound += rn * tail;
                out.insert(alpha, idx.clone(), chi * rn);
            }
        }
        Ok(out)
    }
}

/// Forward transform of `f` at one `ρ`.
pub fn fourier_hyper_forward<F>(cfg: &SpacetimeConfig, f: F, rho: f64, l_max: u32, grid: &HyperGrid) -> Result<HyperCoeffs>
where
    F: Fn(&HyperChart) -> Result<Complex64> + Sync,
{
    HyperSamples::sample(cfg, f, grid)?.forward(rho, l_max)
}

/// Density used in the `ρ` integral of the inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InverseMeasure {
    /// `ρ / 2Rⁿ`, which makes the pair a round trip.
    #[default]
    Plancherel,
    /// A bare `dρ`.
    Flat,
}

fn density(measure: InverseMeasure, cfg: &SpacetimeConfig, rho: f64) -> f64 {
    match measure {
        InverseMeasure::Plancherel => rho / (2.0 * cfg.r().powi(cfg.n() as i32)),
        InverseMeasure::Flat => 1.0,
    }
}

/// `f` at each chart point from a spectrum given as `(weight, χ(ρ))` pairs.
/// Radial factors are shared between points with equal `β`.
pub fn fourier_hyper_inverse(
    cfg: &SpacetimeConfig,
    spectrum: &[(f64, HyperCoeffs)],
    charts: &[HyperChart],
    measure: InverseMeasure,
) -> Result<Vec<Complex64>> {
    for c in charts {
        check_len(cfg.n() - 2, c.polar.len())?;
    }
    let mut betas: Vec<f64> = charts.iter().map(|c| c.beta).collect();
    betas.sort_by(f64::total_cmp);
    betas.dedup();
    // radial[(spectrum slot, α, L)][β slot]
    let mut radial: HashMap<(usize, u8, u32), Vec<Complex64>> = HashMap::new();
    for (slot, (_, coeffs)) in spectrum.iter().enumerate() {
        for (alpha, idx) in coeffs.entries.keys() {
            let key = (slot, *alpha, idx.degree());
            if radial.contains_key(&key) {
                continue;
            }
            let r = RadialFactor::new(&HyperWave::new(*alpha, coeffs.rho, idx.clone())?)?;
            radial.insert(key, betas.iter().map(|&b| r.eval(b)).collect::<Result<_>>()?);
        }
    }
    charts
        .par_iter()
        .map(|chart| {
            let bslot = betas.binary_search_by(|b| b.total_cmp(&chart.beta)).expect("β collected above");
            let mut acc = Complex64::new(0.0, 0.0);
            for (slot, (w, coeffs)) in spectrum.iter().enumerate() {
                let dens = w * density(measure, cfg, coeffs.rho);
                for ((alpha, idx), chi) in &coeffs.entries {
                    let v = radial[&(slot, *alpha, idx.degree())][bslot];
                    acc += chi * v * hypersph_y(idx, &chart.polar, chart.phi)? * dens;
                }
            }
            Ok(acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planewave::psi_hyper;
    use std::sync::Mutex;

    fn idx2(m: i64) -> HarmonicIndex {
        HarmonicIndex::new(2, m, vec![]).unwrap()
    }

    #[test]
    fn zero_and_parity() {
        let cfg = SpacetimeConfig::new(2, 1.0).unwrap();
        let grid = HyperGrid { beta_panels: 24, ..Default::default() };
        let zero = fourier_hyper_forward(&cfg, |_| Ok(Complex64::new(0.0, 0.0)), 1.0, 2, &grid).unwrap();
        assert!(zero.entries.values().all(|c| *c == Complex64::new(0.0, 0.0)));
        // f even under (β, φ) ↦ (−β, φ + π): odd-parity modes vanish.
        let f = |c: &HyperChart| Ok(Complex64::new((-c.beta * c.beta).exp() * (1.0 + c.phi.cos().powi(2)), 0.0));
        let chi = fourier_hyper_forward(&cfg, f, 1.3, 3, &grid).unwrap();
        let mut even_mass = 0.0;
        for ((alpha, idx), c) in &chi.entries {
            let odd = (u32::from(*alpha) + idx.degree()) % 2 == 1;
            if odd {
                assert!(c.norm() < 1e-13, "{alpha} {idx:?}: {c}");
            } else {
                even_mass += c.norm();
            }
        }
        assert!(even_mass > 1e-2);
    }

    #[test]
    fn single_mode_is_diagonal_in_the_labels() {
        let cfg = SpacetimeConfig::new(2, 1.0).unwrap();
        // A ρ-packet of one mode: off-diagonal labels project to zero at every ρ.
        let rhos = composite_gauss_legendre(&uniform_edges(0.5, 4.5, 8), 12);
        let g = |r: f64| (-(r - 2.5f64).powi(2) / 0.5).exp();
        let waves: Vec<(f64, RadialFactor)> =
            rhos.iter().map(|&(r, w)| (w * g(r), RadialFactor::new(&HyperWave::new(2, r, idx2(1)).unwrap()).unwrap())).collect();
        let f = |c: &HyperChart| {
            let v: Complex64 = waves.iter().map(|(w, r)| r.eval(c.beta).unwrap() * *w).sum();
            Ok(v * hypersph_y(&idx2(1), &[], c.phi)?)
        };
        let grid = HyperGrid { beta_panels: 48, ..Default::default() };
        let chi = fourier_hyper_forward(&cfg, f, 2.5, 2, &grid).unwrap();
        let main = chi.get(2, &idx2(1));
        for ((alpha, idx), c) in &chi.entries {
            if (*alpha, idx) != (2, &idx2(1)) {
                assert!(c.norm() < 1e-10 * main.norm(), "{alpha} {idx:?}");
            }
        }
        // χ(ρ₀) ≈ (2/ρ₀) g(ρ₀).
        assert!((main - 2.0 / 2.5 * g(2.5)).norm() < 1e-3 * main.norm(), "{main}");
    }

    #[test]
    fn round_trip_band_limited_two_dimensions() {
        let cfg = SpacetimeConfig::new(2, 1.5).unwrap();
        let modes: Vec<(u8, HarmonicIndex, Complex64)> = vec![
            (2, idx2(0), Complex64::new(1.0, 0.0)),
            (1, idx2(1), Complex64::new(0.4, -0.3)),
            (2, idx2(-3), Complex64::new(0.0, 0.6)),
            (1, idx2(4), Complex64::new(-0.25, 0.1)),
        ];
        let g = |r: f64| (-(r - 3.0f64).powi(2) / 0.5).exp();
        let rhos = composite_gauss_legendre(&uniform_edges(0.05, 5.95, 12), 12);
        // Radial profiles ∫ g(ρ) V_ρ(β) dρ per mode, cached by β.
        let radials: Vec<Vec<(f64, RadialFactor)>> = modes
            .iter()
            .map(|(alpha, idx, _)| {
                rhos.iter().map(|&(r, w)| (w * g(r), RadialFactor::new(&HyperWave::new(*alpha, r, idx.clone()).unwrap()).unwrap())).collect()
            })
            .collect();
        let cache: Mutex<HashMap<u64, Vec<Complex64>>> = Mutex::new(HashMap::new());
        let profile = |beta: f64| -> Vec<Complex64> {
            if let Some(v) = cache.lock().unwrap().get(&beta.to_bits()) {
                return v.clone();
            }
            let v: Vec<Complex64> =
                radials.iter().map(|rs| rs.iter().map(|(w, r)| r.eval(beta).unwrap() * *w).sum()).collect();
            cache.lock().unwrap().insert(beta.to_bits(), v.clone());
            v
        };
        let f = |c: &HyperChart| -> Result<Complex64> {
            let p = profile(c.beta);
            let mut acc = Complex64::new(0.0, 0.0);
            for ((_, idx, coef), pv) in modes.iter().zip(&p) {
                acc += coef * pv * hypersph_y(idx, &c.polar, c.phi)?;
            }
            Ok(acc)
        };
        let samples = HyperSamples::sample(&cfg, f, &HyperGrid::default()).unwrap();
        let spectrum: Vec<(f64, HyperCoeffs)> = rhos.iter().map(|&(r, w)| (w, samples.forward(r, 4).unwrap())).collect();
        let tail = spectrum.iter().map(|(_, c)| c.tail_bound).fold(0.0, f64::max);
        assert!(tail < 1e-6, "window tail {tail}");
        let charts: Vec<HyperChart> = (0..33)
            .flat_map(|i| (0..12).map(move |j| HyperChart::new(-4.0 + 0.25 * i as f64, vec![], 0.1 + 0.5 * j as f64)))
            .collect();
        let back = fourier_hyper_inverse(&cfg, &spectrum, &charts, InverseMeasure::Plancherel).unwrap();
        let (mut num, mut den) = (0.0, 0.0);
        for (c, b) in charts.iter().zip(&back) {
            let want = f(c).unwrap();
            num += (b - want).norm_sqr();
            den += want.norm_sqr();
        }
        let rel = (num / den).sqrt();
        assert!(rel < 1e-3, "relative L² error {rel}");
        // The bare dρ of the printed inverse does not reproduce f.
        let flat = fourier_hyper_inverse(&cfg, &spectrum, &charts, InverseMeasure::Flat).unwrap();
        let off: f64 = charts.iter().zip(&flat).map(|(c, b)| (b - f(c).unwrap()).norm_sqr()).sum();
        assert!((off / den).sqrt() > 0.1);
    }

    #[test]
    fn delta_spectrum_gives_the_plane_wave() {
        let cfg = SpacetimeConfig::new(3, 1.0).unwrap();
        let idx = HarmonicIndex::new(3, -1, vec![2]).unwrap();
        let mut c = HyperCoeffs::new(1.7);
        c.insert(1, idx.clone(), Complex64::new(1.0, 0.0));
        let chart = HyperChart::new(0.9, vec![1.2], 2.0);
        let w = 2.0 / 1.7;
        let got = fourier_hyper_inverse(&cfg, &[(w, c.clone())], &[chart.clone()], InverseMeasure::Plancherel).unwrap()[0];
        let want = psi_hyper(&HyperWave::new(1, 1.7, idx).unwrap(), &chart).unwrap();
        assert!((got - want).norm() < 1e-14 * want.norm());
        let doubled = fourier_hyper_inverse(&cfg, &[(w, c.scaled(Complex64::new(2.0, 0.0)))], &[chart], InverseMeasure::Plancherel).unwrap()[0];
        assert!((doubled - want * 2.0).norm() < 1e-14 * want.norm());
    }
}
