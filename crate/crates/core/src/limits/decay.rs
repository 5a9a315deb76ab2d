//! Empirical decay exponents along paths to infinity.
//!
//! Samples are grouped into consecutive blocks and each block is represented
//! by its largest amplitude, which removes the oscillation of the field.
//! Windows of consecutive blocks are fitted by a line in `(ln s, ln|f|)`;
//! the exponent reported is minus the slope.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fd::fit_line;
use crate::geometry::{from_hyper, AmbientPoint, HyperChart, SpacetimeConfig};
use crate::planewave::{psi_hyper, HyperWave};
use crate::quadrature::{composite_gauss_legendre, uniform_edges};
use crate::transform::wavepacket::{wavepacket_ambient_checked, WavepacketSpec};

/// One sample of `|f|` with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecaySample {
    pub s: f64,
    pub amplitude: f64,
    pub noise: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayOptions {
    pub blocks: usize,
    pub blocks_per_window: usize,
    /// A block counts as resolved while its peak exceeds this multiple of
    /// the largest noise estimate inside it.
    pub noise_factor: f64,
}

impl Default for DecayOptions {
    fn default() -> Self {
        Self { blocks: 12, blocks_per_window: 4, noise_factor: 10.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayStatus {
    /// Every block lies above the noise floor.
    Resolved,
    /// The fit stops at the first block that sinks into the noise.
    NoiseLimited,
    /// The field vanishes identically on the path; no fit is made.
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayWindow {
    pub s_min: f64,
    pub s_max: f64,
    pub exponent: f64,
    /// Root-mean-square residual of the line fit in `ln|f|`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    pub windows: Vec<DecayWindow>,
    pub status: DecayStatus,
    /// Largest noise estimate over the samples.
    pub noise_floor: f64,
    /// Block peaks `(s, |f|)` that entered the fits, at the block centers.
    pub peaks: Vec<(f64, f64)>,
}

impl DecayFit {
    /// Exponent of the line through all resolved block peaks.
    pub fn overall_exponent(&self) -> Option<f64> {
        if self.peaks.len() < 2 {
            return None;
        }
        let (lx, ly): (Vec<f64>, Vec<f64>) = self.peaks.iter().map(|(s, a)| (s.ln(), a.ln())).unzip();
        Some(-fit_line(&lx, &ly).0)
    }

    /// Whether every window decays faster than `s^{−m}`.
    pub fn exceeds(&self, m: f64) -> bool {
        !self.windows.is_empty() && self.windows.iter().all(|w| w.exponent > m)
    }

    /// Whether the window exponents never drop by more than `slack`.
    pub fn non_decreasing(&self, slack: f64) -> bool {
        self.windows.windows(2).all(|p| p[1].exponent >= p[0].exponent - slack)
    }
}

/// Fits samples ordered by increasing `s`.
pub fn fit_decay(samples: &[DecaySample], opts: &DecayOptions) -> Result<DecayFit> {
    if opts.blocks < 2 || opts.blocks_per_window < 2 || opts.blocks_per_window > opts.blocks {
        return Err(Error::InvalidArgument(format!("block layout {opts:?}")));
    }
    if samples.len() < opts.blocks {
        return Err(Error::InvalidArgument(format!("{} samples for {} blocks", samples.len(), opts.blocks)));
    }
    if samples.windows(2).any(|p| !(p[1].s > p[0].s)) {
        return Err(Error::InvalidArgument("path parameter s must increase".into()));
    }
    let noise_floor = samples.iter().map(|p| p.noise).fold(0.0, f64::max);
    if samples.iter().all(|p| p.amplitude == 0.0) {
        return Ok(DecayFit { windows: Vec::new(), status: DecayStatus::Zero, noise_floor, peaks: Vec::new() });
    }
    let len = samples.len();
    let mut blocks = Vec::with_capacity(opts.blocks);
    let mut status = DecayStatus::Resolved;
    for b in 0..opts.blocks {
        let block = &samples[b * len / opts.blocks..(b + 1) * len / opts.blocks];
        let top = block.iter().map(|p| p.amplitude).fold(0.0, f64::max);
        let noise = block.iter().map(|p| p.noise).fold(0.0, f64::max);
        if !(top > opts.noise_factor * noise) || top == 0.0 {
            status = DecayStatus::NoiseLimited;
            break;
        }
        blocks.push(block);
    }
    // Maxima of |f|·(s/s_c)^m per block, with s_c the geometric block center.
    // Detrending by the current exponent moves each maximum onto a crest of
    // the oscillation instead of the block edge; a few passes settle m.
    let peaks_for = |m: f64| -> Vec<(f64, f64)> {
        blocks
            .iter()
            .map(|block| {
                let sc = (block[0].s * block[block.len() - 1].s).sqrt();
                let top = block.iter().map(|p| p.amplitude * (p.s / sc).powf(m)).fold(0.0, f64::max);
                (sc, top)
            })
            .collect()
    };
    let mut m = 0.0;
    let mut peaks = peaks_for(m);
    for _ in 0..4 {
        if peaks.len() < 2 {
            break;
        }
        let (lx, ly): (Vec<f64>, Vec<f64>) = peaks.iter().map(|(s, a)| (s.ln(), a.ln())).unzip();
        m = -fit_line(&lx, &ly).0;
        peaks = peaks_for(m);
    }
    let windows = peaks
        .windows(opts.blocks_per_window)
        .map(|w| {
            let (lx, ly): (Vec<f64>, Vec<f64>) = w.iter().map(|(s, a)| (s.ln(), a.ln())).unzip();
            let (slope, icept) = fit_line(&lx, &ly);
            let rss: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - slope * x - icept).powi(2)).sum();
            DecayWindow {
                s_min: w[0].0,
                s_max: w[w.len() - 1].0,
                exponent: -slope,
                residual: (rss / lx.len() as f64).sqrt(),
            }
        })
        .collect();
    Ok(DecayFit { windows, status, noise_floor, peaks })
}

/// Decay of a synthesized wavepacket along `x(t)` for increasing parameters
/// `t`. Each point carries the refined-grid error estimate as its noise.
pub fn decay_fit<P>(spec: &WavepacketSpec, path: P, params: &[f64], opts: &DecayOptions) -> Result<DecayFit>
where
    P: Fn(f64) -> Result<AmbientPoint> + Sync,
{
    let samples = params
        .par_iter()
        .map(|&t| {
            let x = path(t)?;
            let c = wavepacket_ambient_checked(spec, &x, 0.0)?;
            Ok(DecaySample { s: x.size(), amplitude: c.synthesis.value.norm(), noise: c.error_estimate })
        })
        .collect::<Result<Vec<_>>>()?;
    fit_decay(&samples, opts)
}

/// Decay of a hyperbolic plane wave along the ray of fixed angles,
/// `β ∈ betas`. The noise estimate is the rounding level of the value.
pub fn plane_wave_decay(
    cfg: &SpacetimeConfig,
    wave: &HyperWave,
    polar: &[f64],
    phi: f64,
    betas: &[f64],
    opts: &DecayOptions,
) -> Result<DecayFit> {
    let samples = betas
        .par_iter()
        .map(|&b| {
            let chart = HyperChart::new(b, polar.to_vec(), phi);
            let x = from_hyper(cfg, &chart)?;
            let v = psi_hyper(wave, &chart)?.norm();
            Ok(DecaySample { s: x.size(), amplitude: v, noise: v * 1e-14 })
        })
        .collect::<Result<Vec<_>>>()?;
    fit_decay(&samples, opts)
}

/// Decay in time of the massive Minkowski packet
/// `f(t) = ∫ g(|p|) e^{−itω(p)} d^{n−1}p`, `ω = √(|p|² + μ²)`, at the spatial
/// origin, for the bump `g(p) = exp(−1/(1 − (p/p_max)²))`. A flat-space
/// reference for the de Sitter fits; `s = t`.
pub fn flat_packet_decay(n: usize, mu: f64, p_max: f64, times: &[f64], opts: &DecayOptions) -> Result<DecayFit> {
    if n < 2 || !(mu > 0.0) || !(p_max > 0.0) {
        return Err(Error::InvalidArgument(format!("flat packet with n = {n}, μ = {mu}, p_max = {p_max}")));
    }
    let t_max = times.iter().fold(0.0f64, |a, t| a.max(t.abs()));
    let spread = (p_max * p_max + mu * mu).sqrt() - mu;
    let panels = 64 + (t_max * spread / 4.0).ceil() as usize;
    let rule: Vec<(f64, f64)> = composite_gauss_legendre(&uniform_edges(0.0, p_max, panels), 16)
        .into_iter()
        .map(|(p, w)| {
            let x = p / p_max;
            let g = (-1.0 / (1.0 - x * x)).exp();
            ((p * p + mu * mu).sqrt(), w * g * p.powi(n as i32 - 2))
        })
        .collect();
    let scale: f64 = rule.iter().map(|(_, w)| w.abs()).sum();
    let samples: Vec<DecaySample> = times
        .par_iter()
        .map(|&t| {
            let v: num_complex::Complex64 = rule.iter().map(|&(om, w)| num_complex::Complex64::from_polar(w, -t * om)).sum();
            DecaySample { s: t, amplitude: v.norm(), noise: 1e-13 * scale }
        })
        .collect();
    fit_decay(&samples, opts)
}

/// Sample parameters `t_k = a + (b − a)k/(m − 1)`.
pub fn linspace(a: f64, b: f64, m: usize) -> Vec<f64> {
    (0..m).map(|k| a + (b - a) * k as f64 / (m.max(2) - 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planewave::PrincipalMass;
    use crate::specfun::HarmonicIndex;
    use crate::transform::{AbsoluteProfile, QuadratureGrid};

    fn power_law(m: f64, osc: bool) -> Vec<DecaySample> {
        linspace(0.0, 8.0, 4000)
            .into_iter()
            .map(|u| {
                let s = u.exp();
                let wobble = if osc { 1.0 + 0.5 * (40.0 * u).cos() } else { 1.0 };
                DecaySample { s, amplitude: s.powf(-m) * wobble, noise: 0.0 }
            })
            .collect()
    }

    #[test]
    fn recovers_a_power_law_through_oscillation() {
        let fit = fit_decay(&power_law(1.5, true), &DecayOptions::default()).unwrap();
        assert_eq!(fit.status, DecayStatus::Resolved);
        assert_eq!(fit.windows.len(), 9);
        for w in &fit.windows {
            assert!((w.exponent - 1.5).abs() < 0.03, "{w:?}");
        }
        assert!(fit.non_decreasing(0.05));
        assert!(fit.exceeds(1.4) && !fit.exceeds(1.6));
    }

    #[test]
    fn noise_floor_truncates_the_fit() {
        let mut s = power_law(2.0, false);
        for p in s.iter_mut() {
            p.noise = 1e-6;
        }
        let fit = fit_decay(&s, &DecayOptions::default()).unwrap();
        assert_eq!(fit.status, DecayStatus::NoiseLimited);
        assert!(fit.peaks.iter().all(|(_, a)| *a > 1e-5));
    }

    #[test]
    fn zero_field_skips_the_fit() {
        let s: Vec<DecaySample> = (1..50).map(|k| DecaySample { s: k as f64, amplitude: 0.0, noise: 0.0 }).collect();
        let fit = fit_decay(&s, &DecayOptions::default()).unwrap();
        assert_eq!(fit.status, DecayStatus::Zero);
        assert!(fit.windows.is_empty() && fit.overall_exponent().is_none());
        let cfg = SpacetimeConfig::new(2, 1.0).unwrap();
        let mass = PrincipalMass::from_rho(&cfg, 1.0).unwrap();
        let profile = AbsoluteProfile::new(vec![0.0, 1.0], 0.4, 1.0).unwrap().scaled(0.0);
        let spec = WavepacketSpec::new(profile, mass, QuadratureGrid::default()).unwrap();
        let path = |b: f64| from_hyper(&cfg, &HyperChart::new(b, vec![], 1.0));
        let fit = decay_fit(&spec, path, &linspace(0.0, 3.0, 24), &DecayOptions::default()).unwrap();
        assert_eq!(fit.status, DecayStatus::Zero);
    }

    #[test]
    fn plane_wave_exponent_is_half_the_dimension_minus_one() {
        for (n, l) in [(2usize, vec![]), (3, vec![1]), (4, vec![0, 2])] {
            let cfg = SpacetimeConfig::new(n, 1.0).unwrap();
            let idx = HarmonicIndex::new(n, 0, l).unwrap();
            let wave = HyperWave::new(2, 1.3, idx).unwrap();
            let polar = vec![0.7; n - 2];
            let betas = linspace(4.0, 16.0, 600);
            let fit = plane_wave_decay(&cfg, &wave, &polar, 0.2, &betas, &DecayOptions::default()).unwrap();
            let e = fit.overall_exponent().unwrap();
            assert!((e - (n as f64 - 1.0) / 2.0).abs() < 0.05, "n {n}: {e}");
        }
    }

    #[test]
    fn flat_packet_decays_like_half_the_space_dimension() {
        // Stationary phase at p = 0 in d = n − 1 dimensions gives t^{−d/2}.
        for n in 2..=4 {
            let fit = flat_packet_decay(n, 1.0, 1.0, &linspace(100.0, 4000.0, 480), &DecayOptions::default()).unwrap();
            let e = fit.overall_exponent().unwrap();
            assert_eq!(fit.status, DecayStatus::Resolved);
            assert!((e - (n as f64 - 1.0) / 2.0).abs() < 0.05, "n {n}: {e}");
        }
        assert!(flat_packet_decay(1, 1.0, 1.0, &[1.0], &DecayOptions::default()).is_err());
    }

    #[test]
    fn rejects_bad_layouts() {
        let s = power_law(1.0, false);
        assert!(fit_decay(&s, &DecayOptions { blocks: 1, ..Default::default() }).is_err());
        assert!(fit_decay(&s[..5], &DecayOptions::default()).is_err());
        let mut r = s.clone();
        r.reverse();
        assert!(fit_decay(&r, &DecayOptions::default()).is_err());
    }
}
