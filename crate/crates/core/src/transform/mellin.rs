//! The Mellin pair on the radial coordinate `s` of the cone:
//! `ϖ(ρ) = ∫₀^∞ h(s) s^{(n−1)/2 − iρ} ds/s` and
//! `h(s) = (1/2π) ∫ ϖ(ρ) s^{−(n−1)/2 + iρ} dρ`.
//!
//! Both integrals are trapezoid sums, in `u = ln s` for the forward map and
//! in `ρ` for the inverse. For smooth, rapidly decaying integrands the
//! trapezoid rule converges geometrically.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Truncation windows for both directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinWindow {
    pub u_min: f64,
    pub u_max: f64,
    pub u_nodes: usize,
    pub rho_max: f64,
    pub rho_nodes: usize,
}

impl Default for MellinWindow {
    fn default() -> Self {
        Self { u_min: -12.0, u_max: 6.0, u_nodes: 4001, rho_max: 150.0, rho_nodes: 1201 }
    }
}

impl MellinWindow {
    fn check(&self) -> Result<()> {
        if !(self.u_max > self.u_min) || self.u_nodes < 3 || !(self.rho_max > 0.0) || self.rho_nodes < 3 {
            return Err(Error::InvalidArgument(format!("degenerate Mellin window {self:?}")));
        }
        Ok(())
    }

    fn u_step(&self) -> f64 {
        (self.u_max - self.u_min) / (self.u_nodes - 1) as f64
    }

    fn rho_step(&self) -> f64 {
        2.0 * self.rho_max / (self.rho_nodes - 1) as f64
    }
}

/// A transform value together with the size of the integrand at the window
/// edges, a proxy for the truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Windowed {
    pub value: Complex64,
    pub edge: f64,
}

fn trapezoid<F: Fn(f64) -> Complex64>(f: F, a: f64, step: f64, nodes: usize) -> Windowed {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..nodes {
        let w = if k == 0 || k == nodes - 1 { 0.5 } else { 1.0 };
        acc += f(a + step * k as f64) * w;
    }
    let last = a + step * (nodes - 1) as f64;
    let edge = f(a).norm().max(f(last).norm());
    Windowed { value: acc * step, edge }
}

/// `ϖ(ρ)` for a radial profile `h`.
pub fn mellin_forward<F: Fn(f64) -> Complex64>(h: F, n: usize, rho: f64, win: &MellinWindow) -> Result<Windowed> {
    win.check()?;
    let half = (n as f64 - 1.0) / 2.0;
    let integrand = |u: f64| h(u.exp()) * Complex64::new(half * u, -rho * u).exp();
    Ok(trapezoid(integrand, win.u_min, win.u_step(), win.u_nodes))
}

/// `h(s)` from `ϖ` sampled over `[−ρ_max, ρ_max]`.
pub fn mellin_inverse<F: Fn(f64) -> Complex64>(varpi: F, n: usize, s: f64, win: &MellinWindow) -> Result<Windowed> {
    win.check()?;
    if !(s > 0.0) {
        return Err(Error::InvalidArgument(format!("s = {s} must be positive")));
    }
    let half = (n as f64 - 1.0) / 2.0;
    let u = s.ln();
    let integrand = |rho: f64| varpi(rho) * Complex64::new(-half * u, rho * u).exp();
    let w = trapezoid(integrand, -win.rho_max, win.rho_step(), win.rho_nodes);
    let scale = 1.0 / (2.0 * std::f64::consts::PI);
    Ok(Windowed { value: w.value * scale, edge: w.edge * scale })
}

/// Samples `ϖ` on the inverse grid once and returns it as a lookup, so that
/// the inverse can be evaluated at many `s` without recomputing the forward map.
pub fn mellin_spectrum<F: Fn(f64) -> Complex64>(h: F, n: usize, win: &MellinWindow) -> Result<Vec<(f64, Complex64)>> {
    win.check()?;
    let step = win.rho_step();
    (0..win.rho_nodes)
        .map(|k| {
            let rho = -win.rho_max + step * k as f64;
            mellin_forward(&h, n, rho, win).map(|w| (rho, w.value))
        })
        .collect()
}

/// Inverse from a sampled spectrum on the grid of `win`.
pub fn mellin_inverse_sampled(spectrum: &[(f64, Complex64)], n: usize, s: f64, win: &MellinWindow) -> Result<Complex64> {
    if spectrum.len() != win.rho_nodes {
        return Err(Error::DimensionMismatch { expected: win.rho_nodes, got: spectrum.len() });
    }
    let half = (n as f64 - 1.0) / 2.0;
    let u = s.ln();
    let step = win.rho_step();
    let last = spectrum.len() - 1;
    let acc: Complex64 = spectrum
        .iter()
        .enumerate()
        .map(|(k, &(rho, v))| {
            let w = if k == 0 || k == last { 0.5 } else { 1.0 };
            v * Complex64::new(-half * u, rho * u).exp() * w
        })
        .sum();
    Ok(acc * (step / (2.0 * std::f64::consts::PI)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    fn bump(u: f64) -> f64 {
        let t = u / 2.0;
        if t.abs() >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - t * t)).exp()
        }
    }

    #[test]
    fn gamma_integral_oracle() {
        // h(s) = s^{1−(n−1)/2} e^{−s} gives ∫ e^{−s} s^{1−iρ} ds/s = Γ(1 − iρ).
        let win = MellinWindow { u_min: -40.0, u_max: 4.5, u_nodes: 6001, ..Default::default() };
        for n in [2, 3, 4] {
            let half = (n as f64 - 1.0) / 2.0;
            for rho in [0.3, 1.0, 2.5] {
                let h = |s: f64| Complex64::new(s.powf(1.0 - half) * (-s).exp(), 0.0);
                let got = mellin_forward(h, n, rho, &win).unwrap();
                let want = gamma(Complex64::new(1.0, -rho)).unwrap();
                assert!((got.value - want).norm() < 1e-12, "n {n} ρ {rho}: {} vs {want}", got.value);
                assert!(got.edge < 1e-15);
            }
        }
    }

    #[test]
    fn round_trip_on_a_compact_bump() {
        let n = 3;
        let half = 1.0;
        let win = MellinWindow { u_min: -2.0, u_max: 2.0, u_nodes: 2001, rho_max: 150.0, rho_nodes: 1201 };
        let h = |s: f64| Complex64::new(s.powf(-half) * bump(s.ln()) * (1.0 + 0.3 * s.ln()), 0.0);
        let spec = mellin_spectrum(h, n, &win).unwrap();
        let mut worst: f64 = 0.0;
        let mut peak: f64 = 0.0;
        for k in 0..41 {
            let s = (-1.9 + 0.095 * k as f64).exp();
            let back = mellin_inverse_sampled(&spec, n, s, &win).unwrap();
            worst = worst.max((back - h(s)).norm());
            peak = peak.max(h(s).norm());
        }
        assert!(worst / peak < 1e-6, "{}", worst / peak);
    }

    #[test]
    fn dilation_covariance() {
        // h(λs) has transform λ^{−(n−1)/2 + iρ} ϖ(ρ).
        let win = MellinWindow { u_min: -40.0, u_max: 5.0, u_nodes: 6001, ..Default::default() };
        let (n, rho, lambda) = (4, 0.8, 1.7_f64);
        let h = |s: f64| Complex64::new(s * s * (-s * s).exp(), 0.0);
        let base = mellin_forward(h, n, rho, &win).unwrap().value;
        let moved = mellin_forward(|s| h(lambda * s), n, rho, &win).unwrap().value;
        let factor = Complex64::new(-1.5 * lambda.ln(), rho * lambda.ln()).exp();
        assert!((moved - factor * base).norm() < 1e-12 * base.norm());
    }

    #[test]
    fn zero_in_zero_out() {
        let win = MellinWindow::default();
        let z = mellin_forward(|_| Complex64::new(0.0, 0.0), 2, 1.0, &win).unwrap();
        assert_eq!(z.value, Complex64::new(0.0, 0.0));
        assert!(mellin_inverse(|_| Complex64::new(0.0, 0.0), 2, 0.0, &win).is_err());
    }
}
