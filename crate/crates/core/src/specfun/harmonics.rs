//! Hyperspherical harmonics on `S^{n−1}` as products of Ferrers functions.
//!
//! The factor attached to the angle `φ_{n−1−q}` is
//! `sin^{−(q−1)/2}θ · P^{−μ}_ν(cos θ)` with `μ = l_{q−1} + (q−1)/2`,
//! `ν = l_q + (q−1)/2` and `l₀ = |m|`. The negative order selects the branch
//! that is square integrable; the product is normalized to unit `L²` norm.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::ln_gamma;
use super::hypergeometric::f21_regularized_real;
use super::SpecFunConfig;
use crate::error::{check_len, Error, Result};

/// Labels `(m; l₁, …, l_{n−2})` with `|m| ≤ l₁ ≤ … ≤ l_{n−2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HarmonicIndex {
    n: usize,
    m: i64,
    l: Vec<u32>,
}

impl HarmonicIndex {
    pub fn new(n: usize, m: i64, l: Vec<u32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("n = {n} < 2")));
        }
        if l.len() != n - 2 {
            return Err(Error::InvalidArgument(format!("expected {} degrees, got {}", n - 2, l.len())));
        }
        let mut prev = m.unsigned_abs();
        for &lq in &l {
            if u64::from(lq) < prev {
                return Err(Error::InvalidArgument(format!("degrees must satisfy |m| ≤ l₁ ≤ …, got m = {m}, l = {l:?}")));
            }
            prev = u64::from(lq);
        }
        Ok(Self { n, m, l })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn l(&self) -> &[u32] {
        &self.l
    }

    /// `l_{n−2}`, or `|m|` on the circle.
    pub fn degree(&self) -> u32 {
        self.l.last().copied().unwrap_or(self.m.unsigned_abs() as u32)
    }

    /// Eigenvalue of the sphere Laplacian, `−L(L + n − 2)`.
    pub fn laplace_eigenvalue(&self) -> f64 {
        let l = self.degree() as f64;
        -l * (l + self.n as f64 - 2.0)
    }

    /// All indices with top degree at most `l_max`, in lexicographic order.
    pub fn enumerate(n: usize, l_max: u32) -> Vec<HarmonicIndex> {
        let mut out = Vec::new();
        if n == 2 {
            for m in -(l_max as i64)..=(l_max as i64) {
                out.push(HarmonicIndex { n, m, l: vec![] });
            }
            return out;
        }
        fn rec(n: usize, l_max: u32, chain: &mut Vec<u32>, out: &mut Vec<HarmonicIndex>) {
            if chain.len() == n - 2 {
                let l1 = *chain.last().unwrap();
                for m in -(l1 as i64)..=(l1 as i64) {
                    let l: Vec<u32> = chain.iter().rev().copied().collect();
                    out.push(HarmonicIndex { n, m, l });
                }
                return;
            }
            let hi = chain.last().copied().unwrap_or(l_max);
            for lq in 0..=hi {
                chain.push(lq);
                rec(n, l_max, chain, out);
                chain.pop();
            }
        }
        rec(n, l_max, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

/// Unit-norm factor in the angle `θ` for link `q`.
fn factor(q: usize, lprev: u32, lq: u32, theta: f64, cfg: &SpecFunConfig) -> Result<f64> {
    let half = (q as f64 - 1.0) / 2.0;
    let mu = lprev as f64 + half;
    let nu = lq as f64 + half;
    let z = (0.5 * theta).sin().powi(2);
    let f = f21_regularized_real(1.0 + mu + nu, mu - nu, 1.0 + mu, z, cfg)?;
    let reduced = 2f64.powf(-mu) * theta.sin().powi(lprev as i32) * f;
    let ln_ratio = ln_gamma(Complex64::new(nu + mu + 1.0, 0.0))?.re - ln_gamma(Complex64::new(nu - mu + 1.0, 0.0))?.re;
    let norm = ((2.0 * nu + 1.0) / 2.0).sqrt() * (0.5 * ln_ratio).exp();
    Ok(norm * reduced)
}

/// Product of the Ferrers factors, without the azimuthal exponential.
pub fn polar_part(idx: &HarmonicIndex, polar: &[f64]) -> Result<f64> {
    check_len(idx.n - 2, polar.len())?;
    let cfg = SpecFunConfig::default();
    let mut val = 1.0;
    let mut prev = idx.m.unsigned_abs() as u32;
    for q in 1..=idx.n - 2 {
        let lq = idx.l[q - 1];
        val *= factor(q, prev, lq, polar[idx.n - 2 - q], &cfg)?;
        prev = lq;
    }
    Ok(val)
}

/// `Y^m_{l₁…l_{n−2}}(φ₁, …, φ_{n−2}, φ)` with `∫|Y|² dΩ = 1`.
pub fn hypersph_y(idx: &HarmonicIndex, polar: &[f64], phi: f64) -> Result<Complex64> {
    let radial = polar_part(idx, polar)?;
    let phase = Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), idx.m as f64 * phi);
    Ok(phase * radial)
}
