//! Forward transform of a single hyperbolic plane wave profile and the
//! inverse from a one-point spectrum.

use ds_harmonic::geometry::{HyperChart, SpacetimeConfig};
use ds_harmonic::planewave::{psi_hyper, HyperWave};
use ds_harmonic::specfun::HarmonicIndex;
use ds_harmonic::transform::{fourier_hyper_forward, fourier_hyper_inverse, HyperCoeffs, HyperGrid, InverseMeasure};
use ds_harmonic::Complex64;

fn main() -> ds_harmonic::Result<()> {
    let cfg = SpacetimeConfig::new(2, 1.0)?;
    // A Gaussian in β times e^{2iφ}: the forward transform only sees m = ±2.
    let f = |c: &HyperChart| Ok(Complex64::from_polar((-c.beta * c.beta).exp(), 2.0 * c.phi));
    let coeffs = fourier_hyper_forward(&cfg, f, 1.0, 3, &HyperGrid::default())?;
    for ((alpha, idx), v) in &coeffs.entries {
        if v.norm() > 1e-12 {
            println!("α = {alpha}, m = {}: {v:.6}", idx.m());
        }
    }
    println!("tail bound {:e}", coeffs.tail_bound);

    let idx = HarmonicIndex::new(2, 1, vec![])?;
    let mut single = HyperCoeffs::new(0.8);
    single.insert(2, idx.clone(), Complex64::new(1.0, 0.0));
    let chart = HyperChart::new(0.4, vec![], 1.1);
    let weight = 2.0 / 0.8;
    let back = fourier_hyper_inverse(&cfg, &[(weight, single)], &[chart.clone()], InverseMeasure::Plancherel)?[0];
    println!("inverse {back:.10}, plane wave {:.10}", psi_hyper(&HyperWave::new(2, 0.8, idx)?, &chart)?);
    Ok(())
}
