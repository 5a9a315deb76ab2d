//! Ambient plane waves (x·ξ/μR)^σ on a β grid, including the drop of points
//! on the singular surface x·ξ = 0.

use ds_harmonic::geometry::{absolute_covector, from_hyper, HyperChart, SpacetimeConfig};
use ds_harmonic::planewave::{principal_mass, psi_ambient, AmbientWave};
use ds_harmonic::Error;

fn main() -> ds_harmonic::Result<()> {
    let cfg = SpacetimeConfig::new(2, 1.0)?;
    let mass = principal_mass(&cfg, 1.5)?;
    println!("μ = {}, μ′ = {:.6}, σ = {}", mass.mu(), mass.mu_prime(), mass.sigma());
    let wave = AmbientWave::new(absolute_covector(&[1.0, 0.0])?, mass)?;
    for k in 0..9 {
        let beta = -1.0 + 0.25 * k as f64;
        let x = from_hyper(&cfg, &HyperChart::new(beta, vec![], 0.0))?;
        match psi_ambient(&wave, &x) {
            Ok(v) => println!("β = {beta:>5}: ψ = {v:.6}"),
            Err(Error::SingularSurface) => println!("β = {beta:>5}: on x·ξ = 0, skipped"),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
