//! Hyperbolic plane waves: values, parity in β and the residuals of the
//! radial equation and the d'Alembertian.

use ds_harmonic::geometry::HyperChart;
use ds_harmonic::planewave::{dalembert_residual, parity, psi_hyper, radial_ode_residual, HyperWave, OdePotential};
use ds_harmonic::specfun::HarmonicIndex;

fn main() -> ds_harmonic::Result<()> {
    let betas: Vec<f64> = (0..25).map(|k| -3.0 + 0.25 * k as f64).collect();
    for alpha in [1, 2] {
        let wave = HyperWave::new(alpha, 1.3, HarmonicIndex::new(3, 1, vec![2])?)?;
        println!("α = {alpha}: parity {:?}", parity(&wave));
        for beta in [-1.0, 0.0, 1.0, 4.0] {
            println!("  ψ(β = {beta:>4}) = {:.6}", psi_hyper(&wave, &HyperChart::new(beta, vec![0.8], 0.3))?);
        }
        let (r2, r1) = (
            radial_ode_residual(&wave, &betas, 2e-3, OdePotential::TopDegree)?,
            radial_ode_residual(&wave, &betas, 1e-3, OdePotential::TopDegree)?,
        );
        println!("  radial residual {r1:.3e}, order {:.3}", (r2 / r1).log2());
        let chart = HyperChart::new(0.6, vec![0.9], 0.8);
        println!("  □ residual {:.3e}", dalembert_residual(&wave, &chart, 1e-3)?);
    }
    Ok(())
}
