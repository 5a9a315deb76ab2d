//! Structure constants of so(1, n) and their contraction to the Poincaré
//! algebra as R grows.

use ds_harmonic::fd::loglog_slope;
use ds_harmonic::geometry::SpacetimeConfig;
use ds_harmonic::lorentz::{ad_right, generator, matrix_casimir, poincare_residual, structure_residual, GeneratorLabel};

fn main() -> ds_harmonic::Result<()> {
    for n in 2..=5 {
        let cfg = SpacetimeConfig::new(n, 1.0)?;
        let a = generator(&cfg, GeneratorLabel::IwasawaA)?;
        let n1 = generator(&cfg, GeneratorLabel::IwasawaN(1))?;
        let (casimir, off) = matrix_casimir(&cfg);
        println!(
            "n = {n}: structure residual {:e}, [a, n_1] = n_1: {}, Casimir {casimir} (off-scalar {off:e})",
            structure_residual(&cfg),
            ad_right(&a, &n1)? == n1
        );
    }

    let radii = [10.0, 100.0, 1000.0, 10000.0];
    for n in 2..=4 {
        let res: Vec<f64> = radii
            .iter()
            .map(|&r| poincare_residual(&SpacetimeConfig::new(n, r)?, r))
            .collect::<ds_harmonic::Result<_>>()?;
        println!("n = {n}: residuals {res:?}, slope {:.4}", loglog_slope(&radii, &res));
    }
    Ok(())
}
