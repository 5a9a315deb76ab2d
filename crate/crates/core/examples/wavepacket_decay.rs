//! A wavepacket at n = 4 synthesized along β-rays, with the decay fit per
//! direction.

use ds_harmonic::geometry::{from_hyper, sphere_angles, HyperChart, SpacetimeConfig};
use ds_harmonic::limits::decay::linspace;
use ds_harmonic::limits::{decay_fit, DecayOptions};
use ds_harmonic::planewave::PrincipalMass;
use ds_harmonic::transform::{AbsoluteProfile, QuadratureGrid, WavepacketSpec};

fn main() -> ds_harmonic::Result<()> {
    let cfg = SpacetimeConfig::new(4, 1.0)?;
    let spec = WavepacketSpec::new(
        AbsoluteProfile::new(vec![0.0, 0.0, 0.0, 1.0], 0.5, 1.0)?,
        PrincipalMass::from_rho(&cfg, 2.0)?,
        QuadratureGrid::default(),
    )?;
    for dir in [[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, -1.0]] {
        let (polar, phi) = sphere_angles(&dir);
        let path = |b: f64| from_hyper(&cfg, &HyperChart::new(b, polar.clone(), phi));
        let fit = decay_fit(&spec, path, &linspace(1.0, 10.0, 120), &DecayOptions::default())?;
        println!("direction {dir:?}: {:?}, overall exponent {:?}", fit.status, fit.overall_exponent());
        for w in &fit.windows {
            println!("  s ∈ [{:.3e}, {:.3e}]: exponent {:.4}", w.s_min, w.s_max, w.exponent);
        }
    }
    Ok(())
}
