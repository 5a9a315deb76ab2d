//! Round trips through the horospheric and hyperbolic charts.

use ds_harmonic::geometry::{from_horo, from_hyper, to_horo, to_hyper, HoroChart, HyperChart, SpacetimeConfig};

fn main() -> ds_harmonic::Result<()> {
    let cfg = SpacetimeConfig::new(4, 2.0)?;

    let horo = HoroChart::new(0.7, vec![0.3, -1.1, 0.4], 1);
    let x = from_horo(&cfg, &horo)?;
    println!("x = {:?}", x.components());
    println!("x·x − R² = {:e}", x.hyperboloid_residual(&cfg));
    let back = to_horo(&cfg, &x)?;
    println!("horo back: τ = {:.12}, y = {:?}, ε = {}", back.tau, back.y, back.eps);

    let hyper = to_hyper(&cfg, &x)?;
    println!("hyper: β = {:.6}, polar = {:?}, φ = {:.6}", hyper.beta, hyper.polar, hyper.phi);
    let again = from_hyper(&cfg, &HyperChart::new(hyper.beta, hyper.polar.clone(), hyper.phi))?;
    let gap = x.components().iter().zip(again.components()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("hyper round-trip gap = {gap:e}");
    Ok(())
}
