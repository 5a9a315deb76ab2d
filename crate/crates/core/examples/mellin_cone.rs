//! The Mellin pair on the radial variable of the cone and the forward cone
//! transform of a profile that is even under (t, x) → (−t, −x).

use ds_harmonic::specfun::gamma;
use ds_harmonic::transform::{cone_fourier_forward, mellin_forward, ConeOptions, MellinWindow};
use ds_harmonic::Complex64;

fn main() -> ds_harmonic::Result<()> {
    let n = 3;
    let win = MellinWindow { u_min: -40.0, u_max: 4.5, u_nodes: 6001, ..Default::default() };
    for rho in [0.5, 2.0] {
        // At n = 3, e^{−s} has the transform Γ(1 − iρ).
        let got = mellin_forward(|s| Complex64::new((-s).exp(), 0.0), n, rho, &win)?;
        println!("ρ = {rho}: {:.12} vs Γ(1 − iρ) = {:.12}", got.value, gamma(Complex64::new(1.0, -rho))?);
    }

    let radial = |s: f64| (-0.5 * s.ln().powi(2)).exp() / s.sqrt();
    let g = |t: f64, x: &[f64]| Complex64::new(0.7 * t * x[0] + x[1], 0.3 * x[0]).exp();
    let even = |t: i8, x: &[f64], s: f64| (g(f64::from(t), x) + g(-f64::from(t), &[-x[0], -x[1]])) * radial(s);
    let opts = ConeOptions { mellin: MellinWindow { u_min: -7.0, u_max: 7.0, u_nodes: 401, ..Default::default() }, ..Default::default() };
    let chi = [0.9f64.cos(), 0.9f64.sin()];
    let a = cone_fourier_forward(even, 2, 1.3, 1, &chi, &opts)?;
    let b = cone_fourier_forward(even, 2, 1.3, -1, &[-chi[0], -chi[1]], &opts)?;
    println!("ψ(+1, χ) = {:.10}\nψ(−1, −χ) = {:.10}", a.value, b.value);
    Ok(())
}
