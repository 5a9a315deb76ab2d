//! Log-Gamma, ₂F₁ on both sides of the connection switch, hyperspherical
//! harmonics and the two forms of |d(ρ)|.

use ds_harmonic::specfun::{d_abs, d_abs_derived, gauss_2f1, gauss_2f1_complement, hypersph_y, ln_gamma, HarmonicIndex};
use ds_harmonic::Complex64;

fn main() -> ds_harmonic::Result<()> {
    let z = Complex64::new(0.5, 3.0);
    println!("ln Γ({z}) = {}", ln_gamma(z)?);

    let (a, b, c) = (Complex64::new(1.2, 0.5), Complex64::new(-0.3, 0.5), Complex64::new(1.5, 0.0));
    for v in [0.2, 0.5, 0.9, 0.999] {
        println!("₂F₁(v = {v}) = {}", gauss_2f1(a, b, c, v)?);
    }
    println!("₂F₁ from 1 − v at v = 0.999: {}", gauss_2f1_complement(a, b, c, 1e-3)?);

    let idx = HarmonicIndex::new(4, -1, vec![2, 3])?;
    println!("Y{:?} at (0.7, 1.9; 0.4) = {}", idx, hypersph_y(&idx, &[0.7, 1.9], 0.4)?);
    println!("{} harmonics of degree ≤ 3 on S³", HarmonicIndex::enumerate(4, 3).len());

    for n in 2..=5 {
        println!("n = {n}: |d(1)| closed form {:.10e}, tanh form {:.10e}", d_abs(n, 0, 0, 1.0)?, d_abs_derived(n, 0, 0, 1.0)?);
    }
    Ok(())
}
