//! |d(ρ)| from the regularized Bessel-product integral next to the two
//! closed forms.

use ds_harmonic::limits::appendix::DEFAULT_EPS;
use ds_harmonic::limits::appendix_d_oracle;
use ds_harmonic::specfun::{d_abs, d_abs_derived};

fn main() -> ds_harmonic::Result<()> {
    println!(" n j k   ρ      oracle           closed form      tanh form");
    for n in 2..=4 {
        for (j, k) in [(0u32, 0u32), (1, 1)] {
            let rho = 1.0;
            let report = appendix_d_oracle(n, j, k, rho, &DEFAULT_EPS)?;
            println!(
                " {n} {j} {k} {rho:4}  {:.10e}  {:.10e}  {:.10e}",
                report.d_abs,
                d_abs(n, j as i64, k as i64, rho)?,
                d_abs_derived(n, j as i64, k as i64, rho)?
            );
        }
    }
    Ok(())
}
