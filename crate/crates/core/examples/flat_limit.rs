//! Ambient plane waves against Minkowski plane waves as R grows, the
//! off-shell damping and the contracted Casimir.

use ds_harmonic::limits::{casimir_action_limit, flat_limit_deviation, off_shell_damping, MinkowskiCovector, MinkowskiPoint};

fn main() -> ds_harmonic::Result<()> {
    let radii = [10.0, 100.0, 1000.0, 10000.0];
    let mu = 1.0;
    let xi = MinkowskiCovector::on_shell(mu, &[0.4, -0.3])?;
    let y = MinkowskiPoint::new(0.8, vec![0.2, -0.5]);
    let scan = flat_limit_deviation(mu, &xi, &y, &radii)?;
    for (r, d) in &scan.rows {
        println!("R = {r:>7}: |Ψ − e^(iy·ξ̄)| = {d:.3e}");
    }
    println!("slope {:?}", scan.slope);

    for row in off_shell_damping(mu, &[0.5], &MinkowskiPoint::new(0.3, vec![0.2]), &radii[..3], (0.1, 0.2))? {
        println!("R = {:>6}: pointwise {:.4}, window average {:.3e}", row.r, row.pointwise, row.averaged);
    }

    let cas = casimir_action_limit(mu, &MinkowskiCovector::on_shell(mu, &[0.6, 0.3])?, &MinkowskiPoint::new(0.4, vec![-0.5, 0.3]), &radii, 0.2)?;
    println!("Casimir eigenvalue {:.6}, residual slope {:.4}, drift {:?}", cas.eigenvalue, cas.slope, cas.stability);
    Ok(())
}
