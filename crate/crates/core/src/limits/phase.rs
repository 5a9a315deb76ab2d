//! The phase of an ambient plane wave viewed as a function on the absolute.

use crate::error::{check_len, Error, Result};
use crate::geometry::{minkowski_dot, AbsoluteCovector, AmbientPoint, SpacetimeConfig};
use crate::quadrature::SphereGrid;

/// `Φ_x(ξ) = ln|x·ξ| / s` with `s = |x₀| + |x|`.
pub fn phase(cfg: &SpacetimeConfig, x: &AmbientPoint, xi: &AbsoluteCovector) -> Result<f64> {
    let dot = checked_dot(cfg, x, xi)?;
    Ok(dot.abs().ln() / x.size())
}

fn checked_dot(cfg: &SpacetimeConfig, x: &AmbientPoint, xi: &AbsoluteCovector) -> Result<f64> {
    check_len(cfg.ambient_dim(), x.dim())?;
    check_len(cfg.ambient_dim(), xi.components().len())?;
    let dot = minkowski_dot(x.components(), xi.components())?;
    if dot == 0.0 {
        return Err(Error::SingularSurface);
    }
    Ok(dot)
}

/// Gradient of `Φ_x` along the absolute,
/// `(x_k − x₀ξ_k/ξ₀) / (s·(x·ξ))` for `k = 1 … n`.
pub fn phase_gradient(cfg: &SpacetimeConfig, x: &AmbientPoint, xi: &AbsoluteCovector) -> Result<Vec<f64>> {
    let dot = checked_dot(cfg, x, xi)?;
    let xs = x.components();
    let q = xi.components();
    let scale = 1.0 / (x.size() * dot);
    Ok((1..xs.len()).map(|k| (xs[k] - xs[0] * q[k] / q[0]) * scale).collect())
}

/// Smallest `|∇Φ_x(ξ)|` over the directions of a sphere rule, skipping nodes
/// within `1e−12·s` of the singular surface. Returns the minimum and the
/// number of nodes used.
pub fn min_gradient_norm(cfg: &SpacetimeConfig, x: &AmbientPoint, grid: &SphereGrid) -> Result<(f64, usize)> {
    check_len(cfg.n(), grid.n)?;
    let s = x.size();
    let mut best = f64::INFINITY;
    let mut used = 0;
    for node in &grid.nodes {
        let xi = crate::geometry::absolute_covector(&node.u)?;
        let dot = minkowski_dot(x.components(), xi.components())?;
        if dot.abs() <= 1e-12 * s {
            continue;
        }
        let g = phase_gradient(cfg, x, &xi)?;
        best = best.min(g.iter().map(|v| v * v).sum::<f64>().sqrt());
        used += 1;
    }
    Ok((best, used))
}

/// A zero of the gradient would need `x_k = x₀ξ_k/ξ₀` for all `k`, i.e.
/// `x = (x₀/ξ₀)·ξ`. Returns `x̃·x̃` for that candidate, which is the value of
/// `R²` the fixed point would force.
pub fn fixed_point_radius_sq(x: &AmbientPoint, xi: &AbsoluteCovector) -> Result<f64> {
    let q = xi.components();
    check_len(q.len(), x.dim())?;
    let t = x.components()[0] / q[0];
    let candidate: Vec<f64> = q.iter().map(|v| t * v).collect();
    minkowski_dot(&candidate, &candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{absolute_covector, from_hyper, HyperChart};
    use proptest::prelude::*;

    #[test]
    fn gradient_at_the_origin() {
        for n in 2..6 {
            let r = 1.7;
            let cfg = SpacetimeConfig::new(n, r).unwrap();
            let mut u = vec![0.0; n];
            u[n - 1] = 1.0;
            let xi = absolute_covector(&u).unwrap();
            let g = phase_gradient(&cfg, &cfg.origin(), &xi).unwrap();
            for v in &g[..n - 1] {
                assert_eq!(*v, 0.0);
            }
            assert!((g[n - 1] - 1.0 / r).abs() < 1e-15);
        }
    }

    #[test]
    fn gradient_matches_a_tangent_derivative() {
        // Move ξ along the section ξ₀ = 1 by a rotation of u and difference Φ.
        let cfg = SpacetimeConfig::new(3, 1.2).unwrap();
        let x = from_hyper(&cfg, &HyperChart::new(0.6, vec![1.1], 0.4)).unwrap();
        let u = |t: f64| vec![t.sin() * 0.3f64.cos(), t.sin() * 0.3f64.sin(), t.cos()];
        let t0 = 0.9;
        let xi = absolute_covector(&u(t0)).unwrap();
        let g = phase_gradient(&cfg, &x, &xi).unwrap();
        let h = 1e-5;
        let f = |t: f64| phase(&cfg, &x, &absolute_covector(&u(t)).unwrap()).unwrap();
        let fd = (f(t0 + h) - f(t0 - h)) / (2.0 * h);
        let du = [t0.cos() * 0.3f64.cos(), t0.cos() * 0.3f64.sin(), -t0.sin()];
        let along: f64 = g.iter().zip(&du).map(|(a, b)| a * b).sum();
        assert!((fd - along).abs() < 1e-8, "{fd} vs {along}");
    }

    #[test]
    fn singular_surface_is_rejected() {
        let cfg = SpacetimeConfig::new(2, 1.0).unwrap();
        let x = AmbientPoint::new(vec![1.0, 1.0, 1.0]);
        let xi = absolute_covector(&[1.0, 0.0]).unwrap();
        assert_eq!(phase_gradient(&cfg, &x, &xi), Err(Error::SingularSurface));
    }

    #[test]
    fn fixed_points_would_be_null() {
        let cfg = SpacetimeConfig::new(4, 2.0).unwrap();
        let x = from_hyper(&cfg, &HyperChart::new(-0.8, vec![0.5, 2.0], 3.0)).unwrap();
        let xi = absolute_covector(&[0.0, 0.6, 0.0, 0.8]).unwrap();
        assert_eq!(fixed_point_radius_sq(&x, &xi).unwrap(), 0.0);
        assert!((x.dot(&x) - 4.0).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn gradient_never_vanishes(n in 2usize..5, beta in -3.0f64..3.0, a in 0.1f64..3.0, phi in 0.0f64..6.28) {
            let cfg = SpacetimeConfig::new(n, 1.3).unwrap();
            let polar = vec![a; n - 2];
            let x = from_hyper(&cfg, &HyperChart::new(beta, polar, phi)).unwrap();
            let grid = SphereGrid::product(n, 8, 12);
            let (m, used) = min_gradient_norm(&cfg, &x, &grid).unwrap();
            prop_assert!(used > 0);
            prop_assert!(m > 0.0);
        }
    }
}
