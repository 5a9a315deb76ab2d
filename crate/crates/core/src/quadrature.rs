//! Gauss–Legendre rules and product grids on spheres.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use crate::geometry::{sphere_angles, sphere_density, sphere_point};

/// Nodes and weights of the `k`-point Gauss–Legendre rule on `[a, b]`.
pub fn gauss_legendre(k: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let k = NonZeroUsize::new(k.max(1)).unwrap();
    let rule = GaussLegendre::new(k);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    let mut pairs: Vec<(f64, f64)> = rule
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (mid + half * x, half * w))
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    pairs
}

/// Composite rule: `k` Gauss points on each panel between consecutive edges.
pub fn composite_gauss_legendre(edges: &[f64], k: usize) -> Vec<(f64, f64)> {
    let base = gauss_legendre(k, -1.0, 1.0);
    let mut out = Vec::with_capacity(edges.len().saturating_sub(1) * k);
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        out.extend(base.iter().map(|&(x, wt)| (mid + half * x, half * wt)));
    }
    out
}

/// Evenly spaced panel edges.
pub fn uniform_edges(a: f64, b: f64, panels: usize) -> Vec<f64> {
    let panels = panels.max(1);
    (0..=panels).map(|i| a + (b - a) * i as f64 / panels as f64).collect()
}

/// One node of a sphere rule.
#[derive(Debug, Clone)]
pub struct SphereNode {
    pub polar: Vec<f64>,
    pub phi: f64,
    pub u: Vec<f64>,
    /// Weight with respect to `dφ₁ ⋯ dφ`.
    pub coord_weight: f64,
    /// Weight with respect to the round measure `dΩ`.
    pub weight: f64,
}

/// A quadrature rule on `S^{n−1} ⊂ ℝⁿ`.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    pub n: usize,
    pub nodes: Vec<SphereNode>,
}

impl SphereGrid {
    /// Gauss–Legendre in every polar angle on `[0, π]`, trapezoid in the azimuth.
    ///
    /// The trapezoid rule integrates `e^{ikφ}` exactly for `|k| < n_phi`.
    pub fn product(n: usize, n_polar: usize, n_phi: usize) -> Self {
        assert!(n >= 2, "sphere dimension needs n ≥ 2");
        let polar_rule = gauss_legendre(n_polar, 0.0, std::f64::consts::PI);
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let mut combos: Vec<(Vec<f64>, f64)> = vec![(Vec::new(), 1.0)];
        for _ in 0..n - 2 {
            let mut next = Vec::with_capacity(combos.len() * polar_rule.len());
            for (angles, w) in &combos {
                for &(a, wa) in &polar_rule {
                    let mut v = angles.clone();
                    v.push(a);
                    next.push((v, w * wa));
                }
            }
            combos = next;
        }
        let mut nodes = Vec::with_capacity(combos.len() * n_phi);
        for (polar, w) in combos {
            let dens = sphere_density(&polar);
            for j in 0..n_phi {
                let phi = (j as f64 + 0.5) * dphi;
                let coord_weight = w * dphi;
                nodes.push(SphereNode {
                    u: sphere_point(&polar, phi),
                    polar: polar.clone(),
                    phi,
                    coord_weight,
                    weight: coord_weight * dens,
                });
            }
        }
        Self { n, nodes }
    }

    /// Rule concentrated on the geodesic cap of radius `delta` around `center`.
    ///
    /// Points are `cos θ·c + sin θ·ω` with Gauss–Legendre in `θ ∈ [0, δ]` and a
    /// product rule for `ω` on the unit sphere orthogonal to `c`.
    pub fn cap(center: &[f64], delta: f64, n_theta: usize, n_polar: usize, n_phi: usize) -> Self {
        let n = center.len();
        assert!(n >= 2, "sphere dimension needs n ≥ 2");
        let basis = orthonormal_complement(center);
        let sub: Vec<(Vec<f64>, f64)> = if n == 2 {
            vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)]
        } else {
            SphereGrid::product(n - 1, n_polar, n_phi)
                .nodes
                .into_iter()
                .map(|nd| (nd.u, nd.weight))
                .collect()
        };
        let mut nodes = Vec::with_capacity(n_theta * sub.len());
        for (theta, wt) in gauss_legendre(n_theta, 0.0, delta) {
            let (s, c) = theta.sin_cos();
            let radial = wt * s.powi(n as i32 - 2);
            for (omega, wo) in &sub {
                let mut u: Vec<f64> = center.iter().map(|v| c * v).collect();
                for (b, o) in basis.iter().zip(omega) {
                    for (ui, bi) in u.iter_mut().zip(b) {
                        *ui += s * o * bi;
                    }
                }
                let (polar, phi) = sphere_angles(&u);
                let weight = radial * wo;
                let dens = sphere_density(&polar);
                nodes.push(SphereNode {
                    coord_weight: if dens > 0.0 { weight / dens } else { 0.0 },
                    polar,
                    phi,
                    u,
                    weight,
                });
            }
        }
        Self { n, nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫ f dΩ` with a fixed-order sum.
    pub fn integrate<F: Fn(&SphereNode) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().map(|nd| nd.weight * f(nd)).sum()
    }
}

/// Orthonormal basis of the hyperplane orthogonal to a unit vector.
pub fn orthonormal_complement(c: &[f64]) -> Vec<Vec<f64>> {
    let n = c.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    let mut candidates: Vec<usize> = (0..n).collect();
    candidates.sort_by(|&a, &b| c[a].abs().total_cmp(&c[b].abs()));
    for &k in &candidates {
        if basis.len() == n - 1 {
            break;
        }
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        for _ in 0..2 {
            let proj: f64 = v.iter().zip(c).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(c).for_each(|(a, b)| *a -= proj * b);
            for e in &basis {
                let p: f64 = v.iter().zip(e).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(e).for_each(|(a, b)| *a -= p * b);
            }
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sphere_volume;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let rule = gauss_legendre(6, -0.5, 2.0);
        let s: f64 = rule.iter().map(|(x, w)| w * x.powi(11)).sum();
        assert_relative_eq!(s, (2f64.powi(12) - 0.5f64.powi(12)) / 12.0, max_relative = 1e-13);
        assert!(rule.windows(2).all(|p| p[0].0 < p[1].0));
    }

    #[test]
    fn sphere_areas() {
        for n in 2..6 {
            let g = SphereGrid::product(n, 12, 16);
            assert_relative_eq!(g.integrate(|_| 1.0), sphere_volume(n - 1), max_relative = 1e-13);
            assert!(g.nodes.iter().all(|nd| nd.weight > 0.0));
        }
    }

    #[test]
    fn cap_rule_integrates_polynomials() {
        let c = [0.0, 0.6, 0.0, 0.8];
        let g = SphereGrid::cap(&c, std::f64::consts::PI, 24, 16, 24);
        assert_relative_eq!(g.integrate(|_| 1.0), sphere_volume(3), max_relative = 1e-12);
        // ∫ u_k² dΩ = Vol/n on the full sphere.
        let second = g.integrate(|nd| nd.u[3] * nd.u[3]);
        assert_relative_eq!(second, sphere_volume(3) / 4.0, max_relative = 1e-12);
        let g2 = SphereGrid::cap(&[1.0, 0.0], std::f64::consts::PI, 20, 0, 0);
        assert_relative_eq!(g2.integrate(|nd| nd.u[1] * nd.u[1]), std::f64::consts::PI, max_relative = 1e-12);
    }

    #[test]
    fn complement_is_orthonormal() {
        let c = [0.2, -0.4, 0.4, 0.8];
        let b = orthonormal_complement(&c);
        assert_eq!(b.len(), 3);
        for (i, v) in b.iter().enumerate() {
            let vc: f64 = v.iter().zip(&c).map(|(a, b)| a * b).sum();
            assert!(vc.abs() < 1e-14);
            for w in &b[i + 1..] {
                let d: f64 = v.iter().zip(w).map(|(a, b)| a * b).sum();
                assert!(d.abs() < 1e-14);
            }
        }
    }
}
