//! Brute-force evaluation of `|d(ρ)|` from the Bessel-product integral
//! `I = ∫₀^∞ y^{iρ} J_{(n+2j−2)/2}(y) J_{∓½}(y) dy`, with `J_{−½}` for even
//! `k` and `J_{+½}` for odd `k`.
//!
//! The integral converges only after analytic continuation in the power of
//! `y`. It is regulated by `e^{−εy}`; the terms of the regulated integral
//! that are not analytic in `ε` come from the non-oscillatory part
//! `Σ c_m y^{iρ−1−m}` of the integrand at infinity and equal
//! `c_m Γ(iρ−m) ε^{m−iρ}`. Once they are subtracted, what remains is a power
//! series in `ε` whose constant term is the continued value, and polynomial
//! extrapolation to `ε = 0` recovers it.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{composite_gauss_legendre, SphereGrid};
use crate::specfun::{bessel_j, gamma, ln_gamma};

/// Non-oscillatory terms subtracted from the regulated integral.
const SUBTRACTED: usize = 6;
/// The quadrature stops where `e^{−εy}` falls below `e^{−CUTOFF}`.
const CUTOFF: f64 = 38.0;

/// Regulators used when none are given: `10⁻¹ … 10⁻⁴`.
pub const DEFAULT_EPS: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];

/// Hankel coefficients `a_m(η) = Π_{q=1}^{m} (4η² − (2q−1)²) / (m! 8^m)`.
fn hankel_coefficients(eta: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let mut a = 1.0;
    for m in 0..count {
        out.push(a);
        let q = (2 * m + 1) as f64;
        a *= (4.0 * eta * eta - q * q) / (8.0 * (m + 1) as f64);
    }
    out
}

/// Coefficients `c_m` of `y^{iρ−1−m}` in the non-oscillatory part of the
/// integrand at large `y`.
fn smooth_coefficients(eta: f64, odd: bool) -> Vec<f64> {
    let theta = 0.5 * PI * eta + 0.25 * PI;
    let (s, c) = theta.sin_cos();
    hankel_coefficients(eta, SUBTRACTED)
        .into_iter()
        .enumerate()
        .map(|(m, a)| {
            let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let trig = match (m % 2 == 0, odd) {
                (true, false) => c,
                (false, false) => s,
                (true, true) => s,
                (false, true) => -c,
            };
            sign * a * trig / PI
        })
        .collect()
}

/// Quadrature nodes on `(0, Y]`: dyadic panels towards the origin, where
/// the integrand may behave like `y^{−½}`, then unit panels.
fn nodes(y_max: f64) -> Vec<(f64, f64)> {
    let mut edges: Vec<f64> = (0..=110).rev().map(|k| 0.5f64.powi(k)).collect();
    let panels = (y_max - 1.0).ceil() as usize;
    edges.extend((1..=panels).map(|k| 1.0 + k as f64));
    composite_gauss_legendre(&edges, 16)
}

/// Neville extrapolation of `(ε, v)` pairs to `ε = 0`.
fn extrapolate(points: &[(f64, Complex64)]) -> Complex64 {
    let mut p: Vec<Complex64> = points.iter().map(|q| q.1).collect();
    let x: Vec<f64> = points.iter().map(|q| q.0).collect();
    let m = p.len();
    for level in 1..m {
        for i in 0..m - level {
            let (xi, xj) = (x[i], x[i + level]);
            p[i] = (p[i + 1] * xi - p[i] * xj) / (xi - xj);
        }
    }
    p[0]
}

/// The regulated integrals with the non-analytic terms removed, and their
/// extrapolation.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductIntegral {
    pub value: Complex64,
    pub per_eps: Vec<(f64, Complex64)>,
    /// Relative change of the extrapolation when the largest `ε` is dropped.
    pub change: f64,
}

fn check_eps(eps: &[f64]) -> Result<Vec<f64>> {
    let mut e = eps.to_vec();
    e.sort_by(|a, b| b.total_cmp(a));
    e.dedup();
    if e.len() < 2 || e.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidArgument(format!("need two or more distinct positive regulators, got {eps:?}")));
    }
    Ok(e)
}

/// `∫₀^∞ y^{iρ} J_η(y) J_{∓½}(y) dy` by analytic continuation, with
/// `η = (n+2j−2)/2` and the lower sign for even `k`.
pub fn bessel_product_integral(n: usize, j: u32, k: u32, rho: f64, eps: &[f64]) -> Result<ProductIntegral> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} < 2")));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidArgument(format!("ρ = {rho} must be positive")));
    }
    let eps = check_eps(eps)?;
    let eta = (n as f64 + 2.0 * j as f64 - 2.0) / 2.0;
    let odd = k % 2 == 1;
    let nu = if odd { 0.5 } else { -0.5 };
    let y_max = CUTOFF / eps[eps.len() - 1];
    let mut sums = vec![Complex64::new(0.0, 0.0); eps.len()];
    for (y, w) in nodes(y_max) {
        let f = Complex64::new(0.0, rho * y.ln()).exp() * (w * bessel_j(eta, y) * bessel_j(nu, y));
        for (acc, e) in sums.iter_mut().zip(&eps) {
            let damp = (-e * y).exp();
            if damp > 0.0 {
                *acc += f * damp;
            }
        }
    }
    let c = smooth_coefficients(eta, odd);
    let mut per_eps = Vec::with_capacity(eps.len());
    for (acc, &e) in sums.iter().zip(&eps) {
        let mut v = *acc;
        for (m, cm) in c.iter().enumerate() {
            if *cm == 0.0 {
                continue;
            }
            let z = Complex64::new(-(m as f64), rho);
            let power = (Complex64::new(m as f64, -rho) * e.ln()).exp();
            v -= gamma(z)? * power * *cm;
        }
        per_eps.push((e, v));
    }
    let value = extrapolate(&per_eps);
    let coarse = extrapolate(&per_eps[1..]);
    let change = (value - coarse).norm() / value.norm();
    Ok(ProductIntegral { value, per_eps, change })
}

/// Result of [`appendix_d_oracle`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub d_abs: f64,
    pub integral: ProductIntegral,
}

/// `|d(ρ)| = |Γ((n−1)/2 + iρ)| e^{πρ/2} / ((2π)^{(n+1)/2} |I|)`.
///
/// Fails with an accuracy error when the extrapolation moves by more than
/// `1e−4` (relative) on dropping the largest regulator.
pub fn appendix_d_oracle(n: usize, j: u32, k: u32, rho: f64, eps: &[f64]) -> Result<OracleReport> {
    let integral = bessel_product_integral(n, j, k, rho, eps)?;
    if !(integral.change <= 1e-4) {
        return Err(Error::Accuracy(format!("ε-extrapolation moved by {:e}", integral.change)));
    }
    let h = (n as f64 - 1.0) / 2.0;
    let lg = ln_gamma(Complex64::new(h, rho))?.re;
    let d_abs = (lg + 0.5 * PI * rho).exp() / ((2.0 * PI).powf((n as f64 + 1.0) / 2.0) * integral.value.norm());
    Ok(OracleReport { d_abs, integral })
}

/// Zonal harmonic of degree `j ≤ 2` about the last axis, and its value at
/// the pole.
fn zonal(n: usize, j: u32, t: f64) -> Result<f64> {
    match j {
        0 => Ok(1.0),
        1 => Ok(t),
        2 => Ok(t * t - 1.0 / n as f64),
        _ => Err(Error::Unsupported(format!("zonal harmonic of degree {j}"))),
    }
}

/// `(∫_{S^{n−1}} e^{−irχ_n} Y_j(χ) dΩ, (2π)^{n/2} e^{−ijπ/2} r^{−(n−2)/2} J_{(n+2j−2)/2}(r) Y_j(e_n))`
/// for the zonal harmonic `Y_j`; the first by quadrature, the second in closed form.
pub fn fourier_identity(n: usize, j: u32, r: f64, grid: &SphereGrid) -> Result<(Complex64, Complex64)> {
    if grid.n != n || !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("grid of dimension {} for n = {n}, r = {r}", grid.n)));
    }
    let mut quad = Complex64::new(0.0, 0.0);
    for node in &grid.nodes {
        let t = node.u[n - 1];
        quad += Complex64::new(0.0, -r * t).exp() * (node.weight * zonal(n, j, t)?);
    }
    let nf = n as f64;
    let phase = Complex64::new(0.0, -0.5 * PI * j as f64).exp();
    let formula = phase
        * ((2.0 * PI).powf(0.5 * nf) * r.powf(-(nf - 2.0) / 2.0) * bessel_j((nf + 2.0 * j as f64 - 2.0) / 2.0, r))
        * zonal(n, j, 1.0)?;
    Ok((quad, formula))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{d_abs, d_abs_derived, rgamma};

    /// `∫₀^∞ y^{−λ} J_η J_ν dy` in closed form, valid by continuation.
    fn weber_schafheitlin(eta: f64, nu: f64, lambda: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let g = |z: Complex64| gamma(z).unwrap();
        g(lambda) * g((one * (eta + nu + 1.0) - lambda) / 2.0)
            * rgamma((lambda + (nu - eta + 1.0)) / 2.0)
            * rgamma((lambda + (eta + nu + 1.0)) / 2.0)
            * rgamma((lambda + (eta - nu + 1.0)) / 2.0)
            / (lambda * 2f64.ln()).exp()
    }

    #[test]
    fn hankel_coefficients_terminate_for_half_integers() {
        let a = hankel_coefficients(0.5, 4);
        assert_eq!(a[0], 1.0);
        assert!(a[1..].iter().all(|v| *v == 0.0));
        let b = hankel_coefficients(0.0, 3);
        assert!((b[1] + 1.0 / 8.0).abs() < 1e-16 && (b[2] - 9.0 / 128.0).abs() < 1e-16);
    }

    #[test]
    fn neville_is_exact_on_cubics() {
        let f = |e: f64| Complex64::new(2.0 - e + 3.0 * e * e, e.powi(3));
        let pts: Vec<(f64, Complex64)> = [0.4, 0.2, 0.1, 0.05].iter().map(|&e| (e, f(e))).collect();
        assert!((extrapolate(&pts) - Complex64::new(2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn parity_selects_the_half_order() {
        for (k, nu) in [(0u32, -0.5), (1, 0.5)] {
            for (n, j, rho) in [(2usize, 0u32, 0.7), (3, 1, 1.4)] {
                let eta = (n as f64 + 2.0 * j as f64 - 2.0) / 2.0;
                let got = bessel_product_integral(n, j, k, rho, &DEFAULT_EPS).unwrap().value;
                let want = weber_schafheitlin(eta, nu, Complex64::new(0.0, -rho));
                assert!((got - want).norm() < 1e-9 * want.norm(), "n {n} j {j} k {k}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn oracle_agrees_with_the_derived_closed_form() {
        for n in [2usize, 3, 4] {
            for j in 0..2u32 {
                for k in 0..2u32 {
                    for rho in [0.5, 1.0, 2.0] {
                        let got = appendix_d_oracle(n, j, k, rho, &DEFAULT_EPS).unwrap().d_abs;
                        let want = d_abs_derived(n, j as i64, k as i64, rho).unwrap();
                        assert!((got - want).abs() <= 1e-6 * want, "({n},{j},{k},{rho}) {got} vs {want}");
                        if n % 2 == 1 {
                            let printed = d_abs(n, j as i64, k as i64, rho).unwrap();
                            assert!((got - printed).abs() <= 1e-6 * printed);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fourier_identity_on_zonal_harmonics() {
        for n in [2usize, 3, 4] {
            let grid = SphereGrid::product(n, 40, 48);
            for j in 0..3 {
                for r in [0.7, 2.5, 6.0] {
                    let (q, f) = fourier_identity(n, j, r, &grid).unwrap();
                    assert!((q - f).norm() < 1e-10, "n {n} j {j} r {r}: {q} vs {f}");
                }
            }
        }
    }

    #[test]
    fn bad_regulators_are_rejected() {
        assert!(bessel_product_integral(3, 0, 0, 1.0, &[0.1]).is_err());
        assert!(bessel_product_integral(3, 0, 0, 1.0, &[0.1, -0.1]).is_err());
        assert!(bessel_product_integral(3, 0, 0, 0.0, &[0.1, 0.05]).is_err());
    }
}
