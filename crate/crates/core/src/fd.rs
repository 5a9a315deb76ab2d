//! Central finite differences and Richardson extrapolation.

use std::ops::{Add, Mul, Sub};

/// Values that finite-difference stencils can combine.
pub trait Field: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl<T> Field for T where T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

/// `(f(x+h) − f(x−h)) / 2h`.
pub fn d1<T: Field, F: Fn(f64) -> T>(f: F, x: f64, h: f64) -> T {
    (f(x + h) - f(x - h)) * (0.5 / h)
}

/// `(f(x+h) − 2f(x) + f(x−h)) / h²`.
pub fn d2<T: Field, F: Fn(f64) -> T>(f: F, x: f64, h: f64) -> T {
    (f(x + h) + f(x - h) - f(x) * 2.0) * (1.0 / (h * h))
}

/// Combines estimates at steps `2h` and `h` whose error is `O(h^order)`.
pub fn richardson<T: Field>(coarse: T, fine: T, order: i32) -> T {
    let k = 2f64.powi(order);
    (fine * k - coarse) * (1.0 / (k - 1.0))
}

/// Laplacian on `S^{n−1}` in the polar angles `φ₁ … φ_{n−2}` and azimuth `φ`,
/// written out as nested one-dimensional operators:
/// `Σ_k (Π_{p<k} sin φ_p)^{−2} [∂²_k + (n−1−k) cot φ_k ∂_k] + (Π sin φ_p)^{−2} ∂²_φ`.
pub fn sphere_laplacian<T: Field, F: Fn(&[f64], f64) -> T>(f: F, polar: &[f64], phi: f64, h: f64) -> T {
    let m = polar.len();
    let n = m + 2;
    let mut total = f(polar, phi) * 0.0;
    let mut prefix = 1.0;
    let mut angles = polar.to_vec();
    for k in 0..m {
        let along = |t: f64| {
            let mut a = angles.clone();
            a[k] = t;
            f(&a, phi)
        };
        let x = polar[k];
        let weight = (n - 2 - k) as f64 * x.cos() / x.sin();
        let term = d2(&along, x, h) + d1(&along, x, h) * weight;
        total = total + term * (1.0 / (prefix * prefix));
        prefix *= x.sin();
        angles[k] = x;
    }
    total + d2(|t| f(polar, t), phi, h) * (1.0 / (prefix * prefix))
}

/// Least-squares line `y = slope·x + intercept`.
pub fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    fit_line(&lx, &ly).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    #[test]
    fn derivatives_of_exp() {
        let h = 1e-3;
        assert_relative_eq!(d1(f64::exp, 0.5, h), 0.5f64.exp(), max_relative = 1e-6);
        assert_relative_eq!(d2(f64::exp, 0.5, h), 0.5f64.exp(), max_relative = 1e-6);
        let c = d2(|t| Complex64::new(0.0, 2.0 * t).exp(), 0.3, h);
        let want = Complex64::new(0.0, 0.6).exp() * -4.0;
        assert!((c - want).norm() < 1e-5);
    }

    #[test]
    fn richardson_removes_leading_error() {
        let coarse = d1(f64::sin, 1.0, 0.02);
        let fine = d1(f64::sin, 1.0, 0.01);
        let better = richardson(coarse, fine, 2);
        assert!((better - 1f64.cos()).abs() < 1e-3 * (fine - 1f64.cos()).abs());
    }

    #[test]
    fn laplacian_of_coordinate_functions() {
        // Linear functions restricted to S^{n−1} have eigenvalue −(n−1).
        for n in 2..6 {
            let polar: Vec<f64> = (0..n - 2).map(|k| 0.7 + 0.3 * k as f64).collect();
            let last = |p: &[f64], ph: f64| crate::geometry::sphere_point(p, ph)[0];
            let v = last(&polar, 1.1);
            let lap = sphere_laplacian(last, &polar, 1.1, 1e-3);
            assert_relative_eq!(lap, -((n - 1) as f64) * v, max_relative = 1e-5);
        }
    }

    #[test]
    fn slopes() {
        let x = [1.0, 10.0, 100.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(-1.5)).collect();
        assert_relative_eq!(loglog_slope(&x, &y), -1.5, epsilon = 1e-12);
    }
}
