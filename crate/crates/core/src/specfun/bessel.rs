//! Bessel functions of the first kind for real order `ν ≥ −½`.

use std::f64::consts::PI;

use super::gamma::{ln_gamma, rgamma_real};
use crate::quadrature::{composite_gauss_legendre, uniform_edges};
use num_complex::Complex64;

/// `J_ν(x)` for `x ≥ 0`.
///
/// Half-integer orders `±½` use their closed forms. Otherwise the ascending
/// series covers small arguments, the Hankel expansion large ones and the
/// Schläfli integral everything in between.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    if x < 0.0 || x.is_nan() {
        return f64::NAN;
    }
    if nu == 0.5 {
        return if x == 0.0 { 0.0 } else { (2.0 / (PI * x)).sqrt() * x.sin() };
    }
    if nu == -0.5 {
        return if x == 0.0 { f64::INFINITY } else { (2.0 / (PI * x)).sqrt() * x.cos() };
    }
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else if nu > 0.0 { 0.0 } else { f64::INFINITY };
    }
    if x <= 8.0_f64.max(nu) {
        ascending(nu, x)
    } else if x >= 25.0 && x >= 2.0 * nu * nu {
        hankel(nu, x)
    } else {
        schlafli(nu, x)
    }
}

fn ascending(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = -half * half;
    let lead = if nu >= 0.0 {
        (nu * half.ln() - ln_gamma(Complex64::new(nu + 1.0, 0.0)).map(|l| l.re).unwrap_or(f64::INFINITY)).exp()
    } else {
        half.powf(nu) * rgamma_real(nu + 1.0)
    };
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let omega = x - 0.5 * nu * PI - 0.25 * PI;
    let (mut p, mut q) = (0.0, 0.0);
    let mut ak = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        if k > 0 {
            let m = (2 * k - 1) as f64;
            ak *= (mu - m * m) / (k as f64 * 8.0 * x);
        }
        if ak.abs() > last {
            break;
        }
        last = ak.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * ak;
        } else {
            q += sign * ak;
        }
        if ak.abs() < 1e-17 {
            break;
        }
    }
    (2.0 / (PI * x)).sqrt() * (p * omega.cos() - q * omega.sin())
}

/// `J_ν(x) = (1/π)∫₀^π cos(νθ − x sin θ)dθ − (sin νπ/π)∫₀^∞ e^{−x sinh t − νt} dt`.
fn schlafli(nu: f64, x: f64) -> f64 {
    let panels = 8 + (x / 2.0).ceil() as usize + nu.abs().ceil() as usize;
    let first: f64 = composite_gauss_legendre(&uniform_edges(0.0, PI, panels), 20)
        .iter()
        .map(|&(t, w)| w * (nu * t - x * t.sin()).cos())
        .sum();
    let s = (nu * PI).sin();
    let second = if s == 0.0 {
        0.0
    } else {
        // Cut where x sinh t + ν t exceeds 45.
        let mut upper = 1.0;
        while x * f64::sinh(upper) + nu * upper < 45.0 {
            upper *= 1.5;
        }
        composite_gauss_legendre(&uniform_edges(0.0, upper, 16), 20)
            .iter()
            .map(|&(t, w)| w * (-x * t.sinh() - nu * t).exp())
            .sum()
    };
    (first - s * second) / PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::{d1, d2, richardson};
    use approx::assert_relative_eq;

    #[test]
    fn half_integer_orders() {
        let x: f64 = 1.0;
        assert_relative_eq!(bessel_j(-0.5, x), (2.0 / PI).sqrt() * x.cos(), max_relative = 1e-15);
        assert_relative_eq!(bessel_j(0.5, x), (2.0 / PI).sqrt() * x.sin(), max_relative = 1e-15);
        assert_eq!(bessel_j(1.5, 0.0), 0.0);
        assert_eq!(bessel_j(0.0, 0.0), 1.0);
    }

    #[test]
    fn spherical_bessel_closed_form_across_regimes() {
        // J_{3/2}(x) = √(2/(πx)) (sin x/x − cos x), via the general algorithms.
        let nu = 1.5 + 1e-14;
        for x in [0.5, 5.0, 10.0, 17.0, 24.0, 30.0, 50.0] {
            let want = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
            assert!((bessel_j(nu, x) - want).abs() < 1e-10 * want.abs().max(1e-3), "x = {x}");
        }
    }

    #[test]
    fn integer_order_reference_values() {
        assert_relative_eq!(bessel_j(0.0, 1.0), 0.765_197_686_557_966_6, max_relative = 1e-14);
        assert_relative_eq!(bessel_j(1.0, 10.0), 0.043_472_746_168_861_6, max_relative = 1e-10);
        assert_relative_eq!(bessel_j(2.0, 30.0), 0.078_451_246_073_265_38, max_relative = 1e-10);
        assert_relative_eq!(bessel_j(0.0, 20.0), 0.167_024_664_340_583_22, max_relative = 1e-10);
    }

    #[test]
    fn regimes_agree_at_boundaries() {
        for nu in [0.0, 1.0, 1.5, 2.5, 3.0] {
            for x in [8.0, 25.0] {
                let a = schlafli(nu, x);
                let b = if x == 8.0 { ascending(nu, x) } else { hankel(nu, x) };
                assert!((a - b).abs() < 1e-12, "nu {nu} x {x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn bessel_ode_residual() {
        let h = 1e-3;
        for nu in [0.0, 0.5, 1.0, 1.5, 2.0, 2.5] {
            for x in [0.7, 3.0, 9.0, 15.0, 27.0, 45.0] {
                let f = |t: f64| bessel_j(nu + 1e-13, t);
                let d2 = richardson(d2(f, x, 2.0 * h), d2(f, x, h), 2);
                let d1 = richardson(d1(f, x, 2.0 * h), d1(f, x, h), 2);
                let res = d2 + d1 / x + (1.0 - nu * nu / (x * x)) * f(x);
                assert!(res.abs() < 1e-8, "nu {nu} x {x}: {res}");
            }
        }
    }
}
