//! Complex log-Gamma by upward recurrence and the Stirling series.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_{2k} / (2k(2k−1))` for `k = 1..=8`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const SHIFT: f64 = 15.0;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal branch of `log Γ(z)`, continuous in the cut plane and real on the
/// positive axis.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole(format!("Γ has a pole at {}", z.re)));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < SHIFT {
        acc += w.ln();
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    Ok((w - 0.5) * w.ln() - w + half_ln_2pi + series - acc)
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// `1/Γ(z)`, entire, zero at the poles of Γ.
pub fn rgamma(z: Complex64) -> Complex64 {
    match ln_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// `sin(πx)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let mut r = x - 2.0 * (0.5 * x).round();
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    (PI * r).sin()
}

/// Real Γ; `±∞` at the poles.
pub fn gamma_real(x: f64) -> f64 {
    if x > 0.0 {
        return ln_gamma(Complex64::new(x, 0.0)).map(|l| l.re.exp()).unwrap_or(f64::INFINITY);
    }
    let s = sin_pi(x);
    if s == 0.0 {
        return f64::INFINITY;
    }
    PI / (s * gamma_real(1.0 - x))
}

/// Real `1/Γ(x)`, zero at the poles.
pub fn rgamma_real(x: f64) -> f64 {
    if x > 0.0 {
        return ln_gamma(Complex64::new(x, 0.0)).map(|l| (-l.re).exp()).unwrap_or(0.0);
    }
    sin_pi(x) * gamma_real(1.0 - x) / PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn integer_and_half_values() {
        assert!(ln_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(ln_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        assert_relative_eq!(gamma_real(5.0), 24.0, max_relative = 1e-14);
        assert_relative_eq!(gamma_real(0.5), PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma_real(-0.5), -2.0 * PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma_real(30.0), 8.841_761_993_739_701e30, max_relative = 1e-13);
        assert_eq!(rgamma_real(-3.0), 0.0);
        assert_eq!(rgamma(c(0.0, 0.0)), c(0.0, 0.0));
        assert!(matches!(ln_gamma(c(-2.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn modulus_identities_on_vertical_lines() {
        for rho in [0.3, 1.0, 4.0, 12.0] {
            let g = gamma(c(0.0, rho)).unwrap();
            assert_relative_eq!(g.norm_sqr(), PI / (rho * (PI * rho).sinh()), max_relative = 1e-12);
            let g = gamma(c(0.5, rho)).unwrap();
            assert_relative_eq!(g.norm_sqr(), PI / (PI * rho).cosh(), max_relative = 1e-12);
            let g = gamma(c(1.0, rho)).unwrap();
            assert_relative_eq!(g.norm_sqr(), PI * rho / (PI * rho).sinh(), max_relative = 1e-12);
        }
    }

    #[test]
    fn principal_branch_is_continuous_across_the_real_axis() {
        let above = ln_gamma(c(-2.5, 1e-12)).unwrap();
        let below = ln_gamma(c(-2.5, -1e-12)).unwrap();
        assert!((above.im + below.im).abs() < 1e-10);
        assert!((above.im.abs() - 3.0 * PI).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn reflection(re in -6.0f64..6.0, im in -20.0f64..20.0) {
            prop_assume!(im.abs() > 1e-3);
            let z = c(re, im);
            let lhs = ln_gamma(z).unwrap() + ln_gamma(1.0 - z).unwrap();
            let ratio = lhs.exp() * (z * PI).sin() / PI;
            prop_assert!((ratio - 1.0).norm() < 1e-12);
        }

        #[test]
        fn duplication(re in -6.0f64..6.0, im in -20.0f64..20.0) {
            prop_assume!(im.abs() > 1e-3);
            let z = c(re, im);
            let lhs = ln_gamma(z).unwrap() + ln_gamma(z + 0.5).unwrap();
            let rhs = ln_gamma(2.0 * z).unwrap() + (1.0 - 2.0 * z) * 2f64.ln() + 0.5 * PI.ln();
            prop_assert!(((lhs - rhs).exp() - 1.0).norm() < 1e-12);
        }

        #[test]
        fn recurrence(re in -10.0f64..20.0, im in -20.0f64..20.0) {
            prop_assume!(im.abs() > 1e-3);
            let z = c(re, im);
            let d = ln_gamma(z + 1.0).unwrap() - ln_gamma(z).unwrap() - z.ln();
            prop_assert!((d.exp() - 1.0).norm() < 1e-12);
        }
    }
}
