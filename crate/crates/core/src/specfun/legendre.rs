//! Ferrers functions `P^μ_ν(x)` on the cut `−1 < x < 1`.

use super::hypergeometric::f21_regularized_real;
use super::SpecFunConfig;
use crate::error::{Error, Result};

fn is_int(x: f64) -> bool {
    x == x.round()
}

fn is_nonpositive_int(x: f64) -> bool {
    x <= 0.0 && is_int(x)
}

/// `P^μ_ν(u)` through its hypergeometric representation in `(1 − u)/2`.
///
/// A terminating form is chosen whenever one exists: the plain form when `ν`
/// is an integer, the Euler-transformed form when `ν − μ + 1` or `−ν − μ`
/// is a non-positive integer.
pub fn assoc_legendre_p_with(cfg: &SpecFunConfig, degree: f64, order: f64, u: f64) -> Result<f64> {
    if !(u > -1.0 && u < 1.0) {
        return Err(Error::Domain(format!("Ferrers function needs −1 < u < 1, got {u}")));
    }
    let nu = if degree < -0.5 { -degree - 1.0 } else { degree };
    let mu = order;
    let z = 0.5 * (1.0 - u);
    let euler = !is_int(nu) && (is_nonpositive_int(1.0 - mu + nu) || is_nonpositive_int(-mu - nu));
    if euler {
        let f = f21_regularized_real(1.0 - mu + nu, -mu - nu, 1.0 - mu, z, cfg)?;
        Ok(2f64.powf(mu) * (1.0 - u * u).powf(-0.5 * mu) * f)
    } else {
        let f = f21_regularized_real(-nu, nu + 1.0, 1.0 - mu, z, cfg)?;
        Ok(((1.0 + u) / (1.0 - u)).powf(0.5 * mu) * f)
    }
}

pub fn assoc_legendre_p(degree: f64, order: f64, u: f64) -> Result<f64> {
    assoc_legendre_p_with(&SpecFunConfig::default(), degree, order, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn polynomial_cases() {
        assert_relative_eq!(assoc_legendre_p(0.0, 0.0, 0.3).unwrap(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(assoc_legendre_p(1.0, 0.0, 0.3).unwrap(), 0.3, epsilon = 1e-15);
        let u: f64 = -0.45;
        assert_relative_eq!(assoc_legendre_p(2.0, 0.0, u).unwrap(), 1.5 * u * u - 0.5, epsilon = 1e-14);
        // Ferrers convention: P¹₁(u) = −√(1−u²).
        assert_relative_eq!(assoc_legendre_p(1.0, 1.0, u).unwrap(), -(1.0 - u * u).sqrt(), epsilon = 1e-14);
        assert_relative_eq!(assoc_legendre_p(2.0, 2.0, u).unwrap(), 3.0 * (1.0 - u * u), epsilon = 1e-13);
        assert_eq!(assoc_legendre_p(1.0, 2.0, u).unwrap(), 0.0);
    }

    #[test]
    fn half_integer_closed_forms() {
        // P^{−½}_ν(cos θ) = √(2/(π sin θ)) sin((ν+½)θ)/(ν+½), here with ν = ½.
        let th: f64 = 1.1;
        let want = (2.0 / (std::f64::consts::PI * th.sin())).sqrt() * th.sin();
        assert_relative_eq!(assoc_legendre_p(0.5, -0.5, th.cos()).unwrap(), want, max_relative = 1e-13);
        // P^{½}_{ν}(cos θ) = √(2/(π sin θ)) cos((ν+½)θ).
        let nu = 1.5;
        let want = (2.0 / (std::f64::consts::PI * th.sin())).sqrt() * ((nu + 0.5) * th).cos();
        assert_relative_eq!(assoc_legendre_p(nu, 0.5, th.cos()).unwrap(), want, max_relative = 1e-12);
    }

    #[test]
    fn endpoints_are_rejected() {
        assert!(matches!(assoc_legendre_p(1.0, -0.5, 1.0), Err(Error::Domain(_))));
        assert!(assoc_legendre_p(1.0, 0.0, -1.0).is_err());
    }

    proptest! {
        #[test]
        fn three_term_recurrence(nu in 1.0f64..6.0, mu in -3.0f64..3.0, u in -0.9f64..0.9) {
            let p = |d: f64| assoc_legendre_p(d, mu, u).unwrap();
            let (lo, mid, hi) = (p(nu - 1.0), p(nu), p(nu + 1.0));
            let res = (nu - mu + 1.0) * hi - (2.0 * nu + 1.0) * u * mid + (nu + mu) * lo;
            let scale = ((nu - mu + 1.0) * hi).abs() + ((2.0 * nu + 1.0) * mid).abs() + ((nu + mu) * lo).abs();
            prop_assert!(res.abs() <= 1e-10 * scale.max(1e-300));
        }

        #[test]
        fn half_integer_recurrence(k in 0usize..5, j in 0usize..4, u in -0.95f64..0.95) {
            let mu = -(j as f64) - 0.5;
            let nu = k as f64 + j as f64 + 1.5;
            let p = |d: f64| assoc_legendre_p(d, mu, u).unwrap();
            let res = (nu - mu + 1.0) * p(nu + 1.0) - (2.0 * nu + 1.0) * u * p(nu) + (nu + mu) * p(nu - 1.0);
            prop_assert!(res.abs() < 1e-10);
        }
    }
}
