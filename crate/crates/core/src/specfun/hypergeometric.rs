//! Gauss hypergeometric function on `[0, 1)`.

use num_complex::Complex64;

use super::gamma::{ln_gamma, rgamma_real};
use super::SpecFunConfig;
use crate::error::{Error, Result};

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn near_integer(z: Complex64) -> bool {
    z.im.abs() < 1e-12 && (z.re - z.re.round()).abs() < 1e-12
}

/// Power series `Σ (a)_k (b)_k / ((c)_k k!) v^k`.
fn series(a: Complex64, b: Complex64, c: Complex64, v: f64, cfg: &SpecFunConfig) -> Result<Complex64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(format!("₂F₁ with c = {c}")));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for k in 0..cfg.max_terms {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * v;
        sum += term;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        if term.norm() <= cfg.series_tol * sum.norm() {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence(cfg.max_terms))
}

/// `₂F₁(a, b; c; v)` for `0 ≤ v < 1`.
///
/// The power series is used up to `cfg.connection_switch`; above it the
/// function is continued from `1 − v` with the two-term connection formula.
pub fn gauss_2f1_with(
    cfg: &SpecFunConfig,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    v: f64,
) -> Result<Complex64> {
    if !(0.0..1.0).contains(&v) {
        return Err(Error::Domain(format!("₂F₁ argument v = {v} outside [0, 1)")));
    }
    if v <= cfg.connection_switch {
        series(a, b, c, v, cfg)
    } else {
        gauss_2f1_complement_with(cfg, a, b, c, 1.0 - v)
    }
}

pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, v: f64) -> Result<Complex64> {
    gauss_2f1_with(&SpecFunConfig::default(), a, b, c, v)
}

/// `₂F₁(a, b; c; 1 − w)`, taking `w` directly so that small `w = sech²β` keeps
/// full relative precision.
pub fn gauss_2f1_complement_with(
    cfg: &SpecFunConfig,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    w: f64,
) -> Result<Complex64> {
    if !(w > 0.0 && w <= 1.0) {
        return Err(Error::Domain(format!("₂F₁ complement w = {w} outside (0, 1]")));
    }
    if 1.0 - w <= cfg.connection_switch {
        return series(a, b, c, 1.0 - w, cfg);
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(format!("₂F₁ with c = {c}")));
    }
    let s = c - a - b;
    if near_integer(s) {
        return Err(Error::Unsupported(format!("connection formula with integer c − a − b = {s}")));
    }
    let lc = ln_gamma(c)?;
    let coeff = |num: Complex64, d1: Complex64, d2: Complex64| -> Result<Complex64> {
        if is_nonpositive_integer(d1) || is_nonpositive_integer(d2) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok((lc + ln_gamma(num)? - ln_gamma(d1)? - ln_gamma(d2)?).exp())
    };
    let c1 = coeff(s, c - a, c - b)?;
    let c2 = coeff(-s, a, b)?;
    let mut out = Complex64::new(0.0, 0.0);
    if c1.norm() > 0.0 {
        out += c1 * series(a, b, 1.0 - s, w, cfg)?;
    }
    if c2.norm() > 0.0 {
        out += c2 * (s * w.ln()).exp() * series(c - a, c - b, 1.0 + s, w, cfg)?;
    }
    Ok(out)
}

pub fn gauss_2f1_complement(a: Complex64, b: Complex64, c: Complex64, w: f64) -> Result<Complex64> {
    gauss_2f1_complement_with(&SpecFunConfig::default(), a, b, c, w)
}

/// The two connection coefficients `(C₁, C₂)` with
/// `F(v) = C₁·F(…; 1−v) + C₂·(1−v)^{c−a−b}·F(…; 1−v)`.
pub fn connection_coefficients(a: Complex64, b: Complex64, c: Complex64) -> Result<(Complex64, Complex64)> {
    let s = c - a - b;
    if near_integer(s) {
        return Err(Error::Unsupported(format!("integer c − a − b = {s}")));
    }
    let lc = ln_gamma(c)?;
    let c1 = (lc + ln_gamma(s)? - ln_gamma(c - a)? - ln_gamma(c - b)?).exp();
    let c2 = (lc + ln_gamma(-s)? - ln_gamma(a)? - ln_gamma(b)?).exp();
    Ok((c1, c2))
}

/// Unevaluated sum `hi + lo` carrying roughly twice the precision of `f64`.
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn norm(s: f64, e: f64) -> Self {
        let hi = s + e;
        Dd { hi, lo: e - (hi - s) }
    }

    fn add(self, o: Dd) -> Dd {
        let s = self.hi + o.hi;
        let bb = s - self.hi;
        let e = (self.hi - (s - bb)) + (o.hi - bb) + self.lo + o.lo;
        Dd::norm(s, e)
    }

    fn add_f(self, x: f64) -> Dd {
        self.add(Dd::from(x))
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p) + self.hi * o.lo + self.lo * o.hi;
        Dd::norm(p, e)
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul(Dd::from(-q1)));
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul(Dd::from(-q2)));
        Dd::norm(q1, q2).add_f(r.hi / o.hi)
    }
}

/// Regularized `₂F₁(a, b; c; z)/Γ(c)` for real parameters and `0 ≤ z < 1`,
/// finite for every `c`.
///
/// Terms and partial sums are carried in double-double arithmetic, since the
/// alternating series for Ferrers functions near `z → 1` cancels by many
/// orders of magnitude.
pub fn f21_regularized_real(a: f64, b: f64, c: f64, z: f64, cfg: &SpecFunConfig) -> Result<f64> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::Domain(format!("argument z = {z} outside [0, 1)")));
    }
    let k0 = if c <= 0.0 && c == c.round() { (1.0 - c) as usize } else { 0 };
    let zd = Dd::from(z);
    let ratio = |k: usize| -> Dd {
        let kf = k as f64;
        let num = Dd::from(a).add_f(kf).mul(Dd::from(b).add_f(kf)).mul(zd);
        num.div(Dd::from(kf + 1.0))
    };
    // First surviving term (a)_{k0} (b)_{k0} z^{k0} / (k0! Γ(c + k0)).
    let mut term = Dd::from(rgamma_real(c + k0 as f64));
    for k in 0..k0 {
        term = term.mul(ratio(k));
    }
    let mut sum = term;
    if term.hi == 0.0 {
        return Ok(0.0);
    }
    let mut small = 0;
    for k in k0..k0 + cfg.max_terms {
        term = term.mul(ratio(k)).div(Dd::from(c).add_f(k as f64));
        sum = sum.add(term);
        if term.hi == 0.0 {
            return Ok(sum.hi);
        }
        if term.hi.abs() <= cfg.series_tol * 1e-3 * sum.hi.abs() {
            small += 1;
            if small >= 2 {
                return Ok(sum.hi + sum.lo);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence(cfg.max_terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(gauss_2f1(c(0.3, 1.0), c(2.0, -1.0), c(1.5, 0.0), 0.0).unwrap(), c(1.0, 0.0));
        let v: f64 = 0.5;
        let got = gauss_2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), v).unwrap();
        assert_relative_eq!(got.re, -(1.0 - v).ln() / v, max_relative = 1e-12);
        // (1 − v)^{−a} = ₂F₁(a, b; b; v), exercised above the switch.
        for v in [0.3, 0.7, 0.95, 0.999] {
            let a = c(0.25, 0.8);
            let got = gauss_2f1(a, c(1.3, 0.4), c(1.3, 0.4), v).unwrap();
            assert!(rel(got, (-a * (1.0f64 - v).ln()).exp()) < 1e-12);
        }
        // arcsin: ₂F₁(½, ½; 3/2; x²) = asin(x)/x.
        for x in [0.2f64, 0.6, 0.9, 0.99] {
            let got = gauss_2f1(c(0.5, 0.0), c(0.5, 0.0), c(1.5, 0.0), x * x).unwrap();
            assert_relative_eq!(got.re, x.asin() / x, max_relative = 1e-12);
        }
    }

    #[test]
    fn branches_agree_at_the_switch() {
        let cfg = SpecFunConfig::default();
        for rho in [0.5, 1.0, 2.5, 7.0] {
            for l in 0..4 {
                for n in 2..6 {
                    let h = (n as f64 - 1.0) / 2.0;
                    let a = c((l as f64 + h + 1.0) / 2.0, rho / 2.0);
                    let b = c((-(l as f64) - h + 2.0) / 2.0, rho / 2.0);
                    let cc = c(1.5, 0.0);
                    let v = cfg.connection_switch;
                    let direct = series(a, b, cc, v, &cfg).unwrap();
                    let cont = gauss_2f1_complement_with(&cfg, a, b, cc, 1.0 - v).unwrap();
                    assert!(rel(cont, direct) < 1e-10, "rho {rho} l {l} n {n}");
                }
            }
        }
    }

    #[test]
    fn integer_gap_is_unsupported_above_switch() {
        let r = gauss_2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), 0.9);
        assert!(matches!(r, Err(Error::Unsupported(_))));
        assert!(matches!(gauss_2f1(c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), 0.1), Err(Error::Pole(_))));
    }

    #[test]
    fn regularized_series_with_nonpositive_c() {
        let cfg = SpecFunConfig::default();
        // F(a,b;c;z)/Γ(c) → (a)_{1−c}(b)_{1−c} z^{1−c} F(a+1−c, b+1−c; 2−c; z)/(1−c)! at c = 0.
        let (a, b, z) = (0.7, -1.3, 0.4);
        let lhs = f21_regularized_real(a, b, 0.0, z, &cfg).unwrap();
        let rhs = a * b * z * series(c(a + 1.0, 0.0), c(b + 1.0, 0.0), c(2.0, 0.0), z, &cfg).unwrap().re;
        assert_relative_eq!(lhs, rhs, max_relative = 1e-13);
        let plain = f21_regularized_real(a, b, 2.5, z, &cfg).unwrap();
        let want = series(c(a, 0.0), c(b, 0.0), c(2.5, 0.0), z, &cfg).unwrap().re * rgamma_real(2.5);
        assert_relative_eq!(plain, want, max_relative = 1e-14);
    }
}
