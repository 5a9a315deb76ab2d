//! The flat limit `R → ∞` of ambient plane waves in horospheric coordinates.
//!
//! With `x = x(τ, y)` on the chart `ε = +1` and `ξ` null with `ξ_n = μ`,
//! `x·ξ = μR + y·ξ̄ + O(1/R)` and `Ψ_μ(x, ξ) → e^{i y·ξ̄}`, where
//! `ξ̄ = (ξ₀, −ξ₁, …, −ξ_{n−1})` lies on the mass shell `ξ̄·ξ̄ = −μ²`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{check_len, Error, Result};
use crate::fd::{d2, fit_line, loglog_slope, richardson};
use crate::geometry::{from_horo, minkowski_dot, AbsoluteCovector, AmbientPoint, HoroChart, SpacetimeConfig};
use crate::planewave::{principal_mass, psi_of_dot, PrincipalMass};
use crate::quadrature::{composite_gauss_legendre, uniform_edges};

/// A covector on the Minkowski mass shell together with the null covector of
/// the ambient space it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct MinkowskiCovector {
    bar: Vec<f64>,
    xi: AbsoluteCovector,
}

impl MinkowskiCovector {
    /// `ξ = (√(|p|² + μ²), p, μ)` for a spatial momentum `p ∈ ℝ^{n−1}`.
    pub fn on_shell(mu: f64, p: &[f64]) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::InvalidArgument(format!("mass μ = {mu} must be positive")));
        }
        Self::off_shell(mu, p)
    }

    /// The same construction with an arbitrary last component `ξ_n`.
    pub fn off_shell(xi_n: f64, p: &[f64]) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidArgument("spatial momentum needs n − 1 ≥ 1 components".into()));
        }
        let p2: f64 = p.iter().map(|v| v * v).sum();
        let mut xi = Vec::with_capacity(p.len() + 2);
        xi.push((p2 + xi_n * xi_n).sqrt());
        xi.extend_from_slice(p);
        xi.push(xi_n);
        Self::from_absolute(AbsoluteCovector::from_components(xi)?)
    }

    pub fn from_absolute(xi: AbsoluteCovector) -> Result<Self> {
        let c = xi.components();
        let n = c.len() - 1;
        let mut bar = Vec::with_capacity(n);
        bar.push(c[0]);
        bar.extend(c[1..n].iter().map(|v| -v));
        Ok(Self { bar, xi })
    }

    /// `ξ̄ = (ξ₀, −ξ₁, …, −ξ_{n−1})`.
    pub fn bar(&self) -> &[f64] {
        &self.bar
    }

    pub fn absolute(&self) -> &AbsoluteCovector {
        &self.xi
    }

    /// `ξ_n`, the mass when on shell.
    pub fn xi_n(&self) -> f64 {
        *self.xi.components().last().expect("non-empty covector")
    }

    /// `|ξ̄·ξ̄ + ξ_n²|`.
    pub fn shell_defect(&self) -> f64 {
        let q = minkowski_dot(&self.bar, &self.bar).expect("same length");
        (q + self.xi_n() * self.xi_n()).abs()
    }

    /// `y·ξ̄ = −τξ̄₀ + Σ yᵢξ̄ᵢ`.
    pub fn pair(&self, y: &MinkowskiPoint) -> Result<f64> {
        check_len(self.bar.len() - 1, y.y.len())?;
        Ok(-y.tau * self.bar[0] + y.y.iter().zip(&self.bar[1..]).map(|(a, b)| a * b).sum::<f64>())
    }
}

/// The horospheric pair `(τ, y)` read as a point of Minkowski space.
#[derive(Debug, Clone, PartialEq)]
pub struct MinkowskiPoint {
    pub tau: f64,
    pub y: Vec<f64>,
}

impl MinkowskiPoint {
    pub fn new(tau: f64, y: Vec<f64>) -> Self {
        Self { tau, y }
    }

    pub fn origin(n: usize) -> Self {
        Self { tau: 0.0, y: vec![0.0; n - 1] }
    }

    fn ambient(&self, cfg: &SpacetimeConfig) -> Result<AmbientPoint> {
        from_horo(cfg, &HoroChart::new(self.tau, self.y.clone(), 1))
    }
}

fn wave_at(cfg: &SpacetimeConfig, mass: &PrincipalMass, xi: &MinkowskiCovector, y: &MinkowskiPoint) -> Result<Complex64> {
    let x = y.ambient(cfg)?;
    psi_of_dot(mass, minkowski_dot(x.components(), xi.absolute().components())?)
}

fn setup(mu: f64, xi: &MinkowskiCovector, r: f64) -> Result<(SpacetimeConfig, PrincipalMass)> {
    let cfg = SpacetimeConfig::new(xi.bar.len(), r)?;
    Ok((cfg, principal_mass(&cfg, mu)?))
}

/// `(R, deviation)` rows and the fitted log-log slope.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatScan {
    pub rows: Vec<(f64, f64)>,
    /// `None` when fewer than two deviations are nonzero.
    pub slope: Option<f64>,
}

fn scan(rows: Vec<(f64, f64)>) -> FlatScan {
    let (r, d): (Vec<f64>, Vec<f64>) = rows.iter().filter(|(_, d)| *d > 0.0).cloned().unzip();
    let slope = (r.len() >= 2).then(|| loglog_slope(&r, &d));
    FlatScan { rows, slope }
}

/// `|Ψ_μ(x(y; R), ξ) − e^{i y·ξ̄}|` for each radius.
pub fn flat_limit_deviation(mu: f64, xi: &MinkowskiCovector, y: &MinkowskiPoint, radii: &[f64]) -> Result<FlatScan> {
    let target = Complex64::new(0.0, xi.pair(y)?).exp();
    let rows = radii
        .iter()
        .map(|&r| {
            let (cfg, mass) = setup(mu, xi, r)?;
            Ok((r, (wave_at(&cfg, &mass, xi, y)? - target).norm()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(scan(rows))
}

/// Largest deviation over a set of points, per radius.
pub fn flat_limit_box(mu: f64, xi: &MinkowskiCovector, points: &[MinkowskiPoint], radii: &[f64]) -> Result<FlatScan> {
    let scans = points
        .par_iter()
        .map(|y| flat_limit_deviation(mu, xi, y, radii))
        .collect::<Result<Vec<_>>>()?;
    let rows = radii
        .iter()
        .enumerate()
        .map(|(k, &r)| (r, scans.iter().map(|s| s.rows[k].1).fold(0.0, f64::max)))
        .collect();
    Ok(scan(rows))
}

/// One row of [`off_shell_damping`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingRow {
    pub r: f64,
    /// `|Ψ|` at the center of the window.
    pub pointwise: f64,
    /// `|⟨Ψ⟩|` averaged over the `ξ_n` window.
    pub averaged: f64,
}

/// Averages `Ψ_μ(x(y; R), ξ)` over `ξ_n ∈ [μ(1+a), μ(1+b)]` at fixed spatial
/// momentum. The phase sweeps about `μR ln((1+b)/(1+a))` radians across the
/// window, so the panel count grows with `R`.
pub fn off_shell_damping(mu: f64, p: &[f64], y: &MinkowskiPoint, radii: &[f64], window: (f64, f64)) -> Result<Vec<DampingRow>> {
    let (a, b) = window;
    if !(b > a && a > -1.0) {
        return Err(Error::InvalidArgument(format!("window ({a}, {b}) must satisfy −1 < a < b")));
    }
    let (lo, hi) = (mu * (1.0 + a), mu * (1.0 + b));
    radii
        .iter()
        .map(|&r| {
            let probe = MinkowskiCovector::off_shell(0.5 * (lo + hi), p)?;
            let (cfg, mass) = setup(mu, &probe, r)?;
            let sweep = mu * r * (hi / lo).ln();
            let panels = (sweep / 2.0).ceil().max(4.0) as usize;
            let nodes = composite_gauss_legendre(&uniform_edges(lo, hi, panels), 12);
            let mut acc = Complex64::new(0.0, 0.0);
            for (t, w) in nodes {
                let xi = MinkowskiCovector::off_shell(t, p)?;
                acc += wave_at(&cfg, &mass, &xi, y)? * w;
            }
            Ok(DampingRow { r, pointwise: wave_at(&cfg, &mass, &probe, y)?.norm(), averaged: acc.norm() / (hi - lo) })
        })
        .collect()
}

/// Residuals of the contracted generators at one `(R, h)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirRow {
    pub r: f64,
    pub h: f64,
    /// `n′ᵢ²Ψ − ξᵢ²Ψ` for the component with the largest modulus.
    pub translation: Complex64,
    /// `a′²Ψ − ξ₀²Ψ`.
    pub boost: Complex64,
    /// `(Σ n′ᵢ² − a′²)Ψ / Ψ`, which tends to `−μ²`.
    pub eigenvalue: Complex64,
}

/// Applies `n′ᵢ = i∂_{yᵢ}` and `a′ = i(∂_τ + Σ(yᵢ/R)∂_{yᵢ})` to the plane
/// wave by central differences of step `h`.
///
/// `a′` is a vector field, so `a′²` is minus the second derivative along its
/// integral curve `s ↦ (τ + s, y·e^{s/R})`.
pub fn casimir_row(mu: f64, xi: &MinkowskiCovector, y: &MinkowskiPoint, r: f64, h: f64) -> Result<CasimirRow> {
    let (cfg, mass) = setup(mu, xi, r)?;
    check_len(cfg.n() - 1, y.y.len())?;
    let psi = |p: &MinkowskiPoint| wave_at(&cfg, &mass, xi, p).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    let center = psi(y);
    let mut sum_n = Complex64::new(0.0, 0.0);
    let mut worst = Complex64::new(0.0, 0.0);
    for i in 0..y.y.len() {
        let along = |t: f64| {
            let mut q = y.clone();
            q.y[i] = t;
            psi(&q)
        };
        let nn = -d2(along, y.y[i], h);
        sum_n += nn;
        let res = nn - center * xi.bar[i + 1].powi(2);
        if res.norm() >= worst.norm() {
            worst = res;
        }
    }
    let flow = |s: f64| {
        let q = MinkowskiPoint::new(y.tau + s, y.y.iter().map(|v| v * (s / r).exp()).collect());
        psi(&q)
    };
    let aa = -d2(flow, 0.0, h);
    let row = CasimirRow {
        r,
        h,
        translation: worst,
        boost: aa - center * xi.bar[0].powi(2),
        eigenvalue: (sum_n - aa) / center,
    };
    if !row.eigenvalue.is_finite() {
        return Err(Error::Domain("plane wave undefined along the stencil".into()));
    }
    Ok(row)
}

/// Complex coefficients of `res ≈ A/R + B·h²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualFit {
    pub a: Complex64,
    pub b: Complex64,
}

impl ResidualFit {
    /// Least squares over rows `(R, h, residual)`.
    pub fn fit(rows: &[(f64, f64, Complex64)]) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::InvalidArgument("need at least two rows".into()));
        }
        let (mut s11, mut s12, mut s22) = (0.0, 0.0, 0.0);
        let (mut t1, mut t2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for &(r, h, v) in rows {
            // Relative weighting, so that every row counts alike.
            let k = 1.0 / v.norm().max(f64::MIN_POSITIVE);
            let (u, w, v) = (k / r, k * h * h, v * k);
            s11 += u * u;
            s12 += u * w;
            s22 += w * w;
            t1 += v * u;
            t2 += v * w;
        }
        let det = s11 * s22 - s12 * s12;
        if det.abs() <= 1e-14 * s11 * s22 {
            return Err(Error::Domain("rows do not separate 1/R from h²".into()));
        }
        Ok(Self { a: (t1 * s22 - t2 * s12) / det, b: (t2 * s11 - t1 * s12) / det })
    }
}

/// Everything [`casimir_action_limit`] measures.
#[derive(Debug, Clone, PartialEq)]
pub struct CasimirScan {
    pub rows: Vec<CasimirRow>,
    /// Fit of the translation residual over all rows.
    pub fit: ResidualFit,
    /// Relative change of `|A|` and `|B|` between the lower and upper halves
    /// of the radii.
    pub stability: (f64, f64),
    /// Log-log slope in `R` of the translation residual after Richardson
    /// elimination of the `h²` term, from steps `2h` and `h`.
    pub slope: f64,
    /// Richardson-extrapolated eigenvalue at the largest radius.
    pub eigenvalue: Complex64,
}

/// Scans radii and the steps `h` and `2h`.
pub fn casimir_action_limit(mu: f64, xi: &MinkowskiCovector, y: &MinkowskiPoint, radii: &[f64], h: f64) -> Result<CasimirScan> {
    if radii.len() < 4 {
        return Err(Error::InvalidArgument("need at least four radii".into()));
    }
    let steps = [2.0 * h, h];
    let rows = radii
        .iter()
        .flat_map(|&r| steps.iter().map(move |&s| (r, s)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(r, s)| casimir_row(mu, xi, y, r, s))
        .collect::<Result<Vec<_>>>()?;
    let data: Vec<(f64, f64, Complex64)> = rows.iter().map(|c| (c.r, c.h, c.translation)).collect();
    let fit = ResidualFit::fit(&data)?;
    let half = radii.len() / 2;
    let lower = ResidualFit::fit(&data[..2 * (half + 1)])?;
    let upper = ResidualFit::fit(&data[2 * (half - 1)..])?;
    let rel = |p: Complex64, q: Complex64| (p - q).norm() / p.norm().max(q.norm());
    let stability = (rel(lower.a, upper.a), rel(lower.b, upper.b));
    let pairs: Vec<(f64, f64)> = rows
        .chunks(2)
        .map(|c| (c[0].r, richardson(c[0].translation, c[1].translation, 2).norm()))
        .collect();
    let (lr, lv): (Vec<f64>, Vec<f64>) = pairs.iter().map(|(r, v)| (r.ln(), v.ln())).unzip();
    let slope = fit_line(&lr, &lv).0;
    let last = &rows[rows.len() - 2..];
    let eigenvalue = richardson(last[0].eigenvalue, last[1].eigenvalue, 2);
    Ok(CasimirScan { rows, fit, stability, slope, eigenvalue })
}

/// The two pieces of the leading exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaSplit {
    /// `μR·Φ_x(ξ) − Γ_y(ξ̄)`.
    pub bracket: f64,
    /// `Γ_y(ξ̄) = (μR/s) ln(1 + y·ξ̄/(μR))`.
    pub gamma: f64,
}

/// Splits `μR·Φ_x(ξ)`, with `Φ_x(ξ) = ln(x·ξ/(μR))/s`, into the Minkowski
/// part `Γ_y` and a remainder that vanishes as `R → ∞`.
pub fn gamma_phase_split(mu: f64, xi: &MinkowskiCovector, y: &MinkowskiPoint, r: f64) -> Result<GammaSplit> {
    let cfg = SpacetimeConfig::new(xi.bar.len(), r)?;
    let x = y.ambient(&cfg)?;
    let s = x.size();
    let dot = minkowski_dot(x.components(), xi.absolute().components())?;
    let mr = mu * r;
    let q = 1.0 + xi.pair(y)? / mr;
    if !(dot > 0.0 && q > 0.0) {
        return Err(Error::Domain("x·ξ or 1 + y·ξ̄/(μR) is not positive; R is too small".into()));
    }
    let gamma = mr / s * q.ln();
    // ln(x·ξ/μR) − ln q = ln(1 + (x·ξ − μR − y·ξ̄)/(μR q)).
    let rest = (dot - mr - xi.pair(y)?) / (mr * q);
    Ok(GammaSplit { bracket: mr / s * rest.ln_1p(), gamma })
}

/// In `1 + 1` dimensions the shell is `ξ̄ = μ(cosh θ, −sinh θ)`. Locates the
/// rapidity where `∂_θ Γ_y` vanishes by bisection on a central difference,
/// or `None` if the derivative keeps its sign on `[−θ_max, θ_max]`.
pub fn stationary_rapidity(mu: f64, y: &MinkowskiPoint, r: f64, theta_max: f64) -> Result<Option<f64>> {
    check_len(1, y.y.len())?;
    let gamma = |t: f64| -> Result<f64> {
        let xi = MinkowskiCovector::on_shell(mu, &[mu * t.sinh()])?;
        Ok(gamma_phase_split(mu, &xi, y, r)?.gamma)
    };
    let h = 1e-5;
    let slope = |t: f64| -> Result<f64> { Ok((gamma(t + h)? - gamma(t - h)?) / (2.0 * h)) };
    let grid = uniform_edges(-theta_max, theta_max, 64);
    for w in grid.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (mut fa, fb) = (slope(a)?, slope(b)?);
        if fa == 0.0 {
            return Ok(Some(a));
        }
        if fa * fb > 0.0 {
            continue;
        }
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            let fm = slope(m)?;
            if fa * fm <= 0.0 {
                b = m;
            } else {
                a = m;
                fa = fm;
            }
        }
        return Ok(Some(0.5 * (a + b)));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const RADII: [f64; 4] = [10.0, 100.0, 1000.0, 10000.0];

    #[test]
    fn rest_frame_at_the_origin_is_exact() {
        for n in 2..6 {
            let xi = MinkowskiCovector::on_shell(1.0, &vec![0.0; n - 1]).unwrap();
            let scan = flat_limit_deviation(1.0, &xi, &MinkowskiPoint::origin(n), &RADII).unwrap();
            assert!(scan.rows.iter().all(|(_, d)| *d == 0.0), "{:?}", scan.rows);
            assert!(scan.slope.is_none());
        }
    }

    #[test]
    fn deviation_falls_like_one_over_r() {
        let xi = MinkowskiCovector::on_shell(1.0, &[0.4, -0.3]).unwrap();
        let pts: Vec<MinkowskiPoint> = [(-1.0, 0.5, 0.2), (0.7, -0.4, 1.0), (1.0, 1.0, -1.0)]
            .iter()
            .map(|&(t, a, b)| MinkowskiPoint::new(t, vec![a, b]))
            .collect();
        let scan = flat_limit_box(1.0, &xi, &pts, &RADII).unwrap();
        let slope = scan.slope.unwrap();
        assert!((slope + 1.0).abs() < 0.15, "{slope}");
        let single = flat_limit_deviation(1.0, &xi, &MinkowskiPoint::new(0.8, vec![0.0, 0.0]), &RADII).unwrap();
        assert!((single.slope.unwrap() + 1.0).abs() < 0.15);
    }

    #[test]
    fn damping_off_the_shell() {
        let y = MinkowskiPoint::new(0.3, vec![0.2]);
        let narrow = off_shell_damping(1.0, &[0.5], &y, &[10.0, 100.0, 1000.0], (0.1, 0.2)).unwrap();
        let wide = off_shell_damping(1.0, &[0.5], &y, &[10.0, 100.0, 1000.0], (0.1, 0.4)).unwrap();
        let (r, avg): (Vec<f64>, Vec<f64>) = narrow.iter().map(|d| (d.r, d.averaged)).unzip();
        assert!((loglog_slope(&r, &avg) + 1.0).abs() < 0.2, "{narrow:?}");
        for (a, b) in narrow.iter().zip(&wide) {
            assert!(a.pointwise > 0.5 && a.pointwise <= 1.0 + 1e-12);
            assert!(b.averaged < a.averaged);
        }
    }

    #[test]
    fn contracted_casimir_tends_to_minus_mass_squared() {
        let mu = 1.0;
        let xi = MinkowskiCovector::on_shell(mu, &[0.6, 0.3]).unwrap();
        let y = MinkowskiPoint::new(0.4, vec![-0.5, 0.3]);
        let scan = casimir_action_limit(mu, &xi, &y, &RADII, 0.2).unwrap();
        assert!((scan.slope + 1.0).abs() < 0.15, "slope {}", scan.slope);
        assert!((scan.eigenvalue + mu * mu).norm() < 1e-3, "{}", scan.eigenvalue);
        assert!(scan.stability.0 < 0.2 && scan.stability.1 < 0.2, "{:?}", scan.stability);
    }

    #[test]
    fn rest_frame_translations_vanish() {
        let xi = MinkowskiCovector::on_shell(1.0, &[0.0]).unwrap();
        let y = MinkowskiPoint::new(0.3, vec![0.7]);
        let near = casimir_row(1.0, &xi, &y, 1e4, 1e-2).unwrap();
        let far = casimir_row(1.0, &xi, &y, 10.0, 1e-2).unwrap();
        assert!(near.translation.norm() < 1e-3);
        assert!(near.translation.norm() < far.translation.norm());
    }

    #[test]
    fn gamma_split() {
        let xi = MinkowskiCovector::on_shell(1.0, &[0.5, 0.1]).unwrap();
        assert_eq!(gamma_phase_split(1.0, &xi, &MinkowskiPoint::origin(3), 50.0).unwrap().gamma, 0.0);
        let y = MinkowskiPoint::new(0.6, vec![-0.3, 0.9]);
        let b: Vec<f64> = [1e2, 1e3, 1e4].iter().map(|&r| gamma_phase_split(1.0, &xi, &y, r).unwrap().bracket.abs()).collect();
        assert!(b[0] > b[1] && b[1] > b[2] && b[2] < 1e-6, "{b:?}");
    }

    #[test]
    fn stationary_rapidity_for_timelike_separation() {
        let (tau, y1) = (2.0, -0.8);
        let y = MinkowskiPoint::new(tau, vec![y1]);
        let theta = stationary_rapidity(1.0, &y, 1e3, 3.0).unwrap().unwrap();
        let want = (-y1 / tau as f64).atanh();
        assert!((theta - want).abs() < 1e-6, "{theta} vs {want}");
        let spacelike = MinkowskiPoint::new(0.2, vec![1.5]);
        assert_eq!(stationary_rapidity(1.0, &spacelike, 1e3, 3.0).unwrap(), None);
    }

    proptest! {
        #[test]
        fn builder_lands_on_the_mass_shell(mu in 0.1f64..5.0, p in proptest::collection::vec(-4.0f64..4.0, 1..5)) {
            let xi = MinkowskiCovector::on_shell(mu, &p).unwrap();
            prop_assert!(xi.shell_defect() <= 1e-10 * mu * mu);
            prop_assert_eq!(xi.bar().len(), p.len() + 1);
        }
    }
}
