//! Charts on de Sitter space, the ambient bilinear form and the absolute.
//!
//! Ambient vectors carry `n + 1` components `(x₀, …, x_n)` with signature
//! `(−, +, …, +)`. Horospheric charts use the row-vector product
//! `ϑ·a(τ)·n(y)·ε` with `ϑ = (0, …, 0, R)`; hyperbolic charts use a boost
//! parameter `β` and the angles of a point on `S^{n−1}`.

use crate::error::{check_len, Error, Result};

/// Dimension and radius of the de Sitter space under study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimeConfig {
    n: usize,
    r: f64,
}

impl SpacetimeConfig {
    pub fn new(n: usize, r: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("dimension n = {n} must be at least 2")));
        }
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius R = {r} must be positive")));
        }
        Ok(Self { n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Number of ambient components, `n + 1`.
    pub fn ambient_dim(&self) -> usize {
        self.n + 1
    }

    /// Lowest principal-series mass `(n − 1)/(2R)`.
    pub fn mu_min(&self) -> f64 {
        (self.n as f64 - 1.0) / (2.0 * self.r)
    }

    /// The base point `ϑ = (0, …, 0, R)`.
    pub fn origin(&self) -> AmbientPoint {
        let mut x = vec![0.0; self.n + 1];
        x[self.n] = self.r;
        AmbientPoint(x)
    }
}

/// A point of the ambient Minkowski space.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientPoint(pub Vec<f64>);

impl AmbientPoint {
    pub fn new(x: Vec<f64>) -> Self {
        Self(x)
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Minkowski product with another point of the same length.
    ///
    /// # Panics
    /// Panics on a length mismatch; use [`minkowski_dot`] for a checked version.
    pub fn dot(&self, other: &AmbientPoint) -> f64 {
        minkowski_dot(&self.0, &other.0).expect("ambient points of equal length")
    }

    /// Residual `|x·x − R²| / R²`.
    pub fn hyperboloid_residual(&self, cfg: &SpacetimeConfig) -> f64 {
        let r2 = cfg.r * cfg.r;
        (self.dot(self) - r2).abs() / r2
    }

    /// `s = |x₀| + |x|`, the size parameter used in decay estimates.
    pub fn size(&self) -> f64 {
        let spatial: f64 = self.0[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
        self.0[0].abs() + spatial
    }
}

/// Horospheric coordinates `(τ, y, ε)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HoroChart {
    pub tau: f64,
    pub y: Vec<f64>,
    pub eps: i8,
}

impl HoroChart {
    pub fn new(tau: f64, y: Vec<f64>, eps: i8) -> Self {
        Self { tau, y, eps }
    }
}

/// Hyperbolic coordinates: `β`, polar angles `φ₁ … φ_{n−2}` in `[0, π]` and
/// the azimuth `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperChart {
    pub beta: f64,
    pub polar: Vec<f64>,
    pub phi: f64,
}

impl HyperChart {
    pub fn new(beta: f64, polar: Vec<f64>, phi: f64) -> Self {
        Self { beta, polar, phi }
    }
}

/// A null covector with positive time component.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsoluteCovector(Vec<f64>);

impl AbsoluteCovector {
    /// Accepts any future-pointing null vector, not only the `ξ₀ = 1` section.
    pub fn from_components(xi: Vec<f64>) -> Result<Self> {
        if xi.len() < 3 {
            return Err(Error::InvalidArgument("covector needs at least 3 components".into()));
        }
        if !(xi[0] > 0.0) {
            return Err(Error::InvalidArgument(format!("ξ₀ = {} must be positive", xi[0])));
        }
        let q = minkowski_dot(&xi, &xi)?;
        if q.abs() > 1e-10 * xi[0] * xi[0] {
            return Err(Error::InvalidArgument(format!("covector is not null: ξ·ξ = {q:e}")));
        }
        Ok(Self(xi))
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    /// The spatial direction `ξ/ξ₀` restricted to components `1..=n`.
    pub fn direction(&self) -> Vec<f64> {
        self.0[1..].iter().map(|v| v / self.0[0]).collect()
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::InvalidArgument("scale must be positive".into()));
        }
        Ok(Self(self.0.iter().map(|v| v * lambda).collect()))
    }
}

/// `−u₀v₀ + Σ u_k v_k`.
pub fn minkowski_dot(u: &[f64], v: &[f64]) -> Result<f64> {
    check_len(u.len(), v.len())?;
    if u.is_empty() {
        return Err(Error::InvalidArgument("empty vectors".into()));
    }
    let spatial: f64 = u[1..].iter().zip(&v[1..]).map(|(a, b)| a * b).sum();
    Ok(spatial - u[0] * v[0])
}

/// `x(τ, y) = ϑ·a(τ)·n(y)·ε`.
pub fn from_horo(cfg: &SpacetimeConfig, chart: &HoroChart) -> Result<AmbientPoint> {
    check_len(cfg.n - 1, chart.y.len())?;
    if chart.eps != 1 && chart.eps != -1 {
        return Err(Error::InvalidArgument(format!("ε = {} must be ±1", chart.eps)));
    }
    let r = cfg.r;
    let t = chart.tau / r;
    let y2: f64 = chart.y.iter().map(|v| v * v).sum();
    let damp = (-t).exp();
    let quad = 0.5 * y2 / (r * r) * damp;
    let eps = chart.eps as f64;
    let mut x = Vec::with_capacity(cfg.n + 1);
    x.push(eps * r * (t.sinh() - quad));
    x.extend(chart.y.iter().map(|yi| -eps * yi * damp));
    x.push(eps * r * (t.cosh() - quad));
    Ok(AmbientPoint(x))
}

/// Inverse of [`from_horo`].
///
/// The sign `ε` is `+1` on the half `x_n > x₀` and `−1` on `x_n < x₀`. Only
/// the null hyperplane `x_n = x₀` is outside both charts.
pub fn to_horo(cfg: &SpacetimeConfig, x: &AmbientPoint) -> Result<HoroChart> {
    check_len(cfg.n + 1, x.dim())?;
    let c = x.components();
    let n = cfg.n;
    let gap = c[n] - c[0];
    if gap.abs() <= 1e-14 * cfg.r.max(c[n].abs()) {
        return Err(Error::ChartSingular(format!("x_n − x₀ = {gap:e}")));
    }
    let eps: i8 = if gap > 0.0 { 1 } else { -1 };
    let d = gap.abs();
    let r = cfg.r;
    let tau = -r * (d / r).ln();
    let y = c[1..n].iter().map(|xi| -r * (eps as f64) * xi / d).collect();
    Ok(HoroChart { tau, y, eps })
}

/// Unit vector on `S^{n−1}` from the polar angles and azimuth.
///
/// Component order follows the hyperbolic chart: the last component is
/// `cos φ₁`, the first two carry `sin φ` and `cos φ`.
pub fn sphere_point(polar: &[f64], phi: f64) -> Vec<f64> {
    let n = polar.len() + 2;
    let mut u = vec![0.0; n];
    let mut prod = 1.0;
    for (p, &angle) in polar.iter().enumerate() {
        u[n - 1 - p] = prod * angle.cos();
        prod *= angle.sin();
    }
    u[1] = prod * phi.cos();
    u[0] = prod * phi.sin();
    u
}

/// Angles of a unit vector, inverse of [`sphere_point`]. The azimuth is
/// returned in `[0, 2π)`.
pub fn sphere_angles(u: &[f64]) -> (Vec<f64>, f64) {
    let n = u.len();
    let mut polar = Vec::with_capacity(n.saturating_sub(2));
    for p in 0..n.saturating_sub(2) {
        let head: f64 = u[..n - 1 - p].iter().map(|v| v * v).sum::<f64>().sqrt();
        polar.push(head.atan2(u[n - 1 - p]).clamp(0.0, std::f64::consts::PI));
    }
    let mut phi = u[0].atan2(u[1]);
    if phi < 0.0 {
        phi += 2.0 * std::f64::consts::PI;
    }
    (polar, phi)
}

pub fn from_hyper(cfg: &SpacetimeConfig, chart: &HyperChart) -> Result<AmbientPoint> {
    check_len(cfg.n - 2, chart.polar.len())?;
    let r = cfg.r;
    let u = sphere_point(&chart.polar, chart.phi);
    let rc = r * chart.beta.cosh();
    let mut x = Vec::with_capacity(cfg.n + 1);
    x.push(r * chart.beta.sinh());
    x.extend(u.iter().map(|v| rc * v));
    Ok(AmbientPoint(x))
}

/// Inverse of [`from_hyper`]; angles are undetermined only on coordinate
/// singularities, where a representative is returned.
pub fn to_hyper(cfg: &SpacetimeConfig, x: &AmbientPoint) -> Result<HyperChart> {
    check_len(cfg.n + 1, x.dim())?;
    let c = x.components();
    let beta = (c[0] / cfg.r).asinh();
    let norm: f64 = c[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::Domain("spatial part vanishes; point is not on dS".into()));
    }
    let u: Vec<f64> = c[1..].iter().map(|v| v / norm).collect();
    let (polar, phi) = sphere_angles(&u);
    Ok(HyperChart { beta, polar, phi })
}

/// `ξ = (1, u)` for a unit vector `u ∈ S^{n−1}`.
pub fn absolute_covector(u: &[f64]) -> Result<AbsoluteCovector> {
    if u.len() < 2 {
        return Err(Error::InvalidArgument("direction needs at least 2 components".into()));
    }
    let norm2: f64 = u.iter().map(|v| v * v).sum();
    if (norm2 - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidArgument(format!("|u|² = {norm2} is not 1")));
    }
    let mut xi = Vec::with_capacity(u.len() + 1);
    xi.push(1.0);
    xi.extend_from_slice(u);
    Ok(AbsoluteCovector(xi))
}

/// Density of the cone measure on the section `ξ₀ = 1` with respect to
/// `dφ₁ ⋯ dφ_{n−2} dφ`: `½ Π_k sin^{n−1−k} φ_k`.
pub fn cone_measure_weight(cfg: &SpacetimeConfig, polar: &[f64]) -> Result<f64> {
    check_len(cfg.n - 2, polar.len())?;
    Ok(0.5 * sphere_density(polar))
}

/// Round-sphere density `Π_k sin^{n−1−k} φ_k` for the same angles.
pub fn sphere_density(polar: &[f64]) -> f64 {
    let m = polar.len();
    polar
        .iter()
        .enumerate()
        .map(|(k, a)| a.sin().powi((m - k) as i32))
        .product()
}

/// Surface area of `S^{d}` (the unit sphere in `ℝ^{d+1}`).
pub fn sphere_volume(d: usize) -> f64 {
    let half = (d as f64 + 1.0) / 2.0;
    2.0 * std::f64::consts::PI.powf(half) / crate::specfun::gamma::gamma_real(half)
}
