//! The defining representation of `SO₀(1,n)`: generators, Iwasawa factors,
//! the action on de Sitter space and the contraction to the Poincaré algebra.
//!
//! Generators are real matrices `M_ab = η_aa E_ab − η_bb E_ba` acting on row
//! vectors from the right, so `x ↦ x·exp(θM)`. With this choice
//! `exp(τ/R·A) = a(τ)` and `exp(Σ y_i/R·N_i) = n(y)`.
//!
//! The parabolic subgroup `B = MAN` appears only through its factors; no
//! separate type is provided for it.

use nalgebra::DMatrix;

use crate::error::{check_len, Error, Result};
use crate::geometry::{AmbientPoint, SpacetimeConfig};

/// A basis element of `so(1,n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorLabel {
    /// Rotation in the plane `x_i – x_j`, `1 ≤ i < j ≤ n`.
    Rotation(usize, usize),
    /// Boost `m_{i0}` in the plane `x_0 – x_i`.
    Boost(usize),
    /// `a = m_{n0}`.
    IwasawaA,
    /// `n_i = m_{i0} + m_{in}`, `1 ≤ i ≤ n − 1`.
    IwasawaN(usize),
}

/// Lie-algebra element in the defining representation.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrix(pub DMatrix<f64>);

/// Group element in the defining representation.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupMatrix(pub DMatrix<f64>);

fn eta(dim: usize) -> DMatrix<f64> {
    let mut e = DMatrix::identity(dim, dim);
    e[(0, 0)] = -1.0;
    e
}

fn eta_diag(a: usize) -> f64 {
    if a == 0 {
        -1.0
    } else {
        1.0
    }
}

/// `M_ab` for arbitrary indices `0 ≤ a, b < dim`; antisymmetric in `(a, b)`.
fn m_ab(dim: usize, a: usize, b: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, dim);
    if a != b {
        m[(a, b)] += eta_diag(a);
        m[(b, a)] -= eta_diag(b);
    }
    m
}

impl GeneratorMatrix {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(&self.0 * s)
    }

    /// `‖Mᵀη + ηM‖_max`, zero for elements of `so(1,n)`.
    pub fn metric_defect(&self) -> f64 {
        let e = eta(self.0.nrows());
        (self.0.transpose() * &e + &e * &self.0).amax()
    }
}

impl GroupMatrix {
    pub fn identity(cfg: &SpacetimeConfig) -> Self {
        Self(DMatrix::identity(cfg.ambient_dim(), cfg.ambient_dim()))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    /// `g·h`, the action of `g` followed by `h` on row vectors.
    pub fn then(&self, h: &GroupMatrix) -> Self {
        Self(&self.0 * &h.0)
    }

    /// `‖gᵀηg − η‖_max`.
    pub fn isometry_defect(&self) -> f64 {
        let e = eta(self.0.nrows());
        (self.0.transpose() * &e * &self.0 - e).amax()
    }

    /// `g⁻¹ = η gᵀ η`.
    pub fn inverse(&self) -> Self {
        let e = eta(self.0.nrows());
        Self(&e * self.0.transpose() * &e)
    }
}

pub fn generator(cfg: &SpacetimeConfig, label: GeneratorLabel) -> Result<GeneratorMatrix> {
    let n = cfg.n();
    let dim = n + 1;
    let bad = |what: &str| Err(Error::InvalidArgument(format!("{what} in {label:?} for n = {n}")));
    let m = match label {
        GeneratorLabel::Rotation(i, j) => {
            if !(1 <= i && i < j && j <= n) {
                return bad("indices out of range");
            }
            m_ab(dim, i, j)
        }
        GeneratorLabel::Boost(i) => {
            if !(1..=n).contains(&i) {
                return bad("index out of range");
            }
            m_ab(dim, i, 0)
        }
        GeneratorLabel::IwasawaA => m_ab(dim, n, 0),
        GeneratorLabel::IwasawaN(i) => {
            if !(1..n).contains(&i) {
                return bad("index out of range");
            }
            m_ab(dim, i, 0) + m_ab(dim, i, n)
        }
    };
    Ok(GeneratorMatrix(m))
}

/// `AB − BA`.
pub fn commutator(a: &GeneratorMatrix, b: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    check_len(a.0.nrows(), b.0.nrows())?;
    Ok(GeneratorMatrix(&a.0 * &b.0 - &b.0 * &a.0))
}

/// Bracket induced on generators by the right action, `YX − XY`.
///
/// For row vectors `x ↦ x·exp(tX)` the vector fields compose in the opposite
/// order, so this is the bracket that matches the differential operators on
/// functions. With it `ad_right(A, N_i) = N_i`.
pub fn ad_right(x: &GeneratorMatrix, y: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    commutator(y, x)
}

/// Maximum deviation of `[M_ab, M_uv]` from the real structure constants
/// `η_av M_bu + η_bu M_av − η_au M_bv − η_bv M_au`, over all index pairs.
pub fn structure_residual(cfg: &SpacetimeConfig) -> f64 {
    let dim = cfg.ambient_dim();
    let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|a| (a + 1..dim).map(move |b| (a, b))).collect();
    let g = |a: usize, b: usize| if a == b { eta_diag(a) } else { 0.0 };
    let mut worst: f64 = 0.0;
    for &(a, b) in &pairs {
        let mab = m_ab(dim, a, b);
        for &(u, v) in &pairs {
            let muv = m_ab(dim, u, v);
            let lhs = &mab * &muv - &muv * &mab;
            let rhs = m_ab(dim, b, u) * g(a, v) + m_ab(dim, a, v) * g(b, u)
                - m_ab(dim, b, v) * g(a, u)
                - m_ab(dim, a, u) * g(b, v);
            worst = worst.max((lhs - rhs).amax());
        }
    }
    worst
}

/// `a(τ)`, the hyperbolic rotation in the `x₀ – x_n` plane.
pub fn boost_a(cfg: &SpacetimeConfig, tau: f64) -> GroupMatrix {
    let n = cfg.n();
    let t = tau / cfg.r();
    let mut g = DMatrix::identity(n + 1, n + 1);
    g[(0, 0)] = t.cosh();
    g[(n, n)] = t.cosh();
    g[(0, n)] = t.sinh();
    g[(n, 0)] = t.sinh();
    GroupMatrix(g)
}

/// `n(y)`, the horospheric translation.
pub fn horo_n(cfg: &SpacetimeConfig, y: &[f64]) -> Result<GroupMatrix> {
    let n = cfg.n();
    check_len(n - 1, y.len())?;
    let r = cfg.r();
    let q = 0.5 * y.iter().map(|v| v * v).sum::<f64>() / (r * r);
    let mut g = DMatrix::identity(n + 1, n + 1);
    g[(0, 0)] = 1.0 + q;
    g[(0, n)] = q;
    g[(n, 0)] = -q;
    g[(n, n)] = 1.0 - q;
    for (k, yk) in y.iter().enumerate() {
        let i = k + 1;
        let s = yk / r;
        g[(0, i)] = s;
        g[(i, 0)] = s;
        g[(i, n)] = s;
        g[(n, i)] = -s;
    }
    Ok(GroupMatrix(g))
}

/// Rotation by `θ` in the plane `x_i – x_j`, equal to `exp(θ M_ij)`.
///
/// Planes with `i, j < n` give elements of `M`; planes through `x_n` give the
/// remaining elements of `K`.
pub fn rotation(cfg: &SpacetimeConfig, i: usize, j: usize, theta: f64) -> Result<GroupMatrix> {
    let n = cfg.n();
    if !(1 <= i && i <= n && 1 <= j && j <= n && i != j) {
        return Err(Error::InvalidArgument(format!("rotation plane ({i}, {j}) for n = {n}")));
    }
    let (s, c) = theta.sin_cos();
    let mut g = DMatrix::identity(n + 1, n + 1);
    g[(i, i)] = c;
    g[(j, j)] = c;
    g[(i, j)] = s;
    g[(j, i)] = -s;
    Ok(GroupMatrix(g))
}

/// `x·g`. Rejects matrices that fail to preserve the bilinear form.
pub fn act(g: &GroupMatrix, x: &AmbientPoint) -> Result<AmbientPoint> {
    check_len(g.0.nrows(), x.dim())?;
    let defect = g.isometry_defect();
    let scale = g.0.amax().max(1.0);
    if defect > 1e-9 * scale * scale {
        return Err(Error::InvalidArgument(format!("matrix is not an isometry (defect {defect:e})")));
    }
    let dim = x.dim();
    let c = x.components();
    let out = (0..dim).map(|col| (0..dim).map(|row| c[row] * g.0[(row, col)]).sum()).collect();
    Ok(AmbientPoint(out))
}

/// `f(x·g)`, the scalar regular representation.
pub fn regular_rep_pullback<T, F>(g: &GroupMatrix, f: F, x: &AmbientPoint) -> Result<T>
where
    F: Fn(&AmbientPoint) -> Result<T>,
{
    f(&act(g, x)?)
}

/// Basis adapted to `so(1,n) = b ⊕ a ⊕ n`, with `b ≅ so(1,n−1)` spanned by
/// `M_ij` (`i < j < n`) and `M_i0` (`i < n`).
#[derive(Debug, Clone)]
pub struct IwasawaBasis {
    pub b: Vec<(GeneratorLabel, GeneratorMatrix)>,
    pub a: GeneratorMatrix,
    pub n: Vec<GeneratorMatrix>,
}

impl IwasawaBasis {
    pub fn new(cfg: &SpacetimeConfig) -> Self {
        let n = cfg.n();
        let mut b = Vec::new();
        for i in 1..n {
            for j in i + 1..n {
                let l = GeneratorLabel::Rotation(i, j);
                b.push((l, generator(cfg, l).unwrap()));
            }
        }
        for i in 1..n {
            let l = GeneratorLabel::Boost(i);
            b.push((l, generator(cfg, l).unwrap()));
        }
        Self {
            b,
            a: generator(cfg, GeneratorLabel::IwasawaA).unwrap(),
            n: (1..n).map(|i| generator(cfg, GeneratorLabel::IwasawaN(i)).unwrap()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.b.len() + 1 + self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn elements(&self) -> Vec<&GeneratorMatrix> {
        let mut v: Vec<&GeneratorMatrix> = self.b.iter().map(|(_, m)| m).collect();
        v.push(&self.a);
        v.extend(self.n.iter());
        v
    }
}

/// `b′ = b`, `a′ = a/R`, `n′_i = n_i/R`.
pub fn contract_scale(basis: &IwasawaBasis, r: f64) -> Result<IwasawaBasis> {
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("R = {r} must be positive")));
    }
    Ok(IwasawaBasis {
        b: basis.b.clone(),
        a: basis.a.scale(1.0 / r),
        n: basis.n.iter().map(|m| m.scale(1.0 / r)).collect(),
    })
}

/// Coordinates of matrices in a fixed basis, via a least-squares solve.
struct Decomposer {
    pinv: DMatrix<f64>,
}

impl Decomposer {
    fn new(basis: &[DMatrix<f64>]) -> Self {
        let rows = basis[0].len();
        let a = DMatrix::from_fn(rows, basis.len(), |r, c| basis[c].as_slice()[r]);
        let pinv = a.pseudo_inverse(1e-12).expect("basis matrices have a pseudo-inverse");
        Self { pinv }
    }

    fn coords(&self, m: &DMatrix<f64>) -> Vec<f64> {
        let v = nalgebra::DVector::from_column_slice(m.as_slice());
        (&self.pinv * v).iter().copied().collect()
    }
}

/// Structure-constant table of the contracted algebra `𝔭_n = so(1,n−1) ⋉ ℝⁿ`,
/// in the ordering of [`IwasawaBasis`] with `a′ ↦ P₀` and `n′_i ↦ −P_i`.
///
/// The table is generated from affine `(n+1)×(n+1)` matrices: Lorentz
/// generators on the upper `n×n` block, translations in the last row.
fn poincare_table(n: usize) -> Vec<Vec<Vec<f64>>> {
    let dim = n + 1;
    let lorentz = |a: usize, b: usize| {
        let mut m = DMatrix::zeros(dim, dim);
        m.view_mut((0, 0), (n, n)).copy_from(&m_ab(n, a, b));
        m
    };
    let trans = |mu: usize| {
        let mut m = DMatrix::zeros(dim, dim);
        m[(n, mu)] = 1.0;
        m
    };
    let mut basis = Vec::new();
    for i in 1..n {
        for j in i + 1..n {
            basis.push(lorentz(i, j));
        }
    }
    for i in 1..n {
        basis.push(lorentz(i, 0));
    }
    basis.push(trans(0));
    for i in 1..n {
        basis.push(-trans(i));
    }
    table(&basis)
}

fn table(basis: &[DMatrix<f64>]) -> Vec<Vec<Vec<f64>>> {
    let dec = Decomposer::new(basis);
    basis
        .iter()
        .map(|x| basis.iter().map(|y| dec.coords(&(x * y - y * x))).collect())
        .collect()
}

/// Structure constants of the rescaled basis at radius `R`.
///
/// Coordinates are solved in the unscaled basis and converted, so that the
/// `1/R` terms are not lost to cancellation at large `R`.
pub fn contracted_table(cfg: &SpacetimeConfig, r: f64) -> Result<Vec<Vec<Vec<f64>>>> {
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("R = {r} must be positive")));
    }
    let basis = IwasawaBasis::new(cfg);
    let raw: Vec<DMatrix<f64>> = basis.elements().into_iter().map(|m| m.0.clone()).collect();
    let nb = basis.b.len();
    // scale[k]: factor relating raw element k to its rescaled version.
    let scale: Vec<f64> = (0..raw.len()).map(|k| if k < nb { 1.0 } else { 1.0 / r }).collect();
    let dec = Decomposer::new(&raw);
    let mut out = Vec::with_capacity(raw.len());
    for (p, x) in raw.iter().enumerate() {
        let mut row = Vec::with_capacity(raw.len());
        for (q, y) in raw.iter().enumerate() {
            let c = dec.coords(&(x * y - y * x));
            let prefactor = scale[p] * scale[q];
            row.push(c.iter().enumerate().map(|(k, ck)| ck * prefactor / scale[k]).collect());
        }
        out.push(row);
    }
    Ok(out)
}

/// Largest deviation between the contracted table at radius `R` and the
/// Poincaré table.
pub fn poincare_residual(cfg: &SpacetimeConfig, r: f64) -> Result<f64> {
    let got = contracted_table(cfg, r)?;
    let want = poincare_table(cfg.n());
    let mut worst: f64 = 0.0;
    for (gr, wr) in got.iter().zip(&want) {
        for (gc, wc) in gr.iter().zip(wr) {
            for (a, b) in gc.iter().zip(wc) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    Ok(worst)
}

/// Which Casimir operator an eigenvalue refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasimirKind {
    LorentzC2,
    PoincareP2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirSpec {
    pub which: CasimirKind,
    pub eigenvalue: f64,
}

impl CasimirSpec {
    /// `−μ²R²` for the Lorentz Casimir, `−μ²` for its contraction.
    pub fn for_mass(cfg: &SpacetimeConfig, mu: f64, which: CasimirKind) -> Self {
        let eigenvalue = match which {
            CasimirKind::LorentzC2 => -(mu * cfg.r()).powi(2),
            CasimirKind::PoincareP2 => -mu * mu,
        };
        Self { which, eigenvalue }
    }
}

/// The Casimir combination `Σ_{i<j<n} M_ij² + Σ M_in² − Σ_{i<n} M_i0² − A²`
/// in the defining representation. Returns the scalar multiple of the identity
/// together with the largest off-scalar entry.
pub fn matrix_casimir(cfg: &SpacetimeConfig) -> (f64, f64) {
    let n = cfg.n();
    let dim = n + 1;
    let mut c = DMatrix::zeros(dim, dim);
    for i in 1..n {
        for j in i + 1..n {
            let m = m_ab(dim, i, j);
            c += &m * &m;
        }
        let k = m_ab(dim, i, n);
        c += &k * &k;
        let b = m_ab(dim, i, 0);
        c -= &b * &b;
    }
    let a = m_ab(dim, n, 0);
    c -= &a * &a;
    let lambda = c[(0, 0)];
    let defect = (c - DMatrix::identity(dim, dim) * lambda).amax();
    (lambda, defect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{from_horo, HoroChart};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn cfg(n: usize, r: f64) -> SpacetimeConfig {
        SpacetimeConfig::new(n, r).unwrap()
    }

    fn close(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> bool {
        (a - b).amax() <= tol
    }

    #[test]
    fn generators_are_in_so1n() {
        for n in 2..6 {
            let c = cfg(n, 1.0);
            for m in IwasawaBasis::new(&c).elements() {
                assert_eq!(m.metric_defect(), 0.0);
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    assert_eq!(generator(&c, GeneratorLabel::Rotation(i, j)).unwrap().metric_defect(), 0.0);
                }
            }
        }
    }

    #[test]
    fn exponentials_reproduce_group_matrices() {
        for n in 2..6 {
            let c = cfg(n, 1.7);
            let tau = 0.83;
            let a = generator(&c, GeneratorLabel::IwasawaA).unwrap().scale(tau / c.r());
            assert!(close(&a.0.exp(), boost_a(&c, tau).matrix(), 1e-12));

            let y: Vec<f64> = (0..n - 1).map(|k| 0.3 * (k as f64 + 1.0) - 0.5).collect();
            let mut sum = DMatrix::zeros(n + 1, n + 1);
            for (k, yk) in y.iter().enumerate() {
                sum += generator(&c, GeneratorLabel::IwasawaN(k + 1)).unwrap().0 * (yk / c.r());
            }
            // Nilpotent of order 3: exp is the truncated series.
            let series = DMatrix::identity(n + 1, n + 1) + &sum + &sum * &sum * 0.5;
            assert!(close(&(&sum * &sum * &sum), &DMatrix::zeros(n + 1, n + 1), 1e-15));
            assert!(close(&series, horo_n(&c, &y).unwrap().matrix(), 1e-12));
            assert!(close(&sum.exp(), horo_n(&c, &y).unwrap().matrix(), 1e-12));
        }
    }

    #[test]
    fn rotation_fixes_time_axis() {
        let c = cfg(3, 1.0);
        let m = generator(&c, GeneratorLabel::Rotation(1, 2)).unwrap();
        let e0 = nalgebra::RowDVector::from_row_slice(&[1.0, 0.0, 0.0, 0.0]);
        assert_eq!((e0 * &m.0).amax(), 0.0);
        let g = generator(&c, GeneratorLabel::Rotation(1, 3)).unwrap().scale(0.4);
        assert!(close(&g.0.exp(), rotation(&c, 1, 3, 0.4).unwrap().matrix(), 1e-13));
    }

    #[test]
    fn structure_constants_hold_exactly() {
        for n in 2..6 {
            assert!(structure_residual(&cfg(n, 1.0)) < 1e-12);
        }
    }

    #[test]
    fn iwasawa_bracket() {
        let c = cfg(4, 1.0);
        let a = generator(&c, GeneratorLabel::IwasawaA).unwrap();
        for i in 1..4 {
            let ni = generator(&c, GeneratorLabel::IwasawaN(i)).unwrap();
            assert_eq!(ad_right(&a, &ni).unwrap(), ni);
            assert_eq!(commutator(&a, &ni).unwrap(), ni.scale(-1.0));
            for j in 1..4 {
                let nj = generator(&c, GeneratorLabel::IwasawaN(j)).unwrap();
                assert_eq!(commutator(&ni, &nj).unwrap().0.amax(), 0.0);
            }
        }
        let m = generator(&c, GeneratorLabel::Rotation(1, 2)).unwrap();
        assert_eq!(commutator(&m, &m).unwrap().0.amax(), 0.0);
    }

    #[test]
    fn group_laws() {
        let c = cfg(3, 2.0);
        let id = GroupMatrix::identity(&c);
        assert_eq!(boost_a(&c, 0.0), id);
        assert_eq!(horo_n(&c, &[0.0, 0.0]).unwrap(), id);
        let ab = boost_a(&c, 0.4).then(&boost_a(&c, -1.1));
        assert!(close(ab.matrix(), boost_a(&c, -0.7).matrix(), 1e-14));
        let nn = horo_n(&c, &[0.3, 1.0]).unwrap().then(&horo_n(&c, &[-0.8, 0.5]).unwrap());
        assert!(close(nn.matrix(), horo_n(&c, &[-0.5, 1.5]).unwrap().matrix(), 1e-14));
        let g = horo_n(&c, &[0.3, 1.0]).unwrap();
        assert!(close(g.inverse().matrix(), horo_n(&c, &[-0.3, -1.0]).unwrap().matrix(), 1e-14));
        assert!(close(boost_a(&c, 0.9).inverse().matrix(), boost_a(&c, -0.9).matrix(), 1e-14));
    }

    #[test]
    fn origin_under_translation() {
        let c = cfg(3, 2.0);
        let y = [0.6, -1.2];
        let x = act(&horo_n(&c, &y).unwrap(), &c.origin()).unwrap();
        let q = (y[0] * y[0] + y[1] * y[1]) / (2.0 * 4.0);
        let want = [-2.0 * q, -y[0], -y[1], 2.0 * (1.0 - q)];
        for (a, b) in x.components().iter().zip(want) {
            assert_relative_eq!(*a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn chart_is_an_orbit_map() {
        let c = cfg(4, 1.3);
        let (tau, y) = (0.7, vec![0.2, -0.4, 1.1]);
        let g = boost_a(&c, tau).then(&horo_n(&c, &y).unwrap());
        let x = act(&g, &c.origin()).unwrap();
        let want = from_horo(&c, &HoroChart::new(tau, y, 1)).unwrap();
        for (a, b) in x.components().iter().zip(want.components()) {
            assert_relative_eq!(*a, *b, epsilon = 1e-14);
        }
    }

    #[test]
    fn act_rejects_non_isometries() {
        let c = cfg(2, 1.0);
        let mut g = GroupMatrix::identity(&c);
        g.0[(0, 1)] = 0.5;
        assert!(act(&g, &c.origin()).is_err());
        assert_eq!(act(&GroupMatrix::identity(&c), &c.origin()).unwrap(), c.origin());
    }

    #[test]
    fn pullback_of_constant_is_invariant() {
        let c = cfg(3, 1.0);
        let g = boost_a(&c, 0.3).then(&rotation(&c, 1, 3, 0.2).unwrap());
        let v = regular_rep_pullback(&g, |_| Ok(2.5), &c.origin()).unwrap();
        assert_eq!(v, 2.5);
        let id = GroupMatrix::identity(&c);
        let f = |x: &AmbientPoint| Ok(x.components()[3]);
        assert_eq!(regular_rep_pullback(&id, f, &c.origin()).unwrap(), c.r());
    }

    #[test]
    fn casimir_is_scalar() {
        for n in 2..7 {
            let (lambda, defect) = matrix_casimir(&cfg(n, 1.0));
            assert_eq!(defect, 0.0);
            assert_eq!(lambda, -(n as f64));
        }
        let c = cfg(4, 3.0);
        assert_eq!(CasimirSpec::for_mass(&c, 2.0, CasimirKind::LorentzC2).eigenvalue, -36.0);
        assert_eq!(CasimirSpec::for_mass(&c, 2.0, CasimirKind::PoincareP2).eigenvalue, -4.0);
    }

    #[test]
    fn contraction_residual_scales_as_inverse_radius() {
        for n in 2..5 {
            let c = cfg(n, 1.0);
            let rs = [10.0, 100.0, 1000.0, 1e4];
            let res: Vec<f64> = rs.iter().map(|&r| poincare_residual(&c, r).unwrap()).collect();
            for (r, e) in rs.iter().zip(&res) {
                assert_relative_eq!(e * r, 1.0, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn contract_scale_at_unit_radius_is_identity() {
        let c = cfg(3, 1.0);
        let b = IwasawaBasis::new(&c);
        let s = contract_scale(&b, 1.0).unwrap();
        assert_eq!(s.a, b.a);
        assert_eq!(s.n, b.n);
        assert!(contract_scale(&b, 0.0).is_err());
        let s = contract_scale(&b, 50.0).unwrap();
        let br = ad_right(&s.a, &s.n[0]).unwrap();
        assert!(close(&br.0, &s.n[0].scale(1.0 / 50.0).0, 1e-16));
    }

    proptest! {
        #[test]
        fn random_words_preserve_the_form(
            ops in proptest::collection::vec((0usize..4, -1.5f64..1.5, 1usize..4, 1usize..4), 1..8),
            tau in -2.0f64..2.0, ys in proptest::collection::vec(-1.0f64..1.0, 3)
        ) {
            let c = cfg(4, 1.5);
            let x = from_horo(&c, &HoroChart::new(tau, ys.clone(), 1)).unwrap();
            let mut g = GroupMatrix::identity(&c);
            for (kind, t, i, j) in ops {
                let step = match kind {
                    0 => boost_a(&c, t),
                    1 => horo_n(&c, &[t, -0.5 * t, 0.25]).unwrap(),
                    2 => rotation(&c, i, 4, t).unwrap(),
                    _ => if i == j { GroupMatrix::identity(&c) } else { rotation(&c, i, j, t).unwrap() },
                };
                g = g.then(&step);
            }
            let gx = act(&g, &x).unwrap();
            prop_assert!(gx.hyperboloid_residual(&c) < 1e-10 * (1.0 + gx.size() / c.r()).powi(2));
        }
    }
}
