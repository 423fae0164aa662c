//! A concrete matrix model of `SO₀(n,1)`.
//!
//! Coordinates `0..n−1` are spatial and coordinate `n` is timelike, so the
//! group preserves `J = diag(1,…,1,−1)`. The boost `H = E_{0,n} + E_{n,0}`
//! spans `a`, `K = SO(n)` acts on the spatial block, and
//! `Z_i = (E_{i0} − E_{0i}) − (E_{in} + E_{ni})`, `i = 1..n−1`, span `n` with
//! `[H, Z_i] = Z_i`. The sphere `K/M = S^{n−1}` sits in the spatial block
//! with base point `e_0`, and `ω(P_j)(x) = x_j` for the orthonormal basis
//! `P_j = E_{j,n} + E_{n,j}` of `p` (so `P_0 = H`).

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{rho_h, GroupFamily, SpectralParam};
use crate::hypergeom::pochhammer;
use crate::ktypes::{label_dim, KTypeLabel};
use crate::poly::Poly;
use crate::rational::{q, qf, to_f64, Q};
use crate::scalars::t_scalar;
use crate::spherical::so_radial;

/// Tolerance for the Lorentz condition `gᵀJg = J`.
pub const LORENTZ_TOLERANCE: f64 = 1e-10;

/// An element of `SO₀(n,1)` as an `(n+1)×(n+1)` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzMatrix {
    n: usize,
    m: DMatrix<f64>,
}

fn j_matrix(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::identity(n + 1, n + 1);
    j[(n, n)] = -1.0;
    j
}

impl LorentzMatrix {
    /// Validate and wrap a matrix.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() < 3 {
            return Err(Error::NotLorentz(format!(
                "expected a square matrix of size at least 3, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let n = m.nrows() - 1;
        let j = j_matrix(n);
        let defect = (m.transpose() * &j * &m - &j).amax();
        if defect > LORENTZ_TOLERANCE * m.amax().max(1.0).powi(2) {
            return Err(Error::NotLorentz(format!("g^T J g - J has size {defect:e}")));
        }
        if m[(n, n)] <= 0.0 || m.determinant() <= 0.0 {
            return Err(Error::NotLorentz("matrix is not in the identity component".into()));
        }
        Ok(LorentzMatrix { n, m })
    }

    /// The identity of `SO₀(n,1)`.
    pub fn identity(n: usize) -> Self {
        LorentzMatrix {
            n,
            m: DMatrix::identity(n + 1, n + 1),
        }
    }

    /// `exp(t·P_j)`, the boost in the `(j, n)` plane.
    pub fn boost(n: usize, j: usize, t: f64) -> Self {
        let mut m = DMatrix::identity(n + 1, n + 1);
        m[(j, j)] = t.cosh();
        m[(n, n)] = t.cosh();
        m[(j, n)] = t.sinh();
        m[(n, j)] = t.sinh();
        LorentzMatrix { n, m }
    }

    /// `exp(sH)`.
    pub fn a(n: usize, s: f64) -> Self {
        Self::boost(n, 0, s)
    }

    /// Rotation by `t` in the spatial `(i, j)` plane.
    pub fn rotation(n: usize, i: usize, j: usize, t: f64) -> Self {
        let mut m = DMatrix::identity(n + 1, n + 1);
        m[(i, i)] = t.cos();
        m[(j, j)] = t.cos();
        m[(i, j)] = -t.sin();
        m[(j, i)] = t.sin();
        LorentzMatrix { n, m }
    }

    /// `exp(Σ c_i Z_i)` for coordinates `c = (c_1, …, c_{n−1})`.
    pub fn nilpotent(n: usize, coords: &[f64]) -> Self {
        let mut z = DMatrix::zeros(n + 1, n + 1);
        for (idx, c) in coords.iter().enumerate() {
            let i = idx + 1;
            z[(i, 0)] += c;
            z[(0, i)] -= c;
            z[(i, n)] -= c;
            z[(n, i)] -= c;
        }
        let m = DMatrix::identity(n + 1, n + 1) + &z + &z * &z * 0.5;
        LorentzMatrix { n, m }
    }

    /// Sphere dimension plus one.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    /// Product.
    pub fn mul(&self, other: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix {
            n: self.n,
            m: &self.m * &other.m,
        }
    }

    /// Inverse, computed as `J gᵀ J`.
    pub fn inverse(&self) -> LorentzMatrix {
        let j = j_matrix(self.n);
        LorentzMatrix {
            n: self.n,
            m: &j * self.m.transpose() * &j,
        }
    }
}

/// `g = k·exp(sH)·n`.
#[derive(Debug, Clone)]
pub struct Iwasawa {
    /// The K-component (block rotation).
    pub k: LorentzMatrix,
    /// The A-coordinate `s`.
    pub s: f64,
    /// Coordinates of the N-component in the basis `Z_1..Z_{n−1}`.
    pub n_coords: Vec<f64>,
}

impl Iwasawa {
    /// `‖k·a·n − g‖_∞`.
    pub fn reconstruction_error(&self, g: &LorentzMatrix) -> f64 {
        let n = g.n;
        let prod = self
            .k
            .mul(&LorentzMatrix::a(n, self.s))
            .mul(&LorentzMatrix::nilpotent(n, &self.n_coords));
        (prod.m - &g.m).amax()
    }
}

/// Iwasawa decomposition `g = k·exp(sH)·n`.
///
/// With `y = g⁻¹e_n = n⁻¹exp(−sH)e_n` one has `y_n − y_0 = e^s` and
/// `y_i = e^s c_i` for the N-coordinates; `k` is then `g n⁻¹ exp(−sH)`.
pub fn iwasawa(g: &LorentzMatrix) -> Result<Iwasawa> {
    let g = LorentzMatrix::new(g.m.clone())?;
    let n = g.n;
    let inv = g.inverse();
    let y: Vec<f64> = (0..=n).map(|i| inv.m[(i, n)]).collect();
    let gap = y[n] - y[0];
    if gap <= 0.0 {
        return Err(Error::NotLorentz("null-vector pairing is not positive".into()));
    }
    let s = gap.ln();
    let n_coords: Vec<f64> = (1..n).map(|i| y[i] * (-s).exp()).collect();
    let n_inv = LorentzMatrix::nilpotent(n, &n_coords.iter().map(|c| -c).collect::<Vec<_>>());
    let k = g.mul(&n_inv).mul(&LorentzMatrix::a(n, -s));
    Ok(Iwasawa { k, s, n_coords })
}

/// A product of random one-parameter subgroup elements with parameters in
/// `[−1, 1]`: one boost per spatial axis, one rotation per spatial plane and
/// one nilpotent factor.
pub fn random_lorentz(n: usize, rng: &mut impl Rng) -> LorentzMatrix {
    let mut g = LorentzMatrix::identity(n);
    for j in 0..n {
        g = g.mul(&LorentzMatrix::boost(n, j, rng.random_range(-1.0..=1.0)));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            g = g.mul(&LorentzMatrix::rotation(n, i, j, rng.random_range(-1.0..=1.0)));
        }
    }
    let c: Vec<f64> = (1..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
    g.mul(&LorentzMatrix::nilpotent(n, &c))
}

/// Uniformly distributed points on `S^{n−1}`.
pub fn sphere_samples(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if r > 1e-8 {
                break v.into_iter().map(|x| x / r).collect();
            }
        })
        .collect()
}

/// Normalised integral of `x^α` over `S^{n−1}`:
/// `Π_i (½)_{α_i/2} / (n/2)_{|α|/2}` if every `α_i` is even, else zero.
pub fn sphere_moment(n: u32, alpha: &[u32]) -> Q {
    if alpha.iter().any(|a| a % 2 == 1) {
        return Q::zero();
    }
    let half = qf(1, 2);
    let num = alpha
        .iter()
        .fold(Q::one(), |acc, a| acc * pochhammer(&half, a / 2));
    let total: u32 = alpha.iter().sum();
    num / pochhammer(&qf(i64::from(n), 2), total / 2)
}

/// `φ_{Y_k}` on `S^{n−1}` as a polynomial in `x_0 = cos ξ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZonalPoly {
    /// Sphere `S^{n−1}`.
    pub n: u32,
    /// Degree `k`.
    pub k: u32,
    /// Polynomial in `x_0`.
    pub poly: Poly,
}

/// The zonal polynomial of degree `k` on `S^{n−1}`.
pub fn zonal_poly(n: u32, k: u32) -> Result<ZonalPoly> {
    let poly = so_radial(n, i64::from(k))?
        .to_cos_poly()
        .ok_or_else(|| Error::Algorithm("radial factor is not a polynomial in cos".into()))?;
    Ok(ZonalPoly { n, k, poly })
}

impl ZonalPoly {
    /// Value at a point of the sphere.
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.poly.eval_f64(x[0])
    }

    /// The homogeneous extension `Σ c_a x_0^a |x|^{k−a}`, written in the
    /// monomials `x_0^a s^b` with `s = x_1² + … + x_{n−1}²`.
    pub fn homogeneous_extension(&self) -> BTreeMap<(u32, u32), Q> {
        let mut out: BTreeMap<(u32, u32), Q> = BTreeMap::new();
        for (a, c) in self.poly.coeffs().iter().enumerate() {
            let a = a as u32;
            if c.is_zero() {
                continue;
            }
            // |x|^{k−a} = (x_0² + s)^{(k−a)/2}; k − a is even for a zonal polynomial.
            let j = (self.k - a) / 2;
            for b in 0..=j {
                let coef = c * crate::rational::binomial(i64::from(j), i64::from(b));
                *out.entry((a + 2 * (j - b), b)).or_insert_with(Q::zero) += coef;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Whether the homogeneous extension is harmonic on `R^n`, checked exactly.
    pub fn is_harmonic(&self) -> bool {
        if self.poly.coeffs().iter().enumerate().any(|(a, c)| {
            !c.is_zero() && (a as u32 > self.k || (self.k - a as u32) % 2 == 1)
        }) {
            return false;
        }
        let n = i64::from(self.n);
        let mut lap: BTreeMap<(u32, u32), Q> = BTreeMap::new();
        for ((a, b), c) in self.homogeneous_extension() {
            if a >= 2 {
                *lap.entry((a - 2, b)).or_insert_with(Q::zero) +=
                    &c * q(i64::from(a) * (i64::from(a) - 1));
            }
            if b >= 1 {
                let bb = i64::from(b);
                *lap.entry((a, b - 1)).or_insert_with(Q::zero) += &c * q(bb * (4 * bb - 4 + 2 * n - 2));
            }
        }
        lap.values().all(Zero::is_zero)
    }
}

/// `⟨φ_{Y_k}, φ_{Y_k}⟩` in the normalised measure of `S^{n−1}`, computed
/// exactly from sphere moments.
pub fn zonal_l2_norm(n: u32, k: u32) -> Result<Q> {
    let z = zonal_poly(n, k)?;
    let sq = z.poly.mul(&z.poly);
    let mut alpha = vec![0u32; n as usize];
    let mut total = Q::zero();
    for (d, c) in sq.coeffs().iter().enumerate() {
        alpha[0] = d as u32;
        total += c * sphere_moment(n, &alpha);
    }
    Ok(total)
}

/// `1/dim Y_k` for `SO(n)`.
pub fn inverse_dimension(n: u32, k: u32) -> Result<Q> {
    let label = KTypeLabel::new(GroupFamily::SO(n), &[i64::from(k)])?;
    Ok(Q::new(num_bigint::BigInt::one(), label_dim(&label)))
}

/// Numeric types used for sphere integration.
pub trait Scalar: Clone + Zero + One + std::ops::Mul<Output = Self> + std::ops::Add<Output = Self> {
    /// Conversion from an exact rational.
    fn from_q(x: &Q) -> Self;
}

impl Scalar for Q {
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
}

impl Scalar for f64 {
    fn from_q(x: &Q) -> Self {
        to_f64(x)
    }
}

type MultiPoly<T> = BTreeMap<Vec<u32>, T>;

fn multi_mul<T: Scalar>(a: &MultiPoly<T>, b: &MultiPoly<T>) -> MultiPoly<T> {
    let mut out: MultiPoly<T> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let entry = out.entry(e).or_insert_with(T::zero);
            *entry = entry.clone() + ca.clone() * cb.clone();
        }
    }
    out
}

/// `P(ℓ(x))` for a linear form `ℓ(x) = Σ w_i x_i`.
fn compose_linear<T: Scalar>(p: &Poly, w: &[T]) -> MultiPoly<T> {
    let dim = w.len();
    let mut lin: MultiPoly<T> = BTreeMap::new();
    for (i, wi) in w.iter().enumerate() {
        let mut e = vec![0; dim];
        e[i] = 1;
        lin.insert(e, wi.clone());
    }
    let mut power: MultiPoly<T> = BTreeMap::from([(vec![0; dim], T::one())]);
    let mut out: MultiPoly<T> = BTreeMap::new();
    for c in p.coeffs() {
        let c = T::from_q(c);
        for (e, v) in &power {
            let entry = out.entry(e.clone()).or_insert_with(T::zero);
            *entry = entry.clone() + c.clone() * v.clone();
        }
        power = multi_mul(&power, &lin);
    }
    out
}

/// `⟨φ_{Y_k}, φ_{Y_k}∘R⁻¹⟩` and `φ_{Y_k}(R e_0)/dim Y_k` for an orthogonal
/// `n×n` matrix `R` (rows of `r`), by exact polynomial integration over the sphere.
pub fn reproducing_sides<T: Scalar>(n: u32, k: u32, r: &[Vec<T>]) -> Result<(T, T)> {
    let z = zonal_poly(n, k)?;
    let dim = n as usize;
    let mut e0 = vec![T::zero(); dim];
    e0[0] = T::one();
    let left = compose_linear(&z.poly, &e0);
    // (R⁻¹x)_0 = (Rᵀx)_0 = Σ_i R_{i0} x_i.
    let w: Vec<T> = (0..dim).map(|i| r[i][0].clone()).collect();
    let right = compose_linear(&z.poly, &w);
    let mut integral = T::zero();
    for (e, c) in multi_mul(&left, &right) {
        integral = integral + c * T::from_q(&sphere_moment(n, &e));
    }
    let inv_dim = T::from_q(&inverse_dimension(n, k)?);
    let value = z
        .poly
        .coeffs()
        .iter()
        .rev()
        .fold(T::zero(), |acc, c| acc * r[0][0].clone() + T::from_q(c));
    Ok((integral, value * inv_dim))
}

/// Exact reproducing check for a rational rotation.
pub fn reproducing_check_exact(n: u32, k: u32, r: &[Vec<Q>]) -> Result<bool> {
    let (a, b) = reproducing_sides(n, k, r)?;
    Ok(a == b)
}

/// Floating reproducing check; returns the absolute difference of the two sides.
pub fn reproducing_defect(n: u32, k: u32, r: &[Vec<f64>]) -> Result<f64> {
    let (a, b) = reproducing_sides(n, k, r)?;
    Ok((a - b).abs())
}

/// The rational rotation by the `(3,4,5)` angle in the `(x_0, x_1)` plane.
pub fn pythagorean_rotation(n: u32) -> Vec<Vec<Q>> {
    let dim = n as usize;
    let mut r: Vec<Vec<Q>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { q(1) } else { q(0) }).collect())
        .collect();
    r[0][0] = qf(3, 5);
    r[0][1] = qf(-4, 5);
    r[1][0] = qf(4, 5);
    r[1][1] = qf(3, 5);
    r
}

/// A random rotation of `R^n` as a product of Givens rotations.
pub fn random_rotation(n: u32, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let g = {
        let mut g = LorentzMatrix::identity(n as usize);
        for i in 0..n as usize {
            for j in (i + 1)..n as usize {
                g = g.mul(&LorentzMatrix::rotation(n as usize, i, j, rng.random_range(-3.0..=3.0)));
            }
        }
        g
    };
    (0..n as usize)
        .map(|i| (0..n as usize).map(|j| g.m[(i, j)]).collect())
        .collect()
}

/// `P_μ^{Y_k}(δ_{eM})(g)` at the sphere points `xs`:
/// `e^{−s(μ+ρ)(H)}·φ_{Y_k}(k⁻¹x)` where `g⁻¹ = k·exp(sH)·n`.
pub fn poisson_delta(k: u32, mu: &SpectralParam, g: &LorentzMatrix, xs: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = g.n;
    let z = zonal_poly(n as u32, k)?;
    let dec = iwasawa(&g.inverse())?;
    let shift = to_f64(&(&mu.mu_h + rho_h(GroupFamily::SO(n as u32))));
    let factor = (-dec.s * shift).exp();
    Ok(xs
        .iter()
        .map(|x| {
            let t: f64 = (0..n).map(|i| dec.k.m[(i, 0)] * x[i]).sum();
            factor * z.poly.eval_f64(t)
        })
        .collect())
}

/// Settings for [`verify_intertwining`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntertwiningConfig {
    /// Central-difference step.
    pub step_h: f64,
    /// Number of sphere sample points.
    pub samples: usize,
    /// Seed for the sample points.
    pub seed: u64,
}

impl Default for IntertwiningConfig {
    fn default() -> Self {
        IntertwiningConfig {
            step_h: 1e-4,
            samples: 50,
            seed: 7,
        }
    }
}

/// Outcome of [`verify_intertwining`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntertwiningReport {
    /// Max deviation of `Σ_j x_j·(∇F)(e)(P_j)` from
    /// `T(Y_k→Y_{k−1})φ_{Y_{k−1}} + T(Y_k→Y_{k+1})φ_{Y_{k+1}}`.
    pub max_residual: f64,
    /// Max deviation of `(∇F)(e)(H)` from `(μ+ρ)(H)·φ_{Y_k}`.
    pub direction_h_residual: f64,
    /// Exact coefficient `T(Y_k→Y_{k−1}, μ)` (zero for `k = 0`).
    pub expected_lower: f64,
    /// Exact coefficient `T(Y_k→Y_{k+1}, μ)`.
    pub expected_upper: f64,
    /// Least-squares coefficient of `φ_{Y_{k−1}}`.
    pub fitted_lower: f64,
    /// Least-squares coefficient of `φ_{Y_{k+1}}`.
    pub fitted_upper: f64,
}

impl IntertwiningReport {
    /// Whether both residuals are within `tolerance`.
    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_residual <= tolerance && self.direction_h_residual <= tolerance
    }
}

/// Finite-difference check of `Σ_j ω(X̃_j)·(∇F)(e)(X_j) = Σ_± T(Y_k→Y_{k±1},μ)·φ_{Y_{k±1}}`
/// for `F = P_μ^{Y_k}(δ_{eM})`.
pub fn verify_intertwining(n: u32, k: u32, mu: &SpectralParam, cfg: &IntertwiningConfig) -> Result<IntertwiningReport> {
    if n < 3 {
        return Err(Error::Unsupported("the intertwining check needs n >= 3".into()));
    }
    let family = GroupFamily::SO(n);
    let dim = n as usize;
    let xs = sphere_samples(dim, cfg.samples, cfg.seed);
    let h = cfg.step_h;
    let mut combined = vec![0.0; xs.len()];
    let mut direction_h = vec![0.0; xs.len()];
    for j in 0..dim {
        let plus = poisson_delta(k, mu, &LorentzMatrix::boost(dim, j, h), &xs)?;
        let minus = poisson_delta(k, mu, &LorentzMatrix::boost(dim, j, -h), &xs)?;
        for (idx, x) in xs.iter().enumerate() {
            let d = (plus[idx] - minus[idx]) / (2.0 * h);
            combined[idx] += x[j] * d;
            if j == 0 {
                direction_h[idx] = d;
            }
        }
    }
    let yk = KTypeLabel::new(family, &[i64::from(k)])?;
    let up = KTypeLabel::new(family, &[i64::from(k) + 1])?;
    let expected_upper = to_f64(&t_scalar(&yk, &up, mu)?);
    let down = if k > 0 {
        Some(KTypeLabel::new(family, &[i64::from(k) - 1])?)
    } else {
        None
    };
    let expected_lower = match &down {
        Some(d) => to_f64(&t_scalar(&yk, d, mu)?),
        None => 0.0,
    };
    let z_up = zonal_poly(n, k + 1)?;
    let z_down = if k > 0 { Some(zonal_poly(n, k - 1)?) } else { None };
    let z_k = zonal_poly(n, k)?;
    let shift = to_f64(&(&mu.mu_h + rho_h(family)));
    let mut max_residual: f64 = 0.0;
    let mut direction_h_residual: f64 = 0.0;
    for (idx, x) in xs.iter().enumerate() {
        let lower = z_down.as_ref().map_or(0.0, |z| z.eval(x));
        let expected = expected_upper * z_up.eval(x) + expected_lower * lower;
        max_residual = max_residual.max((combined[idx] - expected).abs());
        direction_h_residual = direction_h_residual.max((direction_h[idx] - shift * z_k.eval(x)).abs());
    }
    // Least-squares fit of the combined function against φ_{Y_{k±1}}.
    let cols = if z_down.is_some() { 2 } else { 1 };
    let a = DMatrix::from_fn(xs.len(), cols, |r, c| match c {
        0 => z_up.eval(&xs[r]),
        _ => z_down.as_ref().map_or(0.0, |z| z.eval(&xs[r])),
    });
    let b = DVector::from_vec(combined);
    let sol = a
        .svd(true, true)
        .solve(&b, 1e-12)
        .map_err(|e| Error::Algorithm(format!("least squares failed: {e}")))?;
    Ok(IntertwiningReport {
        max_residual,
        direction_h_residual,
        expected_lower,
        expected_upper,
        fitted_upper: sol[0],
        fitted_lower: if cols == 2 { sol[1] } else { 0.0 },
    })
}

/// At the exceptional parameter `μ_ℓ = −ρ−ℓ`, the fitted coefficient of
/// `φ_{Y_{ℓ+1}}` in the gradient of `P_{μ_ℓ}^{Y_ℓ}(δ_{eM})`, which vanishes in theory.
pub fn exceptional_coupling(n: u32, ell: u32, cfg: &IntertwiningConfig) -> Result<f64> {
    let mu = SpectralParam::new(crate::groups::exceptional_closed_form(GroupFamily::SO(n), ell));
    Ok(verify_intertwining(n, ell, &mu, cfg)?.fitted_upper)
}

/// Square matrices over `Q`, used for exact bracket computations.
type QMat = Vec<Vec<Q>>;

fn qmat_zero(d: usize) -> QMat {
    vec![vec![Q::zero(); d]; d]
}

fn qmat_mul(a: &QMat, b: &QMat) -> QMat {
    let d = a.len();
    let mut out = qmat_zero(d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..d {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn qmat_lin(a: &QMat, ca: &Q, b: &QMat, cb: &Q) -> QMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x * ca + y * cb).collect())
        .collect()
}

fn qmat_bracket(a: &QMat, b: &QMat) -> QMat {
    qmat_lin(&qmat_mul(a, b), &q(1), &qmat_mul(b, a), &q(-1))
}

fn qmat_transpose(a: &QMat) -> QMat {
    let d = a.len();
    (0..d).map(|i| (0..d).map(|j| a[j][i].clone()).collect()).collect()
}

/// `B(X,Y) = tr(XY)/2`, a positive multiple of the Killing form with `B(H,H) = 1`.
fn qmat_form(a: &QMat, b: &QMat) -> Q {
    let p = qmat_mul(a, b);
    (0..a.len()).fold(Q::zero(), |acc, i| acc + &p[i][i]) / q(2)
}

/// Outcome of [`check_2rho`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoRhoReport {
    /// `Σ_j [X̃_j, (X_j)_k]` is a multiple of `H`.
    pub sum_in_a: bool,
    /// The basis `X_j` is orthogonal for `B`.
    pub orthogonal: bool,
    /// `Σ_j B([X̃_j, (X_j)_k], H)`.
    #[serde(serialize_with = "crate::cli::ser_q")]
    pub pairing: Q,
    /// `2ρ(H)`.
    #[serde(serialize_with = "crate::cli::ser_q")]
    pub two_rho: Q,
    /// `Σ_j [(X_j)_k, X̃_j] = −2ρ(H)·H`.
    pub reversed_sum_is_minus_two_rho_h: bool,
}

impl TwoRhoReport {
    /// Whether every part of the check holds.
    pub fn holds(&self) -> bool {
        self.sum_in_a && self.orthogonal && self.pairing == self.two_rho && self.reversed_sum_is_minus_two_rho_h
    }
}

/// Exact check of `Σ_j B([X̃_j, (X_j)_k], H) = 2ρ(H)` and
/// `Σ_j [(X_j)_k, X̃_j] = −2ρ(H)·H` for `so(n,1)`, with `X_j = Y_j − θY_j`
/// built from root vectors `Y_j = Z_j/2` normalised by `B(Y_j, θY_j) = −½`.
pub fn check_2rho(n: u32) -> Result<TwoRhoReport> {
    if n < 2 {
        return Err(Error::InvalidFamily("check_2rho needs n >= 2".into()));
    }
    let n = n as usize;
    let d = n + 1;
    let mut h = qmat_zero(d);
    h[0][n] = q(1);
    h[n][0] = q(1);
    let theta = |x: &QMat| qmat_lin(&qmat_transpose(x), &q(-1), &qmat_zero(d), &q(0));
    let mut xs = Vec::new();
    let mut ks = Vec::new();
    for i in 1..n {
        let mut y = qmat_zero(d);
        y[i][0] = qf(1, 2);
        y[0][i] = qf(-1, 2);
        y[i][n] = qf(-1, 2);
        y[n][i] = qf(-1, 2);
        let ty = theta(&y);
        if qmat_bracket(&h, &y) != y || qmat_form(&y, &ty) != qf(-1, 2) {
            return Err(Error::Algorithm("root vector normalisation failed".into()));
        }
        xs.push(qmat_lin(&y, &q(1), &ty, &q(-1)));
        ks.push(qmat_lin(&y, &q(-1), &ty, &q(-1)));
    }
    let mut orthogonal = true;
    for (i, a) in xs.iter().enumerate() {
        for (j, b) in xs.iter().enumerate() {
            if i != j && !qmat_form(a, b).is_zero() {
                orthogonal = false;
            }
        }
    }
    let mut sum = qmat_zero(d);
    let mut reversed = qmat_zero(d);
    for (x, kx) in xs.iter().zip(&ks) {
        let dual = qmat_lin(x, &(Q::one() / qmat_form(x, x)), &qmat_zero(d), &q(0));
        sum = qmat_lin(&sum, &q(1), &qmat_bracket(&dual, kx), &q(1));
        reversed = qmat_lin(&reversed, &q(1), &qmat_bracket(kx, &dual), &q(1));
    }
    let pairing = qmat_form(&sum, &h);
    let sum_in_a = qmat_lin(&h, &pairing, &sum, &q(-1)).iter().flatten().all(Zero::is_zero);
    let two_rho = q(2) * rho_h(GroupFamily::SO(n as u32));
    let reversed_sum_is_minus_two_rho_h = qmat_lin(&h, &-two_rho.clone(), &reversed, &q(-1))
        .iter()
        .flatten()
        .all(Zero::is_zero);
    Ok(TwoRhoReport {
        sum_in_a,
        orthogonal,
        pairing,
        two_rho,
        reversed_sum_is_minus_two_rho_h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments() {
        assert_eq!(sphere_moment(3, &[2, 0, 0]), qf(1, 3));
        assert_eq!(sphere_moment(2, &[2, 2]), qf(1, 8));
        assert_eq!(sphere_moment(4, &[1, 2, 0, 0]), q(0));
    }

    #[test]
    fn identity_decomposes_trivially() {
        let dec = iwasawa(&LorentzMatrix::identity(3)).unwrap();
        assert!(dec.s.abs() < 1e-15);
        assert!(dec.n_coords.iter().all(|c| c.abs() < 1e-15));
    }
}
