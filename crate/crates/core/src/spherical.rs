//! M-spherical functions `φ_Y`, the decomposition of `ω(H)·φ_Y` into
//! neighbouring K-types, and the scalars `λ(V,Y)`.
//!
//! A radial factor `cos^e(ξ)·P(−tan²ξ)` is stored as a [`CosPoly`]. Identities
//! between such factors are verified exactly: with `u = tan²ξ` every term is
//! multiplied by `cos^{−E}` for the largest exponent `E`, which turns it into
//! `(1+u)^{(E−e)/2}·P(−u)`, a polynomial in `u`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::GroupFamily;
use crate::hypergeom::{check_contiguous, f21, Contiguous, F21Poly};
use crate::ktypes::KTypeLabel;
use crate::poly::{BiPoly, Poly};
use crate::rational::{binomial, q, qf, Q};

/// `cos^e(θ)·P(−tan²θ)`, where `P` is a polynomial in `z = −tan²θ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosPoly {
    /// Power of `cos θ` (negative powers occur in boundary identities).
    pub cos_power: i64,
    /// Polynomial in `z`.
    pub poly: Poly,
}

impl CosPoly {
    fn from_f21(cos_power: i64, f: &F21Poly) -> Self {
        CosPoly {
            cos_power,
            poly: f.poly().clone(),
        }
    }

    /// Multiply by `cos θ`.
    pub fn times_cos(&self) -> CosPoly {
        CosPoly {
            cos_power: self.cos_power + 1,
            poly: self.poly.clone(),
        }
    }

    /// `(1+u)^{(top−e)/2}·P(−u)`, i.e. the factor multiplied by `cos^{−top}`.
    fn cleared(&self, top: i64) -> Option<Poly> {
        let gap = top - self.cos_power;
        if gap < 0 || gap % 2 != 0 {
            return None;
        }
        Some(Poly::one_plus_x_pow((gap / 2) as u32).mul(&self.poly.reflect()))
    }

    /// Floating evaluation at the angle `theta`.
    pub fn eval_f64(&self, theta: f64) -> f64 {
        let c = theta.cos();
        c.powi(self.cos_power as i32) * self.poly.eval_f64(-theta.tan().powi(2))
    }

    /// The same function as a polynomial in `x = cos θ`; requires
    /// `deg P ≤ e/2`, which holds for every spherical function.
    pub fn to_cos_poly(&self) -> Option<Poly> {
        let deg = self.poly.degree().unwrap_or(0) as i64;
        if self.cos_power < 2 * deg {
            return None;
        }
        // −tan² = (x² − 1)/x², so cos^e·(−tan²)^j = x^{e−2j}(x²−1)^j.
        let x2m1 = Poly::new(vec![-Q::one(), Q::zero(), Q::one()]);
        let mut out = Poly::zero();
        for (j, c) in self.poly.coeffs().iter().enumerate() {
            let mut term = Poly::new(
                std::iter::repeat_n(Q::zero(), (self.cos_power - 2 * j as i64) as usize)
                    .chain(std::iter::once(c.clone()))
                    .collect(),
            );
            for _ in 0..j {
                term = term.mul(&x2m1);
            }
            out = out.add(&term);
        }
        Some(out)
    }
}

/// Azimuthal factor of a spherical function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Azimuthal {
    /// No azimuthal variable (`SO(n,1)`).
    None,
    /// `e^{ijφ}` (`SU(n,1)`).
    Exponential(i64),
    /// `scale · χ_q(t)`, `χ_q(t) = sin((q+1)t)/sin t` written as a polynomial in `cos t` (`Sp(n,1)`).
    Chebyshev {
        /// Index `q`.
        q: i64,
        /// Normalising factor.
        scale: Q,
    },
    /// `χ_ℓ(φ) = cos^ℓ φ · F(−ℓ/2, (1−ℓ)/2, 7/2; −tan²φ)` (`F4`).
    Gegenbauer(CosPoly),
}

/// Symbolic description of `φ_Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSpec {
    /// The K-type.
    pub label: KTypeLabel,
    /// Hypergeometric part of the radial factor.
    pub radial: F21Poly,
    /// Power of `cos ξ` in the radial factor.
    pub radial_cos_power: i64,
    /// Azimuthal factor.
    pub azimuthal: Azimuthal,
}

/// `χ_q(t) = sin((q+1)t)/sin t` as a polynomial in `x = cos t`, from the
/// explicit sum `Σ_j (−1)^j C(q−j, j) (2x)^{q−2j}`; zero for `q < 0`.
pub fn chebyshev_u(qi: i64) -> Poly {
    if qi < 0 {
        return Poly::zero();
    }
    let mut coeffs = vec![Q::zero(); qi as usize + 1];
    for j in 0..=qi / 2 {
        let sign = if j % 2 == 0 { q(1) } else { q(-1) };
        let pow2 = Q::from_integer(num_bigint::BigInt::from(2).pow((qi - 2 * j) as u32));
        coeffs[(qi - 2 * j) as usize] = sign * binomial(qi - j, j) * pow2;
    }
    Poly::new(coeffs)
}

/// Radial factor of `φ_{Y_k}` for `SO(n,1)`; `k` may leave the label range.
pub fn so_radial(n: u32, k: i64) -> Result<CosPoly> {
    let f = f21(&qf(-k, 2), &qf(1 - k, 2), &qf(i64::from(n) - 1, 2))?;
    Ok(CosPoly::from_f21(k, &f))
}

/// `h_{p,q}` for `SU(n,1)`.
pub fn su_radial(n: u32, p: i64, qq: i64) -> Result<CosPoly> {
    let f = f21(&q(-p), &q(-qq), &q(i64::from(n) - 1))?;
    Ok(CosPoly::from_f21(p + qq, &f))
}

/// `h_{a,b}` for `Sp(n,1)`.
pub fn sp_radial(n: u32, a: i64, b: i64) -> Result<CosPoly> {
    let f = f21(&q(-b), &q(-(a + 1)), &q(2 * i64::from(n) - 2))?;
    Ok(CosPoly::from_f21(a + b, &f))
}

/// `χ_ℓ(φ)` for `F4`.
pub fn f4_chi(l: i64) -> Result<CosPoly> {
    let f = f21(&qf(-l, 2), &qf(1 - l, 2), &qf(7, 2))?;
    Ok(CosPoly::from_f21(l, &f))
}

/// `h_{m,ℓ}(ξ)` for `F4`.
pub fn f4_radial(m: i64, l: i64) -> Result<CosPoly> {
    let f = f21(&qf(l - m, 2), &qf(-m - l - 6, 2), &q(4))?;
    Ok(CosPoly::from_f21(m, &f))
}

/// The spherical function `φ_Y` of `label`.
pub fn phi(label: &KTypeLabel) -> Result<PhiSpec> {
    let family = label.family();
    family.require_recurrences()?;
    let c = label.coords();
    let (radial, power, azimuthal) = match family {
        GroupFamily::SO(n) => {
            let k = c[0];
            (
                f21(&qf(-k, 2), &qf(1 - k, 2), &qf(i64::from(n) - 1, 2))?,
                k,
                Azimuthal::None,
            )
        }
        GroupFamily::SU(n) => {
            let (p, qq) = (c[0], c[1]);
            (
                f21(&q(-p), &q(-qq), &q(i64::from(n) - 1))?,
                p + qq,
                Azimuthal::Exponential(p - qq),
            )
        }
        GroupFamily::Sp(n) => {
            let (a, b) = (c[0], c[1]);
            (
                f21(&q(-b), &q(-(a + 1)), &q(2 * i64::from(n) - 2))?,
                a + b,
                Azimuthal::Chebyshev {
                    q: a - b,
                    scale: qf(1, a - b + 1),
                },
            )
        }
        GroupFamily::F4 => {
            let (m, l) = (c[0], c[1]);
            (
                f21(&qf(l - m, 2), &qf(-m - l - 6, 2), &q(4))?,
                m,
                Azimuthal::Gegenbauer(f4_chi(l)?),
            )
        }
    };
    Ok(PhiSpec {
        label: label.clone(),
        radial,
        radial_cos_power: power,
        azimuthal,
    })
}

impl PhiSpec {
    /// Exact value at the base point (all angles zero).
    pub fn value_at_base(&self) -> Q {
        let radial = self.radial.eval(&Q::zero());
        let az = match &self.azimuthal {
            Azimuthal::None | Azimuthal::Exponential(_) => Q::one(),
            Azimuthal::Chebyshev { q: qi, scale } => scale * chebyshev_u(*qi).eval(&Q::one()),
            Azimuthal::Gegenbauer(chi) => chi.poly.eval(&Q::zero()),
        };
        radial * az
    }

    /// Radial factor as a [`CosPoly`].
    pub fn radial_factor(&self) -> CosPoly {
        CosPoly::from_f21(self.radial_cos_power, &self.radial)
    }
}

/// `ω(H)·φ_V = Σ λ(V,W)·φ_W`, as a list of neighbours with their coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceRow {
    /// The K-type `V`.
    pub source: KTypeLabel,
    /// Neighbours `W` with `λ(V,W) ≠ 0`.
    #[serde(serialize_with = "ser_terms")]
    pub terms: Vec<(KTypeLabel, Q)>,
}

fn ser_terms<S: serde::Serializer>(terms: &[(KTypeLabel, Q)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(terms.len()))?;
    for (label, c) in terms {
        seq.serialize_element(&(label.to_string(), crate::rational::to_string(c)))?;
    }
    seq.end()
}

impl RecurrenceRow {
    /// Sum of the coefficients.
    pub fn total(&self) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (_, c)| acc + c)
    }

    /// Coefficient of `target`, zero if absent.
    pub fn coeff(&self, target: &KTypeLabel) -> Q {
        self.terms
            .iter()
            .find(|(w, _)| w == target)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::zero)
    }
}

/// The four (or two, for `SO`) candidate neighbours of `label` with the
/// coefficients of the recurrence lemma, before dropping invalid targets.
pub fn omega_candidates(label: &KTypeLabel) -> Result<Vec<(Vec<i64>, Q)>> {
    let family = label.family();
    family.require_recurrences()?;
    let c = label.coords();
    Ok(match family {
        GroupFamily::SO(n) => {
            let (n, k) = (i64::from(n), c[0]);
            let d = n + 2 * k - 2;
            vec![(vec![k + 1], qf(n + k - 2, d)), (vec![k - 1], qf(k, d))]
        }
        GroupFamily::SU(n) => {
            let (n, p, qq) = (i64::from(n), c[0], c[1]);
            let d = 2 * (p + qq + n - 1);
            vec![
                (vec![p + 1, qq], qf(p + n - 1, d)),
                (vec![p, qq - 1], qf(qq, d)),
                (vec![p, qq + 1], qf(qq + n - 1, d)),
                (vec![p - 1, qq], qf(p, d)),
            ]
        }
        GroupFamily::Sp(n) => {
            let (n, a, b) = (i64::from(n), c[0], c[1]);
            let d = 2 * (a - b + 1) * (2 * n - 1 + a + b);
            vec![
                (vec![a + 1, b], qf((a - b + 2) * (2 * n - 1 + a), d)),
                (vec![a, b - 1], qf(b * (a - b + 2), d)),
                (vec![a, b + 1], qf((a - b) * (2 * n - 2 + b), d)),
                (vec![a - 1, b], qf((a - b) * (a + 1), d)),
            ]
        }
        GroupFamily::F4 => {
            let (m, l) = (c[0], c[1]);
            let d = (6 + 2 * l) * (14 + 2 * m);
            vec![
                (vec![m + 1, l + 1], qf((6 + l) * (14 + m + l), d)),
                (vec![m - 1, l + 1], qf((6 + l) * (m - l), d)),
                (vec![m + 1, l - 1], qf(l * (8 + m - l), d)),
                (vec![m - 1, l - 1], qf(l * (m + l + 6), d)),
            ]
        }
    })
}

/// The recurrence row of `label`, keeping only valid targets with nonzero coefficient.
pub fn omega_h_expand(label: &KTypeLabel) -> Result<RecurrenceRow> {
    let family = label.family();
    let mut terms = Vec::new();
    for (coords, coef) in omega_candidates(label)? {
        if coef.is_zero() {
            continue;
        }
        if let Ok(target) = KTypeLabel::new(family, &coords) {
            terms.push((target, coef));
        }
    }
    Ok(RecurrenceRow {
        source: label.clone(),
        terms,
    })
}

/// `λ(V,Y)`: the coefficient of `φ_Y` in `ω(H)·φ_V`; zero when unrelated.
pub fn lambda_scalar(v: &KTypeLabel, y: &KTypeLabel) -> Result<Q> {
    if v.family() != y.family() {
        return Err(Error::InvalidLabel(format!(
            "labels {v} and {y} belong to different families"
        )));
    }
    Ok(omega_h_expand(v)?.coeff(y))
}

/// One term of an identity: `coef · (azimuthal part) · (radial part)`.
#[derive(Debug, Clone)]
struct Term {
    coef: Q,
    az: Az,
    radial: CosPoly,
}

#[derive(Debug, Clone)]
enum Az {
    One,
    Laurent(i64),
    Poly(Poly),
    Cos(CosPoly),
}

/// Whether `lhs = rhs` holds identically. Returns `false` when the cos powers
/// have inconsistent parity, since the two sides cannot then agree.
fn identity_holds(lhs: &[Term], rhs: &[Term]) -> bool {
    let all: Vec<(bool, &Term)> = lhs
        .iter()
        .map(|t| (true, t))
        .chain(rhs.iter().map(|t| (false, t)))
        .filter(|(_, t)| !t.coef.is_zero())
        .collect();
    if all.is_empty() {
        return true;
    }
    let top_xi = all.iter().map(|(_, t)| t.radial.cos_power).max().unwrap_or(0);
    let top_phi = all
        .iter()
        .filter_map(|(_, t)| match &t.az {
            Az::Cos(c) => Some(c.cos_power),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let mut acc = BiPoly::zero();
    for (is_lhs, t) in all {
        let coef = if is_lhs { t.coef.clone() } else { -t.coef.clone() };
        let Some(b) = t.radial.cleared(top_xi) else {
            return false;
        };
        let (a, shift) = match &t.az {
            Az::One => (Poly::constant(Q::one()), 0),
            Az::Laurent(j) => (Poly::constant(Q::one()), *j),
            Az::Poly(p) => (p.clone(), 0),
            Az::Cos(c) => match c.cleared(top_phi) {
                Some(p) => (p, 0),
                None => return false,
            },
        };
        acc.add_product(&coef, &a, shift, &b);
    }
    acc.is_zero()
}

fn radial_term(coef: Q, radial: CosPoly) -> Term {
    Term {
        coef,
        az: Az::One,
        radial,
    }
}

/// Outcome of one ingredient identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IngredientCheck {
    /// Descriptive name of the identity.
    pub name: String,
    /// Whether it holds exactly.
    pub holds: bool,
}

/// Outcome of [`verify_omega_identity`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    /// The K-type.
    pub label: KTypeLabel,
    /// Whether `ω(H)φ_V = Σ λ(V,W) φ_W` holds exactly.
    pub recurrence: bool,
    /// Ingredient identities used by the recurrence.
    pub ingredients: Vec<IngredientCheck>,
}

impl OmegaReport {
    /// Whether the recurrence and every ingredient hold.
    pub fn holds(&self) -> bool {
        self.recurrence && self.ingredients.iter().all(|c| c.holds)
    }
}

/// A coefficient with a deferred radial factor, built only when the coefficient is nonzero.
type LazyTerm<'a> = (Q, Box<dyn Fn() -> Result<CosPoly> + 'a>);

/// `cos·h = c1·h1 + c2·h2`, skipping terms with zero coefficient.
fn cos_times_identity(
    h: Result<CosPoly>,
    parts: [LazyTerm<'_>; 2],
) -> Result<bool> {
    let lhs = vec![radial_term(Q::one(), h?.times_cos())];
    let mut rhs = Vec::new();
    for (c, f) in parts {
        if !c.is_zero() {
            rhs.push(radial_term(c, f()?));
        }
    }
    Ok(identity_holds(&lhs, &rhs))
}

/// `cos ξ·h_{p,q} = [(p+n−1)h_{p+1,q} + q·h_{p,q−1}]/(p+q+n−1)` for `SU(n,1)`.
pub fn su_ingredient_raise_p(n: u32, p: i64, qq: i64) -> Result<bool> {
    let d = p + qq + i64::from(n) - 1;
    cos_times_identity(
        su_radial(n, p, qq),
        [
            (qf(p + i64::from(n) - 1, d), Box::new(move || su_radial(n, p + 1, qq))),
            (qf(qq, d), Box::new(move || su_radial(n, p, qq - 1))),
        ],
    )
}

/// `cos ξ·h_{p,q} = [(q+n−1)h_{p,q+1} + p·h_{p−1,q}]/(p+q+n−1)` for `SU(n,1)`.
pub fn su_ingredient_raise_q(n: u32, p: i64, qq: i64) -> Result<bool> {
    let d = p + qq + i64::from(n) - 1;
    cos_times_identity(
        su_radial(n, p, qq),
        [
            (qf(qq + i64::from(n) - 1, d), Box::new(move || su_radial(n, p, qq + 1))),
            (qf(p, d), Box::new(move || su_radial(n, p - 1, qq))),
        ],
    )
}

/// `cos ξ·h_{a,b} = [(2n−2+b)h_{a,b+1} + (a+1)h_{a−1,b}]/(2n+a+b−1)` for `Sp(n,1)`.
pub fn sp_ingredient_lower(n: u32, a: i64, b: i64) -> Result<bool> {
    let n64 = i64::from(n);
    let d = 2 * n64 + a + b - 1;
    cos_times_identity(
        sp_radial(n, a, b),
        [
            (qf(2 * n64 - 2 + b, d), Box::new(move || sp_radial(n, a, b + 1))),
            (qf(a + 1, d), Box::new(move || sp_radial(n, a - 1, b))),
        ],
    )
}

/// `cos ξ·h_{a,b} = [(2n−1+a)h_{a+1,b} + b·h_{a,b−1}]/(2n+a+b−1)` for `Sp(n,1)`.
pub fn sp_ingredient_raise(n: u32, a: i64, b: i64) -> Result<bool> {
    let n64 = i64::from(n);
    let d = 2 * n64 + a + b - 1;
    cos_times_identity(
        sp_radial(n, a, b),
        [
            (qf(2 * n64 - 1 + a, d), Box::new(move || sp_radial(n, a + 1, b))),
            (qf(b, d), Box::new(move || sp_radial(n, a, b - 1))),
        ],
    )
}

/// `2x·χ_q = χ_{q+1} + χ_{q−1}` for the Chebyshev-type polynomials (`χ_{−1} = 0`).
pub fn chebyshev_three_term(qi: i64) -> bool {
    let two_x = Poly::new(vec![Q::zero(), q(2)]);
    two_x.mul(&chebyshev_u(qi)) == chebyshev_u(qi + 1).add(&chebyshev_u(qi - 1))
}

/// `cos φ·χ_ℓ = [(6+ℓ)χ_{ℓ+1} + ℓ·χ_{ℓ−1}]/(6+2ℓ)` for `F4`.
pub fn f4_ingredient_chi(l: i64) -> Result<bool> {
    let d = 6 + 2 * l;
    cos_times_identity(
        f4_chi(l),
        [
            (qf(6 + l, d), Box::new(move || f4_chi(l + 1))),
            (qf(l, d), Box::new(move || f4_chi(l - 1))),
        ],
    )
}

/// `cos ξ·h_{m,ℓ} = [(8+m−ℓ)h_{m+1,ℓ−1} + (m+ℓ+6)h_{m−1,ℓ−1}]/(14+2m)` for `F4`.
pub fn f4_ingredient_lower(m: i64, l: i64) -> Result<bool> {
    f4_lower_with(m, l, m + l + 6)
}

/// The lowering identity for `h_{m,ℓ}` with an arbitrary second numerator.
pub fn f4_lower_with(m: i64, l: i64, second: i64) -> Result<bool> {
    let d = 14 + 2 * m;
    cos_times_identity(
        f4_radial(m, l),
        [
            (qf(8 + m - l, d), Box::new(move || f4_radial(m + 1, l - 1))),
            (qf(second, d), Box::new(move || f4_radial(m - 1, l - 1))),
        ],
    )
}

/// `cos ξ·h_{m,ℓ} = [(14+m+ℓ)h_{m+1,ℓ+1} + (m−ℓ)h_{m−1,ℓ+1}]/(14+2m)` for `F4`.
pub fn f4_ingredient_raise(m: i64, l: i64) -> Result<bool> {
    let d = 14 + 2 * m;
    cos_times_identity(
        f4_radial(m, l),
        [
            (qf(14 + m + l, d), Box::new(move || f4_radial(m + 1, l + 1))),
            (qf(m - l, d), Box::new(move || f4_radial(m - 1, l + 1))),
        ],
    )
}

/// `φ_Y` as a [`Term`] with coefficient `coef`.
fn phi_term(coef: Q, label: &KTypeLabel) -> Result<Term> {
    let spec = phi(label)?;
    let radial = spec.radial_factor();
    let (coef, az) = match spec.azimuthal {
        Azimuthal::None => (coef, Az::One),
        Azimuthal::Exponential(j) => (coef, Az::Laurent(j)),
        Azimuthal::Chebyshev { q: qi, scale } => (coef * scale, Az::Poly(chebyshev_u(qi))),
        Azimuthal::Gegenbauer(chi) => (coef, Az::Cos(chi)),
    };
    Ok(Term { coef, az, radial })
}

/// `ω(H)·φ_V` as a list of terms.
fn omega_times_phi(label: &KTypeLabel) -> Result<Vec<Term>> {
    let t = phi_term(Q::one(), label)?;
    let radial = t.radial.times_cos();
    Ok(match t.az {
        Az::One => vec![Term {
            coef: t.coef,
            az: Az::One,
            radial,
        }],
        Az::Laurent(j) => {
            let half = &t.coef * qf(1, 2);
            vec![
                Term {
                    coef: half.clone(),
                    az: Az::Laurent(j + 1),
                    radial: radial.clone(),
                },
                Term {
                    coef: half,
                    az: Az::Laurent(j - 1),
                    radial,
                },
            ]
        }
        Az::Poly(p) => vec![Term {
            coef: t.coef,
            az: Az::Poly(p.mul(&Poly::x())),
            radial,
        }],
        Az::Cos(c) => vec![Term {
            coef: t.coef,
            az: Az::Cos(c.times_cos()),
            radial,
        }],
    })
}

/// Verify `ω(H)·φ_V = Σ_W λ(V,W)·φ_W` exactly, together with the ingredient
/// identities its derivation rests on.
pub fn verify_omega_identity(label: &KTypeLabel) -> Result<OmegaReport> {
    let family = label.family();
    let row = omega_h_expand(label)?;
    let lhs = omega_times_phi(label)?;
    let rhs = row
        .terms
        .iter()
        .map(|(w, c)| phi_term(c.clone(), w))
        .collect::<Result<Vec<_>>>()?;
    let recurrence = identity_holds(&lhs, &rhs);
    let c = label.coords();
    let check = |name: &str, holds: bool| IngredientCheck {
        name: name.to_string(),
        holds,
    };
    let ingredients = match family {
        GroupFamily::SO(n) => {
            let k = c[0];
            vec![check(
                "contiguous relation (ii) at (-k/2, (1-k)/2, (n-1)/2)",
                check_contiguous(Contiguous::II, &qf(-k, 2), &qf(1 - k, 2), &qf(i64::from(n) - 1, 2))?,
            )]
        }
        GroupFamily::SU(n) => vec![
            check("cos h_{p,q} via h_{p+1,q}, h_{p,q-1}", su_ingredient_raise_p(n, c[0], c[1])?),
            check("cos h_{p,q} via h_{p,q+1}, h_{p-1,q}", su_ingredient_raise_q(n, c[0], c[1])?),
        ],
        GroupFamily::Sp(n) => vec![
            check("cos h_{a,b} via h_{a,b+1}, h_{a-1,b}", sp_ingredient_lower(n, c[0], c[1])?),
            check("cos h_{a,b} via h_{a+1,b}, h_{a,b-1}", sp_ingredient_raise(n, c[0], c[1])?),
            check("chebyshev three-term relation", chebyshev_three_term(c[0] - c[1])),
        ],
        GroupFamily::F4 => vec![
            check("cos chi_l via chi_{l+1}, chi_{l-1}", f4_ingredient_chi(c[1])?),
            check("cos h_{m,l} via h_{m+1,l-1}, h_{m-1,l-1}", f4_ingredient_lower(c[0], c[1])?),
            check("cos h_{m,l} via h_{m+1,l+1}, h_{m-1,l+1}", f4_ingredient_raise(c[0], c[1])?),
        ],
    };
    Ok(OmegaReport {
        label: label.clone(),
        recurrence,
        ingredients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_low_degrees() {
        assert_eq!(chebyshev_u(0), Poly::constant(q(1)));
        assert_eq!(chebyshev_u(1), Poly::new(vec![q(0), q(2)]));
        assert_eq!(chebyshev_u(2), Poly::new(vec![q(-1), q(0), q(4)]));
    }

    #[test]
    fn cos_poly_conversion() {
        // φ_{Y_2} on S^2 is the Legendre polynomial (3x² − 1)/2.
        let r = so_radial(3, 2).unwrap();
        assert_eq!(
            r.to_cos_poly().unwrap(),
            Poly::new(vec![qf(-1, 2), q(0), qf(3, 2)])
        );
    }
}
