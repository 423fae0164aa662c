//! M-spherical K-types: labels, highest weights, Weyl dimensions, minimal
//! K-types of socles, Langlands data and the spherical Casimir scalar.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{exceptional_closed_form, rho_h, GroupFamily, SpectralParam};
use crate::rational::{q, qf, Q};
pub use crate::weyl::Weight;
use crate::weyl::compact_roots;

/// Label of an M-spherical K-type.
///
/// Coordinates by family: `SO`: `(k)`; `SU`: `(p,q)`; `Sp`: `(a,b)` with
/// `a ≥ b ≥ 0`; `F4`: `(m,k)` with `m ≥ k ≥ 0` and `m ≡ k (mod 2)`. For the
/// surface group `SO(2,1)` the label `k` may be negative (the characters of `SO(2)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KTypeLabel {
    family: GroupFamily,
    coords: Vec<i64>,
}

impl KTypeLabel {
    /// Validated constructor.
    pub fn new(family: GroupFamily, coords: &[i64]) -> Result<Self> {
        let bad = |why: &str| {
            Err(Error::InvalidLabel(format!(
                "{family}: {coords:?} {why}"
            )))
        };
        match family {
            GroupFamily::SO(n) => {
                if coords.len() != 1 {
                    return bad("needs one coordinate k");
                }
                if n > 2 && coords[0] < 0 {
                    return bad("needs k >= 0");
                }
            }
            GroupFamily::SU(_) => {
                if coords.len() != 2 {
                    return bad("needs coordinates (p,q)");
                }
                if coords[0] < 0 || coords[1] < 0 {
                    return bad("needs p,q >= 0");
                }
            }
            GroupFamily::Sp(_) => {
                if coords.len() != 2 {
                    return bad("needs coordinates (a,b)");
                }
                if !(coords[0] >= coords[1] && coords[1] >= 0) {
                    return bad("needs a >= b >= 0");
                }
            }
            GroupFamily::F4 => {
                if coords.len() != 2 {
                    return bad("needs coordinates (m,k)");
                }
                let (m, k) = (coords[0], coords[1]);
                if !(m >= k && k >= 0 && (m - k) % 2 == 0) {
                    return bad("needs m >= k >= 0 and m = k mod 2");
                }
            }
        }
        Ok(KTypeLabel {
            family,
            coords: coords.to_vec(),
        })
    }

    /// The family this label belongs to.
    pub fn family(&self) -> GroupFamily {
        self.family
    }

    /// Lattice coordinates.
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Whether this is the trivial K-type.
    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The label with coordinates shifted by `delta`, if still valid.
    pub fn shifted(&self, delta: &[i64]) -> Option<KTypeLabel> {
        let c: Vec<i64> = self.coords.iter().zip(delta).map(|(a, d)| a + d).collect();
        KTypeLabel::new(self.family, &c).ok()
    }

    /// Parse `Y3`, `Y1,2`, `V2,1` (either prefix letter accepted) or bare coordinates.
    pub fn parse(family: GroupFamily, s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches(['Y', 'V', 'y', 'v']);
        let body = body.trim_start_matches('_').trim_matches(['(', ')']);
        let coords: Vec<i64> = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad K-type label {s:?}")))
            })
            .collect::<Result<_>>()?;
        KTypeLabel::new(family, &coords)
    }
}

impl fmt::Display for KTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.family {
            GroupFamily::SO(_) | GroupFamily::SU(_) => "Y",
            GroupFamily::Sp(_) | GroupFamily::F4 => "V",
        };
        let body: Vec<String> = self.coords.iter().map(i64::to_string).collect();
        write!(f, "{prefix}{}", body.join(","))
    }
}

impl Serialize for KTypeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Number of weight coordinates used for `family`.
pub fn weight_len(family: GroupFamily) -> usize {
    compact_roots(family).len
}

/// Highest weight of the K-type `label`.
pub fn highest_weight(label: &KTypeLabel) -> Weight {
    let c = label.coords();
    match label.family() {
        GroupFamily::SO(n) => {
            let mut w = Weight::zero(weight_len(GroupFamily::SO(n)));
            w.0[0] = q(c[0]);
            w
        }
        GroupFamily::SU(n) => {
            let n = n as usize;
            let (p, qq) = (c[0], c[1]);
            let mut w = Weight::zero(n + 1);
            w.0[0] = q(qq);
            w.0[n - 1] += q(-p);
            w.0[n] = q(p - qq);
            w
        }
        GroupFamily::Sp(n) => {
            let n = n as usize;
            let (a, b) = (c[0], c[1]);
            let mut w = Weight::zero(n + 1);
            w.0[0] = q(a);
            w.0[1] = q(b);
            w.0[n] = q(a - b);
            w
        }
        GroupFamily::F4 => {
            let (m, k) = (c[0], c[1]);
            Weight(vec![qf(m, 2), qf(k, 2), qf(k, 2), qf(k, 2)])
        }
    }
}

/// The label whose highest weight is `w`, if `w` is M-spherical for `family`.
pub fn label_from_weight(family: GroupFamily, w: &Weight) -> Option<KTypeLabel> {
    if w.len() != weight_len(family) {
        return None;
    }
    let ints: Option<Vec<i64>> = w.0.iter().map(crate::rational::as_i64).collect();
    let guess: Vec<i64> = match family {
        GroupFamily::SO(_) => vec![ints?[0]],
        GroupFamily::SU(n) => {
            let v = ints?;
            vec![-v[n as usize - 1], v[0]]
        }
        GroupFamily::Sp(_) => {
            let v = ints?;
            vec![v[0], v[1]]
        }
        GroupFamily::F4 => {
            let m = crate::rational::as_i64(&(&w.0[0] * q(2)))?;
            let k = crate::rational::as_i64(&(&w.0[1] * q(2)))?;
            vec![m, k]
        }
    };
    let label = KTypeLabel::new(family, &guess).ok()?;
    (highest_weight(&label) == *w).then_some(label)
}

/// Half-sum `ρ_c` of the positive compact roots.
pub fn rho_c(family: GroupFamily) -> Weight {
    compact_roots(family).rho.clone()
}

/// Weyl dimension `Π_{α>0} ⟨λ+ρ_c, α⟩ / ⟨ρ_c, α⟩` of the K-type with highest weight `lambda`.
pub fn weyl_dim(family: GroupFamily, lambda: &Weight) -> Result<BigInt> {
    let roots = compact_roots(family);
    if lambda.len() != roots.len {
        return Err(Error::InvalidWeight(format!(
            "{family}: expected {} coordinates, got {}",
            roots.len,
            lambda.len()
        )));
    }
    if !roots.is_dominant(lambda) {
        return Err(Error::InvalidWeight(format!(
            "{family}: {lambda} is not dominant"
        )));
    }
    let shifted = lambda.add(&roots.rho);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for a in &roots.positive {
        let (x, y) = (shifted.dot(a), roots.rho.dot(a));
        num *= x.numer() * y.denom();
        den *= x.denom() * y.numer();
    }
    let d = Q::new(num, den);
    if !d.is_integer() {
        return Err(Error::InvalidWeight(format!(
            "{family}: {lambda} is not an integral weight"
        )));
    }
    Ok(d.to_integer())
}

/// Dimension of the K-type `label`.
pub fn label_dim(label: &KTypeLabel) -> BigInt {
    weyl_dim(label.family(), &highest_weight(label))
        .expect("highest weights of valid labels are dominant and integral")
}

/// `⟨λ+2ρ_c, λ+2ρ_c⟩` in the Euclidean product on `e_i` coordinates.
pub fn mintype_norm(family: GroupFamily, lambda: &Weight) -> Q {
    lambda.add(&rho_c(family).scale(&q(2))).norm2()
}

/// Whether `label` is a K-type of the socle of `H^{μ_ℓ}`.
pub fn socle_contains(family: GroupFamily, ell: u32, label: &KTypeLabel) -> bool {
    let l = i64::from(ell);
    let c = label.coords();
    match family {
        GroupFamily::SO(2) => c[0].abs() > l,
        GroupFamily::SO(_) => c[0] > l,
        GroupFamily::SU(_) => c[0] > l && c[1] > l,
        GroupFamily::Sp(_) => c[0] >= c[1] && c[1] > l,
        GroupFamily::F4 => c[0] - c[1] >= 2 * l + 2 && (c[0] - c[1]) % 2 == 0,
    }
}

/// Every valid label whose coordinates lie in `[0, bound]` (for `SO(2,1)`: `[-bound, bound]`).
pub fn enumerate_labels(family: GroupFamily, bound: i64) -> Vec<KTypeLabel> {
    let mut out = Vec::new();
    match family {
        GroupFamily::SO(2) => {
            for k in -bound..=bound {
                out.extend(KTypeLabel::new(family, &[k]));
            }
        }
        GroupFamily::SO(_) => {
            for k in 0..=bound {
                out.extend(KTypeLabel::new(family, &[k]));
            }
        }
        _ => {
            for a in 0..=bound {
                for b in 0..=bound {
                    out.extend(KTypeLabel::new(family, &[a, b]));
                }
            }
        }
    }
    out
}

/// Minimal K-types of the socle at `μ_ℓ` from the closed form.
pub fn socle_min_closed_form(family: GroupFamily, ell: u32) -> Vec<KTypeLabel> {
    let l = i64::from(ell);
    let mk = |c: &[i64]| KTypeLabel::new(family, c).expect("closed-form label is valid");
    match family {
        GroupFamily::SO(2) => vec![mk(&[-(l + 1)]), mk(&[l + 1])],
        GroupFamily::SO(_) => vec![mk(&[l + 1])],
        GroupFamily::SU(_) | GroupFamily::Sp(_) => vec![mk(&[l + 1, l + 1])],
        GroupFamily::F4 => vec![mk(&[2 * l + 2, 0])],
    }
}

/// Default search window for [`minimal_ktype`].
pub fn default_search_bound(ell: u32) -> i64 {
    4 * (i64::from(ell) + 2)
}

/// Socle labels minimising [`mintype_norm`], found by exhaustive search over
/// labels with coordinates in `[0, search_bound]`.
///
/// The result is sorted. The search is certified: every socle label touching
/// the boundary of the window must have norm strictly larger than the minimum,
/// and since the norm increases in each coordinate beyond the window this
/// excludes smaller values outside it.
pub fn minimal_ktype(family: GroupFamily, ell: u32, search_bound: i64) -> Result<Vec<KTypeLabel>> {
    let candidates: Vec<KTypeLabel> = enumerate_labels(family, search_bound)
        .into_iter()
        .filter(|l| socle_contains(family, ell, l))
        .collect();
    let norm = |l: &KTypeLabel| mintype_norm(family, &highest_weight(l));
    let Some(min) = candidates.iter().map(norm).min() else {
        return Err(Error::Inconclusive(format!(
            "{family}, l = {ell}: no socle label with coordinates <= {search_bound}"
        )));
    };
    let on_boundary = |l: &KTypeLabel| l.coords().iter().any(|c| c.abs() == search_bound);
    if candidates
        .iter()
        .filter(|l| on_boundary(l))
        .any(|l| norm(l) <= min)
    {
        return Err(Error::Inconclusive(format!(
            "{family}, l = {ell}: minimum reaches the search boundary {search_bound}; enlarge it"
        )));
    }
    let mut out: Vec<KTypeLabel> = candidates.into_iter().filter(|l| norm(l) == min).collect();
    out.sort();
    Ok(out)
}

/// Which subgroup carries the Langlands data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LanglandsS {
    /// The socle is tempered.
    G,
    /// The socle is a Langlands quotient from the minimal parabolic.
    P,
}

/// Langlands parameters of the socle of `H^{μ_ℓ}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LanglandsRecord {
    /// `G` (tempered) or `P`.
    pub s: LanglandsS,
    /// Highest weight of the M-type `ω`, when `S = P`. For `SO(n,1)` in
    /// `SO(n-1)` coordinates; for `SU` and `Sp` stored as coefficient vectors
    /// on the basis named in [`LanglandsRecord::omega_basis`], unvalidated.
    pub omega_weight: Option<Weight>,
    /// Basis in which `omega_weight` is written.
    pub omega_basis: Option<&'static str>,
    /// `ν(H)` when `S = P`.
    #[serde(serialize_with = "crate::cli::ser_opt_q")]
    pub nu_h: Option<Q>,
    /// Whether the socle is tempered.
    pub tempered: bool,
    /// Whether the socle is a discrete series representation.
    pub discrete_series: bool,
    /// Whether the socle is a limit of discrete series.
    pub limit_of_discrete_series: bool,
}

impl LanglandsRecord {
    /// Check the logical constraints between the fields.
    pub fn is_consistent(&self) -> bool {
        let temp_ok = (self.s == LanglandsS::G) == self.tempered;
        let ds_ok = !self.discrete_series || self.tempered;
        let excl = !(self.discrete_series && self.limit_of_discrete_series);
        let p_ok = match self.s {
            LanglandsS::P => self.nu_h.is_some() && self.omega_weight.is_some(),
            LanglandsS::G => {
                self.nu_h.is_none()
                    && self.omega_weight.is_none()
                    && (self.discrete_series || self.limit_of_discrete_series)
            }
        };
        temp_ok && ds_ok && excl && p_ok
    }
}

/// Langlands parameters of the socle at the `ℓ`-th exceptional parameter.
pub fn langlands(family: GroupFamily, ell: u32) -> LanglandsRecord {
    let l = i64::from(ell);
    let tempered = match family {
        GroupFamily::SO(n) | GroupFamily::SU(n) | GroupFamily::Sp(n) => n == 2,
        GroupFamily::F4 => true,
    };
    if tempered {
        let mu = exceptional_closed_form(family, ell);
        let ds = mu <= -rho_h(family);
        return LanglandsRecord {
            s: LanglandsS::G,
            omega_weight: None,
            omega_basis: None,
            nu_h: None,
            tempered: true,
            discrete_series: ds,
            limit_of_discrete_series: !ds,
        };
    }
    let n = i64::from(family.n().expect("non-tempered rows have a parameter"));
    let (omega, basis, nu) = match family {
        GroupFamily::SO(_) => {
            let mut w = Weight::zero(((n - 1) / 2) as usize);
            if !w.is_empty() {
                w.0[0] = q(l + 1);
            }
            (w, "SO(n-1) e_i", q(n) - qf(3, 2))
        }
        GroupFamily::SU(_) => {
            let mut w = Weight::zero(n as usize);
            w.0[1] = q(l + 1);
            w.0[n as usize - 1] = q(-(l + 1));
            (w, "M-weight basis eps''_1..eps''_n", q(n - 2))
        }
        GroupFamily::Sp(_) => {
            let mut w = Weight::zero(n as usize);
            w.0[1] = q(l + 1);
            w.0[2] = q(l + 1);
            (w, "M-weight basis eps'_1..eps'_n", q(2 * n - 3))
        }
        GroupFamily::F4 => unreachable!("F4 is always tempered"),
    };
    LanglandsRecord {
        s: LanglandsS::P,
        omega_weight: Some(omega),
        omega_basis: Some(basis),
        nu_h: Some(nu),
        tempered: false,
        discrete_series: false,
        limit_of_discrete_series: false,
    }
}

/// Eigenvalue `μ(H)² − ρ(H)²` of the Casimir element on the spherical principal series.
pub fn casimir_scalar(family: GroupFamily, mu: &SpectralParam) -> Q {
    let rho = rho_h(family);
    &mu.mu_h * &mu.mu_h - &rho * &rho
}
