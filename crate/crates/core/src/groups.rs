//! Structural constants of the rank-one families and their exceptional
//! spectral parameters.
//!
//! A spectral parameter `μ ∈ a*` is stored as the single rational `μ(H)`,
//! where `H ∈ a` is normalised by `α(H) = 1` for the simple restricted root `α`.

use std::fmt;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{is_nonpositive_integer, q, qf, Q};

/// One of the four families of connected rank-one simple Lie groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GroupFamily {
    /// `SO₀(n,1)`, `n ≥ 2`, with `K = SO(n)`.
    SO(u32),
    /// `SU(n,1)`, `n ≥ 2`, with `K = U(n)`.
    SU(u32),
    /// `Sp(n,1)`, `n ≥ 2`, with `K = Sp(n) × Sp(1)`.
    Sp(u32),
    /// The real form `F₄₍₋₂₀₎` with `K = Spin(9)`.
    F4,
}

impl GroupFamily {
    /// `SO₀(n,1)`; requires `n ≥ 2`.
    pub fn so(n: u32) -> Result<Self> {
        Self::checked(GroupFamily::SO(n))
    }

    /// `SU(n,1)`; requires `n ≥ 2`.
    pub fn su(n: u32) -> Result<Self> {
        Self::checked(GroupFamily::SU(n))
    }

    /// `Sp(n,1)`; requires `n ≥ 2`.
    pub fn sp(n: u32) -> Result<Self> {
        Self::checked(GroupFamily::Sp(n))
    }

    /// Validate the parameter of an already-built value.
    pub fn checked(self) -> Result<Self> {
        match self {
            GroupFamily::SO(n) | GroupFamily::SU(n) | GroupFamily::Sp(n) if n < 2 => Err(
                Error::InvalidFamily(format!("{} requires n >= 2, got n = {n}", self.name())),
            ),
            _ => Ok(self),
        }
    }

    /// Parse a family name (`SO`, `SU`, `Sp`, `F4`, case-insensitive) with optional `n`.
    pub fn parse(name: &str, n: Option<u32>) -> Result<Self> {
        let upper = name.to_ascii_uppercase();
        let need_n = |n: Option<u32>| {
            n.ok_or_else(|| Error::InvalidFamily(format!("{name} requires a parameter n")))
        };
        let fam = match upper.as_str() {
            "SO" => GroupFamily::SO(need_n(n)?),
            "SU" => GroupFamily::SU(need_n(n)?),
            "SP" => GroupFamily::Sp(need_n(n)?),
            "F4" => {
                if n.is_some() {
                    return Err(Error::InvalidFamily("F4 takes no parameter".into()));
                }
                GroupFamily::F4
            }
            _ => return Err(Error::InvalidFamily(format!("unknown family {name:?}"))),
        };
        fam.checked()
    }

    /// Short family name without parameter.
    pub fn name(&self) -> &'static str {
        match self {
            GroupFamily::SO(_) => "SO",
            GroupFamily::SU(_) => "SU",
            GroupFamily::Sp(_) => "Sp",
            GroupFamily::F4 => "F4",
        }
    }

    /// The integer parameter `n`, absent for `F4`.
    pub fn n(&self) -> Option<u32> {
        match self {
            GroupFamily::SO(n) | GroupFamily::SU(n) | GroupFamily::Sp(n) => Some(*n),
            GroupFamily::F4 => None,
        }
    }

    /// Whether this is the surface case `SO₀(2,1)`, which is excluded from the
    /// tensor and scalar recurrences.
    pub fn is_so21(&self) -> bool {
        matches!(self, GroupFamily::SO(2))
    }

    /// Error unless the family supports tensor and recurrence data.
    pub fn require_recurrences(&self) -> Result<()> {
        if self.is_so21() {
            Err(Error::Unsupported(
                "SO(2,1) has no tensor or recurrence data".into(),
            ))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::F4 => write!(f, "F4"),
            other => write!(f, "{}({},1)", other.name(), other.n().unwrap_or_default()),
        }
    }
}

/// Restricted-root data of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralData {
    /// Multiplicity of the restricted root `α`.
    pub m_alpha: u32,
    /// Multiplicity of `2α`.
    pub m_2alpha: u32,
    /// `ρ(H) = m_α/2 + m_2α`.
    #[serde(serialize_with = "crate::cli::ser_q")]
    pub rho_h: Q,
    /// `dim p = m_α + m_2α + 1`.
    pub dim_p: u32,
    /// `K/M` is the sphere of this dimension.
    pub sphere_dim: u32,
}

/// Structural constants of `family`.
pub fn structural_data(family: GroupFamily) -> StructuralData {
    let (m_alpha, m_2alpha) = match family {
        GroupFamily::SO(n) => (n - 1, 0),
        GroupFamily::SU(n) => (2 * n - 2, 1),
        GroupFamily::Sp(n) => (4 * n - 4, 3),
        GroupFamily::F4 => (8, 7),
    };
    let dim_p = m_alpha + m_2alpha + 1;
    StructuralData {
        m_alpha,
        m_2alpha,
        rho_h: qf(i64::from(m_alpha), 2) + q(i64::from(m_2alpha)),
        dim_p,
        sphere_dim: dim_p - 1,
    }
}

/// `ρ(H)` of `family`.
pub fn rho_h(family: GroupFamily) -> Q {
    structural_data(family).rho_h
}

/// A real spectral parameter, recorded by its value `μ(H)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SpectralParam {
    /// `μ(H)`.
    #[serde(serialize_with = "crate::cli::ser_q")]
    pub mu_h: Q,
}

impl SpectralParam {
    /// Wrap a value of `μ(H)`.
    pub fn new(mu_h: Q) -> Self {
        SpectralParam { mu_h }
    }
}

/// The two Gamma-function arguments of `e(μ)^{-1}`:
/// `½(½m_α + 1 + μ(H))` and `½(½m_α + m_2α + μ(H))`.
pub fn e_inverse_gamma_args(family: GroupFamily, mu: &SpectralParam) -> (Q, Q) {
    let d = structural_data(family);
    let half_m = qf(i64::from(d.m_alpha), 2);
    let half = qf(1, 2);
    let first = &half * (&half_m + Q::one() + &mu.mu_h);
    let second = &half * (&half_m + q(i64::from(d.m_2alpha)) + &mu.mu_h);
    (first, second)
}

/// Whether `μ` is a zero of the Harish-Chandra e-function, i.e. a pole of one
/// of the two Gamma factors of `e(μ)^{-1}`.
pub fn is_exceptional(family: GroupFamily, mu: &SpectralParam) -> bool {
    let (a, b) = e_inverse_gamma_args(family, mu);
    is_nonpositive_integer(&a) || is_nonpositive_integer(&b)
}

/// Closed form of the `ℓ`-th exceptional parameter `μ_ℓ(H)`.
pub fn exceptional_closed_form(family: GroupFamily, ell: u32) -> Q {
    let rho = rho_h(family);
    let l = i64::from(ell);
    match family {
        GroupFamily::SO(_) => -rho - q(l),
        GroupFamily::SU(_) => -rho - q(2 * l),
        GroupFamily::Sp(_) => -rho - q(2 * l - 2),
        GroupFamily::F4 => -rho - q(2 * l - 6),
    }
}

/// The first `count` exceptional parameters in decreasing order, from the closed form.
pub fn exceptional_params(family: GroupFamily, count: u32) -> Vec<SpectralParam> {
    (0..count)
        .map(|l| SpectralParam::new(exceptional_closed_form(family, l)))
        .collect()
}

/// Every exceptional `μ(H)` in `[-bound, 0]`, found by scanning the predicate
/// [`is_exceptional`] over the half-integer grid, in decreasing order.
///
/// Both Gamma arguments are `½(integer + μ(H))` shifted by halves, so a pole can
/// only occur at `μ(H) ∈ ½ℤ`; the scan is therefore exhaustive.
pub fn exceptional_by_scan(family: GroupFamily, bound: u32) -> Vec<SpectralParam> {
    (0..=2 * i64::from(bound))
        .map(|j| SpectralParam::new(qf(-j, 2)))
        .filter(|mu| is_exceptional(family, mu))
        .collect()
}

/// Closed-form exceptional parameters lying in `[-bound, 0]`, decreasing.
pub fn exceptional_closed_in_range(family: GroupFamily, bound: u32) -> Vec<SpectralParam> {
    let lower = -q(i64::from(bound));
    let mut out = Vec::new();
    for ell in 0.. {
        let mu = exceptional_closed_form(family, ell);
        if mu < lower {
            break;
        }
        if !mu.is_positive() {
            out.push(SpectralParam::new(mu));
        }
    }
    out
}
