//! The scalars `ν(V,Y)` and `T = (μ+ρ)(H)·λ(V,Y) + ν(V,Y)` relating Poisson
//! transforms of neighbouring K-types, their vanishing at reducibility
//! points, and the growth products of the socle recursions.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{rho_h, GroupFamily, SpectralParam};
use crate::ktypes::{enumerate_labels, label_dim, KTypeLabel};
use crate::rational::{factorial, q, to_f64, Q};
use crate::spherical::lambda_scalar;

/// `λ(V,Y)` together with `ν(V,Y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalarPair {
    /// `λ(V,Y)`.
    #[serde(serialize_with = "crate::cli::ser_q")]
    pub lam: Q,
    /// `ν(V,Y)`.
    #[serde(serialize_with = "crate::cli::ser_q")]
    pub nu: Q,
}

fn direction(v: &KTypeLabel, y: &KTypeLabel) -> Vec<i64> {
    y.coords()
        .iter()
        .zip(v.coords())
        .map(|(a, b)| a - b)
        .collect()
}

/// The factor `ν(V,Y)/λ(V,Y)` for the step from `V` to `Y`.
fn nu_factor(family: GroupFamily, v: &KTypeLabel, y: &KTypeLabel) -> Result<Q> {
    let rho = rho_h(family);
    let c = v.coords();
    let d = direction(v, y);
    let bad = || Error::NotRelated(format!("{y} is not a neighbour of {v}"));
    Ok(match family {
        GroupFamily::SO(_) => {
            let l = c[0];
            match d[0] {
                1 => q(l),
                -1 => -(q(2) * &rho + q(l - 1)),
                _ => return Err(bad()),
            }
        }
        GroupFamily::SU(_) => {
            let (p, qq) = (c[0], c[1]);
            match (d[0], d[1]) {
                (1, 0) => q(2 * p),
                (0, -1) => -q(2) * (&rho + q(qq - 1)),
                (0, 1) => q(2 * qq),
                (-1, 0) => -q(2) * (&rho + q(p - 1)),
                _ => return Err(bad()),
            }
        }
        GroupFamily::Sp(n) => {
            let (n, a, b) = (i64::from(n), c[0], c[1]);
            match (d[0], d[1]) {
                (1, 0) => q(2 * a),
                (0, -1) => -q(4 * n - 2 + 2 * b),
                (0, 1) => q(2 * (b - 1)),
                (-1, 0) => -q(4 * n + 2 * a),
                _ => return Err(bad()),
            }
        }
        GroupFamily::F4 => {
            let (m, l) = (c[0], c[1]);
            match (d[0], d[1]) {
                (1, 1) => q(m + l),
                (-1, 1) => -q(14 + m - l),
                (1, -1) => q(m - l - 6),
                (-1, -1) => -q(20 + m + l),
                _ => return Err(bad()),
            }
        }
    })
}

/// `λ(V,Y)` and `ν(V,Y)` for an ω-related pair.
pub fn scalar_pair(v: &KTypeLabel, y: &KTypeLabel) -> Result<ScalarPair> {
    let lam = lambda_scalar(v, y)?;
    if lam.is_zero() {
        return Err(Error::NotRelated(format!("{v} and {y} are not omega-related")));
    }
    let nu = nu_factor(v.family(), v, y)? * &lam;
    Ok(ScalarPair { lam, nu })
}

/// `ν(V,Y)`, looked up by the direction of the step from `V` to `Y`.
pub fn nu_scalar(v: &KTypeLabel, y: &KTypeLabel) -> Result<Q> {
    Ok(scalar_pair(v, y)?.nu)
}

/// `T(V→Y, μ) = (μ+ρ)(H)·λ(V,Y) + ν(V,Y)`.
pub fn t_scalar(v: &KTypeLabel, y: &KTypeLabel, mu: &SpectralParam) -> Result<Q> {
    let pair = scalar_pair(v, y)?;
    Ok((&mu.mu_h + rho_h(v.family())) * pair.lam + pair.nu)
}

/// The unique root `μ(H) = −ρ(H) − ν/λ` of `μ ↦ T(V→Y, μ)`.
pub fn t_root(v: &KTypeLabel, y: &KTypeLabel) -> Result<SpectralParam> {
    let pair = scalar_pair(v, y)?;
    Ok(SpectralParam::new(-rho_h(v.family()) - pair.nu / pair.lam))
}

/// One row of the reducibility table: a step direction and the parameter at
/// which a closed invariant subspace separates source from target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingRow {
    /// Step from `V` to `Y` in label coordinates.
    pub direction: Vec<i64>,
    /// Readable form of the parameter, e.g. `"-rho-l"`.
    pub parameter: &'static str,
}

/// Rows of the reducibility table of `family`.
pub fn vanishing_rows(family: GroupFamily) -> Vec<VanishingRow> {
    let row = |d: &[i64], parameter| VanishingRow {
        direction: d.to_vec(),
        parameter,
    };
    match family {
        GroupFamily::SO(_) => vec![row(&[1], "-rho-l"), row(&[-1], "rho+l-1")],
        GroupFamily::SU(_) => vec![
            row(&[1, 0], "-2p-rho"),
            row(&[0, -1], "rho+2(q-1)"),
            row(&[0, 1], "-2q-rho"),
            row(&[-1, 0], "rho+2(p-1)"),
        ],
        GroupFamily::Sp(_) => vec![
            row(&[1, 0], "-(rho+2a)"),
            row(&[0, -1], "rho+2b-4"),
            row(&[0, 1], "-(rho-2+2b)"),
            row(&[-1, 0], "rho-2+2a"),
        ],
        GroupFamily::F4 => vec![
            row(&[1, 1], "-(rho+m+l)"),
            row(&[-1, 1], "rho+m-l-8"),
            row(&[1, -1], "-(rho-6+m-l)"),
            row(&[-1, -1], "rho-2+m+l"),
        ],
    }
}

/// The parameter `μ(H)` of the reducibility-table row for the step `direction` out of `v`.
pub fn vanishing_parameter(v: &KTypeLabel, direction: &[i64]) -> Result<Q> {
    let family = v.family();
    let rho = rho_h(family);
    let c = v.coords();
    let bad = || Error::NotRelated(format!("no table row for direction {direction:?}"));
    Ok(match family {
        GroupFamily::SO(_) => match direction {
            [1] => -&rho - q(c[0]),
            [-1] => &rho + q(c[0] - 1),
            _ => return Err(bad()),
        },
        GroupFamily::SU(_) => match direction {
            [1, 0] => -q(2 * c[0]) - &rho,
            [0, -1] => &rho + q(2 * (c[1] - 1)),
            [0, 1] => -q(2 * c[1]) - &rho,
            [-1, 0] => &rho + q(2 * (c[0] - 1)),
            _ => return Err(bad()),
        },
        GroupFamily::Sp(_) => match direction {
            [1, 0] => -(&rho + q(2 * c[0])),
            [0, -1] => &rho + q(2 * c[1] - 4),
            [0, 1] => -(&rho - q(2) + q(2 * c[1])),
            [-1, 0] => &rho - q(2) + q(2 * c[0]),
            _ => return Err(bad()),
        },
        GroupFamily::F4 => match direction {
            [1, 1] => -(&rho + q(c[0] + c[1])),
            [-1, 1] => &rho + q(c[0] - c[1] - 8),
            [1, -1] => -(&rho - q(6) + q(c[0] - c[1])),
            [-1, -1] => &rho - q(2) + q(c[0] + c[1]),
            _ => return Err(bad()),
        },
    })
}

/// Summary of [`vanishing_table_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    /// Number of `(V, Y)` pairs examined.
    pub pairs_checked: usize,
    /// Pairs where `T` did not vanish at the table parameter, or the root of
    /// `T` differed from it.
    pub failures: Vec<String>,
}

impl VanishingReport {
    /// Whether every pair passed.
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.pairs_checked > 0
    }
}

/// For every label with coordinates `≤ bound` and every row of the
/// reducibility table whose target exists, check `T(V→Y, μ_row) = 0` and
/// that the root of `T` is `μ_row`.
pub fn vanishing_table_check(family: GroupFamily, bound: i64) -> Result<VanishingReport> {
    family.require_recurrences()?;
    let mut pairs_checked = 0;
    let mut failures = Vec::new();
    for v in enumerate_labels(family, bound) {
        for row in vanishing_rows(family) {
            let Some(y) = v.shifted(&row.direction) else {
                continue;
            };
            if lambda_scalar(&v, &y)?.is_zero() {
                continue;
            }
            pairs_checked += 1;
            let mu = SpectralParam::new(vanishing_parameter(&v, &row.direction)?);
            let t = t_scalar(&v, &y, &mu)?;
            let root = t_root(&v, &y)?;
            if !t.is_zero() || root != mu {
                failures.push(format!("{v} -> {y} at {}", row.parameter));
            }
        }
    }
    Ok(VanishingReport {
        pairs_checked,
        failures,
    })
}

/// The step from `V` down to the trivial K-type, where `V` is the unique
/// M-spherical neighbour of the trivial type lying below it.
pub fn trivial_neighbour(family: GroupFamily) -> Result<KTypeLabel> {
    family.require_recurrences()?;
    let coords: &[i64] = match family {
        GroupFamily::SO(_) => &[1],
        GroupFamily::SU(_) => &[1, 0],
        GroupFamily::Sp(_) => &[1, 0],
        GroupFamily::F4 => &[1, 1],
    };
    KTypeLabel::new(family, coords)
}

/// Exponent in the polynomial growth bound of the socle recursion:
/// `2n+ℓ` for `SU`, `2n−1+2ℓ` for `Sp` and `7+2ℓ−2` for `F4`.
pub fn stated_growth_exponent(family: GroupFamily, ell: u32) -> Result<i64> {
    let l = i64::from(ell);
    match family {
        GroupFamily::SU(n) => Ok(2 * i64::from(n) + l),
        GroupFamily::Sp(n) => Ok(2 * i64::from(n) - 1 + 2 * l),
        GroupFamily::F4 => Ok(7 + 2 * l - 2),
        GroupFamily::SO(_) => Err(Error::Unsupported(
            "growth products are stated for SU, Sp and F4 only".into(),
        )),
    }
}

fn nonzero(x: Q, what: &str) -> Result<Q> {
    if x.is_zero() {
        Err(Error::DivisionByZero(what.to_string()))
    } else {
        Ok(x)
    }
}

/// The `r`-th ratio of a growth product (`r ≥ 2`). For `Sp` the dimension
/// ratio is included only when `with_dims` is set.
fn growth_ratio(family: GroupFamily, ell: i64, r: i64, fixed: i64, with_dims: bool) -> Result<Q> {
    match family {
        GroupFamily::SU(n) => {
            let n = i64::from(n);
            let p = ell + r;
            let num = q((n + p - 2) * (n + p + fixed - 1) * (n + p));
            let den = nonzero(q(p * (n + p + fixed - 2) * (p - 1 - ell)), "SU growth ratio")?;
            Ok(num / den)
        }
        GroupFamily::Sp(_) => {
            let base = q(sp_numerator(family, ell, r)) / q(r);
            if with_dims {
                let hi = KTypeLabel::new(family, &[ell + r, fixed])?;
                let lo = KTypeLabel::new(family, &[ell + r - 1, fixed])?;
                Ok(base * Q::from_integer(label_dim(&hi)) / Q::from_integer(label_dim(&lo)))
            } else {
                Ok(base)
            }
        }
        GroupFamily::F4 => {
            // Steps run over a(m,k) = j from ℓ+2 upwards.
            let j = ell + r;
            Ok(q(7 + ell + j) / nonzero(q(2 - ell + j), "F4 growth ratio")?)
        }
        GroupFamily::SO(_) => Err(Error::Unsupported(
            "growth products are stated for SU, Sp and F4 only".into(),
        )),
    }
}

fn sp_numerator(family: GroupFamily, ell: i64, r: i64) -> i64 {
    let n = i64::from(family.n().unwrap_or(0));
    2 * n - 1 + 2 * ell + r
}

/// Iterated product of `steps` ratios of the socle recursion and the closed
/// factorial form of the same product.
///
/// * `SU(n,1)`: ratios at `p = ℓ+r`, `r = 2..m`, with `m = steps+1` and
///   `q = fixed_coord`.
/// * `Sp(n,1)`: ratios `(2n−1+2ℓ+r)/r · dim V_{ℓ+r,b}/dim V_{ℓ+r−1,b}`,
///   `r = 2..m`, `m = steps+1`, `b = fixed_coord ≤ ℓ+1`.
/// * `F4`: ratios `(7+ℓ+j)/(2−ℓ+j)` for `j = ℓ+2..ℓ+p`, `p = steps+1`;
///   `fixed_coord` is not used.
pub fn growth_product(family: GroupFamily, ell: u32, steps: u32, fixed_coord: u32) -> Result<(Q, Q)> {
    if steps == 0 {
        return Err(Error::InvalidLabel("steps must be positive".into()));
    }
    let l = i64::from(ell);
    let fixed = i64::from(fixed_coord);
    let m = i64::from(steps) + 1;
    if let GroupFamily::Sp(_) = family {
        if fixed > l + 1 {
            return Err(Error::InvalidLabel(format!(
                "Sp growth product needs b <= l+1, got b = {fixed}"
            )));
        }
    }
    let mut product = Q::one();
    if let GroupFamily::Sp(_) = family {
        // Dimensions of V_{ℓ+1,b}, …, V_{ℓ+m,b}, each computed once.
        let dims = (l + 1..=l + m)
            .map(|a| KTypeLabel::new(family, &[a, fixed]).map(|lab| Q::from_integer(label_dim(&lab))))
            .collect::<Result<Vec<_>>>()?;
        for r in 2..=m {
            let idx = (r - 1) as usize;
            product *= growth_ratio(family, l, r, fixed, false)? * &dims[idx] / &dims[idx - 1];
        }
    } else {
        for r in 2..=m {
            product *= growth_ratio(family, l, r, fixed, true)?;
        }
    }
    let f = |x: i64| factorial(x);
    let closed = match family {
        GroupFamily::SU(n) => {
            let n = i64::from(n);
            let qq = fixed;
            q(n + l + m + qq - 1) * f(n + l + m - 2) * f(l + 1) * f(n + l + m)
                / (q(n + l + qq) * f(n + l - 1) * f(l + m) * f(m - 1) * f(n + l + 1))
        }
        GroupFamily::Sp(n) => {
            let n = i64::from(n);
            let hi = KTypeLabel::new(family, &[l + m, fixed])?;
            let lo = KTypeLabel::new(family, &[l + 1, fixed])?;
            f(2 * n - 1 + 2 * l + m) / (f(m) * f(2 * n + 2 * l))
                * Q::from_integer(label_dim(&hi))
                / Q::from_integer(label_dim(&lo))
        }
        GroupFamily::F4 => q(6) * f(7 + 2 * l + m) / (f(8 + 2 * l) * f(2 + m)),
        GroupFamily::SO(_) => unreachable!("rejected by growth_ratio"),
    };
    Ok((product, closed))
}

/// Least-squares slope of `log(product)` against `log(m)` over the upper half
/// of `1..=max_steps`, rounded to the nearest integer.
///
/// For `SU` the full product is used (with `q = ℓ+1`); for `Sp` and `F4` the
/// factorial factor alone.
pub fn growth_order_estimate(family: GroupFamily, ell: u32, max_steps: u32) -> Result<i64> {
    if max_steps < 64 {
        return Err(Error::InvalidLabel("max_steps must be at least 64".into()));
    }
    stated_growth_exponent(family, ell)?;
    let l = i64::from(ell);
    let fixed = l + 1;
    let mut log_product = 0.0f64;
    let mut points = Vec::new();
    for steps in 1..=i64::from(max_steps) {
        let r = steps + 1;
        let ratio = growth_ratio(family, l, r, fixed, false)?;
        if !ratio.is_positive() {
            return Err(Error::Algorithm(format!("nonpositive growth ratio at r = {r}")));
        }
        log_product += to_f64(&ratio).ln();
        if steps > i64::from(max_steps) / 2 {
            points.push(((r as f64).ln(), log_product));
        }
    }
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    Ok((sxy / sxx).round() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_step_growth() {
        for fam in [GroupFamily::SU(3), GroupFamily::Sp(2), GroupFamily::F4] {
            let (p, c) = growth_product(fam, 1, 1, 1).unwrap();
            assert_eq!(p, c);
        }
    }

    #[test]
    fn so_growth_unsupported() {
        assert!(growth_product(GroupFamily::SO(5), 0, 3, 0).is_err());
    }
}
