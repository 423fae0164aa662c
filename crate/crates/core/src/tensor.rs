//! Decomposition of `Y ⊗ p*` into irreducible K-types.
//!
//! `p` and `p*` are isomorphic as K-representations through the Killing form,
//! so every computation here uses the weights of `p`. The production path is
//! the Racah–Speiser algorithm; [`character_oracle`] recomputes the same
//! decomposition from characters (Freudenthal's multiplicity formula and
//! peeling of highest weights).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{structural_data, GroupFamily};
use crate::ktypes::{highest_weight, label_from_weight, weyl_dim, KTypeLabel, Weight};
use crate::rational::{q, qf, Q};
use crate::weyl::{compact_roots, CompactRoots};

/// Weights with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct WeightMultiset {
    /// Weight to multiplicity.
    pub entries: BTreeMap<Weight, u64>,
}

impl WeightMultiset {
    /// Total number of weights counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }
}

/// One irreducible summand of a tensor product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summand {
    /// Highest weight.
    pub weight: Weight,
    /// The M-spherical label with this highest weight, if any.
    pub label: Option<KTypeLabel>,
    /// Multiplicity.
    pub multiplicity: u64,
}

impl Summand {
    /// Whether the summand contains a nonzero M-fixed vector.
    pub fn m_spherical(&self) -> bool {
        self.label.is_some()
    }
}

/// A decomposition into irreducibles, sorted by highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Summands in increasing weight order.
    pub summands: Vec<Summand>,
}

impl Decomposition {
    fn from_map(family: GroupFamily, map: BTreeMap<Weight, u64>) -> Self {
        Decomposition {
            summands: map
                .into_iter()
                .map(|(w, m)| Summand {
                    label: label_from_weight(family, &w),
                    weight: w,
                    multiplicity: m,
                })
                .collect(),
        }
    }

    /// Highest weights of the summands.
    pub fn weights(&self) -> Vec<Weight> {
        self.summands.iter().map(|s| s.weight.clone()).collect()
    }

    /// Labels of the M-spherical summands.
    pub fn spherical_labels(&self) -> Vec<KTypeLabel> {
        self.summands.iter().filter_map(|s| s.label.clone()).collect()
    }

    /// Whether every multiplicity equals one.
    pub fn is_multiplicity_free(&self) -> bool {
        self.summands.iter().all(|s| s.multiplicity == 1)
    }

    /// Whether a summand with highest weight `w` occurs.
    pub fn contains(&self, w: &Weight) -> bool {
        self.summands.iter().any(|s| &s.weight == w)
    }
}

fn unit(len: usize, i: usize, c: Q) -> Weight {
    let mut w = Weight::zero(len);
    w.0[i] = c;
    w
}

/// Weights of `p` (each with multiplicity one).
pub fn weights_of_p(family: GroupFamily) -> Result<WeightMultiset> {
    family.require_recurrences()?;
    let len = crate::ktypes::weight_len(family);
    let mut ws: Vec<Weight> = Vec::new();
    match family {
        GroupFamily::SO(n) => {
            for i in 0..len {
                ws.push(unit(len, i, q(1)));
                ws.push(unit(len, i, q(-1)));
            }
            if n % 2 == 1 {
                ws.push(Weight::zero(len));
            }
        }
        GroupFamily::SU(n) => {
            let n = n as usize;
            for i in 0..n {
                let b = unit(len, i, q(1)).add(&unit(len, n, q(-1)));
                ws.push(b.scale(&q(-1)));
                ws.push(b);
            }
        }
        GroupFamily::Sp(n) => {
            let n = n as usize;
            for i in 0..n {
                for s in [1, -1] {
                    for t in [1, -1] {
                        ws.push(unit(len, i, q(s)).add(&unit(len, n, q(t))));
                    }
                }
            }
        }
        GroupFamily::F4 => {
            for mask in 0..16u32 {
                ws.push(Weight(
                    (0..4)
                        .map(|i| if mask >> i & 1 == 1 { qf(-1, 2) } else { qf(1, 2) })
                        .collect(),
                ));
            }
        }
    }
    let mut entries = BTreeMap::new();
    for w in ws {
        *entries.entry(w).or_insert(0) += 1;
    }
    Ok(WeightMultiset { entries })
}

/// Racah–Speiser decomposition of `V(λ) ⊗ p` for an arbitrary dominant `λ`.
pub fn racah_speiser_weight(family: GroupFamily, lambda: &Weight) -> Result<Decomposition> {
    let p = weights_of_p(family)?;
    let roots = compact_roots(family);
    if !roots.is_dominant(lambda) {
        return Err(Error::InvalidWeight(format!("{lambda} is not dominant")));
    }
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (beta, mult) in &p.entries {
        let xi = lambda.add(&roots.rho).add(beta);
        if let Some((dom, sign)) = roots.reflect_regular(&xi) {
            *acc.entry(dom.sub(&roots.rho)).or_insert(0) += i64::from(sign) * *mult as i64;
        }
    }
    let mut out = BTreeMap::new();
    for (w, m) in acc {
        match m {
            0 => {}
            m if m < 0 => {
                return Err(Error::Algorithm(format!(
                    "negative multiplicity {m} for {w} in {family}"
                )))
            }
            m => {
                out.insert(w, m as u64);
            }
        }
    }
    Ok(Decomposition::from_map(family, out))
}

/// Racah–Speiser decomposition of `Y ⊗ p*` for an M-spherical K-type `Y`.
pub fn racah_speiser(label: &KTypeLabel) -> Result<Decomposition> {
    racah_speiser_weight(label.family(), &highest_weight(label))
}

/// Multiplicities of the dominant weights of `V(λ)`, by Freudenthal's formula.
///
/// The dominant weights are reached from `λ` by subtracting positive roots
/// through dominant intermediates only (any two dominant weights of `V(λ)`
/// are joined by such a chain), so no Weyl orbit is ever enumerated.
fn dominant_multiplicities(roots: &CompactRoots, lambda: &Weight) -> BTreeMap<Weight, u64> {
    let bound = lambda.norm2();
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![lambda.clone()];
    let mut dominant = Vec::new();
    while let Some(mu) = stack.pop() {
        if !seen.insert(mu.clone()) {
            continue;
        }
        dominant.push(mu.clone());
        for a in &roots.positive {
            let nu = mu.sub(a);
            if roots.is_dominant(&nu) && nu.norm2() <= bound && !seen.contains(&nu) {
                stack.push(nu);
            }
        }
    }
    let shift = |w: &Weight| w.add(&roots.rho).norm2();
    dominant.sort_by(|x, y| shift(y).cmp(&shift(x)).then(y.cmp(x)));
    let top = shift(lambda);
    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    for mu in dominant {
        if &mu == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut sum = Q::zero();
        for a in &roots.positive {
            let mut j = 1;
            loop {
                let nu = mu.add(&a.scale(&q(j)));
                if nu.norm2() > bound {
                    break;
                }
                let m = mult.get(&roots.dominant_rep(&nu)).copied().unwrap_or(0);
                if m > 0 {
                    sum += q(m as i64) * nu.dot(a);
                }
                j += 1;
            }
        }
        let value = q(2) * sum / (&top - shift(&mu));
        debug_assert!(value.is_integer() && !value.is_negative());
        let m = crate::rational::as_i64(&value).unwrap_or(0);
        if m > 0 {
            mult.insert(mu, m as u64);
        }
    }
    mult
}

/// Full weight multiset of the irreducible K-representation with highest weight `lambda`.
pub fn character(family: GroupFamily, lambda: &Weight) -> Result<WeightMultiset> {
    let roots = compact_roots(family);
    if !roots.is_dominant(lambda) {
        return Err(Error::InvalidWeight(format!("{lambda} is not dominant")));
    }
    let mut entries = BTreeMap::new();
    for (mu, m) in dominant_multiplicities(&roots, lambda) {
        for w in roots.orbit(&mu) {
            entries.insert(w, m);
        }
    }
    Ok(WeightMultiset { entries })
}

/// Iteration cap of the peeling loop in [`character_oracle`].
pub const ORACLE_ITERATION_CAP: usize = 10_000;

/// Decompose `Y ⊗ p` by multiplying characters and peeling off highest
/// weights. Independent of [`racah_speiser`].
///
/// Characters are Weyl invariant, so only their dominant parts are stored:
/// the multiplicity of a dominant `ν` in `χ_λ·χ_p` is `Σ_β m_λ(ν−β)·m_p(β)`,
/// with `m_λ` read off at the dominant representative.
pub fn character_oracle(label: &KTypeLabel) -> Result<Decomposition> {
    let family = label.family();
    let roots = compact_roots(family);
    let p = weights_of_p(family)?;
    let lambda = highest_weight(label);
    let m_lambda = dominant_multiplicities(&roots, &lambda);
    let mult_at = |w: &Weight| m_lambda.get(&roots.dominant_rep(w)).copied().unwrap_or(0);
    let mut product: BTreeMap<Weight, i64> = BTreeMap::new();
    for mu in m_lambda.keys() {
        for b in p.entries.keys() {
            let nu = roots.dominant_rep(&mu.add(b));
            if product.contains_key(&nu) {
                continue;
            }
            let m: u64 = p
                .entries
                .iter()
                .map(|(beta, n)| mult_at(&nu.sub(beta)) * n)
                .sum();
            product.insert(nu, m as i64);
        }
    }
    let mut out = BTreeMap::new();
    for _ in 0..ORACLE_ITERATION_CAP {
        product.retain(|_, m| *m != 0);
        if product.is_empty() {
            return Ok(Decomposition::from_map(family, out));
        }
        if let Some((w, m)) = product.iter().find(|(_, m)| **m < 0) {
            return Err(Error::Algorithm(format!(
                "character peeling left multiplicity {m} at {w}"
            )));
        }
        let top = product
            .iter()
            .max_by(|(x, _), (y, _)| {
                x.add(&roots.rho)
                    .norm2()
                    .cmp(&y.add(&roots.rho).norm2())
                    .then(x.cmp(y))
            })
            .map(|(w, m)| (w.clone(), *m))
            .expect("product is nonempty");
        for (w, m) in dominant_multiplicities(&roots, &top.0) {
            *product.entry(w).or_insert(0) -= top.1 * m as i64;
        }
        out.insert(top.0, top.1 as u64);
    }
    Err(Error::Algorithm(format!(
        "character peeling did not terminate within {ORACLE_ITERATION_CAP} steps"
    )))
}

/// The two sides of the dimension count `Σ dim(summands) = dim p · dim Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionSum {
    /// Sum of dimensions of the summands (with multiplicity).
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub summand_total: BigInt,
    /// `dim p · dim Y`.
    #[serde(serialize_with = "crate::cli::ser_display")]
    pub expected: BigInt,
}

impl DimensionSum {
    /// Whether the two sides agree.
    pub fn holds(&self) -> bool {
        self.summand_total == self.expected
    }
}

/// Dimension count for the Racah–Speiser decomposition of `Y ⊗ p*`.
pub fn dimension_sum_check(label: &KTypeLabel) -> Result<DimensionSum> {
    let family = label.family();
    let dec = racah_speiser(label)?;
    let mut total = BigInt::zero();
    for s in &dec.summands {
        total += weyl_dim(family, &s.weight)? * BigInt::from(s.multiplicity);
    }
    let expected = BigInt::from(structural_data(family).dim_p) * crate::ktypes::label_dim(label);
    Ok(DimensionSum {
        summand_total: total,
        expected,
    })
}

/// The decomposition of `Y ⊗ p*` in the closed form known for each family,
/// as a sorted list of highest weights.
///
/// * `SO(2m+1)`, `m ≥ 2`, and `SO(2m)`, `m ≥ 3`: `Y_{k-1} ⊕ Y_{k+1} ⊕ V_k`,
///   `V_k` of highest weight `k e_1 + e_2`.
/// * `SO(4)`: as above plus the summand `k e_1 − e_2`, the mirror image of `V_k`
///   under the outer automorphism of `so(4)`.
/// * `SO(3)`: `Y_{k-1} ⊕ Y_k ⊕ Y_{k+1}`.
/// * `SU`, `Sp`, `F4` (equal rank): one summand `λ+β` for every weight `β` of
///   `p` for which `λ+β` is dominant.
///
/// For `k = 0` every family gives `p` itself.
pub fn stated_decomposition(label: &KTypeLabel) -> Result<Vec<Weight>> {
    let family = label.family();
    family.require_recurrences()?;
    let lambda = highest_weight(label);
    let roots = compact_roots(family);
    let len = lambda.len();
    let mut out = Vec::new();
    match family {
        GroupFamily::SO(n) => {
            let k = label.coords()[0];
            let y = |j: i64| unit(len, 0, q(j));
            if k == 0 {
                out.push(y(1));
            } else if n == 3 {
                out.extend([y(k - 1), y(k), y(k + 1)]);
            } else {
                out.extend([y(k - 1), y(k + 1), y(k).add(&unit(len, 1, q(1)))]);
                if n == 4 {
                    out.push(y(k).add(&unit(len, 1, q(-1))));
                }
            }
        }
        _ => {
            for beta in weights_of_p(family)?.entries.keys() {
                let w = lambda.add(beta);
                if roots.is_dominant(&w) {
                    out.push(w);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_weight_counts() {
        for fam in [
            GroupFamily::SO(3),
            GroupFamily::SO(6),
            GroupFamily::SU(4),
            GroupFamily::Sp(3),
            GroupFamily::F4,
        ] {
            let p = weights_of_p(fam).unwrap();
            assert_eq!(p.total(), u64::from(structural_data(fam).dim_p));
        }
        assert!(weights_of_p(GroupFamily::SO(2)).is_err());
    }

    #[test]
    fn character_dimension() {
        let fam = GroupFamily::Sp(2);
        let lambda = Weight::from_ints(&[2, 1, 1]);
        let chi = character(fam, &lambda).unwrap();
        assert_eq!(BigInt::from(chi.total()), weyl_dim(fam, &lambda).unwrap());
    }
}
