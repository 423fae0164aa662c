//! Weights, compact root systems and Weyl-group actions for the maximal compact
//! subgroups `K` of the rank-one families.
//!
//! Coordinates follow the standard realisations: `SO(2m+1)` and `SO(2m)` use
//! `e_1..e_m`; `U(n)` uses `e_1..e_{n+1}` where `e_{n+1}` records the central
//! character; `Sp(n) × Sp(1)` uses `e_1..e_{n+1}` with `e_{n+1}` on the `Sp(1)`
//! factor; `Spin(9)` uses `e_1..e_4` with half-integer entries allowed.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::groups::GroupFamily;
use crate::rational::{q, qf, to_string, Q};

/// A weight in `e_i` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    /// Weight from integer coordinates.
    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| q(x)).collect())
    }

    /// The zero weight of length `len`.
    pub fn zero(len: usize) -> Self {
        Weight(vec![Q::zero(); len])
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the weight has no coordinates.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinate-wise sum.
    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Coordinate-wise difference.
    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Q) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    /// Euclidean inner product.
    pub fn dot(&self, other: &Weight) -> Q {
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Squared Euclidean norm.
    pub fn norm2(&self) -> Q {
        self.dot(self)
    }

    /// Coordinates as `"num/den"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(to_string).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if x.is_integer() {
                write!(f, "{}", x.numer())?;
            } else {
                write!(f, "{}/{}", x.numer(), x.denom())?;
            }
        }
        write!(f, ")")
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// Shape of the Weyl group of `K`, as it acts on the coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeylKind {
    /// `SO(2)`: trivial Weyl group on one coordinate.
    Trivial,
    /// Type `B_m` (`SO(2m+1)`, `Spin(9)`): all signed permutations.
    B,
    /// Type `D_m` (`SO(2m)`, `m ≥ 2`): signed permutations with an even number of sign changes.
    D,
    /// `U(n)`: permutations of the first `n` coordinates, last coordinate fixed.
    A,
    /// `Sp(n) × Sp(1)`: signed permutations of the first `n` coordinates and an
    /// independent sign on the last.
    CxA1,
}

/// Positive roots, `ρ_c` and Weyl-group shape of `K` for one family.
#[derive(Debug, Clone)]
pub struct CompactRoots {
    /// Weyl-group shape.
    pub kind: WeylKind,
    /// Number of weight coordinates.
    pub len: usize,
    /// Positive compact roots.
    pub positive: Vec<Weight>,
    /// Half-sum of the positive compact roots.
    pub rho: Weight,
}

fn unit(len: usize, i: usize, c: Q) -> Weight {
    let mut v = vec![Q::zero(); len];
    v[i] = c;
    Weight(v)
}

fn pm_pairs(len: usize, upto: usize, out: &mut Vec<Weight>) {
    for i in 0..upto {
        for j in (i + 1)..upto {
            out.push(unit(len, i, q(1)).add(&unit(len, j, q(-1))));
            out.push(unit(len, i, q(1)).add(&unit(len, j, q(1))));
        }
    }
}

/// The compact root data of the maximal compact subgroup of `family`,
/// built once per family and shared afterwards.
pub fn compact_roots(family: GroupFamily) -> Arc<CompactRoots> {
    static CACHE: OnceLock<Mutex<HashMap<GroupFamily, Arc<CompactRoots>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(family)
        .or_insert_with(|| Arc::new(build_compact_roots(family)))
        .clone()
}

fn build_compact_roots(family: GroupFamily) -> CompactRoots {
    let mut positive = Vec::new();
    let (kind, len) = match family {
        GroupFamily::SO(2) => (WeylKind::Trivial, 1),
        GroupFamily::SO(n) => {
            let m = (n / 2) as usize;
            pm_pairs(m, m, &mut positive);
            if n % 2 == 1 {
                for i in 0..m {
                    positive.push(unit(m, i, q(1)));
                }
                (WeylKind::B, m)
            } else {
                (WeylKind::D, m)
            }
        }
        GroupFamily::SU(n) => {
            let n = n as usize;
            for i in 0..n {
                for j in (i + 1)..n {
                    positive.push(unit(n + 1, i, q(1)).add(&unit(n + 1, j, q(-1))));
                }
            }
            (WeylKind::A, n + 1)
        }
        GroupFamily::Sp(n) => {
            let n = n as usize;
            pm_pairs(n + 1, n, &mut positive);
            for i in 0..=n {
                positive.push(unit(n + 1, i, q(2)));
            }
            (WeylKind::CxA1, n + 1)
        }
        GroupFamily::F4 => {
            pm_pairs(4, 4, &mut positive);
            for i in 0..4 {
                positive.push(unit(4, i, q(1)));
            }
            (WeylKind::B, 4)
        }
    };
    let rho = positive
        .iter()
        .fold(Weight::zero(len), |acc, r| acc.add(r))
        .scale(&qf(1, 2));
    CompactRoots {
        kind,
        len,
        positive,
        rho,
    }
}

/// Sort `vals` in decreasing order and return the parity (`+1`/`-1`) of the permutation used.
fn sort_desc_with_sign(vals: &mut [Q]) -> i32 {
    let n = vals.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| vals[b].cmp(&vals[a]).then(a.cmp(&b)));
    let sorted: Vec<Q> = idx.iter().map(|&i| vals[i].clone()).collect();
    vals.clone_from_slice(&sorted);
    let mut seen = vec![false; n];
    let mut sign = 1;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = idx[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

impl CompactRoots {
    /// Whether `w` lies in the closed dominant chamber.
    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.positive.iter().all(|a| !w.dot(a).is_negative())
    }

    /// Whether `w` lies on a wall, i.e. is fixed by some reflection.
    pub fn is_singular(&self, w: &Weight) -> bool {
        self.positive.iter().any(|a| w.dot(a).is_zero())
    }

    /// The dominant element of the Weyl orbit of `w`, together with the
    /// determinant of one Weyl element carrying `w` there.
    pub fn dominant_with_sign(&self, w: &Weight) -> (Weight, i32) {
        let mut v = w.0.clone();
        match self.kind {
            WeylKind::Trivial => (Weight(v), 1),
            WeylKind::B => {
                let mut sign = 1;
                for x in v.iter_mut() {
                    if x.is_negative() {
                        *x = -x.clone();
                        sign = -sign;
                    }
                }
                sign *= sort_desc_with_sign(&mut v);
                (Weight(v), sign)
            }
            WeylKind::D => {
                let mut negatives = 0;
                for x in v.iter_mut() {
                    if x.is_negative() {
                        *x = -x.clone();
                        negatives += 1;
                    }
                }
                let sign = sort_desc_with_sign(&mut v);
                let last = v.len() - 1;
                if negatives % 2 == 1 && !v[last].is_zero() {
                    v[last] = -v[last].clone();
                }
                (Weight(v), sign)
            }
            WeylKind::A => {
                let n = v.len() - 1;
                let sign = sort_desc_with_sign(&mut v[..n]);
                (Weight(v), sign)
            }
            WeylKind::CxA1 => {
                let n = v.len() - 1;
                let mut sign = 1;
                for x in v.iter_mut() {
                    if x.is_negative() {
                        *x = -x.clone();
                        sign = -sign;
                    }
                }
                sign *= sort_desc_with_sign(&mut v[..n]);
                (Weight(v), sign)
            }
        }
    }

    /// The dominant element of the Weyl orbit of `w`.
    pub fn dominant_rep(&self, w: &Weight) -> Weight {
        self.dominant_with_sign(w).0
    }

    /// For a regular `ξ`, the unique strictly dominant `w·ξ` and `det(w)`;
    /// `None` if `ξ` is fixed by a reflection.
    pub fn reflect_regular(&self, xi: &Weight) -> Option<(Weight, i32)> {
        if self.is_singular(xi) {
            None
        } else {
            Some(self.dominant_with_sign(xi))
        }
    }

    /// The full Weyl orbit of `w` (as a sorted, deduplicated list).
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![w.clone()];
        while let Some(x) = stack.pop() {
            if !seen.insert(x.clone()) {
                continue;
            }
            for a in &self.positive {
                let c = x.dot(a) * q(2) / a.norm2();
                if !c.is_zero() {
                    let y = x.sub(&a.scale(&c));
                    if !seen.contains(&y) {
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        assert_eq!(compact_roots(GroupFamily::SO(5)).rho, Weight(vec![qf(3, 2), qf(1, 2)]));
        assert_eq!(compact_roots(GroupFamily::SO(6)).rho, Weight::from_ints(&[2, 1, 0]));
        assert_eq!(
            compact_roots(GroupFamily::SU(2)).rho,
            Weight(vec![qf(1, 2), qf(-1, 2), q(0)])
        );
        assert_eq!(
            compact_roots(GroupFamily::Sp(3)).rho,
            Weight::from_ints(&[3, 2, 1, 1])
        );
        assert_eq!(
            compact_roots(GroupFamily::F4).rho,
            Weight(vec![qf(7, 2), qf(5, 2), qf(3, 2), qf(1, 2)])
        );
    }

    #[test]
    fn reflection_signs() {
        let b = compact_roots(GroupFamily::SO(5));
        let (w, s) = b.dominant_with_sign(&Weight::from_ints(&[-1, 2]));
        assert_eq!(w, Weight::from_ints(&[2, 1]));
        assert_eq!(s, 1);
        let d = compact_roots(GroupFamily::SO(6));
        let (w, s) = d.dominant_with_sign(&Weight::from_ints(&[1, -3, 2]));
        assert_eq!(w, Weight::from_ints(&[3, 2, -1]));
        assert_eq!(s, 1);
    }

    #[test]
    fn orbit_sizes() {
        let f4 = compact_roots(GroupFamily::F4);
        let half = Weight(vec![qf(1, 2); 4]);
        assert_eq!(f4.orbit(&half).len(), 16);
        let a = compact_roots(GroupFamily::SU(3));
        assert_eq!(a.orbit(&Weight::from_ints(&[1, 0, 0, -1])).len(), 3);
    }
}
