//! Terminating Gauss hypergeometric series as exact polynomials, and the
//! contiguous relations used by the recurrence lemmas.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{as_i64, is_nonpositive_integer, q, qf, to_string, Q};

/// Rising factorial `(x)_n = x(x+1)…(x+n−1)`, with `(x)_0 = 1`.
pub fn pochhammer(x: &Q, n: u32) -> Q {
    (0..n).fold(Q::one(), |acc, i| acc * (x + q(i64::from(i))))
}

/// A terminating series `F(a,b,c;z)` stored as its polynomial in `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F21Poly {
    /// Upper parameter `a`.
    pub a: Q,
    /// Upper parameter `b`.
    pub b: Q,
    /// Lower parameter `c`.
    pub c: Q,
    poly: Poly,
}

impl Serialize for F21Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("F21Poly", 4)?;
        st.serialize_field("a", &to_string(&self.a))?;
        st.serialize_field("b", &to_string(&self.b))?;
        st.serialize_field("c", &to_string(&self.c))?;
        let coeffs: Vec<String> = self.coeffs().iter().map(to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// Number of nonzero terms after which the series stops, i.e. the smallest of
/// `−a`, `−b` over the parameters that are nonpositive integers.
fn termination_degree(a: &Q, b: &Q) -> Option<u32> {
    [a, b]
        .into_iter()
        .filter(|x| is_nonpositive_integer(x))
        .filter_map(|x| as_i64(&-x.clone()))
        .filter_map(|d| u32::try_from(d).ok())
        .min()
}

/// Build the polynomial `F(a,b,c;z)`.
///
/// Requires `a` or `b` to be a nonpositive integer, and `(c)_j ≠ 0` for every
/// index `j` up to the degree, i.e. `c ∉ {0, −1, …, 1−deg}`.
pub fn f21(a: &Q, b: &Q, c: &Q) -> Result<F21Poly> {
    let deg = termination_degree(a, b).ok_or_else(|| {
        Error::InvalidHypergeometric(format!(
            "F({}, {}, {}) does not terminate",
            to_string(a),
            to_string(b),
            to_string(c)
        ))
    })?;
    let mut coeffs = Vec::with_capacity(deg as usize + 1);
    let mut term = Q::one();
    coeffs.push(term.clone());
    for j in 0..deg {
        let jq = q(i64::from(j));
        let denom = (c + &jq) * (&jq + Q::one());
        if denom.is_zero() {
            return Err(Error::InvalidHypergeometric(format!(
                "lower parameter c = {} meets a pole before the series terminates",
                to_string(c)
            )));
        }
        term = term * (a + &jq) * (b + &jq) / denom;
        coeffs.push(term.clone());
    }
    Ok(F21Poly {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        poly: Poly::new(coeffs),
    })
}

impl F21Poly {
    /// Coefficients in increasing powers of `z`, padded to the termination degree.
    pub fn coeffs(&self) -> Vec<Q> {
        let deg = termination_degree(&self.a, &self.b).unwrap_or(0) as usize;
        (0..=deg).map(|i| self.poly.coeff(i)).collect()
    }

    /// The polynomial in `z`.
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// Exact value at `z`.
    pub fn eval(&self, z: &Q) -> Q {
        self.poly.eval(z)
    }

    /// Floating value at `z`.
    pub fn eval_f64(&self, z: f64) -> f64 {
        self.poly.eval_f64(z)
    }

    /// Formal derivative in `z`.
    pub fn derivative(&self) -> Poly {
        self.poly.derivative()
    }
}

/// The five contiguous relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Contiguous {
    /// `F' = (ab/c) F(a+1,b+1,c+1)`.
    I,
    /// `(c−b−a)F = (c−b)F(a,b−1,c) + a(z−1)F(a+1,b,c)`.
    II,
    /// `(c−b−a)F = (c−a)F(a−1,b,c) + b(z−1)F(a,b+1,c)`.
    III,
    /// `F(a,b+1,c) − F = (az/c) F(a+1,b+1,c+1)`.
    IV,
    /// `F(a+1,b,c) − F = (bz/c) F(a+1,b+1,c+1)`.
    V,
}

impl Contiguous {
    /// All five relations.
    pub const ALL: [Contiguous; 5] = [
        Contiguous::I,
        Contiguous::II,
        Contiguous::III,
        Contiguous::IV,
        Contiguous::V,
    ];

    /// Parse a roman numeral `i`..`v`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" => Ok(Contiguous::I),
            "ii" => Ok(Contiguous::II),
            "iii" => Ok(Contiguous::III),
            "iv" => Ok(Contiguous::IV),
            "v" => Ok(Contiguous::V),
            other => Err(Error::Parse(format!("unknown contiguous relation {other:?}"))),
        }
    }
}

/// `coef · F(a,b,c)` as a polynomial; the series is not built when `coef = 0`,
/// so a non-terminating factor multiplied by zero is accepted.
fn scaled(coef: &Q, a: &Q, b: &Q, c: &Q) -> Result<Poly> {
    if coef.is_zero() {
        Ok(Poly::zero())
    } else {
        Ok(f21(a, b, c)?.poly.scale(coef))
    }
}

/// Check one contiguous relation as an exact polynomial identity in `z`.
///
/// Every series that enters with a nonzero coefficient must terminate and be
/// well defined; otherwise an error is returned.
pub fn check_contiguous(rel: Contiguous, a: &Q, b: &Q, c: &Q) -> Result<bool> {
    let one = Q::one();
    let z = Poly::x();
    let zm1 = Poly::new(vec![-Q::one(), Q::one()]);
    let (lhs, rhs) = match rel {
        Contiguous::I => (
            f21(a, b, c)?.derivative(),
            scaled(&(a * b / c), &(a + &one), &(b + &one), &(c + &one))?,
        ),
        Contiguous::II => (
            scaled(&(c - b - a), a, b, c)?,
            scaled(&(c - b), a, &(b - &one), c)?
                .add(&zm1.mul(&scaled(a, &(a + &one), b, c)?)),
        ),
        Contiguous::III => (
            scaled(&(c - b - a), a, b, c)?,
            scaled(&(c - a), &(a - &one), b, c)?
                .add(&zm1.mul(&scaled(b, a, &(b + &one), c)?)),
        ),
        Contiguous::IV => (
            f21(a, &(b + &one), c)?.poly.sub(&f21(a, b, c)?.poly),
            z.mul(&scaled(&(a / c), &(a + &one), &(b + &one), &(c + &one))?),
        ),
        Contiguous::V => (
            f21(&(a + &one), b, c)?.poly.sub(&f21(a, b, c)?.poly),
            z.mul(&scaled(&(b / c), &(a + &one), &(b + &one), &(c + &one))?),
        ),
    };
    Ok(lhs == rhs)
}

/// Seeded terminating parameter triples `(a, b, c)` on which every
/// contiguous relation is well defined: `a ∈ {−1, …, −8}`, `b = p/d` with
/// `|p| ≤ 12`, `d ∈ {1,2,3}`, and `c = p'/d'` positive with `d' ∈ {1,…,4}`.
pub fn seeded_triples(seed: u64, count: usize) -> Vec<(Q, Q, Q)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = q(-rng.random_range(1i64..=8));
            let b = qf(rng.random_range(-12i64..=12), rng.random_range(1i64..=3));
            let c = qf(rng.random_range(1i64..=20), rng.random_range(1i64..=4));
            (a, b, c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&q(5), 0), q(1));
        assert_eq!(pochhammer(&q(-2), 3), q(0));
        assert_eq!(pochhammer(&qf(1, 2), 2), qf(3, 4));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(f21(&qf(1, 2), &qf(1, 3), &q(1)).is_err());
        assert!(f21(&q(-3), &q(1), &q(-1)).is_err());
        assert!(f21(&q(-2), &q(1), &q(-2)).is_ok());
    }
}
