//! Exact rational scalars and their textual form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number used for every exact scalar.
pub type Q = BigRational;

/// Integer `n` as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// The fraction `num/den`.
///
/// # Panics
/// Panics if `den == 0`.
pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Serialise as `"num/den"` (always with a denominator, e.g. `"3/1"`).
pub fn to_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parse `"a"`, `"-a"`, `"a/b"` into an exact rational.
pub fn parse(s: &str) -> Result<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(num, den))
}

/// Whether `x` is an integer `≤ 0`.
pub fn is_nonpositive_integer(x: &Q) -> bool {
    x.is_integer() && !x.is_positive()
}

/// `x` as an `i64` if it is an integer that fits.
pub fn as_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Lossy conversion to `f64`.
pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Binomial coefficient `C(n, k)` for `n ≥ 0`; zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> Q {
    if k < 0 || n < 0 || k > n {
        return Q::zero();
    }
    let k = k.min(n - k);
    let mut acc = Q::one();
    for i in 0..k {
        acc = acc * q(n - i) / q(i + 1);
    }
    acc
}

/// `n!` as a rational.
pub fn factorial(n: i64) -> Q {
    assert!(n >= 0, "factorial of a negative integer");
    (1..=n).fold(Q::one(), |acc, i| acc * q(i))
}
