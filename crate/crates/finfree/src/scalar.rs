//! Exact rational scalars and small integer helpers.
//!
//! Every quantity in this crate is a [`Q`] (arbitrary-precision rational);
//! no floating point enters any computation. Serialized form is the string
//! `"num/den"` with the denominator omitted when it equals one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

/// `n` as a rational.
pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n/d` as a rational.
pub fn q_ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient `C(n, k)` as a rational (0 when `k > n`).
pub fn binomial(n: u64, k: u64) -> Q {
    if k > n {
        return Q::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Q::new(num, den)
}

/// Factorial `n!` as a rational.
pub fn factorial(n: u64) -> Q {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Q::from_integer(acc)
}

/// Falling factorial `(n)_k = n (n-1) ... (n-k+1)`.
pub fn falling(n: u64, k: u64) -> Q {
    let mut acc = BigInt::one();
    for i in 0..k {
        if i >= n {
            return Q::zero();
        }
        acc *= BigInt::from(n - i);
    }
    Q::from_integer(acc)
}

/// Integer power `base^exp` for signed exponents; errors on `0^negative`.
pub fn q_pow(base: &Q, exp: i64) -> Result<Q> {
    if base.is_zero() && exp < 0 {
        return Err(Error::Singular("zero raised to a negative power".into()));
    }
    if exp >= 0 {
        Ok(num_traits::pow::pow(base.clone(), exp as usize))
    } else {
        Ok(num_traits::pow::pow(base.clone(), (-exp) as usize)
            .recip())
    }
}

/// Renders a rational as `num/den`, omitting `/den` when the denominator is 1.
pub fn format_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"` or `"p/q"` into a rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator: {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator: {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator: {s:?}")));
    }
    Ok(Q::new(n, d))
}

/// Decimal rendering with `digits` fractional digits, for `--approx` output only.
pub fn approx_decimal(q: &Q, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (q * Q::from_integer(scale.clone())).round();
    let int = scaled.numer() / scaled.denom();
    let neg = int.is_negative();
    let abs = int.abs();
    let (whole, frac) = (&abs / &scale, &abs % &scale);
    let frac = format!("{:0width$}", frac, width = digits as usize);
    format!("{}{}.{}", if neg { "-" } else { "" }, whole, frac)
}

/// Serde adapter: `Vec<Q>` as a JSON array of `"num/den"` strings.
pub mod q_vec_serde {
    use super::{format_q, parse_q, Q};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(format_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Q>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(de)?;
        raw.iter()
            .map(|s| parse_q(s).map_err(|e| D::Error::custom(e.to_string())))
            .collect()
    }
}

/// Serde adapter: a single `Q` as a `"num/den"` string.
pub mod q_serde {
    use super::{format_q, parse_q, Q};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Q, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_q(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Q, D::Error> {
        let raw = String::deserialize(de)?;
        parse_q(&raw).map_err(|e| D::Error::custom(e.to_string()))
    }
}
