//! The scalar type: exact rationals with arbitrary-precision integer
//! numerator and denominator.
//!
//! `BigRational` already maintains the invariants we need (lowest terms,
//! positive denominator), so the crate uses it directly and only adds the
//! text representation used by every JSON interface: `"p"` or `"p/q"` with
//! `q > 0` and `gcd(p, q) = 1`, never decimals.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};
use std::str::FromStr;

/// Exact rational scalar; the only number type in the crate.
pub type Scalar = BigRational;

/// Integer scalar.
pub fn rat(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational scalar `p/q`. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders `x` as `"p"` or `"p/q"`.
pub fn scalar_to_string(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"`; the result is reduced with positive denominator.
pub fn scalar_from_str(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).map_err(|e| Error::Parse(format!("bad numerator `{s}`: {e}")))?;
    let q =
        BigInt::from_str(q).map_err(|e| Error::Parse(format!("bad denominator `{s}`: {e}")))?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(p, q))
}

/// Serde helpers mapping `Vec<Scalar>` to a vector of rational strings.
pub mod serde_scalar_vec {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Scalar], ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(scalar_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Vec<Scalar>, D::Error> {
        let strings = Vec::<String>::deserialize(de)?;
        strings
            .iter()
            .map(|s| scalar_from_str(s).map_err(D::Error::custom))
            .collect()
    }
}

/// Signum as an exact scalar, used by a few tests.
pub fn signum(x: &Scalar) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_lowest_terms() {
        let x = scalar_from_str("6/-4").unwrap();
        assert_eq!(scalar_to_string(&x), "-3/2");
        assert_eq!(x, ratio(-3, 2));
        assert_eq!(scalar_to_string(&rat(7)), "7");
        assert_eq!(scalar_from_str("7").unwrap(), rat(7));
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(scalar_from_str("1/0").is_err());
        assert!(scalar_from_str("x").is_err());
    }
}
