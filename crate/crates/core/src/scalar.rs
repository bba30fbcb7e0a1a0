//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Scalar::from_integer(acc)
}

/// `(-1)^k` as a scalar.
pub fn sign(negative: bool) -> Scalar {
    if negative {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// Formats as `n` or `n/d`.
pub fn format(q: &Scalar) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `n` or `n/d` with an optional leading sign.
pub fn parse(text: &str) -> Result<Scalar> {
    let bad = || Error::InvalidInput(format!("not a rational number: `{text}`"));
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    Ok(Scalar::new(n, d))
}

/// Serde adapter for matrices of rationals written as strings (`"2/3"`) or integers.
pub(crate) mod matrix_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Int(i64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(rows: &[Vec<Scalar>], s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for row in rows {
            let r: Vec<String> = row.iter().map(format).collect();
            seq.serialize_element(&r)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Scalar>>, D::Error> {
        let raw: Vec<Vec<Entry>> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| match e {
                        Entry::Int(n) => Ok(int(n)),
                        Entry::Text(t) => parse(&t).map_err(serde::de::Error::custom),
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let q = ratio(4, -6);
        assert_eq!(format(&q), "-2/3");
        assert_eq!(parse("-2/3").unwrap(), q);
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
    }
}
