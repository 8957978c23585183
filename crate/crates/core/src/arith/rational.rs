//! Exact rationals over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type BigRat = BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn from_big(n: BigInt) -> BigRat {
    BigRat::from_integer(n)
}

/// Greatest integer `<= q`.
pub fn floor(q: &BigRat) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Smallest integer `>= q`.
pub fn ceil(q: &BigRat) -> BigInt {
    -floor(&-q)
}

/// `"num/den"`, or `"num"` when the denominator is one.
pub fn fmt_rat(q: &BigRat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRat::new(n, d))
        }
        None => Ok(BigRat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn to_i64(q: &BigRat) -> Option<i64> {
    if q.is_integer() {
        i64::try_from(q.numer()).ok()
    } else {
        None
    }
}

pub fn is_positive(q: &BigRat) -> bool {
    q.is_positive()
}

/// Serde adapter writing exact rationals as strings.
pub mod serde_rat {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRat, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(int(n)),
            Raw::Str(s) => parse_rat(&s).map_err(de::Error::custom),
        }
    }
}

/// Serde adapter for lists of exact rationals.
pub mod serde_rat_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&fmt_rat(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigRat>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "super::serde_rat")] BigRat);
        let v: Vec<W> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|w| w.0).collect())
    }
}

/// Serde adapter for lists of big integers: JSON numbers when they fit in `i64`, strings otherwise.
pub mod serde_int_vec {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::ser::SerializeSeq;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            match x.to_i64() {
                Some(i) => seq.serialize_element(&i)?,
                None => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        Vec::<Raw>::deserialize(d)?
            .into_iter()
            .map(|r| match r {
                Raw::Int(i) => Ok(BigInt::from(i)),
                Raw::Str(s) => s.parse().map_err(de::Error::custom),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floors_round_down() {
        assert_eq!(floor(&rat(7, 2)), BigInt::from(3));
        assert_eq!(floor(&rat(-7, 2)), BigInt::from(-4));
        assert_eq!(floor(&rat(-4, 2)), BigInt::from(-2));
        assert_eq!(ceil(&rat(-7, 2)), BigInt::from(-3));
    }

    #[test]
    fn text_form() {
        assert_eq!(fmt_rat(&rat(34, 18)), "17/9");
        assert_eq!(fmt_rat(&rat(-4, 2)), "-2");
        assert_eq!(parse_rat(" 17/9 ").unwrap(), rat(17, 9));
        assert_eq!(parse_rat("-3").unwrap(), int(-3));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("0.5").is_err());
    }
}
