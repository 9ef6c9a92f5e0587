//! Exact rationals and their `"num/den"` wire form.
//!
//! The denominator is always printed, so integers render as `"5/1"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_wire(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn from_wire(s: &str) -> Result<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n
        .parse()
        .or_else(|_| domain(format!("bad rational numerator in {s:?}")))?;
    let d: BigInt = d
        .parse()
        .or_else(|_| domain(format!("bad rational denominator in {s:?}")))?;
    if d.is_zero() {
        return domain(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}

/// Reduce into [0, 1).
pub fn frac_part(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn is_integer_valued(r: &Rational) -> bool {
    r.denom().is_one()
}

/// serde adaptor: `#[serde(with = "crate::rational::wire")]`.
pub mod wire {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_wire(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        from_wire(&s).map_err(serde::de::Error::custom)
    }
}
