//! `[n, [[basis_index, numerator, denominator], ...]]` records.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones
//! as decimal strings. Readers re-canonicalize and check that the record
//! was already canonical.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

use crate::Cyclotomic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed cyclotomic record: {0}")]
    Malformed(String),
    #[error("record is not canonical (canonical form is {0})")]
    NotCanonical(String),
}

fn int_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => Value::from(x),
        None => Value::String(v.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt, ParseError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| ParseError::Malformed(format!("non-integer number {n}"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| ParseError::Malformed(format!("bad integer string {s:?}"))),
        other => Err(ParseError::Malformed(format!("expected integer, got {other}"))),
    }
}

impl Cyclotomic {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .iter()
            .map(|(k, c)| {
                Value::Array(vec![
                    Value::from(*k),
                    int_to_json(c.numer()),
                    int_to_json(c.denom()),
                ])
            })
            .collect();
        Value::Array(vec![Value::from(self.conductor()), Value::Array(terms)])
    }

    /// Parse and re-canonicalize; accepts non-canonical but well-formed records.
    pub fn from_json_lenient(v: &Value) -> Result<Self, ParseError> {
        let arr = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| ParseError::Malformed("expected [n, terms]".into()))?;
        let n = arr[0]
            .as_u64()
            .filter(|&n| n > 0 && n <= u32::MAX as u64)
            .ok_or_else(|| ParseError::Malformed("bad conductor".into()))? as u32;
        let terms = arr[1]
            .as_array()
            .ok_or_else(|| ParseError::Malformed("terms must be an array".into()))?;
        let mut raw = Vec::with_capacity(terms.len());
        for t in terms {
            let t = t
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| ParseError::Malformed("term must be [k, num, den]".into()))?;
            let k = t[0]
                .as_u64()
                .filter(|&k| k < n as u64)
                .ok_or_else(|| ParseError::Malformed("basis index out of range".into()))?;
            let num = int_from_json(&t[1])?;
            let den = int_from_json(&t[2])?;
            if den.is_zero() {
                return Err(ParseError::Malformed("zero denominator".into()));
            }
            raw.push((k as u32, BigRational::new(num, den)));
        }
        Ok(Cyclotomic::from_rational_terms(n, raw))
    }

    /// Parse, re-canonicalize, and reject records that were not canonical.
    pub fn from_json(v: &Value) -> Result<Self, ParseError> {
        let c = Self::from_json_lenient(v)?;
        if c.to_json() != *v {
            return Err(ParseError::NotCanonical(c.to_json().to_string()));
        }
        Ok(c)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Cyclotomic::from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn writes_record() {
        let x = Cyclotomic::root_of_unity(3, 1).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(x.to_json(), json!([3, [[1, 1, 2]]]));
        assert_eq!(Cyclotomic::zero().to_json(), json!([1, []]));
    }

    #[test]
    fn rejects_non_canonical() {
        // 1 written over ζ3 is not canonical
        let v = json!([3, [[0, 1, 1]]]);
        assert!(matches!(Cyclotomic::from_json(&v), Err(ParseError::NotCanonical(_))));
        assert_eq!(Cyclotomic::from_json_lenient(&v).unwrap(), Cyclotomic::one());
    }

    #[test]
    fn rejects_garbage() {
        assert!(Cyclotomic::from_json(&json!([0, []])).is_err());
        assert!(Cyclotomic::from_json(&json!([3, [[5, 1, 1]]])).is_err());
        assert!(Cyclotomic::from_json(&json!([3, [[1, 1, 0]]])).is_err());
    }

    #[test]
    fn big_coefficients_round_trip() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let x = Cyclotomic::from_bigint(big);
        let v = x.to_json();
        assert_eq!(Cyclotomic::from_json(&v).unwrap(), x);
    }
}
