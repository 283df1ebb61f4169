//! Serde helpers that write big integers as exact JSON numbers and rationals
//! as `"p/q"` strings.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::ser::SerializeSeq;
use serde::Serializer;
use serde_json::Number;

fn number<E: serde::ser::Error>(digits: &str) -> Result<Number, E> {
    Number::from_str(digits).map_err(E::custom)
}

pub fn ser_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_some(&number::<S::Error>(&v.to_string())?)
}

pub fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_some(&number::<S::Error>(&v.to_string())?)
}

pub fn ser_biguint_seq<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&number::<S::Error>(&x.to_string())?)?;
    }
    seq.end()
}

pub fn ser_bigint_seq<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&number::<S::Error>(&x.to_string())?)?;
    }
    seq.end()
}

pub fn ser_opt_bigint_seq<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_bigint_seq(v, s),
        None => s.serialize_none(),
    }
}

pub fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ser_rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(v))
}

pub fn ser_opt_rational<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&rational_string(r)),
        None => s.serialize_none(),
    }
}

pub fn ser_rational_seq<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&rational_string(x))?;
    }
    seq.end()
}

pub fn ser_opt_rational_seq<S: Serializer>(v: &[Option<BigRational>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.as_ref().map(rational_string))?;
    }
    seq.end()
}

/// Parses `"p/q"` or `"p"`; rejects a zero denominator.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let text = text.trim();
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p = BigInt::from_str(p).map_err(|e| format!("bad numerator {p:?}: {e}"))?;
    let q = BigInt::from_str(q).map_err(|e| format!("bad denominator {q:?}: {e}"))?;
    if q == BigInt::from(0) {
        return Err("zero denominator".to_string());
    }
    Ok(BigRational::new(p, q))
}
