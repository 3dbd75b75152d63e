//! The scalar type and its text representation.
//!
//! Every computation in the crate is carried out over `BigRational`, which
//! keeps values in lowest terms with a positive denominator.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zeros(len: usize) -> Vec<Rational> {
    vec![Rational::zero(); len]
}

pub fn unit(len: usize, i: usize) -> Vec<Rational> {
    let mut v = zeros(len);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// Exact wire form of a rational: numerator and denominator as decimal
/// strings, denominator positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatRepr {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RatRepr {
    fn from(r: &Rational) -> Self {
        let mut num = r.numer().clone();
        let mut den = r.denom().clone();
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        RatRepr {
            num: num.to_string(),
            den: den.to_string(),
        }
    }
}

impl RatRepr {
    pub fn to_rational(&self) -> Option<Rational> {
        let n = BigInt::from_str(&self.num).ok()?;
        let d = BigInt::from_str(&self.den).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    }
}

/// Input form accepting either `{ "num": .., "den": .. }` or `"p/q"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RatInput {
    Pair(RatRepr),
    Text(String),
    Int(i64),
}

impl RatInput {
    pub fn to_rational(&self) -> Option<Rational> {
        match self {
            RatInput::Pair(p) => p.to_rational(),
            RatInput::Text(s) => parse_rational(s),
            RatInput::Int(i) => Some(int(*i)),
        }
    }
}

pub fn repr_vec(v: &[Rational]) -> Vec<RatRepr> {
    v.iter().map(RatRepr::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_positive_denominator() {
        let r = rat(4, -6);
        assert_eq!(RatRepr::from(&r), RatRepr { num: "-2".into(), den: "3".into() });
    }

    #[test]
    fn parses_text_forms() {
        assert_eq!(parse_rational("-3/9"), Some(rat(-1, 3)));
        assert_eq!(parse_rational(" 7 "), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
