//! Exact rational scalars and the small vector helpers used everywhere.
//!
//! All torus coordinates live in `[0, 1)` and every operation reduces mod 1.
//! Rationals serialize as `"p/q"` strings; no floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Reduce into the half-open fundamental interval `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn vec_frac(v: &[Rational]) -> Vec<Rational> {
    v.iter().map(frac).collect()
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_is_zero(a: &[Rational]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Smallest positive n with n*v integral, i.e. the order of v in (Q/Z)^k.
pub fn point_order(coords: &[Rational]) -> Result<u64> {
    let mut l = BigInt::one();
    for c in coords {
        l = l.lcm(c.denom());
    }
    l.to_u64()
        .ok_or_else(|| Error::InvalidTorsion("torsion order does not fit in u64".into()))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = |_| Error::InvalidTorsion(format!("cannot parse rational {s:?}"));
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let num = BigInt::from_str(n.trim()).map_err(err)?;
            let den = BigInt::from_str(d.trim()).map_err(err)?;
            if den.is_zero() {
                return Err(Error::InvalidTorsion(format!("zero denominator in {s:?}")));
            }
            Rational::new(num, den)
        }
        None => Rational::from_integer(BigInt::from_str(s.trim()).map_err(err)?),
    };
    Ok(r)
}

/// Parse a coordinate that must already be reduced into `[0, 1)`.
pub fn parse_coordinate(s: &str) -> Result<Rational> {
    let r = parse_rational(s)?;
    if r.is_negative() || r >= rat_int(1) {
        return Err(Error::InvalidTorsion(format!(
            "coordinate {s:?} is not in [0, 1)"
        )));
    }
    Ok(r)
}

/// Canonical `"p/q"` rendering (always with the denominator, e.g. `0/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
