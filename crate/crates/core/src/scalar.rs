//! Gaussian-rational scalars and exact rational parsing/formatting.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact complex number with big-rational real and imaginary parts.
pub type Scalar = Complex<BigRational>;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn real(r: BigRational) -> Scalar {
    Complex::new(r, BigRational::zero())
}

pub fn gauss(re: i64, im: i64) -> Scalar {
    Complex::new(int(re), int(im))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn conj(z: &Scalar) -> Scalar {
    Complex::new(z.re.clone(), -z.im.clone())
}

/// |z|² as an exact rational.
pub fn norm_sqr(z: &Scalar) -> BigRational {
    &z.re * &z.re + &z.im * &z.im
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Numerators and denominators beyond f64 range: scale by bit length.
        let shift = r.numer().bits().max(r.denom().bits()) as i64 - 60;
        let n = (r.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
        let d = (r.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
        n / d
    })
}

pub fn to_c64(z: &Scalar) -> Complex<f64> {
    Complex::new(to_f64(&z.re), to_f64(&z.im))
}

/// Parses an exact rational written as `"p/q"` or `"p"`.
///
/// Decimal and exponent notation is rejected so that no floating value can
/// enter an exact ledger.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidRational(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid = |x: &str| {
        let digits = x.strip_prefix('-').unwrap_or(x);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(n) || !valid(d) || d.starts_with('-') {
        return Err(bad());
    }
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Formats a rational as `"p/q"`, or `"p"` for integers.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Formats a Gaussian rational as `"a"`, `"bi"` or `"a+bi"` with rational parts.
pub fn fmt_scalar(z: &Scalar) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => fmt_rational(&z.re),
        (true, false) => format!("{}i", fmt_rational(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            format!("{}{}{}i", fmt_rational(&z.re), sign, fmt_rational(&z.im.abs()))
        }
    }
}

/// Serde adapters that write rationals and big integers as decimal strings.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub mod rational {
        use super::*;

        pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
            s.serialize_str(&fmt_rational(r))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
            let s = String::deserialize(d)?;
            parse_rational(&s).map_err(serde::de::Error::custom)
        }
    }

    pub mod rational_vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&fmt_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod bigint {
        use super::*;

        pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
            s.serialize_str(&n.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
            let s = String::deserialize(d)?;
            BigInt::from_str(&s).map_err(serde::de::Error::custom)
        }
    }

    pub mod bigint_vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for n in v {
                seq.serialize_element(&n.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| BigInt::from_str(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}
