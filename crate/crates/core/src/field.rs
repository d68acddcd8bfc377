//! Exact scalar arithmetic over a prime field F_p or the rationals.
//!
//! Every computation in the workbench bottoms out in ranks and kernels of
//! matrices over one of these fields, so scalars are kept exact: machine
//! integers mod p, or arbitrary-precision rationals.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Default prime for fast runs. Large enough that small integer minors
/// never collapse accidentally.
pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("scalar {0} does not belong to field {1}")]
    TagMismatch(String, Field),
    #[error("division by zero")]
    DivisionByZero,
}

/// Field tag shared by all scalars of one computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Prime(u64),
    Rational,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "fp{p}"),
            Field::Rational => write!(f, "rational"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn default_prime() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }

    /// Parse a field tag as used on the command line: `fp32003`, `101`, `rational`, `q`.
    pub fn parse(s: &str) -> Result<Self, FieldError> {
        let t = s.trim().to_ascii_lowercase();
        if t == "rational" || t == "q" || t == "qq" {
            return Ok(Field::Rational);
        }
        let digits = t.strip_prefix("fp").unwrap_or(&t);
        let p: u64 = digits.parse().map_err(|_| FieldError::NotPrime(0))?;
        Field::prime(p)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(0),
            Field::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(1),
            Field::Rational => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => {
                let m = v.rem_euclid(*p as i64) as u64;
                Scalar::Fp(m)
            }
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Checks that a scalar carries this field's representation and is in range.
    pub fn validate(&self, s: &Scalar) -> Result<(), FieldError> {
        match (self, s) {
            (Field::Prime(p), Scalar::Fp(v)) if v < p => Ok(()),
            (Field::Rational, Scalar::Rat(_)) => Ok(()),
            _ => Err(FieldError::TagMismatch(format!("{s}"), *self)),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("field tag mismatch in add"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + p - y) % p),
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => panic!("field tag mismatch in sub"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x * y) % p),
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("field tag mismatch in mul"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            (Field::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("field tag mismatch in neg"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Ok(Scalar::Fp(mod_inverse(*x, *p))),
            (Field::Rational, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            _ => panic!("field tag mismatch in inv"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// Extended Euclid; `a` nonzero mod prime `p`.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "inverse of non-unit");
    t0.rem_euclid(p as i128) as u64
}

/// One exact field element. The matching `Field` carries the modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Rat(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    /// Numerator/denominator view used by the fraction-free rational path.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Fp(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(v) => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

pub(crate) fn big_rational_abs(r: &BigRational) -> BigRational {
    if r.is_negative() {
        -r
    } else {
        r.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(Field::prime(32003).is_ok());
        assert!(Field::prime(101).is_ok());
        assert_eq!(Field::prime(32001), Err(FieldError::NotPrime(32001)));
        assert_eq!(Field::prime(1), Err(FieldError::NotPrime(1)));
    }

    #[test]
    fn parse_tags() {
        assert_eq!(Field::parse("fp32003").unwrap(), Field::Prime(32003));
        assert_eq!(Field::parse("101").unwrap(), Field::Prime(101));
        assert_eq!(Field::parse("rational").unwrap(), Field::Rational);
        assert_eq!(Field::parse("q").unwrap(), Field::Rational);
    }

    #[test]
    fn fp_arithmetic_round_trip() {
        let f = Field::Prime(7);
        let a = f.from_i64(3);
        let b = f.from_i64(-2); // = 5 mod 7
        assert_eq!(b, Scalar::Fp(5));
        assert_eq!(f.add(&a, &b), Scalar::Fp(1));
        assert_eq!(f.mul(&a, &b), Scalar::Fp(1));
        let inv = f.inv(&a).unwrap();
        assert!(f.mul(&a, &inv).is_one());
    }

    #[test]
    fn rational_inverse() {
        let f = Field::Rational;
        let a = f.from_i64(4);
        let inv = f.inv(&a).unwrap();
        assert!(f.mul(&a, &inv).is_one());
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn tag_mismatch_detected() {
        let f = Field::Prime(5);
        assert!(f.validate(&Scalar::Fp(4)).is_ok());
        assert!(f.validate(&Scalar::Fp(5)).is_err());
        assert!(f.validate(&Field::Rational.one()).is_err());
    }
}
