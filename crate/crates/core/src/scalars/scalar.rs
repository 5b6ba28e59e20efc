use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::{QuadValue, Rational};
use crate::error::Error;

/// A coordinate value as it appears in text: a rational or a quadratic irrational.
///
/// A quadratic value with zero irrational part is normalized to `Rat`, so
/// equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Quad(QuadValue),
}

impl Scalar {
    pub fn from_quad(q: QuadValue) -> Self {
        if q.is_rational() {
            Scalar::Rat(q.a().clone())
        } else {
            Scalar::Quad(q)
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Quad(_) => None,
        }
    }

    fn lift(&self, d: &num_bigint::BigInt) -> QuadValue {
        match self {
            Scalar::Rat(r) => QuadValue::rational(r.clone(), d),
            Scalar::Quad(q) => q.clone(),
        }
    }

    fn binary(
        &self,
        other: &Self,
        rat: impl Fn(&Rational, &Rational) -> Rational,
        quad: impl Fn(&QuadValue, &QuadValue) -> Result<QuadValue, Error>,
    ) -> Result<Self, Error> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(rat(a, b))),
            (Scalar::Quad(q), _) | (_, Scalar::Quad(q)) => {
                let d = q.d().clone();
                quad(&self.lift(&d), &other.lift(&d)).map(Scalar::from_quad)
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.binary(other, |a, b| a + b, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.binary(other, |a, b| a - b, |a, b| a.sub(b))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.binary(other, |a, b| a * b, |a, b| a.mul(b))
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Quad(q) => Scalar::Quad(q.neg()),
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, Error> {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(a.cmp(b)),
            (Scalar::Quad(q), _) | (_, Scalar::Quad(q)) => {
                let d = q.d().clone();
                self.lift(&d).try_cmp(&other.lift(&d))
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => r.to_f64(),
            Scalar::Quad(q) => q.to_f64(),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Quad(q) => write!(f, "{q}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.contains("sqrt") {
            s.parse::<QuadValue>().map(Scalar::from_quad)
        } else {
            s.parse::<Rational>().map(Scalar::Rat)
        }
    }
}
