use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::Rational;
use crate::error::Error;

/// A value `a + b·√d` of the real quadratic field ℚ(√d).
///
/// `d` is a square-free integer greater than one, so the pair `(a, b)` is
/// unique for a fixed `d`. Ordering is decided with rational arithmetic only.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadValue {
    a: Rational,
    b: Rational,
    d: BigInt,
}

/// Checks that `d` is a usable field parameter: square-free and greater than one.
pub fn check_discriminant(d: &BigInt) -> Result<(), Error> {
    let Some(n) = d.to_u64() else {
        return Err(Error::Param(format!("sqrt parameter {d} out of range")));
    };
    if n < 2 {
        return Err(Error::Param(format!("sqrt parameter must exceed 1, got {n}")));
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % (p * p) == 0 {
            return Err(Error::Param(format!("sqrt parameter {n} is not square-free")));
        }
        p += 1;
    }
    Ok(())
}

impl QuadValue {
    pub fn new(a: Rational, b: Rational, d: impl Into<BigInt>) -> Result<Self, Error> {
        let d = d.into();
        check_discriminant(&d)?;
        Ok(QuadValue { a, b, d })
    }

    pub(crate) fn new_unchecked(a: Rational, b: Rational, d: BigInt) -> Self {
        QuadValue { a, b, d }
    }

    pub fn rational(a: Rational, d: &BigInt) -> Self {
        QuadValue { a, b: Rational::zero(), d: d.clone() }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn same_field(&self, other: &Self) -> Result<(), Error> {
        if self.d == other.d || self.b.is_zero() || other.b.is_zero() {
            Ok(())
        } else {
            Err(Error::Param(format!(
                "mismatched fields sqrt({}) and sqrt({})",
                self.d, other.d
            )))
        }
    }

    fn field_of(&self, other: &Self) -> BigInt {
        if self.b.is_zero() {
            other.d.clone()
        } else {
            self.d.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.same_field(other)?;
        Ok(QuadValue {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.field_of(other),
        })
    }

    pub fn neg(&self) -> Self {
        QuadValue { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.same_field(other)?;
        let d = Rational::from_int(self.field_of(other));
        Ok(QuadValue {
            a: &(&self.a * &other.a) + &(&(&self.b * &other.b) * &d),
            b: &(&self.a * &other.b) + &(&self.b * &other.a),
            d: self.field_of(other),
        })
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QuadValue { a: &self.a * k, b: &self.b * k, d: self.d.clone() }
    }

    pub fn half(&self) -> Self {
        QuadValue { a: self.a.half(), b: self.b.half(), d: self.d.clone() }
    }

    /// Exact sign of `a + b√d`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.signum();
        let sb = self.b.signum();
        match (sa, sb) {
            (_, Ordering::Equal) => sa,
            (Ordering::Equal, _) => sb,
            _ if sa == sb => sa,
            _ => {
                // opposite signs: compare a^2 with b^2 d
                let a2 = &self.a * &self.a;
                let b2d = &(&self.b * &self.b) * &Rational::from_int(self.d.clone());
                match sa {
                    Ordering::Greater => a2.cmp(&b2d),
                    _ => b2d.cmp(&a2),
                }
            }
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, Error> {
        Ok(self.sub(other)?.signum())
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * self.d.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

impl fmt::Display for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, self.b.abs(), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for QuadValue {
    type Err = Error;

    /// Parses `a+b*sqrt(d)`, `a-b*sqrt(d)`, `b*sqrt(d)`, `a+sqrt(d)`, `sqrt(d)`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("not a quadratic value: `{s}`"));
        let pos = s.find("sqrt(").ok_or_else(bad)?;
        let rest = &s[pos + 5..];
        let d_str = rest.strip_suffix(')').ok_or_else(bad)?;
        let d: BigInt = d_str.parse().map_err(|_| bad())?;
        let head = &s[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        // split `head` into the rational part and the coefficient of sqrt(d)
        let split = head
            .char_indices()
            .filter(|&(i, c)| (c == '+' || c == '-') && i > 0)
            .map(|(i, _)| i)
            .last();
        let (a_str, b_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let a: Rational = a_str.parse().map_err(|_| bad())?;
        let b: Rational = match b_str {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => other.strip_prefix('+').unwrap_or(other).parse().map_err(|_| bad())?,
        };
        if b.is_zero() && a.is_zero() && d.is_zero() {
            return Err(bad());
        }
        QuadValue::new(a, b, d)
    }
}
