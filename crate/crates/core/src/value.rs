use std::fmt;

use serde::{Serialize, Serializer};

use crate::scalars::{Rational, Scalar};

/// The textual shape of an element: a scalar or a parenthesized tuple.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Scalar(Scalar),
    Tuple(Vec<Value>),
}

impl Value {
    pub fn rat(r: Rational) -> Self {
        Value::Scalar(Scalar::Rat(r))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Value::rat(Rational::ratio(n, d))
    }

    pub fn int(n: i64) -> Self {
        Value::rat(Rational::from_int(n))
    }

    /// A flat tuple of rationals.
    pub fn tuple_of(rs: impl IntoIterator<Item = Rational>) -> Self {
        Value::Tuple(rs.into_iter().map(Value::rat).collect())
    }

    pub fn as_scalar(&self) -> Option<&Scalar> {
        match self {
            Value::Scalar(s) => Some(s),
            Value::Tuple(_) => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[Value]> {
        match self {
            Value::Tuple(v) => Some(v),
            Value::Scalar(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Tuple(items) => {
                write!(f, "(")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_display() {
        let v = Value::Tuple(vec![
            Value::Tuple(vec![Value::int(1), Value::int(0)]),
            Value::ratio(3, 4),
        ]);
        assert_eq!(v.to_string(), "((1,0),3/4)");
    }
}
