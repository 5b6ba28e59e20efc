use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalars::{QuadValue, Rational};

/// Coordinate ring of the twisted families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarTag {
    Int,
    Dyadic,
    Rat,
}

impl ScalarTag {
    pub fn admits(self, r: &Rational) -> bool {
        match self {
            ScalarTag::Int => r.is_integer(),
            ScalarTag::Dyadic => r.is_dyadic(),
            ScalarTag::Rat => true,
        }
    }

    pub fn is_two_divisible(self) -> bool {
        self != ScalarTag::Int
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ScalarTag::Int => "Z",
            ScalarTag::Dyadic => "D",
            ScalarTag::Rat => "Q",
        }
    }
}

/// A unital lattice-ordered group from the supported catalog. The strong unit
/// is fixed per family (see [`GroupDescriptor::unit`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    /// `(1/n)ℤ`, unit 1.
    ScaledInt(u64),
    /// `(1/q)𝔻` for odd `q`, unit 1.
    Dyadic(u64),
    /// `ℚ`, unit 1.
    Rat,
    /// `ℤ + ℤα`, or `{d + mα/2^k}` when `dyadic` is set; unit 1.
    Quad { alpha: QuadValue, dyadic: bool },
    /// Lexicographic product `H ⃗× G` with unit `(u_H, 0)`.
    Lex(Box<GroupDescriptor>, Box<GroupDescriptor>),
    /// `S³` with `(a,b,c)+(x,y,z) = (a+x, b+y, c+z+ay)`, unit `(1,0,0)`.
    Twist3(ScalarTag),
    /// `S⁴` with `(a,b,c,d)+(x,y,z,w) = (a+x, b+y, c+z, d+w+bz)`, unit `(1,0,0,0)`.
    Twist4(ScalarTag),
    /// Direct product with componentwise order.
    Product(Vec<GroupDescriptor>),
}

impl GroupDescriptor {
    pub fn int() -> Self {
        GroupDescriptor::ScaledInt(1)
    }

    pub fn dyadic() -> Self {
        GroupDescriptor::Dyadic(1)
    }

    pub fn lex(h: GroupDescriptor, g: GroupDescriptor) -> Self {
        GroupDescriptor::Lex(Box::new(h), Box::new(g))
    }

    pub fn quad(alpha: QuadValue, dyadic: bool) -> Self {
        GroupDescriptor::Quad { alpha, dyadic }
    }

    /// Checks family parameters: positive `n`, odd `q`, irrational `α`,
    /// a linear head in lexicographic products and non-empty products.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupDescriptor::ScaledInt(0) => Err(Error::Param("Z/n needs n >= 1".into())),
            GroupDescriptor::Dyadic(q) if *q == 0 || q % 2 == 0 => Err(Error::Param(format!(
                "D/{q}: the scale must be an odd positive integer (even factors are absorbed by the dyadics)"
            ))),
            GroupDescriptor::Quad { alpha, .. } if alpha.is_rational() => {
                Err(Error::Param(format!("quad({alpha}): α must be irrational")))
            }
            GroupDescriptor::Lex(h, g) => {
                h.validate()?;
                g.validate()?;
                if !h.is_linear() {
                    return Err(Error::Param(format!(
                        "lex({h},{g}): the head group must be linearly ordered"
                    )));
                }
                Ok(())
            }
            GroupDescriptor::Product(fs) => {
                if fs.is_empty() {
                    return Err(Error::Param("prod() needs at least one factor".into()));
                }
                fs.iter().try_for_each(|f| f.validate())
            }
            _ => Ok(()),
        }
    }

    /// Number of rational coordinates of an element.
    pub fn arity(&self) -> usize {
        match self {
            GroupDescriptor::ScaledInt(_) | GroupDescriptor::Dyadic(_) | GroupDescriptor::Rat => 1,
            GroupDescriptor::Quad { .. } => 2,
            GroupDescriptor::Lex(h, g) => h.arity() + g.arity(),
            GroupDescriptor::Twist3(_) => 3,
            GroupDescriptor::Twist4(_) => 4,
            GroupDescriptor::Product(fs) => fs.iter().map(|f| f.arity()).sum(),
        }
    }

    pub fn is_linear(&self) -> bool {
        match self {
            GroupDescriptor::Product(fs) => fs.len() == 1 && fs[0].is_linear(),
            GroupDescriptor::Lex(_, g) => g.is_linear(),
            _ => true,
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupDescriptor::Twist3(_) | GroupDescriptor::Twist4(_) => false,
            GroupDescriptor::Lex(h, g) => h.is_abelian() && g.is_abelian(),
            GroupDescriptor::Product(fs) => fs.iter().all(|f| f.is_abelian()),
            _ => true,
        }
    }

    pub fn is_two_divisible(&self) -> bool {
        match self {
            GroupDescriptor::ScaledInt(_) => false,
            GroupDescriptor::Dyadic(_) | GroupDescriptor::Rat => true,
            GroupDescriptor::Quad { dyadic, .. } => *dyadic,
            GroupDescriptor::Lex(h, g) => h.is_two_divisible() && g.is_two_divisible(),
            GroupDescriptor::Twist3(t) | GroupDescriptor::Twist4(t) => t.is_two_divisible(),
            GroupDescriptor::Product(fs) => fs.iter().all(|f| f.is_two_divisible()),
        }
    }

    /// True when `Γ(G,u)` has finitely many elements.
    pub fn has_finite_gamma(&self) -> bool {
        match self {
            GroupDescriptor::ScaledInt(_) => true,
            GroupDescriptor::Product(fs) => fs.iter().all(|f| f.has_finite_gamma()),
            _ => false,
        }
    }

    /// Top-level factors; a non-product descriptor is its own single factor.
    pub fn factors(&self) -> Vec<&GroupDescriptor> {
        match self {
            GroupDescriptor::Product(fs) => fs.iter().flat_map(|f| f.factors()).collect(),
            other => vec![other],
        }
    }

    /// Offsets of each top-level factor inside the flat coordinate vector.
    pub(crate) fn factor_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut at = 0;
        self.factors()
            .into_iter()
            .map(|f| {
                let r = at..at + f.arity();
                at = r.end;
                r
            })
            .collect()
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::ScaledInt(1) => write!(f, "Z"),
            GroupDescriptor::ScaledInt(n) => write!(f, "Z/{n}"),
            GroupDescriptor::Dyadic(1) => write!(f, "D"),
            GroupDescriptor::Dyadic(q) => write!(f, "D/{q}"),
            GroupDescriptor::Rat => write!(f, "Q"),
            GroupDescriptor::Quad { alpha, dyadic: false } => write!(f, "quad({alpha})"),
            GroupDescriptor::Quad { alpha, dyadic: true } => write!(f, "dquad({alpha})"),
            GroupDescriptor::Lex(h, g) => write!(f, "lex({h},{g})"),
            GroupDescriptor::Twist3(t) => write!(f, "twist3({})", t.symbol()),
            GroupDescriptor::Twist4(t) => write!(f, "twist4({})", t.symbol()),
            GroupDescriptor::Product(fs) => {
                write!(f, "prod(")?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
