use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ogroups::{GroupDescriptor, GroupElement, ScalarTag};

/// One of the three ideals of a linear factor that the prime partition can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelIdeal {
    Zero,
    /// Elements whose head coordinate vanishes.
    HeadZero,
    Full,
}

impl fmt::Display for LevelIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LevelIdeal::Zero => "{0}",
            LevelIdeal::HeadZero => "{x : head(x) = 0}",
            LevelIdeal::Full => "M",
        })
    }
}

/// Shape of the convex-subgroup chain of a linear factor: whether the top
/// quotient is `ℤ`, and how many archimedean layers there are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LexShape {
    pub head_is_z: bool,
    pub layers: usize,
}

pub fn lex_shape(d: &GroupDescriptor) -> Result<LexShape> {
    Ok(match d {
        GroupDescriptor::ScaledInt(n) => LexShape { head_is_z: *n == 1, layers: 1 },
        GroupDescriptor::Dyadic(_) | GroupDescriptor::Rat | GroupDescriptor::Quad { .. } => {
            LexShape { head_is_z: false, layers: 1 }
        }
        GroupDescriptor::Lex(h, g) => {
            let hs = lex_shape(h)?;
            let tail = if g.is_linear() { lex_shape(g)?.layers } else { 1 };
            LexShape { head_is_z: hs.head_is_z, layers: hs.layers + tail }
        }
        GroupDescriptor::Twist3(s) => LexShape { head_is_z: *s == ScalarTag::Int, layers: 3 },
        GroupDescriptor::Twist4(s) => LexShape { head_is_z: *s == ScalarTag::Int, layers: 4 },
        GroupDescriptor::Product(_) => return Err(Error::Invalid("lex_shape of a product".into())),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorSpectrum {
    pub factor: String,
    pub shape: LexShape,
    pub i1: LevelIdeal,
    pub i2: LevelIdeal,
}

impl FactorSpectrum {
    /// `Some(true)` for `a = u`, `Some(false)` for `a = 0`, `None` when no
    /// element separates the two intersections.
    pub fn nn12(&self) -> Option<bool> {
        match (self.i1, self.i2) {
            (_, LevelIdeal::Full) => Some(true),
            (LevelIdeal::Full, LevelIdeal::Zero) => Some(false),
            _ => None,
        }
    }
}

/// `I₁` and `I₂` of `Γ(G,u)` computed factor by factor from the convex
/// subgroups of each linear factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicSpectrum {
    pub factors: Vec<FactorSpectrum>,
}

impl SymbolicSpectrum {
    pub fn i1_is_zero(&self) -> bool {
        self.factors.iter().all(|f| f.i1 == LevelIdeal::Zero)
    }

    pub fn i2_is_zero(&self) -> bool {
        self.factors.iter().all(|f| f.i2 == LevelIdeal::Zero)
    }

    pub fn is_bsi(&self) -> bool {
        self.i2_is_zero()
    }

    /// The separating element, or the first factor where none exists.
    pub fn nn12(&self, d: &GroupDescriptor) -> std::result::Result<GroupElement, String> {
        let mut a = d.zero();
        let unit = d.unit();
        for (f, r) in self.factors.iter().zip(d.factor_ranges()) {
            match f.nn12() {
                Some(true) => a.0[r.clone()].clone_from_slice(&unit.0[r]),
                Some(false) => {}
                None => {
                    return Err(format!(
                        "in factor {}: I₁ = {} and I₂ = {}, so no a has a/I₁ = 1 and a/I₂ = 0",
                        f.factor, f.i1, f.i2
                    ))
                }
            }
        }
        Ok(a)
    }
}

pub fn symbolic_spectrum(d: &GroupDescriptor) -> Result<SymbolicSpectrum> {
    d.validate()?;
    let factors = d
        .factors()
        .into_iter()
        .map(|f| {
            let shape = lex_shape(f)?;
            let i1 = match (shape.head_is_z, shape.layers) {
                (true, 1) => LevelIdeal::Zero,
                (true, _) => LevelIdeal::HeadZero,
                (false, _) => LevelIdeal::Full,
            };
            let i2 = if shape.layers >= 2 || !shape.head_is_z { LevelIdeal::Zero } else { LevelIdeal::Full };
            Ok(FactorSpectrum { factor: f.to_string(), shape, i1, i2 })
        })
        .collect::<Result<_>>()?;
    Ok(SymbolicSpectrum { factors })
}
