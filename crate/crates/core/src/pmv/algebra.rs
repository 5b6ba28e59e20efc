use std::sync::Arc;

use super::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::ogroups::{GroupDescriptor, GroupElement};
use crate::value::Value;

/// A pseudo MV-algebra: `Γ(G,u)` over a cataloged group, or a finite
/// table-backed algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebra {
    Gamma(GroupDescriptor),
    Finite(Arc<FiniteAlgebra>),
}

/// An element of an [`Algebra`]: a group element for `Γ`, a carrier index for
/// finite algebras.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Group(GroupElement),
    Index(usize),
}

impl Element {
    pub fn index(&self) -> Option<usize> {
        match self {
            Element::Index(i) => Some(*i),
            Element::Group(_) => None,
        }
    }

    pub fn group(&self) -> Option<&GroupElement> {
        match self {
            Element::Group(g) => Some(g),
            Element::Index(_) => None,
        }
    }
}

impl From<FiniteAlgebra> for Algebra {
    fn from(f: FiniteAlgebra) -> Self {
        Algebra::Finite(Arc::new(f))
    }
}

impl Algebra {
    pub fn gamma(desc: GroupDescriptor) -> Result<Self> {
        desc.validate()?;
        Ok(Algebra::Gamma(desc))
    }

    /// `M_n = {0, 1/n, …, 1}` as a finite algebra.
    pub fn finite_mv_chain(n: u64) -> Result<Self> {
        Ok(FiniteAlgebra::chain(n)?.into())
    }

    /// Direct product. Finite factors give a finite product; otherwise every
    /// factor is converted to a descriptor and the result is `Γ(∏ G_i, u)`.
    pub fn product(factors: &[Algebra]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Param("product of no algebras".into()));
        }
        let finite: Option<Vec<&FiniteAlgebra>> = factors.iter().map(|a| a.as_finite()).collect();
        if let Some(fs) = finite {
            return Ok(FiniteAlgebra::product(&fs)?.into());
        }
        let descs = factors.iter().map(|a| a.to_descriptor()).collect::<Result<Vec<_>>>()?;
        Algebra::gamma(GroupDescriptor::Product(descs))
    }

    /// The interval algebra `[0,b]` for a Boolean `b`.
    pub fn interval(&self, b: &Element) -> Result<Self> {
        if !self.is_boolean(b)? {
            return Err(Error::NotBoolean(self.show(b)));
        }
        match self {
            Algebra::Finite(f) => Ok(f.interval(self.idx(b)?)?.0.into()),
            Algebra::Gamma(d) => {
                let g = self.grp(b)?;
                let keep: Vec<GroupDescriptor> = d
                    .factors()
                    .into_iter()
                    .zip(d.factor_ranges())
                    .filter(|(_, r)| g.0[r.clone()].iter().any(|c| !c.is_zero()))
                    .map(|(f, _)| f.clone())
                    .collect();
                match keep.len() {
                    0 => Ok(FiniteAlgebra::trivial().into()),
                    k if k == d.factors().len() => Ok(self.clone()),
                    1 => Algebra::gamma(keep.into_iter().next().unwrap()),
                    _ => Algebra::gamma(GroupDescriptor::Product(keep)),
                }
            }
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteAlgebra> {
        match self {
            Algebra::Finite(f) => Some(f),
            Algebra::Gamma(_) => None,
        }
    }

    pub fn descriptor(&self) -> Option<&GroupDescriptor> {
        match self {
            Algebra::Gamma(d) => Some(d),
            Algebra::Finite(_) => None,
        }
    }

    /// A descriptor `G` with this algebra isomorphic to `Γ(G,u)`.
    pub fn to_descriptor(&self) -> Result<GroupDescriptor> {
        match self {
            Algebra::Gamma(d) => Ok(d.clone()),
            Algebra::Finite(f) => f.to_descriptor(),
        }
    }

    /// Tabulates `Γ(G,u)` when its carrier is finite; finite algebras are returned as is.
    pub fn to_finite(&self) -> Result<Arc<FiniteAlgebra>> {
        match self {
            Algebra::Finite(f) => Ok(f.clone()),
            Algebra::Gamma(d) => Ok(Arc::new(finite_gamma(d)?)),
        }
    }

    /// Number of elements, when finite.
    pub fn size(&self) -> Option<usize> {
        match self {
            Algebra::Finite(f) => Some(f.size()),
            Algebra::Gamma(_) => None,
        }
    }

    pub fn elements(&self) -> Option<Vec<Element>> {
        self.size().map(|n| (0..n).map(Element::Index).collect())
    }

    pub fn zero(&self) -> Element {
        match self {
            Algebra::Finite(f) => Element::Index(f.zero()),
            Algebra::Gamma(d) => Element::Group(d.zero()),
        }
    }

    pub fn one(&self) -> Element {
        match self {
            Algebra::Finite(f) => Element::Index(f.one()),
            Algebra::Gamma(d) => Element::Group(d.unit()),
        }
    }

    /// Reads an element from its textual shape and checks the carrier.
    pub fn element(&self, v: &Value) -> Result<Element> {
        match self {
            Algebra::Finite(f) => f
                .index_of(v)
                .map(Element::Index)
                .ok_or_else(|| Error::NotMember(format!("{v} is not an element of the finite algebra"))),
            Algebra::Gamma(d) => {
                let x = Element::Group(d.element(v)?);
                self.check(&x)?;
                Ok(x)
            }
        }
    }

    pub fn render(&self, x: &Element) -> Value {
        match (self, x) {
            (Algebra::Finite(f), Element::Index(i)) if *i < f.size() => f.label(*i).clone(),
            (Algebra::Gamma(d), Element::Group(g)) => d.render(g),
            _ => Value::Tuple(Vec::new()),
        }
    }

    pub fn show(&self, x: &Element) -> String {
        self.render(x).to_string()
    }

    pub fn contains(&self, x: &Element) -> bool {
        match (self, x) {
            (Algebra::Finite(f), Element::Index(i)) => *i < f.size(),
            (Algebra::Gamma(d), Element::Group(g)) => {
                d.contains(g) && d.leq(&d.zero(), g) && d.leq(g, &d.unit())
            }
            _ => false,
        }
    }

    /// Errors unless `x` is in the carrier.
    pub fn check(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            return Ok(());
        }
        match (self, x) {
            (Algebra::Gamma(d), Element::Group(g)) if d.contains(g) => {
                Err(Error::NotMember(format!("{} is not in [0,u] of {d}", d.render(g))))
            }
            (Algebra::Gamma(d), Element::Group(g)) => d.check_member(g).map(|_| ()),
            _ => Err(Error::AlgebraMismatch(format!("{x:?} does not belong to this algebra"))),
        }
    }

    pub(crate) fn idx(&self, x: &Element) -> Result<usize> {
        match (self, x) {
            (Algebra::Finite(f), Element::Index(i)) if *i < f.size() => Ok(*i),
            _ => Err(Error::AlgebraMismatch(format!("{x:?} is not an element of a finite algebra"))),
        }
    }

    pub(crate) fn grp<'a>(&self, x: &'a Element) -> Result<&'a GroupElement> {
        match (self, x) {
            (Algebra::Gamma(d), Element::Group(g)) if g.0.len() == d.arity() => Ok(g),
            _ => Err(Error::AlgebraMismatch(format!("{x:?} is not an element of this Γ algebra"))),
        }
    }

    fn binary(
        &self,
        x: &Element,
        y: &Element,
        fin: impl Fn(&FiniteAlgebra, usize, usize) -> usize,
        gam: impl Fn(&GroupDescriptor, &GroupElement, &GroupElement) -> GroupElement,
    ) -> Result<Element> {
        match self {
            Algebra::Finite(f) => Ok(Element::Index(fin(f, self.idx(x)?, self.idx(y)?))),
            Algebra::Gamma(d) => Ok(Element::Group(gam(d, self.grp(x)?, self.grp(y)?))),
        }
    }

    /// `x ⊕ y = (x + y) ∧ u`.
    pub fn oplus(&self, x: &Element, y: &Element) -> Result<Element> {
        self.binary(x, y, FiniteAlgebra::oplus, |d, a, b| d.meet(&d.add(a, b), &d.unit()))
    }

    /// `x ⊙ y = (x − u + y) ∨ 0`.
    pub fn odot(&self, x: &Element, y: &Element) -> Result<Element> {
        self.binary(x, y, FiniteAlgebra::odot, |d, a, b| {
            d.join(&d.add(&d.sub(a, &d.unit()), b), &d.zero())
        })
    }

    /// `x⁻ = u − x`.
    pub fn lneg(&self, x: &Element) -> Result<Element> {
        match self {
            Algebra::Finite(f) => Ok(Element::Index(f.lneg(self.idx(x)?))),
            Algebra::Gamma(d) => Ok(Element::Group(d.sub(&d.unit(), self.grp(x)?))),
        }
    }

    /// `x~ = −x + u`.
    pub fn rneg(&self, x: &Element) -> Result<Element> {
        match self {
            Algebra::Finite(f) => Ok(Element::Index(f.rneg(self.idx(x)?))),
            Algebra::Gamma(d) => Ok(Element::Group(d.add(&d.neg(self.grp(x)?), &d.unit()))),
        }
    }

    pub fn join(&self, x: &Element, y: &Element) -> Result<Element> {
        self.binary(x, y, FiniteAlgebra::join, |d, a, b| d.join(a, b))
    }

    pub fn meet(&self, x: &Element, y: &Element) -> Result<Element> {
        self.binary(x, y, FiniteAlgebra::meet, |d, a, b| d.meet(a, b))
    }

    /// `x → y = (x⁻ + y) ∧ u`.
    pub fn arrow(&self, x: &Element, y: &Element) -> Result<Element> {
        self.binary(x, y, FiniteAlgebra::arrow, |d, a, b| {
            d.meet(&d.add(&d.sub(&d.unit(), a), b), &d.unit())
        })
    }

    pub fn leq(&self, x: &Element, y: &Element) -> Result<bool> {
        match self {
            Algebra::Finite(f) => Ok(f.leq(self.idx(x)?, self.idx(y)?)),
            Algebra::Gamma(d) => Ok(d.leq(self.grp(x)?, self.grp(y)?)),
        }
    }

    pub fn is_boolean(&self, x: &Element) -> Result<bool> {
        Ok(&self.oplus(x, x)? == x)
    }

    /// Idempotent elements in carrier order.
    pub fn boolean_skeleton(&self) -> Result<Vec<Element>> {
        match self {
            Algebra::Finite(f) => Ok(f.boolean_skeleton().into_iter().map(Element::Index).collect()),
            Algebra::Gamma(d) => {
                if d.factors().len() > 16 {
                    return Err(Error::Resource("Boolean skeleton with more than 2^16 elements".into()));
                }
                Ok(d.gamma_idempotents().into_iter().map(Element::Group).collect())
            }
        }
    }

    /// Whether `x⁻ = x~` for all `x`, with a violating element otherwise.
    ///
    /// For `Γ(G,u)` the answer is read off the centrality of `u`, and the
    /// returned witness is re-checked against both negations.
    pub fn is_symmetric(&self) -> Result<(bool, Option<Element>)> {
        match self {
            Algebra::Finite(f) => {
                let (s, w) = f.is_symmetric();
                Ok((s, w.map(Element::Index)))
            }
            Algebra::Gamma(d) => match d.is_unit_central() {
                (true, _) => Ok((true, None)),
                (false, w) => {
                    let w = Element::Group(w.expect("non-central unit has a witness"));
                    if self.contains(&w) && self.lneg(&w)? != self.rneg(&w)? {
                        Ok((false, Some(w)))
                    } else {
                        Err(Error::Unsupported(format!("symmetry of Γ({d}) without a carrier witness")))
                    }
                }
            },
        }
    }
}

fn finite_gamma(d: &GroupDescriptor) -> Result<FiniteAlgebra> {
    match d {
        GroupDescriptor::ScaledInt(n) => FiniteAlgebra::chain(*n),
        GroupDescriptor::Product(fs) => {
            let parts = fs.iter().map(finite_gamma).collect::<Result<Vec<_>>>()?;
            FiniteAlgebra::product(&parts.iter().collect::<Vec<_>>())
        }
        other => Err(Error::Unsupported(format!("Γ({other}) has an infinite carrier"))),
    }
}
