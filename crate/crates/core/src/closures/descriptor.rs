use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ogroups::{GroupDescriptor, GroupElement, ScalarTag};
use crate::roots::RootKind;
use crate::scalars::odd_part;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureKind {
    /// `𝐂(M)`.
    StrictClosure,
    /// `𝐃(M)`.
    SqrtClosure,
}

impl ClosureKind {
    pub fn symbol(self) -> &'static str {
        match self {
            ClosureKind::StrictClosure => "C",
            ClosureKind::SqrtClosure => "D",
        }
    }
}

/// A linear factor of the base group paired with its closed counterpart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosurePair {
    pub base: GroupDescriptor,
    pub closed: GroupDescriptor,
    /// `Identity` marks a two-element factor kept as is inside `𝐃`.
    pub root: RootKind,
}

/// A closure as a product of `base → closed` pairs. The embedding is the
/// coordinatewise inclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureDescriptor {
    pub kind: ClosureKind,
    pub factors: Vec<ClosurePair>,
}

fn join_factors(ds: Vec<GroupDescriptor>) -> GroupDescriptor {
    if ds.len() == 1 {
        ds.into_iter().next().expect("one factor")
    } else {
        GroupDescriptor::Product(ds)
    }
}

impl ClosureDescriptor {
    pub fn base(&self) -> GroupDescriptor {
        join_factors(self.factors.iter().map(|p| p.base.clone()).collect())
    }

    pub fn closed(&self) -> GroupDescriptor {
        join_factors(self.factors.iter().map(|p| p.closed.clone()).collect())
    }

    /// Coordinatewise inclusion of the base group.
    pub fn embed(&self, x: &GroupElement) -> Result<GroupElement> {
        self.base().check_member(x)?;
        let y = x.clone();
        self.closed().check_member(&y)?;
        Ok(y)
    }
}

impl fmt::Display for ClosureDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = prod[ ", self.kind.symbol())?;
        for (i, p) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} -> {}", p.base, p.closed)?;
            if p.root == RootKind::Identity {
                f.write_str(" (id)")?;
            }
        }
        f.write_str(" ]")
    }
}

/// The two-divisible hull of a group in the catalog.
pub fn closed_group(d: &GroupDescriptor) -> Result<GroupDescriptor> {
    Ok(match d {
        GroupDescriptor::ScaledInt(n) => {
            let q = odd_part(&num_bigint::BigInt::from(*n));
            GroupDescriptor::Dyadic(u64::try_from(q).expect("odd part of a u64 fits"))
        }
        GroupDescriptor::Dyadic(_) | GroupDescriptor::Rat => d.clone(),
        GroupDescriptor::Quad { alpha, .. } => GroupDescriptor::Quad { alpha: alpha.clone(), dyadic: true },
        GroupDescriptor::Lex(h, g) => GroupDescriptor::Lex(Box::new(closed_group(h)?), Box::new(closed_group(g)?)),
        GroupDescriptor::Twist4(t) => GroupDescriptor::Twist4(if *t == ScalarTag::Int { ScalarTag::Dyadic } else { *t }),
        GroupDescriptor::Twist3(_) => {
            return Err(Error::Unsupported(
                "twist3 has a non-central unit, so Γ(twist3) is not symmetric and no strict closure is constructed".into(),
            ))
        }
        GroupDescriptor::Product(fs) => GroupDescriptor::Product(fs.iter().map(closed_group).collect::<Result<_>>()?),
    })
}

/// `𝐂(Γ(G,u))`, factor by factor.
pub fn strict_closure(d: &GroupDescriptor) -> Result<ClosureDescriptor> {
    d.validate()?;
    let factors = d
        .factors()
        .into_iter()
        .map(|f| Ok(ClosurePair { base: f.clone(), closed: closed_group(f)?, root: RootKind::Strict }))
        .collect::<Result<_>>()?;
    Ok(ClosureDescriptor { kind: ClosureKind::StrictClosure, factors })
}

/// The canonical root of the closure: `r(x) = (x − u)/2 + u` on strict
/// factors and the identity on kept two-element factors.
pub fn closure_sqrt(c: &ClosureDescriptor, x: &GroupElement) -> Result<GroupElement> {
    let closed = c.closed();
    closed.check_member(x)?;
    let zero = closed.zero();
    let unit = closed.unit();
    if !(closed.leq(&zero, x) && closed.leq(x, &unit)) {
        return Err(Error::NotMember(format!("{} is outside [0,u]", closed.render(x))));
    }
    let mut out = x.clone();
    for (p, r) in c.factors.iter().zip(closed.factor_ranges()) {
        if p.root == RootKind::Identity {
            continue;
        }
        if !p.closed.is_unit_central().0 {
            return Err(Error::Unsupported(format!("the unit of {} is not central", p.closed)));
        }
        let part = GroupElement(x.0[r.clone()].to_vec());
        let u = p.closed.unit();
        let shifted = p.closed.add(&part, &p.closed.neg(&u));
        let half = p.closed.try_halve(&shifted).ok_or_else(|| {
            Error::Invalid(format!("{} is not halvable in {}", p.closed.render(&shifted), p.closed))
        })?;
        out.0[r].clone_from_slice(&p.closed.add(&half, &u).0);
    }
    Ok(out)
}

/// Closing twice gives the same closed group.
pub fn strict_closure_idempotence_check(d: &GroupDescriptor) -> Result<bool> {
    let once = strict_closure(d)?.closed();
    let twice = strict_closure(&once)?;
    Ok(twice.closed() == once && twice.factors.iter().all(|p| p.base == p.closed))
}
