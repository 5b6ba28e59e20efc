use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::pmv::{Algebra, Element};

use super::element::{root_within, sqrt, sqrt_zero};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    pub name: &'static str,
    /// Pairs on which both sides were defined.
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub outcomes: Vec<IdentityOutcome>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(IdentityOutcome::passed)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

pub const IDENTITY_NAMES: [&str; 11] = [
    "sqrt_join",
    "sqrt_meet",
    "sqrt_neg",
    "sqrt_oplus",
    "sqrt_odot",
    "sqrt_square",
    "sqrt_double",
    "monotone",
    "zero_bound",
    "root_bound",
    "boolean_root",
];

struct Roots<'a> {
    alg: &'a Algebra,
    table: Option<Vec<Option<usize>>>,
}

impl Roots<'_> {
    fn of(&self, x: &Element) -> Result<Option<Element>> {
        match &self.table {
            Some(t) => Ok(t[self.alg.idx(x)?].map(Element::Index)),
            None => Ok(sqrt(self.alg, x)?.root().cloned()),
        }
    }
}

fn group_commute(alg: &Algebra, x: &Element, y: &Element) -> Result<bool> {
    Ok(match alg {
        Algebra::Gamma(d) => {
            let (a, b) = (alg.grp(x)?, alg.grp(y)?);
            d.add(a, b) == d.add(b, a)
        }
        Algebra::Finite(_) => true,
    })
}

/// Evaluates the square-root identities of symmetric algebras with a halvable
/// unit on every supplied pair, skipping an identity where one side is undefined.
pub fn sqrt_identities_check(alg: &Algebra, pairs: &[(Element, Element)]) -> Result<IdentityReport> {
    let r0 = match sqrt_zero(alg)? {
        super::SqrtResult::Exists(z) => z,
        super::SqrtResult::NotExists(_) => return Err(Error::NoSqrtZero("identity suite needs √0".into())),
    };
    if !alg.is_symmetric()?.0 || alg.lneg(&r0)? != r0 {
        return Err(Error::Unsupported("identity suite needs a symmetric algebra with u/2".into()));
    }
    let table = alg.as_finite().map(|fa| {
        let all: Vec<usize> = (0..fa.size()).collect();
        Exec::default().map(fa.size(), |x| root_within(fa, x, &all).ok())
    });
    let roots = Roots { alg, table };
    let mut outcomes: Vec<IdentityOutcome> =
        IDENTITY_NAMES.iter().map(|&name| IdentityOutcome { name, checked: 0, failures: Vec::new() }).collect();
    let r0n = alg.lneg(&r0)?;
    let r0t = alg.rneg(&r0)?;

    for (x, y) in pairs {
        alg.check(x)?;
        alg.check(y)?;
        let sx = roots.of(x)?;
        let sy = roots.of(y)?;
        let show = |e: &Element| alg.show(e);
        let mut note = |i: usize, ok: bool, what: String| {
            outcomes[i].checked += 1;
            if !ok && outcomes[i].failures.len() < 8 {
                outcomes[i].failures.push(what);
            }
        };

        if let (Some(a), Some(b)) = (&sx, &sy) {
            let j = roots.of(&alg.join(x, y)?)?;
            let want = alg.join(a, b)?;
            note(0, j.as_ref() == Some(&want), format!("x={}, y={}", show(x), show(y)));
            let m = roots.of(&alg.meet(x, y)?)?;
            let want = alg.meet(a, b)?;
            note(1, m.as_ref() == Some(&want), format!("x={}, y={}", show(x), show(y)));
            if alg.oplus(x, y)? == alg.oplus(y, x)? {
                let l = roots.of(&alg.oplus(x, y)?)?;
                let want = alg.oplus(&alg.odot(a, &r0n)?, b)?;
                note(3, l.as_ref() == Some(&want), format!("x={}, y={}", show(x), show(y)));
            }
            if group_commute(alg, x, y)? {
                let l = roots.of(&alg.odot(x, y)?)?;
                let want = alg.join(&alg.odot(a, b)?, &r0)?;
                note(4, l.as_ref() == Some(&want), format!("x={}, y={}", show(x), show(y)));
            }
            if alg.leq(x, y)? {
                note(7, alg.leq(a, b)?, format!("x={}, y={}", show(x), show(y)));
            }
        }
        if let Some(a) = &sx {
            let want = alg.arrow(a, &r0)?;
            let l = roots.of(&alg.lneg(x)?)?;
            let t = roots.of(&alg.rneg(x)?)?;
            note(2, l.as_ref() == Some(&want) && t.as_ref() == Some(&want), format!("x={}", show(x)));
            let bound = alg.meet(&alg.oplus(x, &r0)?, &alg.oplus(&r0, x)?)?;
            note(9, alg.leq(a, &bound)?, format!("x={}", show(x)));
        }
        let sq = roots.of(&alg.odot(x, x)?)?;
        let want = alg.join(x, &r0)?;
        note(5, sq.as_ref() == Some(&want), format!("z={}", show(x)));
        note(6, roots.of(&alg.oplus(x, x)?)?.is_some(), format!("z={}", show(x)));
        let zb = alg.leq(&r0, &alg.meet(&r0n, &r0t)?)? && alg.leq(&alg.meet(x, &alg.lneg(x)?)?, &r0)?;
        note(8, zb, format!("x={}", show(x)));
        if alg.is_boolean(x)? {
            let want = alg.join(x, &r0)?;
            note(10, sx.as_ref() == Some(&want), format!("b={}", show(x)));
        }
    }
    Ok(IdentityReport { outcomes })
}
