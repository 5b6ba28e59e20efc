use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ogroups::{GroupDescriptor, ScalarTag};
use crate::par::Exec;
use crate::pmv::{Algebra, Element, FiniteAlgebra};

/// Why an element has no square root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoRootReason {
    /// No `a` satisfies `a ⊙ a = x`.
    NoSolution,
    /// Solutions of `a ⊙ a = x` exist but this `y` has `y ⊙ y ≤ x` and is not below any of them.
    Sq2Violated(Element),
    /// `x = 0` and the set `{y : y ⊙ y = 0}` has no greatest element.
    NoMaxOfNilpotents,
}

impl NoRootReason {
    pub fn code(&self) -> &'static str {
        match self {
            NoRootReason::NoSolution => "no_solution",
            NoRootReason::Sq2Violated(_) => "sq2_violated",
            NoRootReason::NoMaxOfNilpotents => "no_max_of_nilpotents",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SqrtResult {
    Exists(Element),
    NotExists(NoRootReason),
}

impl SqrtResult {
    pub fn root(&self) -> Option<&Element> {
        match self {
            SqrtResult::Exists(a) => Some(a),
            SqrtResult::NotExists(_) => None,
        }
    }

    pub fn exists(&self) -> bool {
        self.root().is_some()
    }
}

/// Square root over a subset `dom` of the carrier: both the solutions of
/// `a ⊙ a = x` and the `y` with `y ⊙ y ≤ x` are taken from `dom`.
pub(crate) fn root_within(fa: &FiniteAlgebra, x: usize, dom: &[usize]) -> std::result::Result<usize, NoRootReason> {
    let below: Vec<usize> = dom.iter().copied().filter(|&y| fa.leq(fa.odot(y, y), x)).collect();
    let sols: Vec<usize> = below.iter().copied().filter(|&a| fa.odot(a, a) == x).collect();
    if let Some(&a) = sols.iter().find(|&&a| below.iter().all(|&y| fa.leq(y, a))) {
        return Ok(a);
    }
    if x == fa.zero() {
        return Err(NoRootReason::NoMaxOfNilpotents);
    }
    match sols.first() {
        None => Err(NoRootReason::NoSolution),
        Some(&a) => {
            let y = below.iter().copied().find(|&y| !fa.leq(y, a)).expect("a non-dominating solution has a witness");
            Err(NoRootReason::Sq2Violated(Element::Index(y)))
        }
    }
}

/// Brute-force square root in a finite algebra.
pub fn sqrt_element_finite(fa: &FiniteAlgebra, x: usize) -> SqrtResult {
    let all: Vec<usize> = (0..fa.size()).collect();
    match root_within(fa, x, &all) {
        Ok(a) => SqrtResult::Exists(Element::Index(a)),
        Err(r) => SqrtResult::NotExists(r),
    }
}

/// `√0`: the top of `{y : y ⊙ y = 0}` (equivalently of `{y : 2y ≤ u}`).
///
/// On finite algebras the answer is cross-checked against `max{x ∧ x⁻}`.
pub fn sqrt_zero(alg: &Algebra) -> Result<SqrtResult> {
    match alg {
        Algebra::Finite(fa) => {
            let r = sqrt_element_finite(fa, fa.zero());
            let n = fa.size();
            let candidates: Vec<usize> = (0..n).map(|x| fa.meet(x, fa.lneg(x))).collect();
            let top = candidates.iter().copied().find(|&m| candidates.iter().all(|&c| fa.leq(c, m)));
            if r.root().and_then(Element::index) != top && r.exists() {
                return Err(Error::Invalid("√0 disagrees with max{x ∧ x⁻}".into()));
            }
            Ok(r)
        }
        Algebra::Gamma(d) => Ok(match d.half_unit_floor() {
            Some(h) => SqrtResult::Exists(Element::Group(h)),
            None => SqrtResult::NotExists(NoRootReason::NoMaxOfNilpotents),
        }),
    }
}

fn halvable_unit(d: &GroupDescriptor) -> bool {
    d.try_halve(&d.unit()).is_some()
}

/// `√x = (x+u)/2` on `Γ(G,u)` with `G` Abelian and `u/2 ∈ G`.
pub fn sqrt_element_gamma(alg: &Algebra, x: &Element) -> Result<SqrtResult> {
    let Algebra::Gamma(d) = alg else {
        return Err(Error::Unsupported("the (x+u)/2 formula needs a Γ algebra".into()));
    };
    if !d.is_abelian() || !halvable_unit(d) {
        return Err(Error::Unsupported(format!(
            "the (x+u)/2 formula needs an Abelian group with u/2; Γ({d}) does not qualify"
        )));
    }
    alg.check(x)?;
    let g = alg.grp(x)?;
    Ok(match d.try_halve(&d.add(g, &d.unit())) {
        Some(h) => SqrtResult::Exists(Element::Group(h)),
        None => SqrtResult::NotExists(NoRootReason::NoSolution),
    })
}

/// Decision procedure on `Γ(ℤ³, (1,0,0))` with the twisted sum.
pub fn sqrt_element_twist3(alg: &Algebra, x: &Element) -> Result<SqrtResult> {
    let Algebra::Gamma(GroupDescriptor::Twist3(ScalarTag::Int)) = alg else {
        return Err(Error::AlgebraMismatch("expected Γ(twist3(Z))".into()));
    };
    alg.check(x)?;
    let c = &alg.grp(x)?.0;
    let even = |r: &crate::scalars::Rational| r.numer().is_even();
    Ok(if c[0].is_zero() {
        if c.iter().all(|v| v.is_zero()) {
            SqrtResult::NotExists(NoRootReason::NoMaxOfNilpotents)
        } else {
            SqrtResult::NotExists(NoRootReason::NoSolution)
        }
    } else if even(&c[1]) && even(&c[2]) {
        let root = crate::ogroups::GroupElement(vec![c[0].clone(), c[1].half(), c[2].half()]);
        SqrtResult::Exists(Element::Group(root))
    } else {
        SqrtResult::NotExists(NoRootReason::NoSolution)
    })
}

/// `√b = b ∨ √0` for an idempotent `b`.
pub fn sqrt_boolean(alg: &Algebra, b: &Element) -> Result<SqrtResult> {
    alg.check(b)?;
    if !alg.is_boolean(b)? {
        return Err(Error::NotBoolean(alg.show(b)));
    }
    match sqrt_zero(alg)? {
        SqrtResult::Exists(z) => Ok(SqrtResult::Exists(alg.join(b, &z)?)),
        SqrtResult::NotExists(_) => Err(Error::NoSqrtZero(format!("needed for √{}", alg.show(b)))),
    }
}

/// Square root by the most specific applicable method.
pub fn sqrt(alg: &Algebra, x: &Element) -> Result<SqrtResult> {
    alg.check(x)?;
    let Algebra::Gamma(d) = alg else {
        return Ok(sqrt_element_finite(alg.as_finite().expect("finite"), alg.idx(x)?));
    };
    if *d == GroupDescriptor::Twist3(ScalarTag::Int) {
        return sqrt_element_twist3(alg, x);
    }
    if d.is_abelian() && halvable_unit(d) {
        return sqrt_element_gamma(alg, x);
    }
    if d.has_finite_gamma() {
        let fa = alg.to_finite()?;
        let i = fa.index_of(&alg.render(x)).expect("tabulated carrier has every element");
        return Ok(match sqrt_element_finite(&fa, i) {
            SqrtResult::Exists(a) => SqrtResult::Exists(Element::Group(d.element(fa.label(a.index().unwrap()))?)),
            SqrtResult::NotExists(NoRootReason::Sq2Violated(y)) => SqrtResult::NotExists(NoRootReason::Sq2Violated(
                Element::Group(d.element(fa.label(y.index().unwrap()))?),
            )),
            other => other,
        });
    }
    if *x == alg.one() {
        return Ok(SqrtResult::Exists(x.clone()));
    }
    if *x == alg.zero() {
        return sqrt_zero(alg);
    }
    if alg.is_boolean(x)? && sqrt_zero(alg)?.exists() {
        return sqrt_boolean(alg, x);
    }
    Err(Error::Unsupported(format!("square roots of general elements of Γ({d})")))
}

/// A total square-root map on a finite algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtMap {
    pub map: Vec<usize>,
    /// `r(0) = r(0)⁻`.
    pub strict: bool,
    /// `w = r(0)⁻ ⊙ r(0)⁻`.
    pub w: usize,
}

pub fn sqrt_map(fa: &FiniteAlgebra) -> Option<SqrtMap> {
    sqrt_map_with(Exec::default(), fa)
}

pub fn sqrt_map_with(exec: Exec, fa: &FiniteAlgebra) -> Option<SqrtMap> {
    let all: Vec<usize> = (0..fa.size()).collect();
    let roots = exec.map(fa.size(), |x| root_within(fa, x, &all).ok());
    let map: Vec<usize> = roots.into_iter().collect::<Option<_>>()?;
    let r0 = map[fa.zero()];
    let r0n = fa.lneg(r0);
    Some(SqrtMap { strict: r0 == r0n, w: fa.odot(r0n, r0n), map })
}

/// How a linear factor of a symbolic square-root map acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    /// `r(x) = (x+u)/2`.
    Strict,
    /// `r(x) = x` on a two-element factor.
    Identity,
}

/// A square-root map on `Γ(∏ G_i, u)` acting factorwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSqrtMap {
    pub kinds: Vec<RootKind>,
    pub strict: bool,
    pub w: crate::ogroups::GroupElement,
}

impl GammaSqrtMap {
    pub fn apply(&self, d: &GroupDescriptor, x: &crate::ogroups::GroupElement) -> crate::ogroups::GroupElement {
        let mut out = x.clone();
        let unit = d.unit();
        for ((f, r), k) in d.factors().into_iter().zip(d.factor_ranges()).zip(&self.kinds) {
            if *k == RootKind::Strict {
                let part = crate::ogroups::GroupElement(x.0[r.clone()].to_vec());
                let u = crate::ogroups::GroupElement(unit.0[r.clone()].to_vec());
                let h = f.try_halve(&f.add(&part, &u)).expect("two-divisible factor");
                out.0[r].clone_from_slice(&h.0);
            }
        }
        out
    }
}

/// The square-root map of `Γ(G,u)` when every factor is two-divisible with a
/// central unit or is `ℤ`; `None` when some factor admits no map.
pub fn gamma_sqrt_map(d: &GroupDescriptor) -> Option<GammaSqrtMap> {
    let kinds: Vec<RootKind> = d
        .factors()
        .into_iter()
        .map(|f| match f {
            GroupDescriptor::ScaledInt(1) => Some(RootKind::Identity),
            f if f.is_two_divisible() && f.is_unit_central().0 && f.is_linear() => Some(RootKind::Strict),
            _ => None,
        })
        .collect::<Option<_>>()?;
    let mut w = d.zero();
    let unit = d.unit();
    for (r, k) in d.factor_ranges().into_iter().zip(&kinds) {
        if *k == RootKind::Identity {
            w.0[r.clone()].clone_from_slice(&unit.0[r]);
        }
    }
    Some(GammaSqrtMap { strict: kinds.iter().all(|k| *k == RootKind::Strict), w, kinds })
}
