use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::pmv::FiniteAlgebra;
use crate::roots::sqrt_map;
use crate::value::Value;

pub const DEFAULT_IDEAL_CAP: usize = 64;
pub const IDEAL_CAP_ENV: &str = "MVROOT_IDEAL_CAP";

/// Carrier bound for ideal enumeration, overridable through `MVROOT_IDEAL_CAP`.
pub fn ideal_cap() -> usize {
    std::env::var(IDEAL_CAP_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_IDEAL_CAP)
}

/// An ideal of a finite algebra with its classification flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealSet {
    /// Sorted carrier indices.
    pub members: Vec<usize>,
    /// Greatest member; the ideal is `[0, top]`.
    pub top: usize,
    pub is_ideal: bool,
    pub is_normal: bool,
    pub is_prime: bool,
    pub is_boolean_ideal: bool,
    /// Set only when the algebra has a square-root map.
    pub is_strict_square_ideal: Option<bool>,
}

impl IdealSet {
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_proper(&self, fa: &FiniteAlgebra) -> bool {
        self.members.len() < fa.size()
    }

    pub fn labels(&self, fa: &FiniteAlgebra) -> Vec<Value> {
        self.members.iter().map(|&i| fa.label(i).clone()).collect()
    }
}

fn down(fa: &FiniteAlgebra, m: usize) -> Vec<usize> {
    (0..fa.size()).filter(|&y| fa.leq(y, m)).collect()
}

fn check_ideal(fa: &FiniteAlgebra, members: &[usize]) -> bool {
    let set: BTreeSet<usize> = members.iter().copied().collect();
    set.contains(&fa.zero())
        && members.iter().all(|&x| (0..fa.size()).all(|y| !fa.leq(y, x) || set.contains(&y)))
        && members.iter().all(|&x| members.iter().all(|&y| set.contains(&fa.oplus(x, y))))
}

fn check_normal(fa: &FiniteAlgebra, members: &[usize]) -> bool {
    (0..fa.size()).all(|x| {
        let l: BTreeSet<usize> = members.iter().map(|&i| fa.oplus(x, i)).collect();
        let r: BTreeSet<usize> = members.iter().map(|&i| fa.oplus(i, x)).collect();
        l == r
    })
}

fn check_prime(fa: &FiniteAlgebra, members: &[usize]) -> bool {
    let set: BTreeSet<usize> = members.iter().copied().collect();
    set.len() < fa.size()
        && (0..fa.size())
            .all(|x| (0..fa.size()).all(|y| !set.contains(&fa.meet(x, y)) || set.contains(&x) || set.contains(&y)))
}

fn check_boolean_ideal(fa: &FiniteAlgebra, members: &[usize]) -> bool {
    let set: BTreeSet<usize> = members.iter().copied().collect();
    (0..fa.size()).all(|x| set.contains(&fa.meet(x, fa.lneg(x))))
}

fn guard(fa: &FiniteAlgebra) -> Result<()> {
    let cap = ideal_cap();
    if fa.size() > cap {
        return Err(Error::Resource(format!(
            "ideal enumeration is capped at {cap} elements (set {IDEAL_CAP_ENV} to raise it); this algebra has {}",
            fa.size()
        )));
    }
    Ok(())
}

/// Every ideal of a finite algebra is `[0, m]` for an idempotent `m`: its
/// members have a join `m` inside the ideal, and `m ⊕ m ∈ [0, m]`.
pub fn enumerate_ideals(fa: &FiniteAlgebra) -> Result<Vec<IdealSet>> {
    enumerate_ideals_with(Exec::default(), fa)
}

pub fn enumerate_ideals_with(exec: Exec, fa: &FiniteAlgebra) -> Result<Vec<IdealSet>> {
    guard(fa)?;
    let idem: Vec<usize> = (0..fa.size()).filter(|&m| fa.oplus(m, m) == m).collect();
    let root = sqrt_map(fa);
    let mut out = exec.map(idem.len(), |k| {
        let top = idem[k];
        let members = down(fa, top);
        let is_normal = check_normal(fa, &members);
        let is_strict_square_ideal = match (&root, is_normal) {
            (Some(r), true) => Some(quotient_has_strict_root(fa, &members, r.map[fa.zero()])),
            _ => None,
        };
        IdealSet {
            top,
            is_ideal: check_ideal(fa, &members),
            is_prime: check_prime(fa, &members),
            is_boolean_ideal: check_boolean_ideal(fa, &members),
            is_normal,
            is_strict_square_ideal,
            members,
        }
    });
    out.sort_by_key(|i| (i.members.len(), i.members.clone()));
    Ok(out)
}

/// `M/I` carries a strict square root when the induced root of `0/I` is
/// congruent to its own negation.
fn quotient_has_strict_root(fa: &FiniteAlgebra, members: &[usize], r0: usize) -> bool {
    let set: BTreeSet<usize> = members.iter().copied().collect();
    congruent(fa, &set, r0, fa.lneg(r0))
}

fn congruent(fa: &FiniteAlgebra, ideal: &BTreeSet<usize>, x: usize, y: usize) -> bool {
    ideal.contains(&fa.odot(x, fa.lneg(y))) && ideal.contains(&fa.odot(y, fa.lneg(x)))
}

/// `X(M)`: the proper normal prime ideals.
pub fn normal_primes(fa: &FiniteAlgebra) -> Result<Vec<IdealSet>> {
    if fa.size() == 1 {
        return Err(Error::Degenerate("the one-element algebra has no proper prime ideals".into()));
    }
    Ok(enumerate_ideals(fa)?.into_iter().filter(|i| i.is_normal && i.is_prime).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePartition {
    /// Primes with a Boolean quotient.
    pub x1: Vec<IdealSet>,
    pub x2: Vec<IdealSet>,
    /// `⋂ x1`; the full carrier when `x1` is empty.
    pub i1: Vec<usize>,
    pub i2: Vec<usize>,
}

fn intersect(fa: &FiniteAlgebra, family: &[IdealSet]) -> Vec<usize> {
    (0..fa.size()).filter(|&x| family.iter().all(|p| p.contains(x))).collect()
}

pub fn partition_primes(fa: &FiniteAlgebra) -> Result<PrimePartition> {
    let (x1, x2): (Vec<IdealSet>, Vec<IdealSet>) = normal_primes(fa)?.into_iter().partition(|p| p.is_boolean_ideal);
    Ok(PrimePartition { i1: intersect(fa, &x1), i2: intersect(fa, &x2), x1, x2 })
}

/// `M/I` for a normal ideal `I`, with `x ~ y` iff `x ⊙ y⁻` and `y ⊙ x⁻` lie in
/// `I`. Each class is labelled by its least element.
pub fn quotient(fa: &FiniteAlgebra, ideal: &IdealSet) -> Result<(FiniteAlgebra, Vec<usize>)> {
    if !ideal.is_normal || !ideal.is_ideal {
        return Err(Error::NotNormal(format!("ideal with top {}", fa.label(ideal.top))));
    }
    let set: BTreeSet<usize> = ideal.members.iter().copied().collect();
    let mut reps: Vec<usize> = Vec::new();
    let mut proj = vec![usize::MAX; fa.size()];
    let mut by_order: Vec<usize> = (0..fa.size()).collect();
    by_order.sort_by_key(|&x| (0..fa.size()).filter(|&y| fa.leq(y, x)).count());
    for &x in &by_order {
        if proj[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for y in 0..fa.size() {
            if proj[y] == usize::MAX && congruent(fa, &set, x, y) {
                proj[y] = c;
            }
        }
    }
    let k = reps.len();
    let oplus = (0..k * k).map(|t| proj[fa.oplus(reps[t / k], reps[t % k])]).collect();
    let lneg = reps.iter().map(|&x| proj[fa.lneg(x)]).collect();
    let rneg = reps.iter().map(|&x| proj[fa.rneg(x)]).collect();
    let labels = reps.iter().map(|&x| fa.label(x).clone()).collect();
    Ok((FiniteAlgebra::from_tables(labels, oplus, lneg, rneg)?, proj))
}

/// Boolean subdirect irreducibility: `I₂ = {0}`.
pub fn is_bsi(fa: &FiniteAlgebra) -> Result<bool> {
    Ok(partition_primes(fa)?.i2 == vec![fa.zero()])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictSquareReport {
    pub w: usize,
    /// Normal ideals with their strict-square flag set from the quotient.
    pub ideals: Vec<IdealSet>,
    pub least_strict: Vec<usize>,
    pub least_boolean: Vec<usize>,
    /// Strict square ideals are exactly those containing `w`.
    pub strict_iff_contains_w: bool,
    pub least_strict_is_down_w: bool,
    pub least_strict_is_i2: bool,
    pub least_boolean_is_i1: bool,
}

impl StrictSquareReport {
    pub fn consistent(&self) -> bool {
        self.strict_iff_contains_w && self.least_strict_is_down_w && self.least_strict_is_i2 && self.least_boolean_is_i1
    }
}

fn least(fa: &FiniteAlgebra, family: &[&IdealSet]) -> Vec<usize> {
    let owned: Vec<IdealSet> = family.iter().map(|&i| i.clone()).collect();
    intersect(fa, &owned)
}

pub fn strict_square_ideals(fa: &FiniteAlgebra) -> Result<StrictSquareReport> {
    let root = sqrt_map(fa).ok_or_else(|| Error::NoSqrtMap("strict square ideals need a square-root map".into()))?;
    let ideals: Vec<IdealSet> = enumerate_ideals(fa)?.into_iter().filter(|i| i.is_normal).collect();
    let strict: Vec<&IdealSet> = ideals.iter().filter(|i| i.is_strict_square_ideal == Some(true)).collect();
    let boolean: Vec<&IdealSet> = ideals.iter().filter(|i| i.is_boolean_ideal).collect();
    let least_strict = least(fa, &strict);
    let least_boolean = least(fa, &boolean);
    let part = if fa.size() > 1 { Some(partition_primes(fa)?) } else { None };
    let w = root.w;
    Ok(StrictSquareReport {
        strict_iff_contains_w: ideals.iter().all(|i| i.is_strict_square_ideal == Some(i.contains(w))),
        least_strict_is_down_w: least_strict == down(fa, w),
        least_strict_is_i2: part.as_ref().map_or(true, |p| p.i2 == least_strict),
        least_boolean_is_i1: part.as_ref().map_or(true, |p| p.i1 == least_boolean),
        w,
        ideals,
        least_strict,
        least_boolean,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WDecomposition {
    pub w: usize,
    /// `[0, w]` with its embedding into the carrier.
    pub boolean_part: (FiniteAlgebra, Vec<usize>),
    /// `[0, w⁻]` with its embedding into the carrier.
    pub strict_part: (FiniteAlgebra, Vec<usize>),
    /// `x ↦ (x ∧ w, x ∧ w⁻)` into the product, as product indices.
    pub iso: Vec<usize>,
    pub iso_verified: bool,
    pub boolean_part_is_boolean: bool,
    pub strict_part_is_strict: bool,
}

pub fn decomposition_by_w(fa: &FiniteAlgebra) -> Result<WDecomposition> {
    let root = sqrt_map(fa).ok_or_else(|| Error::NoSqrtMap("decomposition needs a square-root map".into()))?;
    let w = root.w;
    let wn = fa.lneg(w);
    let (a, ca) = fa.interval(w)?;
    let (b, cb) = fa.interval(wn)?;
    let prod = FiniteAlgebra::product(&[&a, &b])?;
    let iso: Vec<usize> = (0..fa.size())
        .map(|x| {
            let i = ca.iter().position(|&c| c == fa.meet(x, w)).expect("x ∧ w lies in [0,w]");
            let j = cb.iter().position(|&c| c == fa.meet(x, wn)).expect("x ∧ w⁻ lies in [0,w⁻]");
            i * b.size() + j
        })
        .collect();
    let iso_verified = prod.size() == fa.size() && crate::pmv::is_embedding(&iso, fa, &prod);
    let strict_part_is_strict = sqrt_map(&b).map(|m| m.strict).unwrap_or(false);
    Ok(WDecomposition {
        w,
        boolean_part_is_boolean: a.is_boolean_algebra(),
        strict_part_is_strict,
        iso_verified,
        iso,
        boolean_part: (a, ca),
        strict_part: (b, cb),
    })
}

/// The element `a` with `a/I₁ = 1/I₁` and `a/I₂ = 0/I₂`, i.e. `a ∈ I₂` and
/// `a⁻ ∈ I₁`.
pub fn nn12_element(fa: &FiniteAlgebra) -> Result<Option<usize>> {
    let p = partition_primes(fa)?;
    Ok((0..fa.size()).find(|&a| p.i2.contains(&a) && p.i1.contains(&fa.lneg(a))))
}
