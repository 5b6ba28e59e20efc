use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{self, symbolic_spectrum, SymbolicSpectrum};
use crate::ogroups::{GroupDescriptor, GroupElement};
use crate::pmv::Algebra;
use crate::roots::{gamma_sqrt_map, RootKind};

use super::descriptor::{closed_group, strict_closure, ClosureDescriptor, ClosureKind, ClosurePair};

/// Which branch produced `𝐃(M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureCase {
    /// `I₁ = {0}`: `M` is Boolean and `𝐃(M) = M`.
    Boolean,
    /// `I₂ = {0}`: `𝐃(M) = 𝐂(M)`.
    Bsi,
    /// A separating `a` exists: `𝐃(M) = [0,a] × 𝐂([0,a⁻])`.
    Split,
    /// `M` already has a square-root map.
    HasSqrtMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SqrtClosureOutcome {
    Closure {
        case: ClosureCase,
        closure: ClosureDescriptor,
        /// The separating element, when one exists.
        a: Option<GroupElement>,
        notes: Vec<String>,
    },
    /// Both intersections are nonzero and nothing separates them; whether a
    /// square root closure exists is not known for this case.
    OpenProblem { reason: String, spectrum: SymbolicSpectrum },
}

impl SqrtClosureOutcome {
    pub fn closure(&self) -> Option<&ClosureDescriptor> {
        match self {
            SqrtClosureOutcome::Closure { closure, .. } => Some(closure),
            SqrtClosureOutcome::OpenProblem { .. } => None,
        }
    }

    pub fn is_open(&self) -> bool {
        matches!(self, SqrtClosureOutcome::OpenProblem { .. })
    }
}

fn identity(f: &GroupDescriptor) -> ClosurePair {
    ClosurePair { base: f.clone(), closed: f.clone(), root: RootKind::Identity }
}

fn strict(f: &GroupDescriptor) -> Result<ClosurePair> {
    Ok(ClosurePair { base: f.clone(), closed: closed_group(f)?, root: RootKind::Strict })
}

fn sqrt_kind(c: ClosureDescriptor) -> ClosureDescriptor {
    ClosureDescriptor { kind: ClosureKind::SqrtClosure, ..c }
}

/// `𝐃(Γ(G,u))` by the case analysis on `I₁`, `I₂` and the separating element.
pub fn sqrt_closure_descriptor(d: &GroupDescriptor) -> Result<SqrtClosureOutcome> {
    let spec = symbolic_spectrum(d)?;
    let factors = d.factors();
    let nn12 = spec.nn12(d);
    if spec.i1_is_zero() {
        let closure = ClosureDescriptor {
            kind: ClosureKind::SqrtClosure,
            factors: factors.iter().map(|f| identity(f)).collect(),
        };
        return Ok(SqrtClosureOutcome::Closure { case: ClosureCase::Boolean, closure, a: nn12.ok(), notes: vec![] });
    }
    if spec.i2_is_zero() {
        let mut notes = Vec::new();
        if let Err(why) = &nn12 {
            notes.push(format!("no separating element: {why}"));
        }
        let closure = sqrt_kind(strict_closure(d)?);
        return Ok(SqrtClosureOutcome::Closure { case: ClosureCase::Bsi, closure, a: nn12.ok(), notes });
    }
    if let Ok(a) = nn12 {
        let pairs = factors
            .iter()
            .zip(&spec.factors)
            .map(|(f, s)| if s.nn12() == Some(true) { Ok(identity(f)) } else { strict(f) })
            .collect::<Result<_>>()?;
        let closure = ClosureDescriptor { kind: ClosureKind::SqrtClosure, factors: pairs };
        return Ok(SqrtClosureOutcome::Closure { case: ClosureCase::Split, closure, a: Some(a), notes: vec![] });
    }
    if let Some(m) = gamma_sqrt_map(d) {
        let pairs = factors
            .iter()
            .zip(&m.kinds)
            .map(|(f, k)| ClosurePair { base: (*f).clone(), closed: (*f).clone(), root: *k })
            .collect();
        let closure = ClosureDescriptor { kind: ClosureKind::SqrtClosure, factors: pairs };
        return Ok(SqrtClosureOutcome::Closure { case: ClosureCase::HasSqrtMap, closure, a: None, notes: vec![] });
    }
    let reason = nn12.err().unwrap_or_default();
    Ok(SqrtClosureOutcome::OpenProblem {
        reason: format!(
            "I₁ ≠ {{0}}, I₂ ≠ {{0}} and {reason}; existence of a square root closure is not settled in this case"
        ),
        spectrum: spec,
    })
}

/// `𝐃(M)` for a finite or Γ algebra. Finite inputs are also run through the
/// exhaustive ideal computation and must agree with the symbolic spectrum.
pub fn sqrt_closure(alg: &Algebra) -> Result<SqrtClosureOutcome> {
    let d = alg.to_descriptor()?;
    let out = sqrt_closure_descriptor(&d)?;
    if let Some(fa) = alg.as_finite() {
        if fa.size() <= ideals::ideal_cap() {
            let p = ideals::partition_primes(fa)?;
            let spec = symbolic_spectrum(&d)?;
            let agree = (p.i1 == vec![fa.zero()]) == spec.i1_is_zero()
                && (p.i2 == vec![fa.zero()]) == spec.i2_is_zero()
                && ideals::nn12_element(fa)?.is_some() == spec.nn12(&d).is_ok();
            if !agree {
                return Err(Error::Invalid(format!("finite and symbolic spectra of {d} disagree")));
            }
        }
    }
    Ok(out)
}
