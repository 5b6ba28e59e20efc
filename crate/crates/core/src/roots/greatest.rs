use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::pmv::FiniteAlgebra;

use super::element::root_within;

/// Where the `y` in `y ⊙ y ≤ x` ranges when iterating towards the greatest
/// subalgebra with square roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantifier {
    /// Over the whole algebra.
    #[default]
    Ambient,
    /// Over the current stage only.
    Relative,
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantifier::Ambient => "ambient",
            Quantifier::Relative => "relative",
        })
    }
}

impl FromStr for Quantifier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "ambient" => Ok(Quantifier::Ambient),
            "relative" => Ok(Quantifier::Relative),
            other => Err(Error::Param(format!("unknown quantifier `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub carrier: Vec<usize>,
    pub is_subalgebra: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreatestSubalgebra {
    pub quantifier: Quantifier,
    /// `X₁ ⊇ X₂ ⊇ …` up to and including the fixpoint.
    pub stages: Vec<Stage>,
}

impl GreatestSubalgebra {
    pub fn fixpoint(&self) -> &Stage {
        self.stages.last().expect("at least one stage")
    }
}

/// Closed under `⊕`, both negations, and contains `0` and `1`.
pub fn is_subalgebra(fa: &FiniteAlgebra, carrier: &[usize]) -> bool {
    let mut member = vec![false; fa.size()];
    for &x in carrier {
        member[x] = true;
    }
    member[fa.zero()]
        && member[fa.one()]
        && carrier.iter().all(|&x| member[fa.lneg(x)] && member[fa.rneg(x)])
        && carrier.iter().all(|&x| carrier.iter().all(|&y| member[fa.oplus(x, y)]))
}

pub fn greatest_sqrt_subalgebra(fa: &FiniteAlgebra, quantifier: Quantifier) -> GreatestSubalgebra {
    let all: Vec<usize> = (0..fa.size()).collect();
    let mut current = all.clone();
    let mut stages: Vec<Stage> = Vec::new();
    loop {
        let dom = match quantifier {
            Quantifier::Ambient => &all,
            Quantifier::Relative => &current,
        };
        let next: Vec<usize> = current
            .iter()
            .copied()
            .filter(|&x| matches!(root_within(fa, x, dom), Ok(r) if current.contains(&r)))
            .collect();
        if !stages.is_empty() && next == current {
            break;
        }
        let stop = next == current || next.is_empty();
        stages.push(Stage { is_subalgebra: is_subalgebra(fa, &next), carrier: next.clone() });
        if stop {
            break;
        }
        current = next;
    }
    GreatestSubalgebra { quantifier, stages }
}

/// Runs both readings; the flag is set when their fixpoints differ.
pub fn compare_quantifiers(fa: &FiniteAlgebra) -> (GreatestSubalgebra, GreatestSubalgebra, bool) {
    let a = greatest_sqrt_subalgebra(fa, Quantifier::Ambient);
    let r = greatest_sqrt_subalgebra(fa, Quantifier::Relative);
    let differ = a.fixpoint().carrier != r.fixpoint().carrier;
    (a, r, differ)
}
