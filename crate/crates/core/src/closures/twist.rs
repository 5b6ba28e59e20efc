use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ogroups::{GroupDescriptor, GroupElement, ScalarTag};
use crate::scalars::Rational;

use super::crit::sample_element;

/// Evidence that `Twist4(D)` is the least two-divisible group over `Twist4(Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoDivisibleCertificate {
    /// Halving each axis generator `k` times stays on the axis at `1/2^k`.
    pub axes_halve: bool,
    pub halvings_per_axis: u32,
    /// `(a,b,c,d) = (a,0,0,0) + (0,b,0,0) + (0,0,c,0) + (0,0,0,d−bc)` on every sample.
    pub decomposition_holds: bool,
    pub samples: usize,
    pub base_contained: bool,
}

impl TwoDivisibleCertificate {
    pub fn holds(&self) -> bool {
        self.axes_halve && self.decomposition_holds && self.base_contained
    }
}

/// The axis decomposition of a `Twist4` element.
pub fn twist4_axes(x: &GroupElement) -> [GroupElement; 4] {
    let c = &x.0;
    let z = Rational::zero;
    [
        GroupElement(vec![c[0].clone(), z(), z(), z()]),
        GroupElement(vec![z(), c[1].clone(), z(), z()]),
        GroupElement(vec![z(), z(), c[2].clone(), z()]),
        GroupElement(vec![z(), z(), z(), &c[3] - &(&c[1] * &c[2])]),
    ]
}

/// A two-divisible subgroup containing `Twist4(Z)` holds every `e_i/2^k`,
/// hence every dyadic axis element, hence every element of `Twist4(D)` by
/// the axis decomposition.
pub fn minimal_two_divisible_check(samples: usize) -> Result<TwoDivisibleCertificate> {
    let g = GroupDescriptor::Twist4(ScalarTag::Int);
    let h = GroupDescriptor::Twist4(ScalarTag::Dyadic);
    const K: u32 = 8;
    let mut axes_halve = true;
    for i in 0..4 {
        let mut e = h.zero();
        e.0[i] = Rational::one();
        for k in 1..=K {
            e = h.try_halve(&e).ok_or_else(|| Error::Invalid("axis generator not halvable".into()))?;
            let mut want = h.zero();
            want.0[i] = Rational::new(1, BigInt::from(1) << k)?;
            axes_halve &= e == want;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a15);
    let mut decomposition_holds = true;
    let mut base_contained = true;
    for _ in 0..samples {
        let x = sample_element(&h, &mut rng);
        let sum = twist4_axes(&x).iter().fold(h.zero(), |acc, p| h.add(&acc, p));
        decomposition_holds &= sum == x && h.try_halve(&x).is_some();
        let y = sample_element(&g, &mut rng);
        base_contained &= h.contains(&y) && h.add(&y, &x) == g.add(&y, &x);
    }
    Ok(TwoDivisibleCertificate { axes_halve, halvings_per_axis: K, decomposition_holds, samples, base_contained })
}
