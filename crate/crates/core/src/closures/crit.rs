use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ogroups::{GroupDescriptor, GroupElement, ScalarTag};
use crate::scalars::{odd_part, Rational};

use super::descriptor::ClosureDescriptor;

const MAX_DOUBLINGS: u32 = 64;
const SAMPLES: usize = 200;

/// Outcome of checking that every `h` of the closed group has some `2ⁿh` in
/// the base group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CritOutcome {
    Certificate {
        /// One line per linear factor.
        argument: Vec<String>,
        samples: usize,
        /// Largest doubling count seen on the samples.
        max_doublings: u32,
    },
    Failure {
        h: GroupElement,
        reason: String,
    },
}

impl CritOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, CritOutcome::Certificate { .. })
    }
}

fn smallest_odd_prime_not_dividing(n: &BigInt) -> u64 {
    (3u64..)
        .step_by(2)
        .find(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) && (n % p) != BigInt::from(0))
        .expect("infinitely many primes")
}

fn axis(d: &GroupDescriptor, r: Rational) -> GroupElement {
    let mut x = d.zero();
    x.0[0] = r;
    x
}

fn rational_denominator(d: &GroupDescriptor) -> Option<BigInt> {
    match d {
        GroupDescriptor::ScaledInt(n) => Some(BigInt::from(*n)),
        GroupDescriptor::Dyadic(q) => Some(BigInt::from(*q)),
        _ => None,
    }
}

/// `Ok(argument)` or `Err((h, reason))` for one linear factor.
fn crit_factor(g: &GroupDescriptor, h: &GroupDescriptor) -> Result<std::result::Result<String, (GroupElement, String)>> {
    use GroupDescriptor as G;
    let mismatch = || Error::DescriptorMismatch(format!("{g} is not a subgroup of {h}"));
    Ok(match (g, h) {
        (G::ScaledInt(_) | G::Dyadic(_), G::Dyadic(q)) => {
            let m = odd_part(&rational_denominator(g).expect("scalar family"));
            let q_big = BigInt::from(*q);
            if &q_big % &m != BigInt::from(0) {
                return Err(mismatch());
            }
            if q_big == m {
                Ok(format!("{g} in {h}: a/({q}·2^k) doubled k times is a/{q}, which lies in {g}"))
            } else {
                Err((GroupElement(vec![Rational::ratio(1, *q as i64)]), format!("2^k/{q} never lies in {g}")))
            }
        }
        (G::ScaledInt(_) | G::Dyadic(_), G::Rat) => {
            let n = rational_denominator(g).expect("scalar family");
            let p = smallest_odd_prime_not_dividing(&n);
            Err((GroupElement(vec![Rational::ratio(1, p as i64)]), format!("2^k/{p} never lies in {g}")))
        }
        (G::Rat, G::Rat) => Ok("Q in Q: n = 0 for every h".to_string()),
        (G::Quad { alpha: a, dyadic: d0 }, G::Quad { alpha: b, dyadic: d1 }) if a == b => {
            if *d0 && !*d1 {
                return Err(mismatch());
            }
            Ok(format!("{g} in {h}: m/2^k + (n/2^k)α doubled k times has integer coordinates"))
        }
        (G::Lex(g1, g2), G::Lex(h1, h2)) => {
            match (crit_factor(g1, h1)?, crit_factor(g2, h2)?) {
                (Ok(a), Ok(b)) => Ok(format!("{g} in {h}: head [{a}] and tail [{b}], take the larger n")),
                (Err((x, why)), _) => {
                    let mut e = h.zero();
                    e.0[..x.0.len()].clone_from_slice(&x.0);
                    Err((e, format!("head: {why}")))
                }
                (_, Err((x, why))) => {
                    let mut e = h.zero();
                    let k = h1.arity();
                    e.0[k..k + x.0.len()].clone_from_slice(&x.0);
                    Err((e, format!("tail: {why}")))
                }
            }
        }
        (G::Twist3(s) | G::Twist4(s), G::Twist3(t) | G::Twist4(t)) if g.arity() == h.arity() => match (s, t) {
            (_, ScalarTag::Int) if *s != ScalarTag::Int => return Err(mismatch()),
            (ScalarTag::Rat, ScalarTag::Dyadic) => return Err(mismatch()),
            (ScalarTag::Int | ScalarTag::Dyadic, ScalarTag::Rat) => {
                Err((axis(h, Rational::ratio(1, 3)), "the head coordinate 2^k/3 is never in the base".to_string()))
            }
            _ => {
                let multiple = if h.arity() == 4 { "(ka, kb, kc, kd + C(k,2)·bc)" } else { "(ka, kb, kc + C(k,2)·ab)" };
                Ok(format!("{g} in {h}: k·h = {multiple}, integral once k = 2^N clears every denominator"))
            }
        },
        _ => return Err(mismatch()),
    })
}

fn sample_scalar(rng: &mut ChaCha8Rng, tag: &GroupDescriptor) -> Rational {
    let a = rng.gen_range(-40i64..=40);
    let k = rng.gen_range(0u32..6);
    match tag {
        GroupDescriptor::Dyadic(q) => Rational::ratio(a, (*q as i64) << k),
        GroupDescriptor::ScaledInt(n) => Rational::ratio(a, *n as i64),
        GroupDescriptor::Rat => Rational::ratio(a, rng.gen_range(1i64..30)),
        _ => Rational::from_int(a),
    }
}

/// A pseudo-random element of a catalog group.
pub fn sample_element(d: &GroupDescriptor, rng: &mut ChaCha8Rng) -> GroupElement {
    let tagged = |t: &ScalarTag, rng: &mut ChaCha8Rng| match t {
        ScalarTag::Int => sample_scalar(rng, &GroupDescriptor::int()),
        ScalarTag::Dyadic => sample_scalar(rng, &GroupDescriptor::dyadic()),
        ScalarTag::Rat => sample_scalar(rng, &GroupDescriptor::Rat),
    };
    match d {
        GroupDescriptor::ScaledInt(_) | GroupDescriptor::Dyadic(_) | GroupDescriptor::Rat => {
            GroupElement(vec![sample_scalar(rng, d)])
        }
        GroupDescriptor::Quad { dyadic, .. } => {
            let t = if *dyadic { ScalarTag::Dyadic } else { ScalarTag::Int };
            GroupElement(vec![tagged(&t, rng), tagged(&t, rng)])
        }
        GroupDescriptor::Twist3(t) | GroupDescriptor::Twist4(t) => {
            GroupElement((0..d.arity()).map(|_| tagged(t, rng)).collect())
        }
        GroupDescriptor::Lex(a, b) => {
            let mut v = sample_element(a, rng).0;
            v.extend(sample_element(b, rng).0);
            GroupElement(v)
        }
        GroupDescriptor::Product(fs) => GroupElement(fs.iter().flat_map(|f| sample_element(f, rng).0).collect()),
    }
}

/// Least `n` with `2ⁿh` in `base`, doubling inside `closed`.
pub fn min_doublings(base: &GroupDescriptor, closed: &GroupDescriptor, h: &GroupElement) -> Option<u32> {
    let mut x = h.clone();
    for n in 0..=MAX_DOUBLINGS {
        if base.contains(&x) {
            return Some(n);
        }
        x = closed.add(&x, &x);
    }
    None
}

/// Checks that `closed` is reached from `base` by halving: every `h` has
/// some `2ⁿh` in `base`. The symbolic argument is backed by a seeded sample.
pub fn crit_check(base: &GroupDescriptor, closed: &GroupDescriptor) -> Result<CritOutcome> {
    base.validate()?;
    closed.validate()?;
    let (bf, cf) = (base.factors(), closed.factors());
    if bf.len() != cf.len() {
        return Err(Error::DescriptorMismatch(format!("{base} and {closed} have different factor counts")));
    }
    let mut argument = Vec::new();
    for (i, (g, h)) in bf.iter().zip(&cf).enumerate() {
        match crit_factor(g, h)? {
            Ok(a) => argument.push(a),
            Err((x, reason)) => {
                let mut e = closed.zero();
                let r = &closed.factor_ranges()[i];
                e.0[r.clone()].clone_from_slice(&x.0);
                if min_doublings(base, closed, &e).is_some() {
                    return Err(Error::Invalid(format!("counterexample {} is not one", closed.render(&e))));
                }
                return Ok(CritOutcome::Failure { h: e, reason });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut max_doublings = 0;
    for _ in 0..SAMPLES {
        let h = sample_element(closed, &mut rng);
        let n = min_doublings(base, closed, &h)
            .ok_or_else(|| Error::Invalid(format!("sample {} never doubles into {base}", closed.render(&h))))?;
        max_doublings = max_doublings.max(n);
    }
    Ok(CritOutcome::Certificate { argument, samples: SAMPLES, max_doublings })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RdpDecomposition {
    pub n: u32,
    /// `2ⁿ` elements of `[0,u]` in the base group summing to `2ⁿx`.
    pub parts: Vec<GroupElement>,
}

/// Writes `x` of the closure as `(x₁ + … + x_{2ⁿ})/2ⁿ` with every `xᵢ` in
/// the base algebra, splitting greedily with `xᵢ = rest ∧ u`.
pub fn corrdp_decompose(x: &GroupElement, c: &ClosureDescriptor) -> Result<RdpDecomposition> {
    let (base, closed) = (c.base(), c.closed());
    closed.check_member(x)?;
    let (zero, unit) = (closed.zero(), closed.unit());
    if !(closed.leq(&zero, x) && closed.leq(x, &unit)) {
        return Err(Error::NotMember(format!("{} is outside [0,u]", closed.render(x))));
    }
    let n = min_doublings(&base, &closed, x)
        .ok_or_else(|| Error::NotMember(format!("no 2ⁿ·{} lies in {base}", closed.render(x))))?;
    if n > 16 {
        return Err(Error::Resource(format!("2^{n} summands are too many to list")));
    }
    let scaled = closed.mul_int(x, &(BigInt::from(1) << n));
    let mut rest = scaled.clone();
    let mut parts = Vec::with_capacity(1 << n);
    for _ in 0..(1usize << n) {
        let part = closed.meet(&rest, &unit);
        rest = closed.sub(&rest, &part);
        parts.push(part);
    }
    let sum = parts.iter().fold(closed.zero(), |acc, p| closed.add(&acc, p));
    let mut back = sum.clone();
    for _ in 0..n {
        back = closed.try_halve(&back).ok_or_else(|| Error::Invalid("partial sum not halvable".into()))?;
    }
    let sound = rest == zero
        && sum == scaled
        && back == *x
        && parts.iter().all(|p| base.contains(p) && closed.leq(&zero, p) && closed.leq(p, &unit));
    if !sound {
        return Err(Error::Invalid(format!("greedy split of {} did not reconstruct it", closed.render(x))));
    }
    Ok(RdpDecomposition { n, parts })
}
