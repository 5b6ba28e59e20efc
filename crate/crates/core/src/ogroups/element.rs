use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{GroupDescriptor, ScalarTag};
use crate::error::{Error, Result};
use crate::scalars::{QuadValue, Rational, Scalar};
use crate::value::Value;

/// A group element as a flat vector of rational coordinates. Quadratic
/// lattice elements `m + nα` are stored as the pair `(m, n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement(pub Vec<Rational>);

impl GroupElement {
    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        GroupElement(xs.iter().map(|&x| Rational::from_int(x)).collect())
    }
}

/// Serialized as raw coordinates, e.g. `"(1,-1/2,0)"`.
impl serde::Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&format_args!("{self:?}"))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn combine(a: Option<Ordering>, b: Option<Ordering>) -> Option<Ordering> {
    match (a?, b?) {
        (x, Ordering::Equal) => Some(x),
        (Ordering::Equal, y) => Some(y),
        (x, y) if x == y => Some(x),
        _ => None,
    }
}

fn quad_sign(alpha: &QuadValue, m: &Rational, n: &Rational) -> Ordering {
    QuadValue::new_unchecked(m + &(n * alpha.a()), n * alpha.b(), alpha.d().clone()).signum()
}

fn lex_cmp(x: &[Rational], y: &[Rational]) -> Ordering {
    x.iter().zip(y).map(|(a, b)| a.cmp(b)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

impl GroupDescriptor {
    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![Rational::zero(); self.arity()])
    }

    pub fn unit(&self) -> GroupElement {
        let mut out = Vec::with_capacity(self.arity());
        self.unit_into(&mut out);
        GroupElement(out)
    }

    fn unit_into(&self, out: &mut Vec<Rational>) {
        match self {
            GroupDescriptor::Lex(h, g) => {
                h.unit_into(out);
                out.extend(std::iter::repeat(Rational::zero()).take(g.arity()));
            }
            GroupDescriptor::Product(fs) => fs.iter().for_each(|f| f.unit_into(out)),
            _ => {
                out.push(Rational::one());
                out.extend(std::iter::repeat(Rational::zero()).take(self.arity() - 1));
            }
        }
    }

    fn check_arity(&self, x: &GroupElement) -> Result<()> {
        if x.0.len() == self.arity() {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(format!(
                "element {x:?} has {} coordinates, {self} needs {}",
                x.0.len(),
                self.arity()
            )))
        }
    }

    /// Membership predicate of the carrier.
    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.arity() && self.member_slice(&x.0)
    }

    fn member_slice(&self, x: &[Rational]) -> bool {
        match self {
            GroupDescriptor::ScaledInt(n) => x[0].mul_int(&BigInt::from(*n)).is_integer(),
            GroupDescriptor::Dyadic(q) => x[0].mul_int(&BigInt::from(*q)).is_dyadic(),
            GroupDescriptor::Rat => true,
            GroupDescriptor::Quad { dyadic, .. } => {
                let tag = if *dyadic { ScalarTag::Dyadic } else { ScalarTag::Int };
                tag.admits(&x[0]) && tag.admits(&x[1])
            }
            GroupDescriptor::Lex(h, g) => {
                let k = h.arity();
                h.member_slice(&x[..k]) && g.member_slice(&x[k..])
            }
            GroupDescriptor::Twist3(t) | GroupDescriptor::Twist4(t) => x.iter().all(|c| t.admits(c)),
            GroupDescriptor::Product(fs) => {
                let mut at = 0;
                fs.iter().all(|f| {
                    let k = f.arity();
                    at += k;
                    f.member_slice(&x[at - k..at])
                })
            }
        }
    }

    pub fn check_member(&self, x: &GroupElement) -> Result<()> {
        self.check_arity(x)?;
        if self.member_slice(&x.0) {
            Ok(())
        } else {
            Err(Error::NotMember(format!("{} is not in {self}", self.render(x))))
        }
    }

    /// Group sum; the twisted families apply their cocycle term.
    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let mut out = Vec::with_capacity(x.0.len());
        self.add_into(&x.0, &y.0, &mut out);
        GroupElement(out)
    }

    /// [`GroupDescriptor::add`] with a coordinate-count check.
    pub fn g_add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check_arity(x)?;
        self.check_arity(y)?;
        Ok(self.add(x, y))
    }

    fn add_into(&self, x: &[Rational], y: &[Rational], out: &mut Vec<Rational>) {
        match self {
            GroupDescriptor::Twist3(_) => {
                out.push(&x[0] + &y[0]);
                out.push(&x[1] + &y[1]);
                out.push(&(&x[2] + &y[2]) + &(&x[0] * &y[1]));
            }
            GroupDescriptor::Twist4(_) => {
                out.push(&x[0] + &y[0]);
                out.push(&x[1] + &y[1]);
                out.push(&x[2] + &y[2]);
                out.push(&(&x[3] + &y[3]) + &(&x[1] * &y[2]));
            }
            GroupDescriptor::Lex(h, g) => {
                let k = h.arity();
                h.add_into(&x[..k], &y[..k], out);
                g.add_into(&x[k..], &y[k..], out);
            }
            GroupDescriptor::Product(fs) => {
                let mut at = 0;
                for f in fs {
                    let k = f.arity();
                    f.add_into(&x[at..at + k], &y[at..at + k], out);
                    at += k;
                }
            }
            _ => out.extend(x.iter().zip(y).map(|(a, b)| a + b)),
        }
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        let mut out = Vec::with_capacity(x.0.len());
        self.neg_into(&x.0, &mut out);
        GroupElement(out)
    }

    fn neg_into(&self, x: &[Rational], out: &mut Vec<Rational>) {
        match self {
            GroupDescriptor::Twist3(_) => {
                out.push(-&x[0]);
                out.push(-&x[1]);
                out.push(&(&x[0] * &x[1]) - &x[2]);
            }
            GroupDescriptor::Twist4(_) => {
                out.push(-&x[0]);
                out.push(-&x[1]);
                out.push(-&x[2]);
                out.push(&(&x[1] * &x[2]) - &x[3]);
            }
            GroupDescriptor::Lex(h, g) => {
                let k = h.arity();
                h.neg_into(&x[..k], out);
                g.neg_into(&x[k..], out);
            }
            GroupDescriptor::Product(fs) => {
                let mut at = 0;
                for f in fs {
                    let k = f.arity();
                    f.neg_into(&x[at..at + k], out);
                    at += k;
                }
            }
            _ => out.extend(x.iter().map(|a| -a)),
        }
    }

    /// `x - y`, i.e. `x + (-y)`.
    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    /// `n·x` for any integer `n`, by doubling.
    pub fn mul_int(&self, x: &GroupElement, n: &BigInt) -> GroupElement {
        let mut base = if n.is_negative() { self.neg(x) } else { x.clone() };
        let mut k = n.abs();
        let mut acc = self.zero();
        while !k.is_zero() {
            if k.is_odd() {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Order comparison; `None` means incomparable.
    pub fn cmp(&self, x: &GroupElement, y: &GroupElement) -> Option<Ordering> {
        self.cmp_slice(&x.0, &y.0)
    }

    /// [`GroupDescriptor::cmp`] with a coordinate-count check.
    pub fn g_cmp(&self, x: &GroupElement, y: &GroupElement) -> Result<Option<Ordering>> {
        self.check_arity(x)?;
        self.check_arity(y)?;
        Ok(self.cmp(x, y))
    }

    fn cmp_slice(&self, x: &[Rational], y: &[Rational]) -> Option<Ordering> {
        match self {
            GroupDescriptor::Quad { alpha, .. } => Some(quad_sign(alpha, &(&x[0] - &y[0]), &(&x[1] - &y[1]))),
            GroupDescriptor::Lex(h, g) => {
                let k = h.arity();
                match h.cmp_slice(&x[..k], &y[..k])? {
                    Ordering::Equal => g.cmp_slice(&x[k..], &y[k..]),
                    o => Some(o),
                }
            }
            GroupDescriptor::Product(fs) => {
                let mut at = 0;
                let mut acc = Some(Ordering::Equal);
                for f in fs {
                    let k = f.arity();
                    acc = combine(acc, f.cmp_slice(&x[at..at + k], &y[at..at + k]));
                    acc?;
                    at += k;
                }
                acc
            }
            _ => Some(lex_cmp(x, y)),
        }
    }

    pub fn leq(&self, x: &GroupElement, y: &GroupElement) -> bool {
        matches!(self.cmp(x, y), Some(Ordering::Less | Ordering::Equal))
    }

    pub fn join(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let mut out = Vec::with_capacity(x.0.len());
        self.lattice_into(&x.0, &y.0, true, &mut out);
        GroupElement(out)
    }

    pub fn meet(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let mut out = Vec::with_capacity(x.0.len());
        self.lattice_into(&x.0, &y.0, false, &mut out);
        GroupElement(out)
    }

    fn lattice_into(&self, x: &[Rational], y: &[Rational], join: bool, out: &mut Vec<Rational>) {
        let pick = |o: Ordering, out: &mut Vec<Rational>| {
            let take_x = (o == Ordering::Greater) == join || o == Ordering::Equal;
            out.extend_from_slice(if take_x { x } else { y });
        };
        match self {
            GroupDescriptor::Lex(h, g) => {
                let k = h.arity();
                match h.cmp_slice(&x[..k], &y[..k]) {
                    Some(Ordering::Equal) => {
                        out.extend_from_slice(&x[..k]);
                        g.lattice_into(&x[k..], &y[k..], join, out);
                    }
                    Some(o) => pick(o, out),
                    None => unreachable!("lexicographic head is linear"),
                }
            }
            GroupDescriptor::Product(fs) => {
                let mut at = 0;
                for f in fs {
                    let k = f.arity();
                    f.lattice_into(&x[at..at + k], &y[at..at + k], join, out);
                    at += k;
                }
            }
            _ => {
                let o = self.cmp_slice(x, y).expect("linear family");
                pick(o, out)
            }
        }
    }

    /// `|x| = x ∨ -x`.
    pub fn abs(&self, x: &GroupElement) -> GroupElement {
        self.join(x, &self.neg(x))
    }

    /// The unique `h` with `h + h = x` when it lies in the carrier.
    pub fn try_halve(&self, x: &GroupElement) -> Option<GroupElement> {
        let mut out = Vec::with_capacity(x.0.len());
        self.halve_into(&x.0, &mut out)?;
        let h = GroupElement(out);
        self.contains(&h).then_some(h)
    }

    fn halve_into(&self, x: &[Rational], out: &mut Vec<Rational>) -> Option<()> {
        match self {
            GroupDescriptor::Twist3(_) => {
                let (h1, h2) = (x[0].half(), x[1].half());
                let h3 = (&x[2] - &(&h1 * &h2)).half();
                out.extend([h1, h2, h3]);
            }
            GroupDescriptor::Twist4(_) => {
                let (h1, h2, h3) = (x[0].half(), x[1].half(), x[2].half());
                let h4 = (&x[3] - &(&h2 * &h3)).half();
                out.extend([h1, h2, h3, h4]);
            }
            GroupDescriptor::Lex(h, g) => {
                let k = h.arity();
                h.halve_into(&x[..k], out)?;
                g.halve_into(&x[k..], out)?;
            }
            GroupDescriptor::Product(fs) => {
                let mut at = 0;
                for f in fs {
                    let k = f.arity();
                    f.halve_into(&x[at..at + k], out)?;
                    at += k;
                }
            }
            _ => out.extend(x.iter().map(|c| c.half())),
        }
        Some(())
    }

    /// Whether `u + g = g + u` for all `g`, with a violating `g` otherwise.
    pub fn is_unit_central(&self) -> (bool, Option<GroupElement>) {
        match self.centrality_witness() {
            None => (true, None),
            Some(w) => (false, Some(w)),
        }
    }

    fn centrality_witness(&self) -> Option<GroupElement> {
        match self {
            GroupDescriptor::Twist3(_) => Some(GroupElement::from_ints(&[0, 1, 0])),
            GroupDescriptor::Lex(h, g) => {
                let mut w = h.centrality_witness()?;
                w.0.extend(g.zero().0);
                Some(w)
            }
            GroupDescriptor::Product(fs) => {
                let mut at = 0;
                for f in fs {
                    if let Some(w) = f.centrality_witness() {
                        let mut z = self.zero();
                        z.0[at..at + f.arity()].clone_from_slice(&w.0);
                        return Some(z);
                    }
                    at += f.arity();
                }
                None
            }
            _ => None,
        }
    }

    /// Some `n ≥ 1` with `|x| ≤ n·u`. Not necessarily the least one.
    pub fn strong_unit_bound(&self, x: &GroupElement) -> BigInt {
        self.bound_slice(&x.0).max(BigInt::one())
    }

    fn bound_slice(&self, x: &[Rational]) -> BigInt {
        match self {
            GroupDescriptor::Quad { alpha, .. } => {
                let sqrt_d_ceil = alpha.d().sqrt() + BigInt::one();
                let alpha_ceil = &alpha.a().abs() + &alpha.b().abs().mul_int(&sqrt_d_ceil);
                (&x[0].abs() + &x[1].abs().mul_int(&alpha_ceil.ceil())).ceil()
            }
            GroupDescriptor::Lex(h, _) => h.bound_slice(&x[..h.arity()]) + BigInt::one(),
            GroupDescriptor::Twist3(_) | GroupDescriptor::Twist4(_) => x[0].abs().ceil() + BigInt::one(),
            GroupDescriptor::Product(fs) => {
                let mut at = 0;
                fs.iter()
                    .map(|f| {
                        let k = f.arity();
                        at += k;
                        f.bound_slice(&x[at - k..at])
                    })
                    .max()
                    .unwrap_or_else(BigInt::one)
            }
            _ => x[0].abs().ceil(),
        }
    }

    /// The top of `{y ≥ 0 : y + y ≤ u}` when it exists.
    pub fn half_unit_floor(&self) -> Option<GroupElement> {
        match self {
            GroupDescriptor::ScaledInt(n) => {
                let n = *n as i64;
                Some(GroupElement(vec![Rational::ratio(n / 2, n)]))
            }
            GroupDescriptor::Dyadic(_) | GroupDescriptor::Rat => Some(GroupElement(vec![Rational::ratio(1, 2)])),
            GroupDescriptor::Quad { dyadic, .. } => {
                dyadic.then(|| GroupElement(vec![Rational::ratio(1, 2), Rational::zero()]))
            }
            GroupDescriptor::Lex(h, g) => {
                let hh = h.half_unit_floor()?;
                (h.add(&hh, &hh) == h.unit()).then(|| {
                    let mut v = hh.0;
                    v.extend(g.zero().0);
                    GroupElement(v)
                })
            }
            GroupDescriptor::Twist3(t) | GroupDescriptor::Twist4(t) => t.is_two_divisible().then(|| {
                let mut z = self.zero();
                z.0[0] = Rational::ratio(1, 2);
                z
            }),
            GroupDescriptor::Product(fs) => {
                let mut v = Vec::with_capacity(self.arity());
                for f in fs {
                    v.extend(f.half_unit_floor()?.0);
                }
                Some(GroupElement(v))
            }
        }
    }

    /// Idempotents of `Γ(G,u)`: on each linear factor only `0` and `u_i`.
    pub fn gamma_idempotents(&self) -> Vec<GroupElement> {
        let ranges = self.factor_ranges();
        let unit = self.unit();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << ranges.len()) {
            let mut z = self.zero();
            for (i, r) in ranges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    z.0[r.clone()].clone_from_slice(&unit.0[r.clone()]);
                }
            }
            out.push(z);
        }
        out.sort_by(|a, b| lex_cmp(&a.0, &b.0));
        out
    }

    /// Textual shape of an element.
    pub fn render(&self, x: &GroupElement) -> Value {
        self.render_slice(&x.0)
    }

    fn render_slice(&self, x: &[Rational]) -> Value {
        match self {
            GroupDescriptor::ScaledInt(_) | GroupDescriptor::Dyadic(_) | GroupDescriptor::Rat => {
                Value::rat(x[0].clone())
            }
            GroupDescriptor::Quad { alpha, .. } => Value::Scalar(Scalar::from_quad(QuadValue::new_unchecked(
                &x[0] + &(&x[1] * alpha.a()),
                &x[1] * alpha.b(),
                alpha.d().clone(),
            ))),
            GroupDescriptor::Lex(h, g) => {
                let k = h.arity();
                Value::Tuple(vec![h.render_slice(&x[..k]), g.render_slice(&x[k..])])
            }
            GroupDescriptor::Twist3(_) | GroupDescriptor::Twist4(_) => Value::tuple_of(x.iter().cloned()),
            GroupDescriptor::Product(fs) => {
                let mut at = 0;
                Value::Tuple(
                    fs.iter()
                        .map(|f| {
                            let k = f.arity();
                            at += k;
                            f.render_slice(&x[at - k..at])
                        })
                        .collect(),
                )
            }
        }
    }

    /// Reads an element from its textual shape and checks membership.
    pub fn element(&self, v: &Value) -> Result<GroupElement> {
        let mut out = Vec::with_capacity(self.arity());
        self.read_into(v, &mut out)?;
        let x = GroupElement(out);
        self.check_member(&x)?;
        Ok(x)
    }

    fn read_into(&self, v: &Value, out: &mut Vec<Rational>) -> Result<()> {
        let shape = |want: &str| Error::DescriptorMismatch(format!("`{v}` does not have the shape of {self}: {want}"));
        let rational = |v: &Value| -> Result<Rational> {
            match v {
                Value::Scalar(Scalar::Rat(r)) => Ok(r.clone()),
                _ => Err(shape("expected a rational")),
            }
        };
        match self {
            GroupDescriptor::ScaledInt(_) | GroupDescriptor::Dyadic(_) | GroupDescriptor::Rat => {
                out.push(rational(v)?);
            }
            GroupDescriptor::Quad { alpha, .. } => match v {
                Value::Scalar(Scalar::Rat(r)) => out.extend([r.clone(), Rational::zero()]),
                Value::Scalar(Scalar::Quad(q)) => {
                    if q.d() != alpha.d() {
                        return Err(Error::Param(format!("{q} is not in the field of {alpha}")));
                    }
                    let n = q.b() * &alpha.b().recip()?;
                    let m = q.a() - &(&n * alpha.a());
                    out.extend([m, n]);
                }
                Value::Tuple(_) => return Err(shape("expected a scalar")),
            },
            GroupDescriptor::Twist3(_) | GroupDescriptor::Twist4(_) => {
                let items = v.as_tuple().filter(|t| t.len() == self.arity()).ok_or_else(|| {
                    shape(&format!("expected a {}-tuple", self.arity()))
                })?;
                for it in items {
                    out.push(rational(it)?);
                }
            }
            GroupDescriptor::Lex(h, g) => {
                let items = v.as_tuple().filter(|t| t.len() == 2).ok_or_else(|| shape("expected a pair"))?;
                h.read_into(&items[0], out)?;
                g.read_into(&items[1], out)?;
            }
            GroupDescriptor::Product(fs) => {
                let items = v
                    .as_tuple()
                    .filter(|t| t.len() == fs.len())
                    .ok_or_else(|| shape(&format!("expected a {}-tuple", fs.len())))?;
                for (f, it) in fs.iter().zip(items) {
                    f.read_into(it, out)?;
                }
            }
        }
        Ok(())
    }
}
