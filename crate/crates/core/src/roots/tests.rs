use proptest::prelude::*;

use super::*;
use crate::ogroups::{GroupDescriptor, GroupElement, ScalarTag};
use crate::par::Exec;
use crate::pmv::{Algebra, Element, FiniteAlgebra};
use crate::scalars::Rational;
use crate::value::Value;

fn chain(n: u64) -> Algebra {
    Algebra::finite_mv_chain(n).unwrap()
}

fn at(a: &Algebra, v: Value) -> Element {
    a.element(&v).unwrap()
}

fn root_label(a: &Algebra, x: Value) -> Option<Value> {
    sqrt(a, &at(a, x)).unwrap().root().map(|r| a.render(r))
}

fn g(xs: &[i64]) -> Element {
    Element::Group(GroupElement::from_ints(xs))
}

const T3: GroupDescriptor = GroupDescriptor::Twist3(ScalarTag::Int);

#[test]
fn odd_and_even_chains() {
    let m3 = chain(3);
    assert_eq!(root_label(&m3, Value::int(0)), Some(Value::ratio(1, 3)));
    assert_eq!(root_label(&m3, Value::ratio(1, 3)), Some(Value::ratio(2, 3)));
    assert_eq!(root_label(&m3, Value::int(1)), Some(Value::int(1)));
    assert_eq!(root_label(&m3, Value::ratio(2, 3)), None);
    let m4 = chain(4);
    assert_eq!(root_label(&m4, Value::ratio(1, 4)), None);
    assert_eq!(root_label(&m4, Value::int(0)), Some(Value::ratio(1, 2)));
    for n in 1..=6i64 {
        let odd = chain(2 * n as u64 - 1);
        assert_eq!(root_label(&odd, Value::ratio(1, 2 * n - 1)), Some(Value::ratio(n, 2 * n - 1)));
        if n > 1 {
            assert_eq!(root_label(&odd, Value::ratio(2 * (n - 1), 2 * n - 1)), None, "n={n}");
        }
        let even = chain(2 * n as u64);
        assert_eq!(root_label(&even, Value::int(0)), Some(Value::ratio(n, 2 * n)));
        assert_eq!(root_label(&even, Value::ratio(1, 2 * n)), None);
    }
}

#[test]
fn failure_reasons() {
    let m3 = chain(3);
    let f = m3.as_finite().unwrap();
    let x = f.index_of(&Value::ratio(2, 3)).unwrap();
    assert_eq!(sqrt_element_finite(f, x), SqrtResult::NotExists(NoRootReason::NoSolution));
    let t3 = Algebra::gamma(T3).unwrap();
    assert_eq!(sqrt_zero(&t3).unwrap(), SqrtResult::NotExists(NoRootReason::NoMaxOfNilpotents));
}

#[test]
fn zero_roots() {
    assert_eq!(sqrt_zero(&chain(4)).unwrap().root().map(|r| chain(4).render(r)), Some(Value::ratio(1, 2)));
    let d = Algebra::gamma(GroupDescriptor::dyadic()).unwrap();
    assert_eq!(sqrt_zero(&d).unwrap().root().map(|r| d.render(r)), Some(Value::ratio(1, 2)));
    let z6 = Algebra::gamma(GroupDescriptor::ScaledInt(6)).unwrap();
    assert_eq!(root_label(&z6, Value::int(0)), Some(Value::ratio(1, 2)));
}

#[test]
fn gamma_formula() {
    let d3 = Algebra::gamma(GroupDescriptor::Dyadic(3)).unwrap();
    assert_eq!(root_label(&d3, Value::ratio(1, 3)), Some(Value::ratio(2, 3)));
    let z4 = Algebra::gamma(GroupDescriptor::ScaledInt(4)).unwrap();
    assert_eq!(root_label(&z4, Value::ratio(1, 4)), None);
    let t3 = Algebra::gamma(T3).unwrap();
    assert!(matches!(sqrt_element_gamma(&t3, &t3.one()), Err(crate::Error::Unsupported(_))));
}

#[test]
fn gamma_formula_matches_finite_subchain() {
    // (1/6)ℤ ∩ [0,1] sits inside Γ((1/3)𝔻) as M₆
    let d3 = Algebra::gamma(GroupDescriptor::Dyadic(3)).unwrap();
    let m6 = chain(6);
    let f = m6.as_finite().unwrap();
    for k in 0..=6i64 {
        let finite = sqrt_element_finite(f, k as usize).root().map(|r| m6.render(r));
        let gamma = root_label(&d3, Value::ratio(k, 6));
        if let Some(v) = finite {
            assert_eq!(gamma, Some(v));
        }
    }
    for n in 1..=8u64 {
        let zn = Algebra::gamma(GroupDescriptor::ScaledInt(2 * n)).unwrap();
        let fin = chain(2 * n);
        for k in 0..=(2 * n as i64) {
            let v = Value::ratio(k, 2 * n as i64);
            assert_eq!(root_label(&zn, v.clone()), root_label(&fin, v));
        }
    }
}

#[test]
fn twist3_procedure() {
    let t3 = Algebra::gamma(T3).unwrap();
    assert_eq!(sqrt(&t3, &g(&[1, -2, 2])).unwrap(), SqrtResult::Exists(g(&[1, -1, 1])));
    assert_eq!(sqrt(&t3, &g(&[1, 0, 0])).unwrap(), SqrtResult::Exists(g(&[1, 0, 0])));
    assert!(!sqrt(&t3, &g(&[0, 1, 5])).unwrap().exists());
    assert!(t3.element(&Value::Tuple(vec![Value::int(0), Value::int(-1), Value::int(5)])).is_err());
    for n in 1..=5 {
        for m in -5..=5 {
            assert_eq!(sqrt(&t3, &g(&[1, -2 * n, 2 * m])).unwrap(), SqrtResult::Exists(g(&[1, -n, m])));
        }
    }
    assert!(matches!(sqrt_element_twist3(&chain(2), &chain(2).zero()), Err(crate::Error::AlgebraMismatch(_))));
}

/// Every solution of `a ⊙ a = x` with `x` in `[-B,B]³` has coordinates in
/// `[-B/2,B/2]`, so the box search sees all candidate roots; only the
/// dominance condition is restricted to the box.
#[test]
fn twist3_agrees_with_box_search() {
    const B: i64 = 6;
    let t3 = Algebra::gamma(T3).unwrap();
    let boxed: Vec<Element> = (0..=1)
        .flat_map(|a| (-B..=B).flat_map(move |b| (-B..=B).map(move |c| g(&[a, b, c]))))
        .filter(|x| t3.contains(x))
        .collect();
    for x in &boxed {
        let squares_below: Vec<&Element> =
            boxed.iter().filter(|y| t3.leq(&t3.odot(y, y).unwrap(), x).unwrap()).collect();
        let sols: Vec<&Element> = boxed.iter().filter(|a| t3.odot(a, a).unwrap() == *x).collect();
        let boxed_root = sols.iter().find(|a| squares_below.iter().all(|y| t3.leq(y, a).unwrap()));
        match sqrt(&t3, x).unwrap() {
            SqrtResult::Exists(r) => assert_eq!(boxed_root, Some(&&r), "x={:?}", x),
            SqrtResult::NotExists(NoRootReason::NoMaxOfNilpotents) => {
                // inside the box the nilpotents top out on the boundary
                let top = boxed_root.expect("box has a top nilpotent");
                assert_eq!(t3.grp(top).unwrap().0[1], Rational::from_int(B));
            }
            SqrtResult::NotExists(_) => assert!(sols.is_empty(), "x={:?}", x),
        }
    }
}

#[test]
fn boolean_roots() {
    let m4 = chain(4);
    assert_eq!(sqrt_boolean(&m4, &m4.one()).unwrap(), SqrtResult::Exists(m4.one()));
    assert_eq!(sqrt_boolean(&m4, &m4.zero()).unwrap().root().map(|r| m4.render(r)), Some(Value::ratio(1, 2)));
    let m22 = Algebra::product(&[chain(2), chain(2)]).unwrap();
    let b = at(&m22, Value::Tuple(vec![Value::int(0), Value::int(1)]));
    let want = Value::Tuple(vec![Value::ratio(1, 2), Value::int(1)]);
    assert_eq!(sqrt_boolean(&m22, &b).unwrap().root().map(|r| m22.render(r)), Some(want.clone()));
    assert_eq!(sqrt(&m22, &b).unwrap().root().map(|r| m22.render(r)), Some(want));
    assert!(matches!(sqrt_boolean(&m4, &at(&m4, Value::ratio(1, 4))), Err(crate::Error::NotBoolean(_))));
    let t3 = Algebra::gamma(T3).unwrap();
    assert!(matches!(sqrt_boolean(&t3, &t3.zero()), Err(crate::Error::NoSqrtZero(_))));
}

#[test]
fn maps() {
    assert!(sqrt_map(chain(2).as_finite().unwrap()).is_none());
    let m1 = sqrt_map(chain(1).as_finite().unwrap()).unwrap();
    assert_eq!(m1.map, vec![0, 1]);
    assert!(!m1.strict);
    assert_eq!(m1.w, 1);
    let b2 = Algebra::product(&[chain(1), chain(1)]).unwrap();
    let f = b2.as_finite().unwrap();
    let m = sqrt_map(f).unwrap();
    assert_eq!(m.map, (0..f.size()).collect::<Vec<_>>());
    assert!(!m.strict);
    assert_eq!(sqrt_map(&FiniteAlgebra::trivial()).unwrap().strict, true);
    let m3 = chain(3);
    assert_eq!(sqrt_map_with(Exec::Sequential, m3.as_finite().unwrap()), sqrt_map_with(Exec::Parallel, m3.as_finite().unwrap()));
}

#[test]
fn symbolic_gamma_maps() {
    let d = GroupDescriptor::dyadic();
    let m = gamma_sqrt_map(&d).unwrap();
    assert!(m.strict);
    assert_eq!(m.w, d.zero());
    let dz = GroupDescriptor::Product(vec![d.clone(), GroupDescriptor::int()]);
    let m = gamma_sqrt_map(&dz).unwrap();
    assert!(!m.strict);
    assert_eq!(m.kinds, vec![RootKind::Strict, RootKind::Identity]);
    assert_eq!(m.w, GroupElement(vec![Rational::zero(), Rational::one()]));
    assert_eq!(m.apply(&dz, &dz.zero()), GroupElement(vec![Rational::ratio(1, 2), Rational::zero()]));
    assert!(gamma_sqrt_map(&T3).is_none());
    assert!(gamma_sqrt_map(&GroupDescriptor::ScaledInt(2)).is_none());
    assert!(gamma_sqrt_map(&GroupDescriptor::Twist4(ScalarTag::Dyadic)).unwrap().strict);
}

fn all_pairs(a: &Algebra) -> Vec<(Element, Element)> {
    let es = a.elements().unwrap();
    es.iter().flat_map(|x| es.iter().map(move |y| (x.clone(), y.clone()))).collect()
}

#[test]
fn identities_on_even_chains() {
    for n in 1..=6 {
        let m = chain(2 * n);
        let rep = sqrt_identities_check(&m, &all_pairs(&m)).unwrap();
        assert!(rep.all_pass(), "M{}: {:?}", 2 * n, rep);
        assert!(rep.outcomes.iter().all(|o| o.checked > 0), "{:?}", rep);
    }
    let p = Algebra::product(&[chain(2), chain(4)]).unwrap();
    assert!(sqrt_identities_check(&p, &all_pairs(&p)).unwrap().all_pass());
    assert!(matches!(sqrt_identities_check(&chain(3), &[]), Err(crate::Error::Unsupported(_))));
}

#[test]
fn identity_examples() {
    let d = Algebra::gamma(GroupDescriptor::dyadic()).unwrap();
    let (x, y) = (at(&d, Value::ratio(1, 4)), at(&d, Value::ratio(1, 2)));
    let r0 = sqrt_zero(&d).unwrap().root().cloned().unwrap();
    let sx = sqrt(&d, &x).unwrap().root().cloned().unwrap();
    let sy = sqrt(&d, &y).unwrap().root().cloned().unwrap();
    let rhs = d.oplus(&d.odot(&sx, &d.lneg(&r0).unwrap()).unwrap(), &sy).unwrap();
    assert_eq!(d.render(&rhs), Value::ratio(7, 8));
    assert_eq!(sqrt(&d, &d.oplus(&x, &y).unwrap()).unwrap().root(), Some(&rhs));
    let rep = sqrt_identities_check(&d, &[(x, y)]).unwrap();
    assert!(rep.all_pass());
    assert_eq!(rep.get("sqrt_oplus").unwrap().checked, 1);
}

#[test]
fn greatest_subalgebra() {
    let labels = |a: &Algebra, s: &Stage| s.carrier.iter().map(|&i| a.as_finite().unwrap().label(i).clone()).collect::<Vec<_>>();
    let m3 = chain(3);
    let f = m3.as_finite().unwrap();
    let amb = greatest_sqrt_subalgebra(f, Quantifier::Ambient);
    assert_eq!(labels(&m3, &amb.stages[0]), vec![Value::int(0), Value::ratio(1, 3), Value::int(1)]);
    assert!(!amb.stages[0].is_subalgebra);
    assert_eq!(labels(&m3, &amb.stages[1]), vec![Value::int(0), Value::int(1)]);
    assert_eq!(labels(&m3, amb.fixpoint()), vec![Value::int(1)]);
    let rel = greatest_sqrt_subalgebra(f, Quantifier::Relative);
    assert_eq!(labels(&m3, rel.fixpoint()), vec![Value::int(0), Value::int(1)]);
    assert!(rel.fixpoint().is_subalgebra);
    assert!(compare_quantifiers(f).2);

    let m4 = chain(4);
    let f4 = m4.as_finite().unwrap();
    let amb = greatest_sqrt_subalgebra(f4, Quantifier::Ambient);
    assert_eq!(labels(&m4, &amb.stages[0]), vec![Value::int(0), Value::ratio(1, 2), Value::int(1)]);
    assert!(amb.stages[0].is_subalgebra);
    let rel = greatest_sqrt_subalgebra(f4, Quantifier::Relative);
    assert_eq!(labels(&m4, rel.fixpoint()), vec![Value::int(0), Value::int(1)]);

    let m1 = chain(1);
    let g1 = greatest_sqrt_subalgebra(m1.as_finite().unwrap(), Quantifier::Ambient);
    assert_eq!(g1.stages.len(), 1);
    assert_eq!(g1.fixpoint().carrier, vec![0, 1]);
    assert_eq!("relative".parse::<Quantifier>().unwrap(), Quantifier::Relative);
}

#[test]
fn even_chain_first_stage_is_even_subchain() {
    for n in 1..=6u64 {
        let m = chain(2 * n);
        let f = m.as_finite().unwrap();
        let x1 = &greatest_sqrt_subalgebra(f, Quantifier::Ambient).stages[0];
        let want: Vec<usize> = (0..=2 * n as usize).filter(|k| k % 2 == 0).collect();
        let got: Vec<usize> = x1.carrier.clone();
        let idx: Vec<usize> = want.iter().map(|&k| f.index_of(&Value::ratio(k as i64, 2 * n as i64)).unwrap()).collect();
        assert_eq!(got, idx);
        assert!(x1.is_subalgebra);
    }
}

#[test]
fn zero_root_bound_on_finite_products() {
    for m in [Algebra::product(&[chain(3), chain(2)]).unwrap(), chain(5), chain(7)] {
        let f = m.as_finite().unwrap();
        let r0 = sqrt_element_finite(f, f.zero()).root().and_then(Element::index).unwrap();
        assert!(f.leq(r0, f.meet(f.lneg(r0), f.rneg(r0))));
        for x in 0..f.size() {
            if let Some(a) = sqrt_element_finite(f, x).root().and_then(Element::index) {
                assert!(f.leq(a, f.meet(f.oplus(x, r0), f.oplus(r0, x))));
            }
        }
    }
}

proptest! {
    #[test]
    fn monotone_on_chains(n in 1u64..12, i in 0i64..12, j in 0i64..12) {
        let m = chain(n);
        let (i, j) = (i.min(n as i64), j.min(n as i64));
        let (lo, hi) = (i.min(j), i.max(j));
        let a = sqrt(&m, &at(&m, Value::ratio(lo, n as i64))).unwrap();
        let b = sqrt(&m, &at(&m, Value::ratio(hi, n as i64))).unwrap();
        if let (Some(a), Some(b)) = (a.root(), b.root()) {
            prop_assert!(m.leq(a, b).unwrap());
        }
    }

    #[test]
    fn dyadic_identities(a in 0i64..=64, b in 0i64..=64) {
        let d = Algebra::gamma(GroupDescriptor::dyadic()).unwrap();
        let x = at(&d, Value::ratio(a, 64));
        let y = at(&d, Value::ratio(b, 64));
        let rep = sqrt_identities_check(&d, &[(x, y)]).unwrap();
        prop_assert!(rep.all_pass(), "{:?}", rep);
    }
}
