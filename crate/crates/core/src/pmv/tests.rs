use proptest::prelude::*;

use super::*;
use crate::ogroups::{GroupDescriptor, GroupElement, ScalarTag};
use crate::scalars::Rational;
use crate::value::Value;

fn chain(n: u64) -> Algebra {
    Algebra::finite_mv_chain(n).unwrap()
}

fn at(a: &Algebra, v: Value) -> Element {
    a.element(&v).unwrap()
}

fn pair(x: i64, y: i64) -> Value {
    Value::Tuple(vec![Value::int(x), Value::int(y)])
}

fn g(xs: &[i64]) -> Element {
    Element::Group(GroupElement::from_ints(xs))
}

fn m1m4() -> Algebra {
    Algebra::product(&[chain(1), chain(4)]).unwrap()
}

#[test]
fn chain_operations() {
    let m3 = chain(3);
    let two_thirds = at(&m3, Value::ratio(2, 3));
    assert_eq!(m3.odot(&two_thirds, &two_thirds).unwrap(), at(&m3, Value::ratio(1, 3)));
    for x in m3.elements().unwrap() {
        assert_eq!(m3.oplus(&x, &m3.zero()).unwrap(), x);
    }
    assert_eq!(m3.size(), Some(4));
    assert_eq!(chain(1).size(), Some(2));
    assert_eq!(chain(4).size(), Some(5));
    assert!(chain(1).as_finite().unwrap().is_boolean_algebra());
}

#[test]
fn twisted_gamma_operations() {
    let m = Algebra::gamma(GroupDescriptor::Twist3(ScalarTag::Int)).unwrap();
    let a = g(&[1, -1, 1]);
    assert!(m.contains(&a));
    assert_eq!(m.odot(&a, &a).unwrap(), g(&[1, -2, 2]));
    assert_eq!(m.oplus(&a, &m.zero()).unwrap(), a);
}

#[test]
fn skeletons() {
    let m3 = chain(3);
    let sk: Vec<Value> = m3.boolean_skeleton().unwrap().iter().map(|x| m3.render(x)).collect();
    assert_eq!(sk, vec![Value::int(0), Value::int(1)]);
    assert_eq!(m1m4().boolean_skeleton().unwrap().len(), 4);
    assert!(m3.is_boolean(&m3.one()).unwrap());
    let gm = Algebra::gamma(GroupDescriptor::Product(vec![GroupDescriptor::int(), GroupDescriptor::ScaledInt(4)])).unwrap();
    let gsk = gm.boolean_skeleton().unwrap();
    assert_eq!(gsk.len(), 4);
    assert!(gsk.iter().all(|b| gm.is_boolean(b).unwrap()));
}

#[test]
fn symmetry() {
    assert_eq!(chain(5).is_symmetric().unwrap(), (true, None));
    let t3 = Algebra::gamma(GroupDescriptor::Twist3(ScalarTag::Int)).unwrap();
    let (s, w) = t3.is_symmetric().unwrap();
    assert!(!s);
    let w = w.unwrap();
    assert_eq!(w, g(&[0, 1, 0]));
    assert_eq!(t3.lneg(&w).unwrap(), g(&[1, -1, -1]));
    assert_eq!(t3.rneg(&w).unwrap(), g(&[1, -1, 0]));
    let t4 = Algebra::gamma(GroupDescriptor::Twist4(ScalarTag::Int)).unwrap();
    assert_eq!(t4.is_symmetric().unwrap(), (true, None));
    // sampled confirmation of the symbolic verdict
    for x in [g(&[0, 1, 2, 3]), g(&[0, 4, -5, 1]), g(&[1, -1, -2, 7]), g(&[0, 3, -3, -3])] {
        assert!(t4.contains(&x));
        assert_eq!(t4.lneg(&x).unwrap(), t4.rneg(&x).unwrap());
    }
}

#[test]
fn products_and_intervals() {
    let m3 = chain(3);
    assert_eq!(m3.interval(&m3.one()).unwrap(), m3);
    let m = m1m4();
    let i = m.interval(&at(&m, pair(1, 0))).unwrap();
    assert_eq!(i.size(), Some(2));
    assert!(i.as_finite().unwrap().is_boolean_algebra());
    assert_eq!(Algebra::product(&[chain(2), chain(2)]).unwrap().size(), Some(9));
    assert!(matches!(m.interval(&at(&m, Value::Tuple(vec![Value::int(0), Value::ratio(1, 4)]))), Err(crate::Error::NotBoolean(_))));
}

#[test]
fn homomorphisms() {
    let m3 = chain(3);
    let f = m3.as_finite().unwrap();
    let id: Vec<usize> = (0..f.size()).collect();
    assert!(check_homomorphism(&id, f, f));
    assert!(is_embedding(&id, f, f));
    assert!(!check_homomorphism(&vec![f.zero(); f.size()], f, f));

    let m = m1m4();
    let mf = m.as_finite().unwrap();
    let w = mf.index_of(&pair(1, 0)).unwrap();
    let (iw, carrier) = mf.interval(w).unwrap();
    let to_iw: Vec<usize> = (0..mf.size())
        .map(|x| carrier.iter().position(|&c| c == mf.meet(x, w)).unwrap())
        .collect();
    assert!(check_homomorphism(&to_iw, mf, &iw));
    assert!(!is_embedding(&to_iw, mf, &iw));
}

#[test]
fn interval_decomposition_is_isomorphism() {
    for m in [m1m4(), Algebra::product(&[chain(2), chain(1), chain(3)]).unwrap()] {
        let f = m.as_finite().unwrap();
        for w in f.boolean_skeleton() {
            let (a, ca) = f.interval(w).unwrap();
            let (b, cb) = f.interval(f.lneg(w)).unwrap();
            let ab = FiniteAlgebra::product(&[&a, &b]).unwrap();
            let map: Vec<usize> = (0..f.size())
                .map(|x| {
                    let i = ca.iter().position(|&c| c == f.meet(x, w)).unwrap();
                    let j = cb.iter().position(|&c| c == f.meet(x, f.lneg(w))).unwrap();
                    i * b.size() + j
                })
                .collect();
            assert!(is_embedding(&map, f, &ab));
            assert_eq!(f.size(), ab.size());
        }
    }
}

#[test]
fn invalid_tables_rejected() {
    // ⊕ = max on a 3-chain with the order-reversing negation is not an MV-algebra
    let labels = vec![Value::int(0), Value::ratio(1, 2), Value::int(1)];
    let oplus = (0..9).map(|k| (k / 3).max(k % 3)).collect();
    let neg = vec![2, 1, 0];
    assert!(FiniteAlgebra::from_tables(labels, oplus, neg.clone(), neg).is_err());
}

#[test]
fn chain_decomposition_recovers_factors() {
    let m = Algebra::product(&[chain(3), chain(1), chain(2)]).unwrap();
    let f = m.as_finite().unwrap();
    let mut ns: Vec<u64> = f.chain_decomposition().unwrap().into_iter().map(|(_, n)| n).collect();
    ns.sort();
    assert_eq!(ns, vec![1, 2, 3]);
    let (i, _) = f.interval(f.index_of(&Value::Tuple(vec![Value::int(1), Value::int(0), Value::int(1)])).unwrap()).unwrap();
    let d = i.to_descriptor().unwrap().to_string();
    assert!(d == "prod(Z/3,Z/2)" || d == "prod(Z/2,Z/3)", "{d}");
}

#[test]
fn mixed_product_goes_symbolic() {
    let l = Algebra::gamma(GroupDescriptor::lex(GroupDescriptor::int(), GroupDescriptor::int())).unwrap();
    let p = Algebra::product(&[l, chain(1)]).unwrap();
    assert_eq!(p.descriptor().unwrap().to_string(), "prod(lex(Z,Z),Z)");
}

fn dy() -> impl Strategy<Value = Rational> {
    (0i64..=64).prop_map(|n| Rational::ratio(n, 64))
}

proptest! {
    #[test]
    fn gamma_identities(a in dy(), b in dy(), c in dy(), h in -5i64..5, k in -5i64..5) {
        let algs = [
            (Algebra::gamma(GroupDescriptor::dyadic()).unwrap(), Value::rat(a.clone()), Value::rat(b.clone())),
            (
                Algebra::gamma(GroupDescriptor::lex(GroupDescriptor::dyadic(), GroupDescriptor::int())).unwrap(),
                Value::Tuple(vec![Value::rat(a.clone()), Value::int(h)]),
                Value::Tuple(vec![Value::rat(b.clone()), Value::int(k)]),
            ),
            (
                Algebra::gamma(GroupDescriptor::Twist3(ScalarTag::Dyadic)).unwrap(),
                Value::tuple_of([a.clone(), Rational::from_int(h), c.clone()]),
                Value::tuple_of([b.clone(), Rational::from_int(k), a.clone()]),
            ),
        ];
        for (m, xv, yv) in algs {
            let (Ok(x), Ok(y)) = (m.element(&xv), m.element(&yv)) else { continue };
            // ⊙ from the group agrees with its ⊕/negation form
            let via_neg = m.rneg(&m.oplus(&m.lneg(&y).unwrap(), &m.lneg(&x).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(m.odot(&x, &y).unwrap(), via_neg);
            // De Morgan
            let l = m.lneg(&m.join(&x, &y).unwrap()).unwrap();
            let r = m.meet(&m.lneg(&x).unwrap(), &m.lneg(&y).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            // join and meet through the MV operations
            let j = m.oplus(&x, &m.odot(&m.rneg(&x).unwrap(), &y).unwrap()).unwrap();
            prop_assert_eq!(j, m.join(&x, &y).unwrap());
            let mt = m.odot(&x, &m.oplus(&m.lneg(&x).unwrap(), &y).unwrap()).unwrap();
            prop_assert_eq!(mt, m.meet(&x, &y).unwrap());
            prop_assert_eq!(m.rneg(&m.lneg(&x).unwrap()).unwrap(), x.clone());
            let o = m.one();
            prop_assert_eq!(m.oplus(&x, &o).unwrap(), o.clone());
            prop_assert!(m.contains(&m.oplus(&x, &y).unwrap()));
            prop_assert!(m.contains(&m.odot(&x, &y).unwrap()));
        }
    }
}
