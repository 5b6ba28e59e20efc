use mvroot::closures::{closure_sqrt, crit_check, sqrt_closure, strict_closure, ClosureCase};
use mvroot::ideals::{decomposition_by_w, is_bsi};
use mvroot::roots::{sqrt, sqrt_map};
use mvroot::{Algebra, Element, FiniteAlgebra, GroupDescriptor, Value};

fn chain(n: u64) -> Algebra {
    Algebra::finite_mv_chain(n).unwrap()
}

#[test]
fn chain_roots_embed_into_the_closure() {
    let m5 = chain(5);
    let c = strict_closure(&m5.to_descriptor().unwrap()).unwrap();
    assert_eq!(c.closed(), GroupDescriptor::Dyadic(5));
    assert!(crit_check(&c.base(), &c.closed()).unwrap().holds());
    let d = Algebra::gamma(c.closed()).unwrap();
    for k in 0..=5 {
        let v = Value::ratio(k, 5);
        let x = m5.element(&v).unwrap();
        let inside = d.element(&v).unwrap();
        let r = closure_sqrt(&c, inside.group().unwrap()).unwrap();
        assert_eq!(d.render(&Element::Group(r.clone())), Value::ratio(k + 5, 10));
        // a ⊙ a = x is solvable in M5 exactly for odd k, and there the roots coincide
        let root = sqrt(&m5, &x).unwrap();
        if k % 2 == 1 {
            assert_eq!(m5.render(root.root().unwrap()), d.render(&Element::Group(r)));
        } else if k > 0 {
            assert!(!root.exists());
        }
    }
}

#[test]
fn boolean_times_chain_splits() {
    let alg = Algebra::product(&[chain(1), chain(4)]).unwrap();
    let out = sqrt_closure(&alg).unwrap();
    let c = out.closure().unwrap();
    assert_eq!(c.closed(), GroupDescriptor::Product(vec![GroupDescriptor::int(), GroupDescriptor::dyadic()]));
    assert!(!out.is_open());
}

#[test]
fn boolean_cube_decomposes_trivially() {
    let m1 = FiniteAlgebra::chain(1).unwrap();
    let fa = FiniteAlgebra::product(&[&m1, &m1, &m1]).unwrap();
    let m = sqrt_map(&fa).unwrap();
    assert!(!m.strict);
    assert!(!is_bsi(&fa).unwrap());
    let w = decomposition_by_w(&fa).unwrap();
    assert_eq!(w.w, fa.one());
    assert!(w.iso_verified && w.boolean_part_is_boolean);
}

#[test]
fn symbolic_and_finite_paths_agree_on_big_chains() {
    for n in [3, 4, 7] {
        let out = sqrt_closure(&chain(n)).unwrap();
        assert!(matches!(out, mvroot::closures::SqrtClosureOutcome::Closure { case: ClosureCase::Bsi, .. }));
    }
}
