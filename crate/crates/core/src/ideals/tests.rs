use super::*;
use crate::ogroups::{GroupDescriptor, GroupElement, ScalarTag};
use crate::pmv::{Algebra, FiniteAlgebra};
use crate::roots::sqrt_map;
use crate::scalars::Rational;
use crate::value::Value;

fn chain(n: u64) -> FiniteAlgebra {
    FiniteAlgebra::chain(n).unwrap()
}

fn prod(ns: &[u64]) -> FiniteAlgebra {
    let cs: Vec<FiniteAlgebra> = ns.iter().map(|&n| chain(n)).collect();
    let refs: Vec<&FiniteAlgebra> = cs.iter().collect();
    FiniteAlgebra::product(&refs).unwrap()
}

fn tup(xs: &[Value]) -> Value {
    Value::Tuple(xs.to_vec())
}

fn idx(fa: &FiniteAlgebra, v: Value) -> usize {
    fa.index_of(&v).unwrap()
}

/// Every subset that is downward closed, ⊕-closed and contains 0.
fn brute_force_ideals(fa: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = fa.size();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let has = |x: usize| mask >> x & 1 == 1;
        let ok = has(fa.zero())
            && s.iter().all(|&x| (0..n).all(|y| !fa.leq(y, x) || has(y)))
            && s.iter().all(|&x| s.iter().all(|&y| has(fa.oplus(x, y))));
        if ok {
            out.push(s);
        }
    }
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

#[test]
fn enumeration_matches_subset_search() {
    for fa in [chain(3), prod(&[1, 4]), prod(&[1, 1, 2]), prod(&[2, 2])] {
        let got: Vec<Vec<usize>> = enumerate_ideals(&fa).unwrap().into_iter().map(|i| i.members).collect();
        assert_eq!(got, brute_force_ideals(&fa));
    }
}

#[test]
fn all_ideals_normal_and_flagged() {
    for fa in [chain(5), prod(&[1, 4]), prod(&[2, 3])] {
        for i in enumerate_ideals(&fa).unwrap() {
            assert!(i.is_ideal && i.is_normal);
        }
    }
}

#[test]
fn chain_primes() {
    let m3 = chain(3);
    let ideals = enumerate_ideals(&m3).unwrap();
    assert_eq!(ideals.len(), 2);
    let x = normal_primes(&m3).unwrap();
    assert_eq!(x.len(), 1);
    assert_eq!(x[0].members, vec![m3.zero()]);
    assert_eq!(normal_primes(&chain(1)).unwrap()[0].members, vec![0]);
    assert!(matches!(normal_primes(&FiniteAlgebra::trivial()), Err(crate::Error::Degenerate(_))));
}

#[test]
fn partition_of_m1_m4() {
    let fa = prod(&[1, 4]);
    let x = normal_primes(&fa).unwrap();
    assert_eq!(x.len(), 2);
    let p = partition_primes(&fa).unwrap();
    let zero_m4: Vec<usize> = (0..fa.size()).filter(|&i| fa.label(i).as_tuple().unwrap()[0] == Value::int(0)).collect();
    let m1_zero: Vec<usize> = (0..fa.size()).filter(|&i| fa.label(i).as_tuple().unwrap()[1] == Value::int(0)).collect();
    assert_eq!(p.x1.len(), 1);
    assert_eq!(p.x1[0].members, zero_m4);
    assert_eq!(p.x2[0].members, m1_zero);
    assert_eq!(p.i1, zero_m4);
    assert_eq!(p.i2, m1_zero);
    assert!(!is_bsi(&fa).unwrap());
    assert_eq!(nn12_element(&fa).unwrap(), Some(idx(&fa, tup(&[Value::int(1), Value::int(0)]))));
}

#[test]
fn partition_of_chains() {
    let m3 = chain(3);
    let p = partition_primes(&m3).unwrap();
    assert!(p.x1.is_empty());
    assert_eq!(p.i2, vec![m3.zero()]);
    assert_eq!(p.i1.len(), m3.size());
    assert!(is_bsi(&m3).unwrap());
    assert_eq!(nn12_element(&m3).unwrap(), Some(m3.zero()));
    let m1 = chain(1);
    let p = partition_primes(&m1).unwrap();
    assert_eq!(p.x1.len(), 1);
    assert!(p.x2.is_empty());
    assert_eq!(nn12_element(&m1).unwrap(), Some(m1.one()));
    assert!(!is_bsi(&m1).unwrap());
    assert!(is_bsi(&prod(&[4, 6])).unwrap());
}

#[test]
fn boolean_flag_matches_quotient() {
    for fa in [prod(&[1, 4]), prod(&[1, 2, 3]), chain(3)] {
        for p in normal_primes(&fa).unwrap() {
            let (q, _) = quotient(&fa, &p).unwrap();
            assert_eq!(p.is_boolean_ideal, q.is_boolean_algebra());
        }
    }
}

#[test]
fn quotients() {
    let m4 = chain(4);
    let ideals = enumerate_ideals(&m4).unwrap();
    let (q, proj) = quotient(&m4, &ideals[0]).unwrap();
    assert_eq!(q, m4);
    assert_eq!(proj, (0..5).collect::<Vec<_>>());
    let (t, _) = quotient(&m4, ideals.last().unwrap()).unwrap();
    assert_eq!(t.size(), 1);

    let fa = prod(&[1, 4]);
    let p = partition_primes(&fa).unwrap();
    let (q, proj) = quotient(&fa, &p.x1[0]).unwrap();
    assert_eq!(q.size(), 2);
    assert!(q.is_boolean_algebra());
    assert!(crate::pmv::check_homomorphism(&proj, &fa, &q));
    let kernel: Vec<usize> = (0..fa.size()).filter(|&x| proj[x] == proj[fa.zero()]).collect();
    assert_eq!(kernel, p.x1[0].members);
}

#[test]
fn intersections_are_trivial() {
    for ns in [&[1u64, 4][..], &[3], &[2, 2, 1], &[1, 1], &[5, 2]] {
        let fa = prod(ns);
        let p = partition_primes(&fa).unwrap();
        let both: Vec<usize> = p.i1.iter().copied().filter(|x| p.i2.contains(x)).collect();
        assert_eq!(both, vec![fa.zero()]);
        if let Some(a) = nn12_element(&fa).unwrap() {
            let down = |m: usize| (0..fa.size()).filter(|&y| fa.leq(y, m)).collect::<Vec<_>>();
            assert_eq!(p.i2, down(a));
            assert_eq!(p.i1, down(fa.lneg(a)));
            assert!(fa.is_boolean(a));
        }
        let i2 = enumerate_ideals(&fa).unwrap().into_iter().find(|i| i.members == p.i2).unwrap();
        let (q, _) = quotient(&fa, &i2).unwrap();
        if q.size() > 1 {
            assert!(is_bsi(&q).unwrap(), "{ns:?}");
        }
    }
}

#[test]
fn strict_square_examples() {
    let m1 = chain(1);
    let r = strict_square_ideals(&m1).unwrap();
    assert_eq!(r.w, m1.one());
    assert_eq!(r.least_strict, vec![0, 1]);
    assert!(r.consistent());
    let b2 = prod(&[1, 1]);
    let r = strict_square_ideals(&b2).unwrap();
    assert_eq!(r.least_strict.len(), 4);
    assert!(r.consistent());
    // the one-element algebra is the only finite one with a strict map
    let t = FiniteAlgebra::trivial();
    let r = strict_square_ideals(&t).unwrap();
    assert_eq!(r.w, t.zero());
    assert_eq!(r.least_strict, vec![t.zero()]);
    assert!(r.consistent());
    assert!(matches!(strict_square_ideals(&chain(3)), Err(crate::Error::NoSqrtMap(_))));
}

#[test]
fn w_decomposition() {
    let m1 = chain(1);
    let d = decomposition_by_w(&m1).unwrap();
    assert_eq!(d.boolean_part.0.size(), 2);
    assert_eq!(d.strict_part.0.size(), 1);
    assert!(d.iso_verified && d.boolean_part_is_boolean && d.strict_part_is_strict);

    let fa = prod(&[1, 1, 1]);
    let d = decomposition_by_w(&fa).unwrap();
    assert!(d.iso_verified && d.boolean_part_is_boolean && d.strict_part_is_strict);
    assert_eq!(d.boolean_part.0.size(), 8);
    assert_eq!(d.strict_part.0.size(), 1);

    let t = decomposition_by_w(&FiniteAlgebra::trivial()).unwrap();
    assert_eq!(t.boolean_part.0.size(), 1);
    assert!(t.iso_verified && t.strict_part_is_strict);
    assert!(matches!(decomposition_by_w(&prod(&[1, 2])), Err(crate::Error::NoSqrtMap(_))));
}

#[test]
fn induced_root_on_quotients() {
    for fa in [prod(&[1]), prod(&[1, 1]), prod(&[1, 1, 1])] {
        let r = sqrt_map(&fa).unwrap();
        for i in enumerate_ideals(&fa).unwrap() {
            let (q, proj) = quotient(&fa, &i).unwrap();
            let rq = sqrt_map(&q).unwrap();
            for x in 0..fa.size() {
                assert_eq!(rq.map[proj[x]], proj[r.map[x]]);
            }
        }
    }
}

#[test]
fn bsi_iff_strict_on_corpus() {
    for ns in [&[2u64][..], &[1], &[1, 2], &[2, 4], &[4, 6], &[1, 1, 2], &[2, 2, 2], &[6], &[1, 4], &[1, 1, 1]] {
        let fa = prod(ns);
        match sqrt_map(&fa) {
            Some(r) => assert_eq!(is_bsi(&fa).unwrap(), r.strict, "{ns:?}"),
            None => assert!(!fa.is_boolean_algebra(), "{ns:?}"),
        }
    }
}

#[test]
fn capped_enumeration() {
    let big = prod(&[4, 4, 4]);
    assert!(matches!(enumerate_ideals(&big), Err(crate::Error::Resource(_))));
}

#[test]
fn symbolic_spectra() {
    let d = GroupDescriptor::dyadic();
    assert!(symbolic_spectrum(&d).unwrap().is_bsi());
    let dz = GroupDescriptor::Product(vec![d.clone(), GroupDescriptor::int()]);
    let s = symbolic_spectrum(&dz).unwrap();
    assert!(!s.is_bsi());
    assert_eq!(s.nn12(&dz).unwrap(), GroupElement(vec![Rational::zero(), Rational::one()]));

    let lzz = GroupDescriptor::lex(GroupDescriptor::int(), GroupDescriptor::int());
    let s = symbolic_spectrum(&lzz).unwrap();
    assert_eq!(s.factors[0].i1, LevelIdeal::HeadZero);
    assert_eq!(s.factors[0].i2, LevelIdeal::Zero);
    assert!(s.is_bsi());
    assert!(s.nn12(&lzz).is_err());

    let z = GroupDescriptor::int();
    let s = symbolic_spectrum(&z).unwrap();
    assert!(s.i1_is_zero());
    assert_eq!(s.nn12(&z).unwrap(), z.unit());

    let t3 = GroupDescriptor::Twist3(ScalarTag::Int);
    assert_eq!(symbolic_spectrum(&t3).unwrap().factors[0].i1, LevelIdeal::HeadZero);
}

#[test]
fn symbolic_agrees_with_finite() {
    for ns in [&[1u64, 4][..], &[3], &[1], &[2, 1, 5], &[1, 1]] {
        let fa = prod(ns);
        let d = Algebra::from(fa.clone()).to_descriptor().unwrap();
        let s = symbolic_spectrum(&d).unwrap();
        assert_eq!(s.is_bsi(), is_bsi(&fa).unwrap(), "{ns:?}");
        let a = nn12_element(&fa).unwrap().map(|i| fa.label(i).clone());
        let sym = s.nn12(&d).ok().map(|g| Algebra::gamma(d.clone()).unwrap().render(&crate::pmv::Element::Group(g)));
        assert_eq!(a, sym, "{ns:?}");
    }
}
