use mvroot::ideals::enumerate_ideals_with;
use mvroot::pmv::check_homomorphism_with;
use mvroot::roots::sqrt_map_with;
use mvroot::{Exec, FiniteAlgebra};
use proptest::prelude::*;

fn product(ns: &[u64]) -> FiniteAlgebra {
    let chains: Vec<FiniteAlgebra> = ns.iter().map(|&n| FiniteAlgebra::chain(n).unwrap()).collect();
    FiniteAlgebra::product(&chains.iter().collect::<Vec<_>>()).unwrap()
}

fn small_product() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=5, 1..=3).prop_filter("at most 64 elements", |ns| ns.iter().map(|n| n + 1).product::<u64>() <= 64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn strategies_agree_on_scans(ns in small_product()) {
        let fa = product(&ns);
        prop_assert_eq!(sqrt_map_with(Exec::Sequential, &fa), sqrt_map_with(Exec::Parallel, &fa));
        prop_assert_eq!(
            enumerate_ideals_with(Exec::Sequential, &fa).unwrap(),
            enumerate_ideals_with(Exec::Parallel, &fa).unwrap()
        );
        let id: Vec<usize> = (0..fa.size()).collect();
        prop_assert!(check_homomorphism_with(Exec::Sequential, &id, &fa, &fa));
        prop_assert!(check_homomorphism_with(Exec::Parallel, &id, &fa, &fa));
    }
}

#[test]
fn boolean_powers_have_maps_under_both_strategies() {
    for k in 1..=5 {
        let fa = product(&vec![1; k]);
        for exec in [Exec::Sequential, Exec::Parallel] {
            let m = sqrt_map_with(exec, &fa).expect("Boolean algebras have r(x) = x");
            assert!(m.map.iter().enumerate().all(|(x, &r)| x == r));
            assert!(!m.strict);
        }
    }
}

#[test]
fn default_strategy_follows_the_feature() {
    assert_eq!(Exec::default().is_parallel(), cfg!(feature = "parallel"));
    assert!(!Exec::Sequential.is_parallel());
}
