use hlts_core::lts::{check_hom_lts, check_lts_morphism, semidirect_product};
use hlts_core::oop::{
    check_o_operator, descent_lts, graph_is_subalgebra, n_from_o, nijenhuis_check,
};
use hlts_core::samples::{
    random_candidate_operator, random_invertible, random_valid_operator, sample_rng,
    transport_operator,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graph_and_nijenhuis_agree_with_operator_check(seed in any::<u64>()) {
        let mut rng = sample_rng(seed);
        let op = random_candidate_operator(&mut rng, 3);
        let direct = check_o_operator(&op).unwrap().pass();
        prop_assert_eq!(graph_is_subalgebra(&op).unwrap(), direct);
        let s = semidirect_product(op.action(), op.kappa()).unwrap();
        prop_assert_eq!(nijenhuis_check(&s, &n_from_o(&op)).unwrap().pass(), direct);
    }

    #[test]
    fn descent_is_a_system_and_operator_a_morphism(seed in any::<u64>()) {
        let mut rng = sample_rng(seed);
        let op = random_valid_operator(&mut rng, 3);
        let d = descent_lts(&op).unwrap();
        prop_assert!(check_hom_lts(&d).unwrap().pass());
        prop_assert!(check_lts_morphism(&d, op.target(), op.map()).unwrap().pass());
    }

    #[test]
    fn operators_survive_basis_change(seed in any::<u64>()) {
        let mut rng = sample_rng(seed);
        let op = random_candidate_operator(&mut rng, 3);
        let pg = random_invertible(&mut rng, op.target().dim());
        let ph = random_invertible(&mut rng, op.source().dim());
        let moved = transport_operator(&op, &pg, &ph);
        prop_assert_eq!(
            check_o_operator(&moved).unwrap().pass(),
            check_o_operator(&op).unwrap().pass()
        );
    }
}
