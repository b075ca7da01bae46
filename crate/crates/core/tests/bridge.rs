use hlts_core::bridge::{
    check_hom_lie, check_lie_action, check_lie_o_operator, check_post_lie, diagram_actions_agree,
    diagram_check, lts_from_hom_lie, lts_operator, post_lie_from_o, post_lts_from_post_lie,
    theta_from_rho,
};
use hlts_core::lts::check_hom_lts;
use hlts_core::oop::check_o_operator;
use hlts_core::post_lts::check_post_lts;
use hlts_core::rep::check_action;
use hlts_core::samples::{random_hom_lie, random_lie_operator, sample_rng};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn induced_triple_systems_are_valid(seed in any::<u64>()) {
        let mut rng = sample_rng(seed);
        let g = random_hom_lie(&mut rng, 3);
        prop_assert!(check_hom_lie(&g).pass());
        prop_assert!(check_hom_lts(&lts_from_hom_lie(&g).unwrap()).unwrap().pass());
    }

    #[test]
    fn lie_operators_pass_at_triple_level(seed in any::<u64>()) {
        let mut rng = sample_rng(seed);
        let s = random_lie_operator(&mut rng, 3);
        prop_assert!(check_lie_action(&s.action).pass());
        prop_assert!(check_lie_o_operator(&s.map, &s.action, &s.kappa).unwrap().pass());
        prop_assert!(check_action(&theta_from_rho(&s.action).unwrap()).unwrap().pass());
        let op = lts_operator(&s.map, &s.action, &s.kappa).unwrap();
        let report = check_o_operator(&op).unwrap();
        prop_assert!(report.pass(), "{:?}", report.violations.first());
    }

    #[test]
    fn induced_post_structures_close_the_diagram(seed in any::<u64>()) {
        let mut rng = sample_rng(seed);
        let s = random_lie_operator(&mut rng, 3);
        let induced = post_lie_from_o(&s.map, &s.action, &s.kappa).unwrap();
        prop_assert!(check_post_lie(&induced.post_lie).pass());
        prop_assert!(check_hom_lie(&induced.descent).pass());
        prop_assert!(check_lie_action(&induced.ad).pass());
        let p = post_lts_from_post_lie(&induced.post_lie).unwrap();
        prop_assert!(check_post_lts(&p).unwrap().pass());
        prop_assert!(diagram_check(&induced.post_lie).unwrap());
        prop_assert!(diagram_actions_agree(&induced.post_lie).unwrap());
    }
}
