use hlts_core::cohomology::{OperatorComplex, ZeroCochain};
use hlts_core::limits::Limits;
use hlts_core::oop::WeightedOOperator;
use hlts_core::rep::adjoint_action;
use hlts_core::samples::{e4, e4_operator_matrix, random_valid_operator, sample_rng};
use hlts_core::scalar::q;
use proptest::prelude::*;
use rayon::prelude::*;

fn deep_limits() -> Limits {
    Limits {
        max_degree: 4,
        ..Limits::default()
    }
}

fn assert_dd_zero(complex: &OperatorComplex, degree: usize) {
    complex.cochain_space_basis(degree).unwrap().par_iter().for_each(|f| {
        let df = complex.coboundary(f).unwrap();
        assert!(complex.check_cochain(&df).pass(), "δf left the cochain space");
        assert!(complex.coboundary(&df).unwrap().is_zero(), "δδ ≠ 0 in degree {degree}");
    });
}

#[test]
fn e4_square_of_coboundary_vanishes() {
    for kappa in [0, 1, -2] {
        let act = adjoint_action(&e4()).unwrap();
        let op = WeightedOOperator::new(act, e4_operator_matrix(), q(kappa)).unwrap();
        let complex = OperatorComplex::with_limits(&op, deep_limits()).unwrap();
        assert_dd_zero(&complex, 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn square_of_coboundary_vanishes(seed in any::<u64>()) {
        let mut rng = sample_rng(seed);
        let op = random_valid_operator(&mut rng, 3);
        let complex = OperatorComplex::with_limits(&op, deep_limits()).unwrap();
        assert_dd_zero(&complex, 1);
        assert_dd_zero(&complex, 3);
    }

    #[test]
    fn images_of_fixed_pairs_are_cocycles(seed in any::<u64>()) {
        let mut rng = sample_rng(seed);
        let op = random_valid_operator(&mut rng, 3);
        let complex = OperatorComplex::new(&op).unwrap();
        let (rh, rg) = complex.regular_flags();
        prop_assume!(rh && rg);
        let fixed = complex.fixed_vectors();
        for a in &fixed {
            for b in &fixed {
                let z = ZeroCochain { a: a.clone(), b: b.clone() };
                let im = complex.im_map(&z).unwrap();
                prop_assert!(complex.check_cochain(&im).pass());
                prop_assert!(complex.coboundary(&im).unwrap().is_zero());
            }
        }
    }
}
