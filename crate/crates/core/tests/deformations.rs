use hlts_core::cohomology::{Cochain, OperatorComplex};
use hlts_core::deformation::{
    check_linear_deformation, check_n_order, extend, obstruction, TruncatedDeformation,
};
use hlts_core::linalg::rank_of_vectors;
use hlts_core::matrix::Matrix;
use hlts_core::oop::{check_o_operator, WeightedOOperator};
use hlts_core::rep::adjoint_action;
use hlts_core::samples::{
    e4, e4_operator_matrix, random_combination, random_deformation, random_valid_operator,
    sample_rng, unextendable_example, SampleRng,
};
use hlts_core::scalar::{q, Q};
use proptest::prelude::*;

/// All combinations of `basis` with coefficients in {−1, 0, 1}.
fn ternary_span(basis: &[Matrix<Q>], rows: usize, cols: usize) -> Vec<Matrix<Q>> {
    let mut out = vec![Matrix::zeros(rows, cols)];
    for b in basis {
        out = out
            .into_iter()
            .flat_map(|x| [q(-1), q(0), q(1)].map(|c| x.add(&b.scale(&c))))
            .collect();
    }
    out
}

/// Checks "A_t + t^{n+1}X is a deformation" ⟺ "δX = −Obs^n" for each X.
fn master_agrees(complex: &OperatorComplex, d: &TruncatedDeformation, xs: &[Matrix<Q>]) {
    let obs = obstruction(d).unwrap();
    assert!(complex.check_cochain(&obs).pass(), "Obs outside the cochain space");
    assert!(complex.coboundary(&obs).unwrap().is_zero());
    for x in xs {
        let extends = check_n_order(&d.extended(x.clone()).unwrap()).pass();
        let dx = complex.coboundary(&Cochain::from_matrix(x)).unwrap();
        let solves = dx.coordinates().iter().zip(obs.coordinates()).all(|(a, b)| *a == -b.clone());
        assert_eq!(extends, solves, "order {} with X = {x:?}", d.order());
    }
}

fn candidates(rng: &mut SampleRng, complex: &OperatorComplex, d: &TruncatedDeformation) -> Vec<Matrix<Q>> {
    let (dg, dh) = (complex.dim_g(), complex.dim_h());
    let basis: Vec<Matrix<Q>> = complex
        .cochain_space_basis(1)
        .unwrap()
        .iter()
        .map(|c| c.to_matrix())
        .collect();
    let mut xs = if basis.len() <= 4 {
        ternary_span(&basis, dg, dh)
    } else {
        (0..81).map(|_| random_combination(rng, &basis, dg, dh)).collect()
    };
    if let Some(x) = extend(d).unwrap() {
        let shifted: Vec<Matrix<Q>> = xs.iter().take(27).map(|y| x.add(y)).collect();
        xs.push(x);
        xs.extend(shifted);
    }
    xs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn extension_criterion_small(seed in any::<u64>()) {
        let mut rng = sample_rng(seed);
        let op = random_valid_operator(&mut rng, 2);
        let complex = OperatorComplex::new(&op).unwrap();
        let d = random_deformation(&mut rng, &op, 2);
        for n in 1..=d.order() {
            let dn = d.truncated(n);
            let xs = candidates(&mut rng, &complex, &dn);
            master_agrees(&complex, &dn, &xs);
        }
    }

    #[test]
    fn extension_is_sound(seed in any::<u64>()) {
        let mut rng = sample_rng(seed);
        let op = random_valid_operator(&mut rng, 3);
        let d = random_deformation(&mut rng, &op, 2);
        prop_assert!(check_n_order(&d).pass());
        let one = d.truncated(1);
        if let Some(x) = extend(&one).unwrap() {
            prop_assert!(check_n_order(&one.extended(x).unwrap()).pass());
        } else {
            prop_assert!(d.order() < 2);
        }
        if d.order() >= 1 {
            prop_assert!(check_linear_deformation(&op, d.term(1)).unwrap().pass());
        }
    }
}

#[test]
fn extension_criterion_on_e4() {
    let mut rng = sample_rng(4);
    for kappa in [0, 1, -2] {
        let act = adjoint_action(&e4()).unwrap();
        let op = WeightedOOperator::new(act, e4_operator_matrix(), q(kappa)).unwrap();
        let complex = OperatorComplex::new(&op).unwrap();
        let basis: Vec<Matrix<Q>> = complex
            .cochain_space_basis(1)
            .unwrap()
            .iter()
            .map(|c| c.to_matrix())
            .collect();
        for _ in 0..6 {
            let d = random_deformation(&mut rng, &op, 2);
            for n in 1..=d.order() {
                let dn = d.truncated(n);
                let mut xs: Vec<Matrix<Q>> =
                    (0..20).map(|_| random_combination(&mut rng, &basis, 4, 4)).collect();
                if let Some(x) = extend(&dn).unwrap() {
                    xs.push(x.add(&xs[0]));
                    xs.push(x);
                }
                master_agrees(&complex, &dn, &xs);
            }
        }
    }
}

#[test]
fn constructed_obstruction_does_not_vanish() {
    let d = unextendable_example();
    assert!(check_o_operator(d.op()).unwrap().pass());
    assert!(check_n_order(&d).pass());
    assert_eq!(extend(&d).unwrap(), None);
    // [Obs] ≠ 0: adjoining Obs raises the rank of the coboundary span.
    let complex = OperatorComplex::new(d.op()).unwrap();
    let obs = obstruction(&d).unwrap();
    let images: Vec<Vec<Q>> = complex
        .coboundaries(&complex.cochain_space_basis(1).unwrap())
        .unwrap()
        .iter()
        .map(|c| c.coordinates().to_vec())
        .collect();
    let len = obs.coordinates().len();
    let without = rank_of_vectors(&images, len);
    let mut with = images.clone();
    with.push(obs.coordinates().to_vec());
    assert_eq!(rank_of_vectors(&with, len), without + 1);
}
