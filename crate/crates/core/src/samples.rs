//! Named fixtures and seeded random generators of valid structures.
//!
//! Every generator builds its output from a family known to satisfy the
//! axioms (nilpotent triple systems, twisted Lie algebras, scalar and
//! central operators, morphisms) or from a short search checked exactly,
//! then optionally transports it along random changes of basis. Callers
//! still run the checkers; the generators only make valid inputs common.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bridge::{check_hom_lie, check_lie_action, check_lie_o_operator, HomLieAlgebra, LieAction};
use crate::cohomology::OperatorComplex;
use crate::deformation::{extend, TruncatedDeformation};
use crate::linalg;
use crate::lts::{check_hom_lts, HomLts};
use crate::matrix::Matrix;
use crate::oop::{check_o_operator_unchecked, WeightedOOperator};
use crate::post_lts::HomPostLts;
use crate::rep::{check_action, Action};
use crate::scalar::{q, qf, Q};
use crate::tensor::{DenseTensor, SparseTensor};

pub type SampleRng = ChaCha8Rng;

pub fn sample_rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The 4-dimensional Hom-Lts with `[e1, e2, e1] = e4`, `[e2, e1, e1] = −e4`
/// and twist `diag(1, −1, 1, −1)`.
pub fn e4() -> HomLts {
    let bracket = SparseTensor::from_entries(
        vec![4; 3],
        4,
        [(vec![0, 1, 0], 3, q(1)), (vec![1, 0, 0], 3, q(-1))],
    )
    .expect("indices in range");
    HomLts::new(bracket, Matrix::diagonal(vec![q(1), q(-1), q(1), q(-1)]))
        .expect("shapes agree")
}

/// The operator `diag(0, 1, 1, 0)` on [`e4`].
pub fn e4_operator_matrix() -> Matrix<Q> {
    Matrix::diagonal(vec![q(0), q(1), q(1), q(0)])
}

/// The curly product `{ε4,ε2,ε3} = ε2`, `{ε4,ε2,ε2} = ε1`,
/// `{ε3,ε2,ε4} = {ε4,ε4,ε4} = −ε2` on top of the [`e4`] bracket. Whether
/// this is a Hom-post-Lts is for `check_post_lts` to decide.
pub fn e4_curly_example() -> HomPostLts {
    let g = e4();
    let curly = SparseTensor::from_entries(
        vec![4; 3],
        4,
        [
            (vec![3, 1, 2], 1, q(1)),
            (vec![3, 1, 1], 0, q(1)),
            (vec![2, 1, 3], 1, q(-1)),
            (vec![3, 3, 3], 1, q(-1)),
        ],
    )
    .expect("indices in range");
    HomPostLts::new(g.bracket().clone(), curly, g.alpha().clone()).expect("shapes agree")
}

fn small(rng: &mut SampleRng) -> Q {
    let pool = [q(-2), q(-1), qf(-1, 2), q(0), q(0), qf(1, 2), q(1), q(1), q(2), qf(3, 5)];
    pool.choose(rng).expect("nonempty").clone()
}

fn nonzero_small(rng: &mut SampleRng) -> Q {
    let pool = [q(-2), q(-1), qf(-1, 2), qf(1, 2), q(1), q(1), q(2), qf(-3, 2)];
    pool.choose(rng).expect("nonempty").clone()
}

fn tiny(rng: &mut SampleRng) -> Q {
    q(rng.gen_range(-1..=1))
}

/// Weights drawn for operator families that do not fix the weight.
pub fn random_kappa(rng: &mut SampleRng) -> Q {
    [q(0), q(1), q(-2), qf(3, 5), q(2)]
        .choose(rng)
        .expect("nonempty")
        .clone()
}

fn antisymmetric_bilinear(n: usize, pairs: &[(usize, usize, usize, Q)]) -> SparseTensor {
    let mut t = SparseTensor::zero(vec![n, n], n);
    for (i, j, k, c) in pairs {
        t.add_entry(&[*i, *j], *k, c.clone()).expect("in range");
        t.add_entry(&[*j, *i], *k, -c.clone()).expect("in range");
    }
    t
}

/// `[e1,e2,e1] = a e3`, `[e1,e2,e2] = b e3` (and their skew partners) with
/// twist `diag(s1, s2, s3)`, where `s3` is forced by multiplicativity.
/// Requires `a = 0` or `b = 0` unless `s1 = s2`.
pub fn nilpotent_lts(a: Q, b: Q, s1: Q, s2: Q) -> HomLts {
    let s3 = if a != q(0) {
        &(&s1 * &s1) * &s2
    } else {
        &(&s1 * &s2) * &s2
    };
    let mut t = SparseTensor::zero(vec![3; 3], 3);
    for (z, c) in [(0, &a), (1, &b)] {
        t.add_entry(&[0, 1, z], 2, c.clone()).expect("in range");
        t.add_entry(&[1, 0, z], 2, -c.clone()).expect("in range");
    }
    HomLts::new(t, Matrix::diagonal(vec![s1, s2, s3])).expect("shapes agree")
}

fn random_nilpotent_lts(rng: &mut SampleRng) -> HomLts {
    let (s1, s2) = (small(rng), small(rng));
    match rng.gen_range(0..3) {
        0 => nilpotent_lts(nonzero_small(rng), q(0), s1, s2),
        1 => nilpotent_lts(q(0), nonzero_small(rng), s1, s2),
        _ => nilpotent_lts(nonzero_small(rng), nonzero_small(rng), s1.clone(), s1),
    }
}

/// A Lie algebra bracket of dimension 2 or 3 with a random endomorphism,
/// twisted into the Hom-Lie algebra `(α[,], α)`.
pub fn random_hom_lie(rng: &mut SampleRng, max_dim: usize) -> HomLieAlgebra {
    let choices: Vec<usize> = if max_dim >= 3 { vec![0, 1, 2, 3, 4] } else { vec![0, 4] };
    let (bracket, alpha) = match *choices.choose(rng).expect("nonempty") {
        // aff(1): [e1,e2] = e2, endomorphism e1 ↦ e1 + c e2, e2 ↦ d e2.
        0 => {
            let b = antisymmetric_bilinear(2, &[(0, 1, 1, q(1))]);
            let (c, d) = (small(rng), small(rng));
            (b, Matrix::from_rows(vec![vec![q(1), q(0)], vec![c, d]], 2))
        }
        // Heisenberg: [e1,e2] = e3, M on span(e1,e2), e3 ↦ det M e3.
        1 => {
            let b = antisymmetric_bilinear(3, &[(0, 1, 2, q(1))]);
            let m: Vec<Q> = (0..6).map(|_| small(rng)).collect();
            let det = &(&m[0] * &m[3]) - &(&m[1] * &m[2]);
            let alpha = Matrix::from_rows(
                vec![
                    vec![m[0].clone(), m[1].clone(), q(0)],
                    vec![m[2].clone(), m[3].clone(), q(0)],
                    vec![m[4].clone(), m[5].clone(), det],
                ],
                3,
            );
            (b, alpha)
        }
        // sl2 in the basis (h, e, f), automorphism diag(1, t, 1/t).
        2 => {
            let b = antisymmetric_bilinear(3, &[(0, 1, 1, q(2)), (0, 2, 2, q(-2)), (1, 2, 0, q(1))]);
            let t = nonzero_small(rng);
            let inv = q(1) / &t;
            (b, Matrix::diagonal(vec![q(1), t, inv]))
        }
        // r3: [e1,e2] = e2, [e1,e3] = λe3, endomorphism diag(1, a, b).
        3 => {
            let lambda = nonzero_small(rng);
            let b = antisymmetric_bilinear(3, &[(0, 1, 1, q(1)), (0, 2, 2, lambda)]);
            (b, Matrix::diagonal(vec![q(1), small(rng), small(rng)]))
        }
        // Abelian with an arbitrary twist.
        _ => {
            let n = rng.gen_range(1..=max_dim.min(3));
            let alpha = Matrix::from_fn(n, n, |i, j| if i >= j { small(rng) } else { q(0) });
            (SparseTensor::zero(vec![n, n], n), alpha)
        }
    };
    let dense: DenseTensor<Q> = bracket.to_dense();
    let g = HomLieAlgebra::from_dense(&dense.postcompose(&alpha), alpha).expect("shapes agree");
    debug_assert!(check_hom_lie(&g).pass());
    g
}

/// A valid Hom-Lts of dimension at most `max_dim` (at least 1).
pub fn random_hom_lts(rng: &mut SampleRng, max_dim: usize) -> HomLts {
    let pick = rng.gen_range(0..3);
    if pick == 0 && max_dim >= 3 {
        return random_nilpotent_lts(rng);
    }
    if pick == 1 {
        let n = rng.gen_range(1..=max_dim.min(3));
        let alpha = Matrix::from_fn(n, n, |i, j| if i == j { small(rng) } else { q(0) });
        return HomLts::abelian(alpha);
    }
    crate::bridge::lts_from_hom_lie(&random_hom_lie(rng, max_dim)).expect("twisted Lie algebras are valid")
}

/// A random invertible matrix: unit lower times unit upper triangular with
/// small entries, times a nonzero diagonal.
pub fn random_invertible(rng: &mut SampleRng, n: usize) -> Matrix<Q> {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, tiny(rng));
            upper.set(j, i, tiny(rng));
        }
    }
    let diag = Matrix::diagonal((0..n).map(|_| nonzero_small(rng)).collect());
    lower.mul(&upper).mul(&diag)
}

fn inverse(m: &Matrix<Q>) -> Matrix<Q> {
    linalg::inverse(m).expect("invertible by construction")
}

/// The Hom-Lts `φ·g`: bracket `φ[φ⁻¹x, φ⁻¹y, φ⁻¹z]`, twist `φαφ⁻¹`.
pub fn transport_lts(g: &HomLts, phi: &Matrix<Q>) -> HomLts {
    let inv = inverse(phi);
    let b: DenseTensor<Q> = g.bracket_dense();
    HomLts::from_dense(
        &b.precompose_all(&inv).postcompose(phi),
        phi.mul(g.alpha()).mul(&inv),
    )
    .expect("shapes agree")
}

/// Transports an action along `φ_g`, `φ_h`.
pub fn transport_action(act: &Action, phi_g: &Matrix<Q>, phi_h: &Matrix<Q>) -> Action {
    let (ig, ih) = (inverse(phi_g), inverse(phi_h));
    let theta: DenseTensor<Q> = act.theta_dense();
    let theta = theta
        .precompose(0, &ig)
        .precompose(1, &ig)
        .precompose(2, &ih)
        .postcompose(phi_h);
    Action::new(
        transport_lts(act.algebra(), phi_g),
        transport_lts(act.module(), phi_h),
        SparseTensor::from_dense(&theta),
    )
    .expect("shapes agree")
}

/// Transports an operator: `A' = φ_g A φ_h⁻¹` on the transported action.
pub fn transport_operator(op: &WeightedOOperator, phi_g: &Matrix<Q>, phi_h: &Matrix<Q>) -> WeightedOOperator {
    WeightedOOperator::new(
        transport_action(op.action(), phi_g, phi_h),
        phi_g.mul(op.map()).mul(&inverse(phi_h)),
        op.kappa().clone(),
    )
    .expect("shapes agree")
}

/// Basis of the maps `X: h → g` with `α_g X = X α_h`.
pub fn commutant_basis(alpha_g: &Matrix<Q>, alpha_h: &Matrix<Q>) -> Vec<Matrix<Q>> {
    let (m, n) = (alpha_g.rows(), alpha_h.rows());
    let columns: Vec<Vec<Q>> = (0..m * n)
        .map(|k| {
            let mut x = Matrix::zeros(m, n);
            x.set(k / n, k % n, q(1));
            alpha_g.mul(&x).sub(&x.mul(alpha_h)).data().to_vec()
        })
        .collect();
    linalg::kernel_basis(&Matrix::from_cols(&columns, m * n))
        .into_iter()
        .map(|v| Matrix::from_rows(v.chunks(n).map(|r| r.to_vec()).collect(), n))
        .collect()
}

/// A random combination of `basis` with coefficients in `{−1, 0, 1}`.
pub fn random_combination(rng: &mut SampleRng, basis: &[Matrix<Q>], rows: usize, cols: usize) -> Matrix<Q> {
    let mut x = Matrix::zeros(rows, cols);
    for b in basis {
        x = x.add(&b.scale(&tiny(rng)));
    }
    x
}

/// The adjoint-type representation `θ(a,b)x = [x,a,b]` of `g` on an
/// abelian copy of itself.
fn adjoint_on_abelian_copy(g: &HomLts) -> Action {
    let b: DenseTensor<Q> = g.bracket_dense();
    Action::new(
        g.clone(),
        HomLts::abelian(g.alpha().clone()),
        SparseTensor::from_dense(&b.arrange(&[2, 0, 1])),
    )
    .expect("shapes agree")
}

/// Searches random twist-compatible maps for an operator, returning the
/// zero map when none is found.
pub fn search_operator(rng: &mut SampleRng, act: &Action, kappa: &Q, tries: usize) -> WeightedOOperator {
    let (dg, dh) = (act.algebra().dim(), act.module().dim());
    let basis = commutant_basis(act.algebra().alpha(), act.module().alpha());
    let zero = WeightedOOperator::new(act.clone(), Matrix::zeros(dg, dh), kappa.clone())
        .expect("shapes agree");
    for _ in 0..tries {
        let x = random_combination(rng, &basis, dg, dh);
        let op = zero.with_map(x).expect("shapes agree");
        if !op.map().is_zero() && check_o_operator_unchecked(&op).pass() {
            return op;
        }
    }
    zero
}

/// A valid κ-weighted O-operator with both spaces of dimension at most
/// `max_dim`, drawn from several constructive families and a search, and
/// transported along a random basis change half of the time.
pub fn random_valid_operator(rng: &mut SampleRng, max_dim: usize) -> WeightedOOperator {
    let op = loop {
        if let Some(op) = operator_family(rng, max_dim) {
            break op;
        }
    };
    debug_assert!(check_action(op.action()).unwrap().pass());
    if rng.gen_bool(0.5) {
        let phi_g = random_invertible(rng, op.target().dim());
        let phi_h = random_invertible(rng, op.source().dim());
        transport_operator(&op, &phi_g, &phi_h)
    } else {
        op
    }
}

fn operator_family(rng: &mut SampleRng, max_dim: usize) -> Option<WeightedOOperator> {
    let family = rng.gen_range(0..6);
    match family {
        // Scalar operators λ·id on a nilpotent system with its adjoint
        // action: valid exactly for κ = −2λ².
        0 if max_dim >= 3 => {
            let g = random_nilpotent_lts(rng);
            let lambda = nonzero_small(rng);
            let kappa = -(q(2) * &lambda * &lambda);
            let act = crate::rep::adjoint_action(&g).ok()?;
            WeightedOOperator::new(act, Matrix::identity(3).scale(&lambda), kappa).ok()
        }
        // Maps into the centre that kill the centre, any weight.
        1 if max_dim >= 3 => {
            let g = random_nilpotent_lts(rng);
            let s = g.alpha().clone();
            let mut a = Matrix::zeros(3, 3);
            for i in 0..2 {
                if s.get(i, i) == s.get(2, 2) {
                    a.set(2, i, nonzero_small(rng));
                }
            }
            let act = crate::rep::adjoint_action(&g).ok()?;
            WeightedOOperator::new(act, a, random_kappa(rng)).ok()
        }
        // Zero action: A = cφ for a twist-compatible morphism φ, κ = c².
        2 => {
            let g = random_hom_lts(rng, max_dim);
            let c = nonzero_small(rng);
            let phi = match rng.gen_range(0..3) {
                0 => Matrix::identity(g.dim()),
                1 => g.alpha().clone(),
                _ => g.alpha().mul(g.alpha()),
            };
            let kappa = &c * &c;
            let act = Action::zero(g.clone(), g);
            WeightedOOperator::new(act, phi.scale(&c), kappa).ok()
        }
        // Adjoint-type representation on an abelian copy, searched map.
        3 => {
            let g = random_hom_lts(rng, max_dim);
            let act = adjoint_on_abelian_copy(&g);
            if !check_action(&act).ok()?.pass() {
                return None;
            }
            let kappa = random_kappa(rng);
            Some(search_operator(rng, &act, &kappa, 40))
        }
        // Zero action between two systems, searched map.
        4 => {
            let g = random_hom_lts(rng, max_dim);
            let h = random_hom_lts(rng, max_dim);
            let kappa = random_kappa(rng);
            Some(search_operator(rng, &Action::zero(g, h), &kappa, 40))
        }
        // Lie-level operators seen through θ_ρ.
        5 => {
            let s = random_lie_operator(rng, max_dim);
            crate::bridge::lts_operator(&s.map, &s.action, &s.kappa).ok()
        }
        _ => None,
    }
}

/// A candidate operator: a valid one, or with probability one half the
/// same data with its map perturbed.
pub fn random_candidate_operator(rng: &mut SampleRng, max_dim: usize) -> WeightedOOperator {
    let op = random_valid_operator(rng, max_dim);
    if rng.gen_bool(0.5) {
        return op;
    }
    let (dg, dh) = (op.target().dim(), op.source().dim());
    let noise = if rng.gen_bool(0.5) {
        let basis = commutant_basis(op.target().alpha(), op.source().alpha());
        random_combination(rng, &basis, dg, dh)
    } else {
        Matrix::from_fn(dg, dh, |_, _| q(0)).add(&Matrix::from_fn(dg, dh, |i, j| {
            if (i + j) % 2 == 0 {
                q(1)
            } else {
                q(0)
            }
        }))
    };
    op.with_map(op.map().add(&noise)).expect("shapes agree")
}

/// A Lie-level weighted O-operator with its action and weight.
#[derive(Clone, Debug)]
pub struct LieOperatorSample {
    pub map: Matrix<Q>,
    pub action: LieAction,
    pub kappa: Q,
}

/// A valid Lie-level κ-weighted O-operator with dimensions at most
/// `max_dim`.
pub fn random_lie_operator(rng: &mut SampleRng, max_dim: usize) -> LieOperatorSample {
    loop {
        if let Some(s) = lie_family(rng, max_dim) {
            debug_assert!(check_lie_o_operator(&s.map, &s.action, &s.kappa)
                .map(|r| r.pass())
                .unwrap_or(false));
            return s;
        }
    }
}

fn lie_family(rng: &mut SampleRng, max_dim: usize) -> Option<LieOperatorSample> {
    match rng.gen_range(0..3) {
        // Twisted Heisenberg acting on itself: A = λ·id with κ = −λ, or a
        // map into the centre killing the centre.
        0 if max_dim >= 3 => {
            let g = loop {
                let g = random_hom_lie(rng, 3);
                if g.dim() == 3 && g.bracket().get(&[0, 1], 2) != q(0) && g.bracket().nnz() == 2 {
                    break g;
                }
            };
            let act = LieAction::new(g.clone(), g.clone(), g.bracket().clone()).ok()?;
            if !check_lie_action(&act).pass() {
                return None;
            }
            if rng.gen_bool(0.5) {
                let lambda = nonzero_small(rng);
                let kappa = -lambda.clone();
                Some(LieOperatorSample {
                    map: Matrix::identity(3).scale(&lambda),
                    action: act,
                    kappa,
                })
            } else {
                let kappa = random_kappa(rng);
                lie_search(rng, act, kappa)
            }
        }
        // Adjoint representation on an abelian copy.
        1 => {
            let g = random_hom_lie(rng, max_dim);
            let module = HomLieAlgebra::abelian(g.alpha().clone());
            let act = LieAction::new(g.clone(), module, g.bracket().clone()).ok()?;
            if !check_lie_action(&act).pass() {
                return None;
            }
            let kappa = random_kappa(rng);
            lie_search(rng, act, kappa)
        }
        // Zero action: A = cφ with φ an endomorphism, κ = c.
        _ => {
            let g = random_hom_lie(rng, max_dim);
            let c = nonzero_small(rng);
            let phi = if rng.gen_bool(0.5) {
                Matrix::identity(g.dim())
            } else {
                g.alpha().clone()
            };
            let act = LieAction::zero(g.clone(), g);
            Some(LieOperatorSample {
                map: phi.scale(&c),
                action: act,
                kappa: c,
            })
        }
    }
}

fn lie_search(rng: &mut SampleRng, act: LieAction, kappa: Q) -> Option<LieOperatorSample> {
    let (dg, dh) = (act.algebra().dim(), act.module().dim());
    let basis = commutant_basis(act.algebra().alpha(), act.module().alpha());
    for _ in 0..40 {
        let map = random_combination(rng, &basis, dg, dh);
        if check_lie_o_operator(&map, &act, &kappa).ok()?.pass() {
            return Some(LieOperatorSample {
                map,
                action: act,
                kappa,
            });
        }
    }
    Some(LieOperatorSample {
        map: Matrix::zeros(dg, dh),
        action: act,
        kappa,
    })
}

/// Random valid Hom-Lts used by property tests; every output passes
/// [`check_hom_lts`].
pub fn random_checked_lts(rng: &mut SampleRng, max_dim: usize) -> HomLts {
    let g = random_hom_lts(rng, max_dim);
    debug_assert!(check_hom_lts(&g).unwrap().pass());
    g
}

/// A random combination of the 1-cocycles of `op` with coefficients in
/// `{−1, 0, 1}`: an infinitesimal deformation.
pub fn random_cocycle(rng: &mut SampleRng, complex: &OperatorComplex) -> Matrix<Q> {
    let z = complex.cocycle_basis(1).expect("degree 1 is within limits");
    let basis: Vec<Matrix<Q>> = z.iter().map(|c| c.to_matrix()).collect();
    random_combination(rng, &basis, complex.dim_g(), complex.dim_h())
}

/// A valid deformation of `op` of order at most `order`: random cocycle
/// terms, each higher term an extension plus a random cocycle. Stops early
/// when an obstruction does not vanish.
pub fn random_deformation(rng: &mut SampleRng, op: &WeightedOOperator, order: usize) -> TruncatedDeformation {
    let complex = OperatorComplex::new(op).expect("valid operator");
    let mut d = TruncatedDeformation::trivial(op.clone());
    while d.order() < order {
        let Some(x) = extend(&d).expect("valid deformation") else {
            break;
        };
        let z = random_cocycle(rng, &complex);
        d = d.extended(x.add(&z)).expect("shapes agree");
    }
    d
}

/// The two-dimensional system `[e1,e2,e1] = −e2` (the triple system of
/// `[e1,e2] = e2`) acting on an abelian copy of itself by `θ(a,b)x =
/// [x,a,b]`, with the weight-0 operator `A = [[−1, 0], [−1, 0]]` and the
/// infinitesimal deformation `A_1 = diag(−1, 1)`, whose obstruction class
/// does not vanish.
pub fn unextendable_example() -> TruncatedDeformation {
    let bracket = SparseTensor::from_entries(
        vec![2; 3],
        2,
        [(vec![0, 1, 0], 1, q(-1)), (vec![1, 0, 0], 1, q(1))],
    )
    .expect("indices in range");
    let g = HomLts::new(bracket, Matrix::identity(2)).expect("shapes agree");
    let act = adjoint_on_abelian_copy(&g);
    let a = Matrix::from_rows(vec![vec![q(-1), q(0)], vec![q(-1), q(0)]], 2);
    let op = WeightedOOperator::new(act, a, q(0)).expect("shapes agree");
    TruncatedDeformation::new(op, vec![Matrix::diagonal(vec![q(-1), q(1)])]).expect("shapes agree")
}
