//! κ-weighted O-operators `A: h → g` relative to an action of `g` on `h`.

use crate::error::{require, Error, Result};
use crate::linalg;
use crate::lts::{check_lts_morphism, record_eq, semidirect_product, HomLts};
use crate::matrix::Matrix;
use crate::rep::{check_action, Action};
use crate::report::ViolationReport;
use crate::scalar::{Q, Scalar};
use crate::tensor::{DenseTensor, SparseTensor};

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedOOperator {
    action: Action,
    map: Matrix<Q>,
    kappa: Q,
}

impl WeightedOOperator {
    /// `map` is `dim g × dim h`. Only shapes are checked here.
    pub fn new(action: Action, map: Matrix<Q>, kappa: Q) -> Result<Self> {
        let (dg, dh) = (action.algebra().dim(), action.module().dim());
        if map.rows() != dg || map.cols() != dh {
            return Err(Error::shape(format!(
                "operator is {}x{}, expected {dg}x{dh}",
                map.rows(),
                map.cols()
            )));
        }
        Ok(WeightedOOperator { action, map, kappa })
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    /// The target `g`.
    pub fn target(&self) -> &HomLts {
        self.action.algebra()
    }

    /// The source `h`.
    pub fn source(&self) -> &HomLts {
        self.action.module()
    }

    pub fn map(&self) -> &Matrix<Q> {
        &self.map
    }

    pub fn kappa(&self) -> &Q {
        &self.kappa
    }

    /// The same action and weight with another map.
    pub fn with_map(&self, map: Matrix<Q>) -> Result<Self> {
        WeightedOOperator::new(self.action.clone(), map, self.kappa.clone())
    }

    /// The tensors needed to evaluate the operator identities over `T`.
    pub fn lifted<T: Scalar>(&self) -> LiftedData<T> {
        LiftedData {
            bg: self.target().bracket_dense(),
            alpha_g: self.target().alpha().lift(),
            bh: self.source().bracket_dense(),
            alpha_h: self.source().alpha().lift(),
            theta: self.action.theta_dense(),
            d: self.action.d_dense(),
            kappa: T::from_rational(&self.kappa),
        }
    }
}

/// Structure tensors of an operator's data lifted into a scalar ring.
#[derive(Clone, Debug)]
pub struct LiftedData<T> {
    pub bg: DenseTensor<T>,
    pub alpha_g: Matrix<T>,
    pub bh: DenseTensor<T>,
    pub alpha_h: Matrix<T>,
    pub theta: DenseTensor<T>,
    pub d: DenseTensor<T>,
    pub kappa: T,
}

impl<T: Scalar> LiftedData<T> {
    /// `{u,v,w}_A = D(Au,Av)w − θ(Au,Aw)v + θ(Av,Aw)u + κ[u,v,w]_h`.
    pub fn descent(&self, a: &Matrix<T>) -> DenseTensor<T> {
        let th = self.theta.twist(&[0, 1], a);
        self.d
            .twist(&[0, 1], a)
            .minus(&th.arrange(&[0, 2, 1]))
            .plus(&th.arrange(&[1, 2, 0]))
            .plus(&self.bh.clone().scaled(&self.kappa))
    }

    /// `[Au, Av, Aw]_g`.
    pub fn image_bracket(&self, a: &Matrix<T>) -> DenseTensor<T> {
        self.bg.precompose_all(a)
    }

    /// Records both operator identities for the map `a`.
    pub fn operator_identities(&self, report: &mut ViolationReport, a: &Matrix<T>) {
        record_eq(
            report,
            "operator intertwines twists",
            &DenseTensor::from_matrix(&a.mul(&self.alpha_h)),
            &DenseTensor::from_matrix(&self.alpha_g.mul(a)),
        );
        record_eq(
            report,
            "weighted operator identity",
            &self.image_bracket(a),
            &self.descent(a).postcompose(a),
        );
    }
}

/// Checks `Aα_h = α_g A` and
/// `[Au,Av,Aw]_g = A(D(Au,Av)w − θ(Au,Aw)v + θ(Av,Aw)u + κ[u,v,w]_h)`.
pub fn check_o_operator(op: &WeightedOOperator) -> Result<ViolationReport> {
    require("action", check_action(&op.action)?)?;
    Ok(check_o_operator_unchecked(op))
}

/// [`check_o_operator`] without validating the action first.
pub fn check_o_operator_unchecked(op: &WeightedOOperator) -> ViolationReport {
    let mut report = ViolationReport::new();
    op.lifted::<Q>().operator_identities(&mut report, &op.map);
    report
}

/// Identities of a pair `(φ_h, φ_g)` from `A_1` to `A_2` over any scalar
/// ring; `data` supplies the shared action.
pub(crate) fn homomorphism_identities<T: Scalar>(
    report: &mut ViolationReport,
    data: &LiftedData<T>,
    a1: &Matrix<T>,
    a2: &Matrix<T>,
    phi_h: &Matrix<T>,
    phi_g: &Matrix<T>,
) {
    record_eq(
        report,
        "maps intertwine operators",
        &DenseTensor::from_matrix(&phi_g.mul(a1)),
        &DenseTensor::from_matrix(&a2.mul(phi_h)),
    );
    record_eq(
        report,
        "maps intertwine θ",
        &data.theta.postcompose(phi_h),
        &data.theta.twist(&[0, 1], phi_g).precompose(2, phi_h),
    );
    record_eq(
        report,
        "maps intertwine D",
        &data.d.postcompose(phi_h),
        &data.d.twist(&[0, 1], phi_g).precompose(2, phi_h),
    );
}

/// Checks that `φ_h`, `φ_g` are Hom-Lts morphisms, that `φ_g A_1 = A_2 φ_h`,
/// and that `φ_h` intertwines `θ` (and hence `D`) along `φ_g`.
pub fn check_o_homomorphism(
    op1: &WeightedOOperator,
    op2: &WeightedOOperator,
    phi_h: &Matrix<Q>,
    phi_g: &Matrix<Q>,
) -> Result<ViolationReport> {
    if op1.action != op2.action || op1.kappa != op2.kappa {
        return Err(Error::Precondition(
            "operators must share the action and the weight".to_string(),
        ));
    }
    require("first operator", check_o_operator(op1)?)?;
    require("second operator", check_o_operator_unchecked(op2))?;
    let mut report = check_lts_morphism(op1.source(), op2.source(), phi_h)?.prefixed("φ_h");
    report.merge(check_lts_morphism(op1.target(), op2.target(), phi_g)?.prefixed("φ_g"));
    homomorphism_identities(&mut report, &op1.lifted(), &op1.map, &op2.map, phi_h, phi_g);
    Ok(report)
}

/// Columns `(Ae_i, e_i)` spanning the graph of `A` inside `g ⊕ h`.
pub fn graph_basis(op: &WeightedOOperator) -> Matrix<Q> {
    let dh = op.source().dim();
    Matrix::block(&[vec![&op.map], vec![&Matrix::identity(dh)]])
}

/// Whether the graph of `A` is closed under the semidirect bracket and
/// twist, decided by exact membership of every bracket of graph basis
/// vectors in the graph's column space.
pub fn graph_is_subalgebra(op: &WeightedOOperator) -> Result<bool> {
    let s = semidirect_product(&op.action, &op.kappa)?;
    let graph = graph_basis(op);
    let dh = graph.cols();
    let cols: Vec<Vec<Q>> = (0..dh).map(|j| graph.col(j)).collect();
    let member = |v: &[Q]| -> Result<bool> { Ok(linalg::solve(&graph, v)?.is_some()) };
    for c in &cols {
        if !member(&s.alpha().apply(c))? {
            return Ok(false);
        }
    }
    for i in 0..dh {
        for j in 0..dh {
            for k in 0..dh {
                let v = s.bracket().eval(&[&cols[i], &cols[j], &cols[k]])?;
                if !member(&v)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The descent Hom-Lts `(h, {,,}_A, α_h)`.
pub fn descent_lts(op: &WeightedOOperator) -> Result<HomLts> {
    require("weighted O-operator", check_o_operator(op)?)?;
    Ok(descent_unchecked(op))
}

pub(crate) fn descent_unchecked(op: &WeightedOOperator) -> HomLts {
    let t = op.lifted::<Q>().descent(&op.map);
    HomLts::new(SparseTensor::from_dense(&t), op.source().alpha().clone())
        .expect("shapes agree")
        .with_labels(op.source().labels().to_vec())
        .expect("label count matches")
}

/// Checks `Nα = αN` and the Nijenhuis identity
/// `[Nx,Ny,Nz] = N([x,Ny,Nz] + [Nx,y,Nz] + [Nx,Ny,z])
///  − N²([Nx,y,z] + [x,Ny,z] + [x,y,Nz]) + N³[x,y,z]`.
pub fn nijenhuis_check(g: &HomLts, n: &Matrix<Q>) -> Result<ViolationReport> {
    if n.rows() != g.dim() || n.cols() != g.dim() {
        return Err(Error::shape(format!(
            "operator is {}x{} on dimension {}",
            n.rows(),
            n.cols(),
            g.dim()
        )));
    }
    let b: DenseTensor<Q> = g.bracket_dense();
    let mut report = ViolationReport::new();
    record_eq(
        &mut report,
        "operator commutes with twist",
        &DenseTensor::from_matrix(&n.mul(g.alpha())),
        &DenseTensor::from_matrix(&g.alpha().mul(n)),
    );
    let two = b
        .twist(&[1, 2], n)
        .plus(&b.twist(&[0, 2], n))
        .plus(&b.twist(&[0, 1], n));
    let one = b
        .twist(&[0], n)
        .plus(&b.twist(&[1], n))
        .plus(&b.twist(&[2], n));
    let right = two
        .postcompose(n)
        .minus(&one.postcompose(&n.pow(2)))
        .plus(&b.postcompose(&n.pow(3)));
    record_eq(&mut report, "Nijenhuis identity", &b.precompose_all(n), &right);
    Ok(report)
}

/// The block operator `[[id_g, A], [0, 0]]` on `g ⊕ h`.
pub fn n_from_o(op: &WeightedOOperator) -> Matrix<Q> {
    let (dg, dh) = (op.target().dim(), op.source().dim());
    Matrix::block(&[
        vec![&Matrix::identity(dg), &op.map],
        vec![&Matrix::zeros(dh, dg), &Matrix::zeros(dh, dh)],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lts::check_hom_lts;
    use crate::rep::adjoint_action;
    use crate::samples::{e4, e4_operator_matrix};
    use crate::scalar::{q, qf};

    fn e4_op(kappa: Q) -> WeightedOOperator {
        let act = adjoint_action(&e4()).unwrap();
        WeightedOOperator::new(act, e4_operator_matrix(), kappa).unwrap()
    }

    #[test]
    fn e4_operator_holds_for_every_weight() {
        for kappa in [q(0), q(1), q(-2), qf(3, 5)] {
            let op = e4_op(kappa);
            assert!(check_o_operator(&op).unwrap().pass());
            assert!(graph_is_subalgebra(&op).unwrap());
            let s = semidirect_product(op.action(), op.kappa()).unwrap();
            assert!(nijenhuis_check(&s, &n_from_o(&op)).unwrap().pass());
            let d = descent_lts(&op).unwrap();
            assert!(check_hom_lts(&d).unwrap().pass());
            assert!(check_lts_morphism(&d, op.target(), op.map()).unwrap().pass());
        }
    }

    #[test]
    fn identity_fails_without_weight() {
        let op = e4_op(q(0)).with_map(Matrix::identity(4)).unwrap();
        let report = check_o_operator(&op).unwrap();
        assert!(!report.pass());
        assert_eq!(report.failed_identities(), vec!["weighted operator identity"]);
        assert!(!graph_is_subalgebra(&op).unwrap());
    }

    #[test]
    fn zero_map_is_always_an_operator() {
        let op = e4_op(q(5)).with_map(Matrix::zeros(4, 4)).unwrap();
        assert!(check_o_operator(&op).unwrap().pass());
        assert_eq!(descent_lts(&op).unwrap().bracket(), e4().scaled(&q(5)).bracket());
        assert_eq!(
            n_from_o(&op),
            Matrix::block(&[
                vec![&Matrix::identity(4), &Matrix::zeros(4, 4)],
                vec![&Matrix::zeros(4, 4), &Matrix::zeros(4, 4)]
            ])
        );
    }

    #[test]
    fn homomorphism_examples() {
        let op = e4_op(q(1));
        let id = Matrix::identity(4);
        let z = Matrix::zeros(4, 4);
        assert!(check_o_homomorphism(&op, &op, &id, &id).unwrap().pass());
        assert!(check_o_homomorphism(&op, &op, &z, &z).unwrap().pass());
        let alpha = op.source().alpha().clone();
        assert!(check_o_homomorphism(&op, &op, &alpha, &alpha).unwrap().pass());
    }

    #[test]
    fn nijenhuis_trivial_operators() {
        let g = e4();
        assert!(nijenhuis_check(&g, &Matrix::identity(4)).unwrap().pass());
        assert!(nijenhuis_check(&g, &Matrix::zeros(4, 4)).unwrap().pass());
    }
}
