//! Deformations `A_t = A + tA_1 + .. + t^nA_n` of a weighted O-operator,
//! their obstruction classes and extension.

use rayon::prelude::*;

use crate::cohomology::{Cochain, OperatorComplex};
use crate::error::{require, Error, Result};
use crate::limits::Limits;
use crate::linalg;
use crate::lts::morphism_identities;
use crate::matrix::Matrix;
use crate::oop::{homomorphism_identities, LiftedData, WeightedOOperator};
use crate::poly::TruncPoly;
use crate::report::ViolationReport;
use crate::rep::d_operator;
use crate::scalar::Q;
use crate::tensor::DenseTensor;

/// A deformation known modulo `t^{n+1}`; `terms[i]` is `A_{i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedDeformation {
    op: WeightedOOperator,
    terms: Vec<Matrix<Q>>,
}

impl TruncatedDeformation {
    pub fn new(op: WeightedOOperator, terms: Vec<Matrix<Q>>) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            check_shape(&op, t, &format!("A_{}", i + 1))?;
        }
        Ok(TruncatedDeformation { op, terms })
    }

    /// The order-0 deformation consisting of the operator alone.
    pub fn trivial(op: WeightedOOperator) -> Self {
        TruncatedDeformation { op, terms: vec![] }
    }

    pub fn op(&self) -> &WeightedOOperator {
        &self.op
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Matrix<Q>] {
        &self.terms
    }

    /// `A_i`, with `A_0` the base operator.
    pub fn term(&self, i: usize) -> &Matrix<Q> {
        if i == 0 {
            self.op.map()
        } else {
            &self.terms[i - 1]
        }
    }

    /// `A_t + t^{n+1}x`.
    pub fn extended(&self, x: Matrix<Q>) -> Result<Self> {
        let mut terms = self.terms.clone();
        terms.push(x);
        TruncatedDeformation::new(self.op.clone(), terms)
    }

    /// The same deformation read modulo `t^{order+1}`.
    pub fn truncated(&self, order: usize) -> Self {
        TruncatedDeformation {
            op: self.op.clone(),
            terms: self.terms[..order.min(self.order())].to_vec(),
        }
    }

    /// `A_t` as a matrix over `K[[t]]/(t^{n+1})`.
    pub fn series(&self) -> Matrix<TruncPoly<Q>> {
        series_matrix(
            &std::iter::once(self.op.map()).chain(&self.terms).collect::<Vec<_>>(),
            self.order(),
        )
    }
}

fn check_shape(op: &WeightedOOperator, m: &Matrix<Q>, what: &str) -> Result<()> {
    if m.rows() != op.map().rows() || m.cols() != op.map().cols() {
        return Err(Error::shape(format!(
            "{what} is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            op.map().rows(),
            op.map().cols()
        )));
    }
    Ok(())
}

/// `Σ t^i M_i` truncated at `order`.
fn series_matrix(terms: &[&Matrix<Q>], order: usize) -> Matrix<TruncPoly<Q>> {
    let (rows, cols) = (terms[0].rows(), terms[0].cols());
    Matrix::from_fn(rows, cols, |r, c| {
        TruncPoly::truncated(
            order,
            terms.iter().take(order + 1).map(|m| m.get(r, c).clone()).collect(),
        )
    })
}

/// The operator data lifted to series of the given order.
fn series_data(op: &WeightedOOperator, order: usize) -> LiftedData<TruncPoly<Q>> {
    let mut data = op.lifted::<TruncPoly<Q>>();
    // Exact constants adopt the order of the map they meet; fix it here so
    // every intermediate tensor is reduced at the same power.
    data.kappa = TruncPoly::truncated(order, vec![op.kappa().clone()]);
    data
}

/// Evaluates `A_tα_h = α_g A_t` and the weighted operator identity for
/// `A_t` modulo `t^{n+1}` on all basis tuples. Violations are reported
/// per power of `t`.
pub fn check_n_order(d: &TruncatedDeformation) -> ViolationReport {
    let mut report = ViolationReport::new();
    series_data(&d.op, d.order()).operator_identities(&mut report, &d.series());
    report
}

/// Checks that `A + tA_1` is a deformation modulo `t²` in two ways: by the
/// defining identities over series, and by `A_1` being a twist-compatible
/// 1-cocycle. Both sets of checks land in the report.
pub fn check_linear_deformation(op: &WeightedOOperator, a1: &Matrix<Q>) -> Result<ViolationReport> {
    check_shape(op, a1, "A_1")?;
    let d = TruncatedDeformation::new(op.clone(), vec![a1.clone()])?;
    let mut report = check_n_order(&d);
    let complex = OperatorComplex::unchecked(op, Limits::from_env());
    let f = Cochain::from_matrix(a1);
    report.merge(complex.check_cochain(&f).prefixed("A_1"));
    let df = complex.coboundary(&f)?;
    let zero = DenseTensor::zeros(df.tensor().dims_in().to_vec(), df.tensor().dim_out());
    report.record(
        "A_1 is a 1-cocycle",
        df.tensor().tuple_count(),
        df.tensor().violations(&zero, "A_1 is a 1-cocycle"),
    );
    Ok(report)
}

/// Whether `(Id_g + tα_g^{-1}𝓛(a,b), Id_h + tα_h^{-1}D(a,b))` is a
/// homomorphism from `A + tA_1` to `A + tA_1'` modulo `t²`. When it is,
/// `A_1 − A_1' = ℑ(a,b)` is asserted.
pub fn check_linear_equivalence(
    op: &WeightedOOperator,
    a1: &Matrix<Q>,
    a1p: &Matrix<Q>,
    a: &[Q],
    b: &[Q],
) -> Result<bool> {
    require("first linear deformation", check_linear_deformation(op, a1)?)?;
    require("second linear deformation", check_linear_deformation(op, a1p)?)?;
    let g = op.target();
    let h = op.source();
    let inv_g = g.alpha_inverse()?;
    let inv_h = h.alpha_inverse()?;
    if a.len() != g.dim() || b.len() != g.dim() {
        return Err(Error::shape("equivalence vectors must lie in the target"));
    }
    if g.alpha().apply(a) != a || g.alpha().apply(b) != b {
        return Err(Error::Precondition(
            "both vectors must be fixed by the twist of the target".to_string(),
        ));
    }
    let l = crate::lts::l_operator(g, a, b)?;
    let dab = d_operator(op.action().rep(), a, b)?;
    let step_g = inv_g.mul(&l);
    let step_h = inv_h.mul(&dab);
    let phi_g = series_matrix(&[&Matrix::identity(g.dim()), &step_g], 1);
    let phi_h = series_matrix(&[&Matrix::identity(h.dim()), &step_h], 1);
    let a_t = series_matrix(&[op.map(), a1], 1);
    let a_tp = series_matrix(&[op.map(), a1p], 1);

    let data = series_data(op, 1);
    let mut report = ViolationReport::new();
    morphism_identities(
        &mut report,
        (&data.bh, &data.alpha_h),
        (&data.bh, &data.alpha_h),
        &phi_h,
    );
    morphism_identities(
        &mut report,
        (&data.bg, &data.alpha_g),
        (&data.bg, &data.alpha_g),
        &phi_g,
    );
    homomorphism_identities(&mut report, &data, &a_t, &a_tp, &phi_h, &phi_g);
    let equivalent = report.pass();
    if equivalent {
        let im = op.map().mul(&dab).mul(&inv_h).sub(&l.mul(op.map()).mul(&inv_h));
        assert_eq!(
            a1.sub(a1p),
            im,
            "equivalent infinitesimals must differ by the image of (a, b)"
        );
    }
    Ok(equivalent)
}

/// `Obs^n(u1,u2,u3) = Σ [A_iu1, A_ju2, A_ku3]
///   − A_i(D(A_ju1, A_ku2)u3 − θ(A_ju1, A_ku3)u2 + θ(A_ju2, A_ku3)u1)`
/// over `i + j + k = n + 1` with `0 ≤ i, j, k ≤ n`, as a degree-2 cochain.
/// Together with `δA_{n+1}` it is the `t^{n+1}` coefficient of the operator
/// identity for `A_t + t^{n+1}A_{n+1}`.
pub fn obstruction(d: &TruncatedDeformation) -> Result<Cochain> {
    require("deformation", check_n_order(d))?;
    let obs = obstruction_unchecked(d);
    let complex = OperatorComplex::new(&d.op)?;
    assert!(
        complex.coboundary(&obs)?.is_zero(),
        "the obstruction of a deformation is a cocycle"
    );
    Ok(obs)
}

fn obstruction_unchecked(d: &TruncatedDeformation) -> Cochain {
    let n = d.order();
    let data = d.op.lifted::<Q>();
    let triples: Vec<(usize, usize, usize)> = (0..=n)
        .flat_map(|i| (0..=n).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let k = (n + 1).checked_sub(i + j)?;
            (k <= n).then_some((i, j, k))
        })
        .collect();
    let dh = d.op.source().dim();
    let dg = d.op.target().dim();
    let total = triples
        .par_iter()
        .map(|&(i, j, k)| {
            let (ai, aj, ak) = (d.term(i), d.term(j), d.term(k));
            let bracket = data.bg.precompose(0, ai).precompose(1, aj).precompose(2, ak);
            let th = data.theta.precompose(0, aj).precompose(1, ak);
            let inner = data
                .d
                .precompose(0, aj)
                .precompose(1, ak)
                .minus(&th.arrange(&[0, 2, 1]))
                .plus(&th.arrange(&[1, 2, 0]));
            bracket.minus(&inner.postcompose(ai))
        })
        .reduce(
            || DenseTensor::zeros(vec![dh; 3], dg),
            |acc, t| acc.plus(&t),
        );
    Cochain::new(2, total).expect("arity 3")
}

/// Solves `δX = −Obs^n` over twist-compatible maps `X: h → g`. Returns
/// `A_{n+1} = X` when the obstruction class vanishes and `None` otherwise.
pub fn extend(d: &TruncatedDeformation) -> Result<Option<Matrix<Q>>> {
    extend_with(d, Limits::from_env())
}

pub fn extend_with(d: &TruncatedDeformation, limits: Limits) -> Result<Option<Matrix<Q>>> {
    limits.check_degree(2)?;
    let obs = obstruction(d)?;
    let complex = OperatorComplex::with_limits(&d.op, limits)?;
    let basis = complex.cochain_space_basis(1)?;
    let images = complex.coboundaries(&basis)?;
    let len = obs.coordinates().len();
    let cols: Vec<Vec<Q>> = images.iter().map(|c| c.coordinates().to_vec()).collect();
    let target: Vec<Q> = obs.coordinates().iter().map(|c| -c.clone()).collect();
    let Some(coeffs) = linalg::solve(&Matrix::from_cols(&cols, len), &target)? else {
        return Ok(None);
    };
    let mut x = Matrix::zeros(d.op.target().dim(), d.op.source().dim());
    for (c, f) in coeffs.iter().zip(&basis) {
        x = x.add(&f.to_matrix().scale(c));
    }
    assert!(
        check_n_order(&d.extended(x.clone())?).pass(),
        "a solution of δX = −Obs extends the deformation"
    );
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::adjoint_action;
    use crate::samples::{e4, e4_operator_matrix};
    use crate::scalar::q;

    fn e4_op(kappa: i64) -> WeightedOOperator {
        let act = adjoint_action(&e4()).unwrap();
        WeightedOOperator::new(act, e4_operator_matrix(), q(kappa)).unwrap()
    }

    #[test]
    fn zero_infinitesimal_is_a_linear_deformation() {
        let op = e4_op(1);
        assert!(check_linear_deformation(&op, &Matrix::zeros(4, 4)).unwrap().pass());
    }

    #[test]
    fn order_zero_is_the_operator_check() {
        let op = e4_op(1);
        assert!(check_n_order(&TruncatedDeformation::trivial(op.clone())).pass());
        let bad = op.with_map(Matrix::identity(4)).unwrap();
        assert_eq!(
            check_n_order(&TruncatedDeformation::trivial(bad.clone())).pass(),
            crate::oop::check_o_operator(&bad).unwrap().pass()
        );
    }

    #[test]
    fn routes_agree_on_e4_cochains() {
        let op = e4_op(1);
        let complex = OperatorComplex::new(&op).unwrap();
        for f in complex.cochain_space_basis(1).unwrap() {
            let report = check_linear_deformation(&op, &f.to_matrix()).unwrap();
            let cocycle = complex.coboundary(&f).unwrap().is_zero();
            let series_route = !report
                .failed_identities()
                .iter()
                .any(|t| !t.starts_with("A_1"));
            assert_eq!(cocycle, series_route);
            assert_eq!(cocycle, report.pass());
        }
    }

    #[test]
    fn trivial_extension_has_zero_obstruction() {
        let op = e4_op(1);
        let d = TruncatedDeformation::new(op, vec![Matrix::zeros(4, 4)]).unwrap();
        assert!(obstruction(&d).unwrap().is_zero());
        let x = extend(&d).unwrap().unwrap();
        assert!(check_n_order(&d.extended(x).unwrap()).pass());
    }

    #[test]
    fn identical_infinitesimals_are_equivalent() {
        let op = e4_op(1);
        let zero = vec![q(0); 4];
        let a1 = Matrix::zeros(4, 4);
        assert!(check_linear_equivalence(&op, &a1, &a1, &zero, &zero).unwrap());
    }
}

