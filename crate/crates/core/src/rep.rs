//! Representations `θ: g × g → End(V)` and actions on another Hom-Lts.

use crate::error::{require, Error, Result};
use crate::lts::{check_hom_lts, record_eq, record_zero, HomLts};
use crate::matrix::Matrix;
use crate::report::ViolationReport;
use crate::scalar::{Q, Scalar};
use crate::tensor::{DenseTensor, SparseTensor};

/// `θ` stored as a trilinear tensor with inputs `(x, y, u)` and output
/// `θ(x, y)u`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    algebra: HomLts,
    beta: Matrix<Q>,
    theta: SparseTensor,
}

impl Representation {
    pub fn new(algebra: HomLts, beta: Matrix<Q>, theta: SparseTensor) -> Result<Self> {
        let (n, m) = (algebra.dim(), beta.rows());
        if !beta.is_square() {
            return Err(Error::shape("module twist is not square"));
        }
        if theta.dims_in() != [n, n, m] || theta.dim_out() != m {
            return Err(Error::shape(format!(
                "θ has shape {:?} -> {}, expected [{n}, {n}, {m}] -> {m}",
                theta.dims_in(),
                theta.dim_out()
            )));
        }
        Ok(Representation {
            algebra,
            beta,
            theta,
        })
    }

    pub fn zero(algebra: HomLts, beta: Matrix<Q>) -> Self {
        let (n, m) = (algebra.dim(), beta.rows());
        Representation::new(algebra, beta, SparseTensor::zero(vec![n, n, m], m))
            .expect("shapes agree")
    }

    pub fn algebra(&self) -> &HomLts {
        &self.algebra
    }

    pub fn beta(&self) -> &Matrix<Q> {
        &self.beta
    }

    pub fn theta(&self) -> &SparseTensor {
        &self.theta
    }

    pub fn module_dim(&self) -> usize {
        self.beta.rows()
    }

    pub fn theta_dense<T: Scalar>(&self) -> DenseTensor<T> {
        self.theta.to_dense()
    }

    /// `D` as a tensor with inputs `(x, y, u)`: `D(x, y)u = θ(y, x)u − θ(x, y)u`.
    pub fn d_dense<T: Scalar>(&self) -> DenseTensor<T> {
        d_tensor(&self.theta_dense())
    }

    /// Matrix of `θ(x, y)`.
    pub fn theta_matrix(&self, x: &[Q], y: &[Q]) -> Result<Matrix<Q>> {
        pair_matrix(&self.theta_dense(), self.algebra.dim(), x, y)
    }
}

pub(crate) fn d_tensor<T: Scalar>(theta: &DenseTensor<T>) -> DenseTensor<T> {
    theta.arrange(&[1, 0, 2]).minus(theta)
}

fn pair_matrix(t: &DenseTensor<Q>, n: usize, x: &[Q], y: &[Q]) -> Result<Matrix<Q>> {
    if x.len() != n || y.len() != n {
        return Err(Error::shape(format!(
            "operator arguments of lengths {} and {} in dimension {n}",
            x.len(),
            y.len()
        )));
    }
    Ok(t
        .compose(0, &DenseTensor::constant(x.to_vec()))
        .compose(0, &DenseTensor::constant(y.to_vec()))
        .to_matrix())
}

/// Matrix of `D(x, y) = θ(y, x) − θ(x, y)`.
pub fn d_operator(rep: &Representation, x: &[Q], y: &[Q]) -> Result<Matrix<Q>> {
    pair_matrix(&rep.d_dense(), rep.algebra.dim(), x, y)
}

/// The three representation identities over any scalar ring, as tensors in
/// the variables `(x, y, a, b, u)`.
pub(crate) fn representation_identities<T: Scalar>(
    report: &mut ViolationReport,
    bracket: &DenseTensor<T>,
    alpha: &Matrix<T>,
    beta: &Matrix<T>,
    theta: &DenseTensor<T>,
) {
    let d = d_tensor(theta);

    // θ(αx, αy)β = βθ(x, y), variables (x, y, u).
    let left = theta.twist(&[0, 1], alpha).precompose(2, beta);
    record_eq(report, "representation twist", &left, &theta.postcompose(beta));

    // θ(αa,αb)θ(x,y) − θ(αy,αb)θ(x,a) − θ(αx,[y,a,b])β + D(αy,αa)θ(x,b) = 0
    let t1 = theta.compose(2, theta).twist(&[0, 1], alpha).arrange(&[2, 3, 0, 1, 4]);
    let t2 = theta.compose(2, theta).twist(&[0, 1], alpha).arrange(&[1, 3, 0, 2, 4]);
    let t3 = theta
        .compose(1, bracket)
        .precompose(0, alpha)
        .precompose(4, beta);
    let t4 = d.compose(2, theta).twist(&[0, 1], alpha).arrange(&[1, 2, 0, 3, 4]);
    record_zero(
        report,
        "representation first compatibility",
        &t1.minus(&t2).minus(&t3).plus(&t4),
    );

    // θ(αa,αb)D(x,y) − D(αx,αy)θ(a,b) + θ([x,y,a],αb)β + θ(αa,[x,y,b])β = 0
    let s1 = theta.compose(2, &d).twist(&[0, 1], alpha).arrange(&[2, 3, 0, 1, 4]);
    let s2 = d.compose(2, theta).twist(&[0, 1], alpha);
    let s3 = theta
        .compose(0, bracket)
        .precompose(3, alpha)
        .precompose(4, beta);
    let s4 = theta
        .compose(1, bracket)
        .precompose(0, alpha)
        .precompose(4, beta)
        .arrange(&[2, 0, 1, 3, 4]);
    record_zero(
        report,
        "representation second compatibility",
        &s1.minus(&s2).plus(&s3).plus(&s4),
    );
}

/// Checks the twist compatibility and both operator identities of a
/// representation on every basis tuple.
pub fn check_representation(rep: &Representation) -> Result<ViolationReport> {
    let mut report = ViolationReport::new();
    representation_identities(
        &mut report,
        &rep.algebra.bracket_dense::<Q>(),
        rep.algebra.alpha(),
        &rep.beta,
        &rep.theta_dense(),
    );
    Ok(report)
}

/// A representation of `g` on the underlying space of a Hom-Lts `h`, with
/// module twist `α_h`.
#[derive(Clone, Debug, PartialEq)]
pub struct Action {
    rep: Representation,
    module: HomLts,
}

impl Action {
    pub fn new(algebra: HomLts, module: HomLts, theta: SparseTensor) -> Result<Self> {
        let rep = Representation::new(algebra, module.alpha().clone(), theta)?;
        Ok(Action { rep, module })
    }

    pub fn zero(algebra: HomLts, module: HomLts) -> Self {
        let rep = Representation::zero(algebra, module.alpha().clone());
        Action { rep, module }
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn algebra(&self) -> &HomLts {
        &self.rep.algebra
    }

    pub fn module(&self) -> &HomLts {
        &self.module
    }

    pub fn theta_dense<T: Scalar>(&self) -> DenseTensor<T> {
        self.rep.theta_dense()
    }

    pub fn d_dense<T: Scalar>(&self) -> DenseTensor<T> {
        self.rep.d_dense()
    }
}

/// The derivation identity and the two vanishing conditions tying `θ` to
/// the module bracket, in variables `(x, y, u, v, w)`. `prefix` is "θ" or
/// "D" so the derived identities can be reported under their own tags.
fn action_identities<T: Scalar>(
    report: &mut ViolationReport,
    prefix: &str,
    alpha_g: &Matrix<T>,
    bh: &DenseTensor<T>,
    alpha_h: &Matrix<T>,
    op: &DenseTensor<T>,
) {
    let left = op.compose(2, bh).twist(&[0, 1], alpha_g);
    let r1 = bh.compose(0, op).twist(&[3, 4], alpha_h);
    let r2 = bh.compose(1, op).twist(&[0, 4], alpha_h).arrange(&[2, 0, 1, 3, 4]);
    let r3 = bh.compose(2, op).twist(&[0, 1], alpha_h).arrange(&[2, 3, 0, 1, 4]);
    record_eq(
        report,
        &format!("{prefix} acts by derivations"),
        &left,
        &r1.plus(&r2).plus(&r3),
    );
    record_zero(report, &format!("{prefix} kills brackets"), &left);
    record_zero(report, &format!("{prefix} lands in the annihilator"), &r3);
}

/// Checks the representation identities, then the action identities, then
/// re-verifies their `D` counterparts under separate tags.
pub fn check_action(act: &Action) -> Result<ViolationReport> {
    let mut report = check_representation(&act.rep)?;
    let alpha_g = act.algebra().alpha();
    let bh: DenseTensor<Q> = act.module.bracket_dense();
    let alpha_h = act.module.alpha();
    action_identities(&mut report, "θ", alpha_g, &bh, alpha_h, &act.theta_dense());
    action_identities(&mut report, "D", alpha_g, &bh, alpha_h, &act.d_dense());
    Ok(report)
}

/// `θ(a, b)x = [x, a, b]`, the right multiplication of `g` acting on
/// itself. Whether it is an action depends on `g`; run [`check_action`].
pub fn adjoint_action(g: &HomLts) -> Result<Action> {
    require("Hom-Lts", check_hom_lts(g)?)?;
    let b: DenseTensor<Q> = g.bracket_dense();
    // θ(a, b, x) = B(x, a, b): input s of B becomes variable labels[s].
    let theta = b.arrange(&[2, 0, 1]);
    Action::new(g.clone(), g.clone(), SparseTensor::from_dense(&theta))
}
