//! Hom-post-Lie triple systems: a Hom-Lts `⌊,,⌋` together with a second
//! trilinear product `{,,}` tied to it by three mixed identities.

use crate::error::{require, Error, Result};
use crate::lts::{lts_axioms, morphism_identities, record_eq, record_zero, HomLts};
use crate::matrix::Matrix;
use crate::oop::{check_o_operator, check_o_operator_unchecked, WeightedOOperator};
use crate::rep::Action;
use crate::report::ViolationReport;
use crate::scalar::{Q, Scalar};
use crate::tensor::{DenseTensor, SparseTensor};

#[derive(Clone, Debug, PartialEq)]
pub struct HomPostLts {
    floor: SparseTensor,
    curly: SparseTensor,
    alpha: Matrix<Q>,
}

impl HomPostLts {
    pub fn new(floor: SparseTensor, curly: SparseTensor, alpha: Matrix<Q>) -> Result<Self> {
        let n = alpha.rows();
        if !alpha.is_square() {
            return Err(Error::shape("twist is not square"));
        }
        for (name, t) in [("floor bracket", &floor), ("curly product", &curly)] {
            if t.dims_in() != [n, n, n] || t.dim_out() != n {
                return Err(Error::shape(format!(
                    "{name} has shape {:?} -> {}, expected a trilinear map on dimension {n}",
                    t.dims_in(),
                    t.dim_out()
                )));
            }
        }
        Ok(HomPostLts {
            floor,
            curly,
            alpha,
        })
    }

    pub fn dim(&self) -> usize {
        self.alpha.rows()
    }

    pub fn floor(&self) -> &SparseTensor {
        &self.floor
    }

    pub fn curly(&self) -> &SparseTensor {
        &self.curly
    }

    pub fn alpha(&self) -> &Matrix<Q> {
        &self.alpha
    }

    /// `(h, ⌊,,⌋, α)` as a candidate Hom-Lts.
    pub fn floor_lts(&self) -> HomLts {
        HomLts::new(self.floor.clone(), self.alpha.clone()).expect("shapes agree")
    }
}

/// `{u,v,w}_D = {w,v,u} − {w,u,v}` from the curly product.
fn d_product<T: Scalar>(curly: &DenseTensor<T>) -> DenseTensor<T> {
    curly.arrange(&[2, 1, 0]).minus(&curly.arrange(&[2, 0, 1]))
}

/// `⟨u,v,w⟩_C = {u,v,w}_D + {u,v,w} − {v,u,w} + ⌊u,v,w⌋`.
fn c_bracket<T: Scalar>(floor: &DenseTensor<T>, curly: &DenseTensor<T>) -> DenseTensor<T> {
    d_product(curly)
        .plus(curly)
        .minus(&curly.arrange(&[1, 0, 2]))
        .plus(floor)
}

/// The adjacent bracket `⟨,,⟩_C` and the product `{,,}_D`.
pub fn derived_products(p: &HomPostLts) -> (DenseTensor<Q>, DenseTensor<Q>) {
    let floor = p.floor.to_dense();
    let curly = p.curly.to_dense();
    (c_bracket(&floor, &curly), d_product(&curly))
}

/// Checks the floor bracket as a Hom-Lts (tags prefixed "floor bracket"),
/// twist multiplicativity of the curly product, and the three mixed
/// identities on all basis 5-tuples `(u, v, w, s, t)`.
pub fn check_post_lts(p: &HomPostLts) -> Result<ViolationReport> {
    let floor: DenseTensor<Q> = p.floor.to_dense();
    let curly: DenseTensor<Q> = p.curly.to_dense();
    let alpha = &p.alpha;
    let c = c_bracket(&floor, &curly);
    let d = d_product(&curly);

    let mut floor_report = ViolationReport::new();
    lts_axioms(&mut floor_report, &floor, alpha);
    let mut report = floor_report.prefixed("floor bracket");

    record_eq(
        &mut report,
        "curly product multiplicativity",
        &curly.postcompose(alpha),
        &curly.precompose_all(alpha),
    );

    // {αu,αv,⟨w,s,t⟩_C} = {{u,v,w},αs,αt} − {{u,v,s},αw,αt} + {αw,αs,{u,v,t}}_D
    let left = curly.compose(2, &c).twist(&[0, 1], alpha);
    let nested = curly.compose(0, &curly).twist(&[3, 4], alpha);
    let r3 = d.compose(2, &curly).twist(&[0, 1], alpha).arrange(&[2, 3, 0, 1, 4]);
    let swapped = nested.arrange(&[0, 1, 3, 2, 4]);
    let right = nested.minus(&swapped).plus(&r3);
    record_eq(&mut report, "curly product against the adjacent bracket", &left, &right);

    // {αu,αv,{w,s,t}}_D = {{u,v,w}_D,αs,αt} + {αw,⟨u,v,s⟩_C,αt} + {αw,αs,⟨u,v,t⟩_C}
    let left = d.compose(2, &curly).twist(&[0, 1], alpha);
    let r1 = curly.compose(0, &d).twist(&[3, 4], alpha);
    let r2 = curly.compose(1, &c).twist(&[0, 4], alpha).arrange(&[2, 0, 1, 3, 4]);
    let r3 = curly.compose(2, &c).twist(&[0, 1], alpha).arrange(&[2, 3, 0, 1, 4]);
    record_eq(
        &mut report,
        "D product against the adjacent bracket",
        &left,
        &r1.plus(&r2).plus(&r3),
    );

    // {⌊w,s,t⌋,αu,αv} = 0 and ⌊αs,αt,{w,u,v}⌋ = 0, witnesses in (u,v,w,s,t).
    let kills = curly.compose(0, &floor).twist(&[3, 4], alpha).arrange(&[2, 3, 4, 0, 1]);
    record_zero(&mut report, "curly product kills floor brackets", &kills);
    let absorbs = floor.compose(2, &curly).twist(&[0, 1], alpha).arrange(&[3, 4, 2, 0, 1]);
    record_zero(&mut report, "floor bracket kills curly products", &absorbs);
    Ok(report)
}

/// The adjacent Hom-Lts `(h, ⟨,,⟩_C, α)`.
pub fn adjacent_lts(p: &HomPostLts) -> Result<HomLts> {
    require("Hom-post-Lts", check_post_lts(p)?)?;
    Ok(adjacent_unchecked(p))
}

fn adjacent_unchecked(p: &HomPostLts) -> HomLts {
    let (c, _) = derived_products(p);
    HomLts::from_dense(&c, p.alpha.clone()).expect("shapes agree")
}

/// The action `θ(u,v)w = {w,u,v}` of the adjacent Hom-Lts on the floor
/// Hom-Lts.
pub fn r_action(p: &HomPostLts) -> Result<Action> {
    require("Hom-post-Lts", check_post_lts(p)?)?;
    Ok(r_action_unchecked(p))
}

fn r_action_unchecked(p: &HomPostLts) -> Action {
    let curly: DenseTensor<Q> = p.curly.to_dense();
    let theta = SparseTensor::from_dense(&curly.arrange(&[2, 0, 1]));
    Action::new(adjacent_unchecked(p), p.floor_lts(), theta).expect("shapes agree")
}

/// The identity of `h` as a κ-weighted O-operator from the floor Hom-Lts to
/// the adjacent one, relative to [`r_action`].
pub fn identity_operator(p: &HomPostLts, kappa: Q) -> Result<WeightedOOperator> {
    require("Hom-post-Lts", check_post_lts(p)?)?;
    WeightedOOperator::new(r_action_unchecked(p), Matrix::identity(p.dim()), kappa)
}

/// Whether the identity map passes the weighted operator check.
pub fn identity_is_o_operator(p: &HomPostLts, kappa: Q) -> Result<bool> {
    Ok(check_o_operator_unchecked(&identity_operator(p, kappa)?).pass())
}

/// `⌊u,v,w⌋ = κ[u,v,w]_h` and `{u,v,w} = θ(Av,Aw)u`.
pub fn post_lts_from_o(op: &WeightedOOperator) -> Result<HomPostLts> {
    require("weighted O-operator", check_o_operator(op)?)?;
    let data = op.lifted::<Q>();
    let floor = data.bh.clone().scaled(&data.kappa);
    let curly = data.theta.twist(&[0, 1], op.map()).arrange(&[1, 2, 0]);
    HomPostLts::new(
        SparseTensor::from_dense(&floor),
        SparseTensor::from_dense(&curly),
        op.source().alpha().clone(),
    )
}

/// Checks `φα_1 = α_2φ` and that `φ` preserves both products.
pub fn check_post_lts_morphism(
    p1: &HomPostLts,
    p2: &HomPostLts,
    phi: &Matrix<Q>,
) -> Result<ViolationReport> {
    if phi.rows() != p2.dim() || phi.cols() != p1.dim() {
        return Err(Error::shape(format!(
            "morphism is {}x{}, expected {}x{}",
            phi.rows(),
            phi.cols(),
            p2.dim(),
            p1.dim()
        )));
    }
    let mut report = ViolationReport::new();
    morphism_identities(
        &mut report,
        (&p1.floor.to_dense(), &p1.alpha),
        (&p2.floor.to_dense(), &p2.alpha),
        phi,
    );
    let c1: DenseTensor<Q> = p1.curly.to_dense();
    let c2: DenseTensor<Q> = p2.curly.to_dense();
    record_eq(
        &mut report,
        "morphism preserves curly product",
        &c1.postcompose(phi),
        &c2.precompose_all(phi),
    );
    Ok(report)
}
