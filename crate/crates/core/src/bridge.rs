//! Hom-Lie algebras, their actions and weighted O-operators, Hom-post-Lie
//! algebras, and the constructions carrying each of them to the triple
//! system level.

use crate::error::{require, Error, Result};
use crate::lts::{record_eq, record_zero, HomLts};
use crate::matrix::Matrix;
use crate::oop::WeightedOOperator;
use crate::post_lts::{derived_products, HomPostLts};
use crate::rep::Action;
use crate::report::ViolationReport;
use crate::scalar::{Q, Scalar};
use crate::tensor::{DenseTensor, SparseTensor};

/// A candidate Hom-Lie algebra: a bilinear bracket and a twist.
#[derive(Clone, Debug, PartialEq)]
pub struct HomLieAlgebra {
    bracket: SparseTensor,
    alpha: Matrix<Q>,
}

impl HomLieAlgebra {
    pub fn new(bracket: SparseTensor, alpha: Matrix<Q>) -> Result<Self> {
        let n = alpha.rows();
        if !alpha.is_square() {
            return Err(Error::shape("twist is not square"));
        }
        if bracket.dims_in() != [n, n] || bracket.dim_out() != n {
            return Err(Error::shape(format!(
                "bracket has shape {:?} -> {}, expected a bilinear map on dimension {n}",
                bracket.dims_in(),
                bracket.dim_out()
            )));
        }
        Ok(HomLieAlgebra { bracket, alpha })
    }

    pub fn abelian(alpha: Matrix<Q>) -> Self {
        let n = alpha.rows();
        HomLieAlgebra::new(SparseTensor::zero(vec![n; 2], n), alpha).expect("shapes agree")
    }

    pub fn from_dense(bracket: &DenseTensor<Q>, alpha: Matrix<Q>) -> Result<Self> {
        HomLieAlgebra::new(SparseTensor::from_dense(bracket), alpha)
    }

    pub fn dim(&self) -> usize {
        self.alpha.rows()
    }

    pub fn bracket(&self) -> &SparseTensor {
        &self.bracket
    }

    pub fn alpha(&self) -> &Matrix<Q> {
        &self.alpha
    }

    pub fn bracket_dense<T: Scalar>(&self) -> DenseTensor<T> {
        self.bracket.to_dense()
    }
}

fn hom_lie_axioms<T: Scalar>(report: &mut ViolationReport, b: &DenseTensor<T>, alpha: &Matrix<T>) {
    record_eq(report, "skew-symmetry", b, &b.arrange(&[1, 0]).negated());
    record_eq(
        report,
        "twist multiplicativity",
        &b.postcompose(alpha),
        &b.precompose_all(alpha),
    );
    // [[x,y],αz] + [[z,x],αy] + [[y,z],αx]
    let t = b.compose(0, b).precompose(2, alpha);
    let jacobi = t.clone().plus(&t.arrange(&[1, 2, 0])).plus(&t.arrange(&[2, 0, 1]));
    record_zero(report, "Hom-Jacobi identity", &jacobi);
}

/// Skew-symmetry, twist multiplicativity and the Hom-Jacobi identity on
/// all basis tuples.
pub fn check_hom_lie(g: &HomLieAlgebra) -> ViolationReport {
    let mut report = ViolationReport::new();
    hom_lie_axioms(&mut report, &g.bracket_dense::<Q>(), &g.alpha);
    report
}

fn triple_bracket(b: &DenseTensor<Q>, alpha: &Matrix<Q>) -> DenseTensor<Q> {
    b.compose(0, b).precompose(2, alpha)
}

/// The Hom-Lts `[x,y,z] = [[x,y],αz]` with twist `α²`.
///
/// With twist `α` the fundamental identity fails for general twisted
/// algebras (`sl2` with `α = diag(1, 2, 1/2)` is a witness); `α²` makes
/// both sides `α²`-homogeneous.
pub fn lts_from_hom_lie(g: &HomLieAlgebra) -> Result<HomLts> {
    require("Hom-Lie algebra", check_hom_lie(g))?;
    Ok(lts_unchecked(g))
}

fn lts_unchecked(g: &HomLieAlgebra) -> HomLts {
    HomLts::from_dense(&triple_bracket(&g.bracket_dense(), &g.alpha), g.alpha.mul(&g.alpha))
        .expect("shapes agree")
}

/// `ρ: g → End(h)` stored with inputs `(x, u)` and output `ρ(x)u`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAction {
    algebra: HomLieAlgebra,
    module: HomLieAlgebra,
    rho: SparseTensor,
}

impl LieAction {
    pub fn new(algebra: HomLieAlgebra, module: HomLieAlgebra, rho: SparseTensor) -> Result<Self> {
        let (n, m) = (algebra.dim(), module.dim());
        if rho.dims_in() != [n, m] || rho.dim_out() != m {
            return Err(Error::shape(format!(
                "ρ has shape {:?} -> {}, expected [{n}, {m}] -> {m}",
                rho.dims_in(),
                rho.dim_out()
            )));
        }
        Ok(LieAction {
            algebra,
            module,
            rho,
        })
    }

    pub fn zero(algebra: HomLieAlgebra, module: HomLieAlgebra) -> Self {
        let (n, m) = (algebra.dim(), module.dim());
        LieAction::new(algebra, module, SparseTensor::zero(vec![n, m], m)).expect("shapes agree")
    }

    pub fn algebra(&self) -> &HomLieAlgebra {
        &self.algebra
    }

    pub fn module(&self) -> &HomLieAlgebra {
        &self.module
    }

    pub fn rho(&self) -> &SparseTensor {
        &self.rho
    }

    pub fn rho_dense<T: Scalar>(&self) -> DenseTensor<T> {
        self.rho.to_dense()
    }
}

/// The representation identities
/// `ρ(αx)α_h = α_hρ(x)`, `ρ([x,y])α_h = ρ(αx)ρ(y) − ρ(αy)ρ(x)` and the
/// action identities `ρ(αx)[u,v] = [ρ(x)u,αv] + [αu,ρ(x)v]`,
/// `[ρ(x)u, αv] = 0`.
pub fn check_lie_action(act: &LieAction) -> ViolationReport {
    let rho: DenseTensor<Q> = act.rho_dense();
    let bg: DenseTensor<Q> = act.algebra.bracket_dense();
    let bh: DenseTensor<Q> = act.module.bracket_dense();
    let ag = &act.algebra.alpha;
    let ah = &act.module.alpha;
    let mut report = ViolationReport::new();

    record_eq(
        &mut report,
        "ρ intertwines twists",
        &rho.precompose(0, ag).precompose(1, ah),
        &rho.postcompose(ah),
    );

    let left = rho.compose(0, &bg).precompose(2, ah);
    let nested = rho.compose(1, &rho).precompose(0, ag);
    let swapped = nested.arrange(&[1, 0, 2]);
    record_eq(&mut report, "ρ preserves brackets", &left, &nested.minus(&swapped));

    let left = rho.compose(1, &bh).precompose(0, ag);
    let r1 = bh.compose(0, &rho).precompose(2, ah);
    let r2 = bh.compose(1, &rho).precompose(0, ah).arrange(&[1, 0, 2]);
    record_eq(&mut report, "ρ acts by derivations", &left, &r1.clone().plus(&r2));
    record_zero(&mut report, "ρ lands in the annihilator", &r1);
    report
}

/// `θ_ρ(x,y) = ρ(α_g y)∘ρ(x)` as an action of the induced Hom-Lts of `g`
/// on that of `h`.
pub fn theta_from_rho(act: &LieAction) -> Result<Action> {
    require("Hom-Lie algebra", check_hom_lie(&act.algebra).prefixed("g"))?;
    require("Hom-Lie algebra", check_hom_lie(&act.module).prefixed("h"))?;
    require("Hom-Lie action", check_lie_action(act))?;
    Ok(theta_unchecked(act))
}

fn theta_unchecked(act: &LieAction) -> Action {
    let rho: DenseTensor<Q> = act.rho_dense();
    let theta = rho.compose(1, &rho).precompose(0, &act.algebra.alpha).arrange(&[1, 0, 2]);
    Action::new(
        lts_unchecked(&act.algebra),
        lts_unchecked(&act.module),
        SparseTensor::from_dense(&theta),
    )
    .expect("shapes agree")
}

/// `ρ(Au)v − ρ(Av)u + κ[u,v]_h` with inputs `(u, v)`.
fn lie_descent(act: &LieAction, a: &Matrix<Q>, kappa: &Q) -> DenseTensor<Q> {
    let rho: DenseTensor<Q> = act.rho_dense();
    let t = rho.precompose(0, a);
    let bh: DenseTensor<Q> = act.module.bracket_dense();
    t.arrange(&[1, 0]).negated().plus(&t).plus(&bh.scaled(kappa))
}

fn check_map_shape(act: &LieAction, a: &Matrix<Q>) -> Result<()> {
    let (dg, dh) = (act.algebra.dim(), act.module.dim());
    if a.rows() != dg || a.cols() != dh {
        return Err(Error::shape(format!(
            "operator is {}x{}, expected {dg}x{dh}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// Checks `Aα_h = α_gA` and `[Au,Av]_g = A(ρ(Au)v − ρ(Av)u + κ[u,v]_h)`.
pub fn check_lie_o_operator(a: &Matrix<Q>, act: &LieAction, kappa: &Q) -> Result<ViolationReport> {
    check_map_shape(act, a)?;
    require("Hom-Lie action", check_lie_action(act))?;
    let mut report = ViolationReport::new();
    record_eq(
        &mut report,
        "operator intertwines twists",
        &DenseTensor::from_matrix(&a.mul(&act.module.alpha)),
        &DenseTensor::from_matrix(&act.algebra.alpha.mul(a)),
    );
    let bg: DenseTensor<Q> = act.algebra.bracket_dense();
    record_eq(
        &mut report,
        "weighted operator identity",
        &bg.precompose_all(a),
        &lie_descent(act, a, kappa).postcompose(a),
    );
    Ok(report)
}

/// Weight of the triple-level operator induced by a weight `κ` operator.
/// The cross terms vanish by the annihilator identity, leaving
/// `A(κ²[u,v,w]_h)`.
pub fn lts_weight(kappa: &Q) -> Q {
    kappa * kappa
}

/// The same map as a weighted O-operator between the induced Hom-Lts
/// relative to `θ_ρ`, with weight [`lts_weight`].
pub fn lts_operator(a: &Matrix<Q>, act: &LieAction, kappa: &Q) -> Result<WeightedOOperator> {
    check_map_shape(act, a)?;
    WeightedOOperator::new(theta_from_rho(act)?, a.clone(), lts_weight(kappa))
}

/// A candidate Hom-post-Lie algebra `(h, [,], ⋆, α)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomPostLieAlgebra {
    bracket: SparseTensor,
    star: SparseTensor,
    alpha: Matrix<Q>,
}

impl HomPostLieAlgebra {
    pub fn new(bracket: SparseTensor, star: SparseTensor, alpha: Matrix<Q>) -> Result<Self> {
        HomLieAlgebra::new(bracket.clone(), alpha.clone())?;
        HomLieAlgebra::new(star.clone(), alpha.clone())?;
        Ok(HomPostLieAlgebra {
            bracket,
            star,
            alpha,
        })
    }

    pub fn dim(&self) -> usize {
        self.alpha.rows()
    }

    pub fn bracket(&self) -> &SparseTensor {
        &self.bracket
    }

    pub fn star(&self) -> &SparseTensor {
        &self.star
    }

    pub fn alpha(&self) -> &Matrix<Q> {
        &self.alpha
    }

    /// `(h, [,], α)`.
    pub fn lie(&self) -> HomLieAlgebra {
        HomLieAlgebra::new(self.bracket.clone(), self.alpha.clone()).expect("shapes agree")
    }
}

/// `[u,v]_C = u⋆v − v⋆u + [u,v]`.
fn adjacent_bracket(b: &DenseTensor<Q>, star: &DenseTensor<Q>) -> DenseTensor<Q> {
    star.clone().minus(&star.arrange(&[1, 0])).plus(b)
}

/// Checks `([,], α)` as a Hom-Lie algebra (tags prefixed "bracket"), twist
/// multiplicativity of `⋆`, and the three compatibility identities.
pub fn check_post_lie(p: &HomPostLieAlgebra) -> ViolationReport {
    let b: DenseTensor<Q> = p.bracket.to_dense();
    let star: DenseTensor<Q> = p.star.to_dense();
    let alpha = &p.alpha;
    let mut lie = ViolationReport::new();
    hom_lie_axioms(&mut lie, &b, alpha);
    let mut report = lie.prefixed("bracket");

    record_eq(
        &mut report,
        "star multiplicativity",
        &star.postcompose(alpha),
        &star.precompose_all(alpha),
    );

    // αu⋆[v,w] = [u⋆v, αw] + [αv, u⋆w]
    let left = star.compose(1, &b).precompose(0, alpha);
    let r1 = b.compose(0, &star).precompose(2, alpha);
    let r2 = b.compose(1, &star).precompose(0, alpha).arrange(&[1, 0, 2]);
    record_eq(&mut report, "star derives the bracket", &left, &r1.clone().plus(&r2));

    // ([u,v] + u⋆v − v⋆u)⋆αw = αu⋆(v⋆w) − αv⋆(u⋆w)
    let c = adjacent_bracket(&b, &star);
    let lhs = star.compose(0, &c).precompose(2, alpha);
    let nested = star.compose(1, &star).precompose(0, alpha);
    let swapped = nested.arrange(&[1, 0, 2]);
    record_eq(
        &mut report,
        "adjacent bracket acts through star",
        &lhs,
        &nested.minus(&swapped),
    );

    record_zero(&mut report, "star kills brackets", &left);
    record_zero(&mut report, "bracket kills star products", &r1);
    report
}

/// The adjacent Hom-Lie algebra `(h, [,]_C, α)`.
pub fn adjacent_hom_lie(p: &HomPostLieAlgebra) -> Result<HomLieAlgebra> {
    require("Hom-post-Lie algebra", check_post_lie(p))?;
    Ok(adjacent_lie_unchecked(p))
}

fn adjacent_lie_unchecked(p: &HomPostLieAlgebra) -> HomLieAlgebra {
    let c = adjacent_bracket(&p.bracket.to_dense(), &p.star.to_dense());
    HomLieAlgebra::from_dense(&c, p.alpha.clone()).expect("shapes agree")
}

/// What a Lie-level weighted O-operator induces on its source.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedPostLie {
    /// `[u,v] = κ[u,v]_h`, `u⋆v = ρ(Au)v`.
    pub post_lie: HomPostLieAlgebra,
    /// `[u,v]_A = ρ(Au)v − ρ(Av)u + κ[u,v]_h`.
    pub descent: HomLieAlgebra,
    /// `ad(u)v = u⋆v`, acting from the descent algebra on `h`.
    pub ad: LieAction,
}

pub fn post_lie_from_o(a: &Matrix<Q>, act: &LieAction, kappa: &Q) -> Result<InducedPostLie> {
    require("Lie-level weighted O-operator", check_lie_o_operator(a, act, kappa)?)?;
    let rho: DenseTensor<Q> = act.rho_dense();
    let bh: DenseTensor<Q> = act.module.bracket_dense();
    let alpha = act.module.alpha.clone();
    let star = SparseTensor::from_dense(&rho.precompose(0, a));
    let post_lie = HomPostLieAlgebra::new(
        SparseTensor::from_dense(&bh.scaled(kappa)),
        star.clone(),
        alpha.clone(),
    )?;
    let descent = HomLieAlgebra::from_dense(&lie_descent(act, a, kappa), alpha)?;
    let ad = LieAction::new(descent.clone(), act.module.clone(), star)?;
    Ok(InducedPostLie {
        post_lie,
        descent,
        ad,
    })
}

/// `⌊u,v,w⌋ = [[u,v],αw]` and `{u,v,w} = αw⋆(v⋆u)`, with twist `α²` as in
/// [`lts_from_hom_lie`].
pub fn post_lts_from_post_lie(p: &HomPostLieAlgebra) -> Result<HomPostLts> {
    require("Hom-post-Lie algebra", check_post_lie(p))?;
    Ok(post_lts_unchecked(p))
}

fn post_lts_unchecked(p: &HomPostLieAlgebra) -> HomPostLts {
    let b: DenseTensor<Q> = p.bracket.to_dense();
    let star: DenseTensor<Q> = p.star.to_dense();
    let floor = triple_bracket(&b, &p.alpha);
    let curly = star.compose(1, &star).precompose(0, &p.alpha).arrange(&[2, 1, 0]);
    HomPostLts::new(
        SparseTensor::from_dense(&floor),
        SparseTensor::from_dense(&curly),
        p.alpha.mul(&p.alpha),
    )
    .expect("shapes agree")
}

/// Whether the adjacent bracket of the induced Hom-post-Lts equals the
/// triple bracket induced by the adjacent Hom-Lie algebra, entry for entry.
pub fn diagram_check(p: &HomPostLieAlgebra) -> Result<bool> {
    require("Hom-post-Lie algebra", check_post_lie(p))?;
    let (c, _) = derived_products(&post_lts_unchecked(p));
    let adjacent = adjacent_lie_unchecked(p);
    Ok(c == triple_bracket(&adjacent.bracket_dense(), &p.alpha))
}

/// Whether the action `θ(u,v)w = {w,u,v}` of the induced Hom-post-Lts
/// equals `θ_ρ` for `ρ = ⋆` acting from the adjacent Hom-Lie algebra.
/// Informational: only brackets are part of the diagram.
pub fn diagram_actions_agree(p: &HomPostLieAlgebra) -> Result<bool> {
    require("Hom-post-Lie algebra", check_post_lie(p))?;
    let ad = LieAction::new(adjacent_lie_unchecked(p), p.lie(), p.star.clone())?;
    let curly: DenseTensor<Q> = post_lts_unchecked(p).curly().to_dense();
    Ok(theta_unchecked(&ad).theta_dense::<Q>() == curly.arrange(&[2, 0, 1]))
}
