//! Hom-Lie triple systems: a trilinear bracket `[x, y, z]` and a twist `α`.

use crate::error::{require, Error, Result};
use crate::limits::Limits;
use crate::linalg;
use crate::matrix::Matrix;
use crate::rep::{check_action, Action};
use crate::report::ViolationReport;
use crate::scalar::{Q, Scalar};
use crate::tensor::{DenseTensor, SparseTensor};

/// A candidate Hom-Lie triple system. Construction only checks shapes; use
/// [`check_hom_lts`] for the axioms.
#[derive(Clone, Debug, PartialEq)]
pub struct HomLts {
    labels: Vec<String>,
    bracket: SparseTensor,
    alpha: Matrix<Q>,
}

pub(crate) fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl HomLts {
    pub fn new(bracket: SparseTensor, alpha: Matrix<Q>) -> Result<Self> {
        let n = alpha.rows();
        if !alpha.is_square() {
            return Err(Error::shape(format!(
                "twist is {}x{}, not square",
                alpha.rows(),
                alpha.cols()
            )));
        }
        if bracket.dims_in() != [n, n, n] || bracket.dim_out() != n {
            return Err(Error::shape(format!(
                "bracket has shape {:?} -> {}, expected a trilinear map on dimension {n}",
                bracket.dims_in(),
                bracket.dim_out()
            )));
        }
        Ok(HomLts {
            labels: default_labels("e", n),
            bracket,
            alpha,
        })
    }

    /// The zero bracket with the given twist.
    pub fn abelian(alpha: Matrix<Q>) -> Self {
        let n = alpha.rows();
        HomLts::new(SparseTensor::zero(vec![n; 3], n), alpha).expect("shapes agree")
    }

    pub fn from_dense(bracket: &DenseTensor<Q>, alpha: Matrix<Q>) -> Result<Self> {
        HomLts::new(SparseTensor::from_dense(bracket), alpha)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::shape(format!(
                "{} labels for dimension {}",
                labels.len(),
                self.dim()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.alpha.rows()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
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

    /// Whether the twist is invertible.
    pub fn is_regular(&self) -> bool {
        linalg::inverse(&self.alpha).is_some()
    }

    pub fn alpha_inverse(&self) -> Result<Matrix<Q>> {
        linalg::inverse(&self.alpha)
            .ok_or_else(|| Error::RegularityRequired("the twist map".to_string()))
    }

    /// The same bracket multiplied by `c`.
    pub fn scaled(&self, c: &Q) -> HomLts {
        let dense: DenseTensor<Q> = self.bracket_dense();
        HomLts {
            labels: self.labels.clone(),
            bracket: SparseTensor::from_dense(&dense.scaled(c)),
            alpha: self.alpha.clone(),
        }
    }
}

/// `[x, y, z]`.
pub fn bracket_eval<T: Scalar>(g: &HomLts, x: &[T], y: &[T], z: &[T]) -> Result<Vec<T>> {
    g.bracket.eval(&[x, y, z])
}

/// Matrix of `x ↦ [a, b, x]`.
pub fn l_operator(g: &HomLts, a: &[Q], b: &[Q]) -> Result<Matrix<Q>> {
    let t: DenseTensor<Q> = g.bracket_dense();
    check_len(g, a)?;
    check_len(g, b)?;
    let t = t
        .compose(0, &DenseTensor::constant(a.to_vec()))
        .compose(0, &DenseTensor::constant(b.to_vec()));
    Ok(t.to_matrix())
}

/// Matrix of `x ↦ [x, a, b]`.
pub fn r_operator(g: &HomLts, a: &[Q], b: &[Q]) -> Result<Matrix<Q>> {
    let t: DenseTensor<Q> = g.bracket_dense();
    check_len(g, a)?;
    check_len(g, b)?;
    let t = t
        .compose(2, &DenseTensor::constant(b.to_vec()))
        .compose(1, &DenseTensor::constant(a.to_vec()));
    Ok(t.to_matrix())
}

fn check_len(g: &HomLts, v: &[Q]) -> Result<()> {
    if v.len() != g.dim() {
        return Err(Error::shape(format!(
            "vector of length {} in dimension {}",
            v.len(),
            g.dim()
        )));
    }
    Ok(())
}

/// Records `left == right` for every basis tuple of the common shape.
pub(crate) fn record_eq<T: Scalar>(
    report: &mut ViolationReport,
    identity: &str,
    left: &DenseTensor<T>,
    right: &DenseTensor<T>,
) {
    report.record(identity, left.tuple_count(), left.violations(right, identity));
}

/// Records `value == 0` for every basis tuple.
pub(crate) fn record_zero<T: Scalar>(
    report: &mut ViolationReport,
    identity: &str,
    value: &DenseTensor<T>,
) {
    let zero = DenseTensor::zeros(value.dims_in().to_vec(), value.dim_out());
    record_eq(report, identity, value, &zero);
}

/// The four trilinear-bracket axioms for a bracket tensor and twist over
/// any scalar ring. Shared with post-Lie triple checks.
pub(crate) fn lts_axioms<T: Scalar>(
    report: &mut ViolationReport,
    b: &DenseTensor<T>,
    alpha: &Matrix<T>,
) {
    let swapped = b.arrange(&[1, 0, 2]).negated();
    record_eq(report, "skew-symmetry", b, &swapped);

    let cyclic = b
        .clone()
        .plus(&b.arrange(&[2, 0, 1]))
        .plus(&b.arrange(&[1, 2, 0]));
    record_zero(report, "cyclic identity", &cyclic);

    record_eq(
        report,
        "twist multiplicativity",
        &b.postcompose(alpha),
        &b.precompose_all(alpha),
    );

    // Variables (a, b, x, y, z).
    let left = b.compose(2, b).twist(&[0, 1], alpha);
    let r1 = b.compose(0, b).twist(&[3, 4], alpha);
    let r2 = b.compose(1, b).twist(&[0, 4], alpha).arrange(&[2, 0, 1, 3, 4]);
    let r3 = b.compose(2, b).twist(&[0, 1], alpha).arrange(&[2, 3, 0, 1, 4]);
    record_eq(report, "fundamental identity", &left, &r1.plus(&r2).plus(&r3));
}

/// Exhaustive check of skew-symmetry, the cyclic identity, twist
/// multiplicativity and the twisted fundamental identity on basis tuples.
pub fn check_hom_lts(g: &HomLts) -> Result<ViolationReport> {
    check_hom_lts_with(g, &Limits::from_env())
}

pub fn check_hom_lts_with(g: &HomLts, limits: &Limits) -> Result<ViolationReport> {
    limits.check_dim("Hom-Lts", g.dim())?;
    let mut report = ViolationReport::new();
    lts_axioms(&mut report, &g.bracket_dense::<Q>(), g.alpha());
    Ok(report)
}

/// Checks `φ α_1 = α_2 φ` and `φ[x,y,z]_1 = [φx,φy,φz]_2`.
pub fn check_lts_morphism(g1: &HomLts, g2: &HomLts, phi: &Matrix<Q>) -> Result<ViolationReport> {
    if phi.rows() != g2.dim() || phi.cols() != g1.dim() {
        return Err(Error::shape(format!(
            "morphism is {}x{}, expected {}x{}",
            phi.rows(),
            phi.cols(),
            g2.dim(),
            g1.dim()
        )));
    }
    let mut report = ViolationReport::new();
    morphism_identities(
        &mut report,
        (&g1.bracket_dense(), g1.alpha()),
        (&g2.bracket_dense(), g2.alpha()),
        phi,
    );
    Ok(report)
}

/// The two morphism identities over any scalar ring; each structure is a
/// pair `(bracket, twist)`.
pub(crate) fn morphism_identities<T: Scalar>(
    report: &mut ViolationReport,
    (b1, alpha1): (&DenseTensor<T>, &Matrix<T>),
    (b2, alpha2): (&DenseTensor<T>, &Matrix<T>),
    phi: &Matrix<T>,
) {
    record_eq(
        report,
        "morphism intertwines twists",
        &DenseTensor::from_matrix(&alpha2.mul(phi)),
        &DenseTensor::from_matrix(&phi.mul(alpha1)),
    );
    record_eq(
        report,
        "morphism preserves bracket",
        &b1.postcompose(phi),
        &b2.precompose_all(phi),
    );
}

/// The Hom-Lts on `g ⊕ h` (basis of `g` first) with twist `α_g ⊕ α_h` and
/// bracket `[x+u, y+v, z+w] = [x,y,z]_g + D(x,y)w − θ(x,z)v + θ(y,z)u + κ[u,v,w]_h`.
pub fn semidirect_product(act: &Action, kappa: &Q) -> Result<HomLts> {
    require("action", check_action(act)?)?;
    Ok(semidirect_unchecked(act, kappa))
}

/// [`semidirect_product`] without validating the action first.
pub fn semidirect_unchecked(act: &Action, kappa: &Q) -> HomLts {
    let g = act.algebra();
    let h = act.module();
    let (dg, dh) = (g.dim(), h.dim());
    let n = dg + dh;
    let bg: DenseTensor<Q> = g.bracket_dense();
    let bh: DenseTensor<Q> = h.bracket_dense();
    let theta: DenseTensor<Q> = act.theta_dense();
    let d: DenseTensor<Q> = act.d_dense();
    let mut entries = Vec::new();
    let mut push = |idx: [usize; 3], out_offset: usize, v: &[Q]| {
        for (l, c) in v.iter().enumerate() {
            if !num_traits::Zero::is_zero(c) {
                entries.push((idx.to_vec(), out_offset + l, c.clone()));
            }
        }
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let idx = [i, j, k];
                match (i < dg, j < dg, k < dg) {
                    (true, true, true) => push(idx, 0, bg.at(&[i, j, k])),
                    (true, true, false) => push(idx, dg, d.at(&[i, j, k - dg])),
                    (true, false, true) => {
                        let v: Vec<Q> = theta.at(&[i, k, j - dg]).iter().map(|c| -c).collect();
                        push(idx, dg, &v)
                    }
                    (false, true, true) => push(idx, dg, theta.at(&[j, k, i - dg])),
                    (false, false, false) => {
                        let v: Vec<Q> =
                            bh.at(&[i - dg, j - dg, k - dg]).iter().map(|c| c * kappa).collect();
                        push(idx, dg, &v)
                    }
                    _ => {}
                }
            }
        }
    }
    let bracket = SparseTensor::from_entries(vec![n; 3], n, entries).expect("indices in range");
    let alpha = Matrix::block(&[
        vec![g.alpha(), &Matrix::zeros(dg, dh)],
        vec![&Matrix::zeros(dh, dg), h.alpha()],
    ]);
    let mut labels = g.labels().to_vec();
    labels.extend(h.labels().iter().cloned());
    HomLts::new(bracket, alpha)
        .expect("shapes agree")
        .with_labels(labels)
        .expect("label count matches")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::e4;
    use crate::scalar::q;

    fn e(i: usize) -> Vec<Q> {
        crate::matrix::unit_vector(4, i)
    }

    #[test]
    fn e4_passes_and_evaluates() {
        let g = e4();
        assert!(check_hom_lts(&g).unwrap().pass());
        assert_eq!(bracket_eval(&g, &e(0), &e(1), &e(0)).unwrap(), e(3));
        let l = l_operator(&g, &e(0), &e(1)).unwrap();
        assert_eq!(l.apply(&e(0)), e(3));
        for i in 1..4 {
            assert!(l.apply(&e(i)).iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn deleting_an_entry_breaks_skew_symmetry() {
        let g = e4();
        let bracket =
            SparseTensor::from_entries(vec![4; 3], 4, [(vec![0, 1, 0], 3, q(1))]).unwrap();
        let broken = HomLts::new(bracket, g.alpha().clone()).unwrap();
        let report = check_hom_lts(&broken).unwrap();
        assert!(!report.pass());
        let first = &report.violations[0];
        assert_eq!(first.identity, "skew-symmetry");
        assert_eq!(first.witness, vec![0, 1, 0]);
    }

    #[test]
    fn zero_bracket_passes_for_any_twist() {
        let alpha = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(0), q(0)]], 2);
        assert!(check_hom_lts(&HomLts::abelian(alpha)).unwrap().pass());
    }

    #[test]
    fn morphism_checks() {
        let g = e4();
        assert!(check_lts_morphism(&g, &g, &Matrix::identity(4)).unwrap().pass());
        assert!(check_lts_morphism(&g, &g, &Matrix::zeros(4, 4)).unwrap().pass());
        let mut swap = Matrix::<Q>::zeros(4, 4);
        for (i, j) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
            swap.set(i, j, q(1));
        }
        let report = check_lts_morphism(&g, &g, &swap).unwrap();
        assert!(report.failed_identities().contains(&"morphism intertwines twists"));
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let limits = Limits {
            dim_cap: 3,
            ..Limits::default()
        };
        assert!(matches!(
            check_hom_lts_with(&e4(), &limits),
            Err(Error::DimensionCap { .. })
        ));
    }
}
