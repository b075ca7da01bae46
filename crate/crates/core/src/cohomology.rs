//! The cochain complex of a weighted O-operator.
//!
//! Degree `n ≥ 1` cochains are multilinear maps `f: h^{2n−1} → g` that
//! commute with the twists, are skew in the first two of their last three
//! arguments and have vanishing cyclic sum over those three. Degree-0
//! cochains are pairs of twist-fixed vectors of `g`, sent to degree 1 by
//! `ℑ`. The differential is the Hom-Lts coboundary of the descent system
//! `(h, {,,}_A, α_h)` with coefficients in `(g, α_g; θ_A)`.

use rayon::prelude::*;

use crate::error::{require, Error, Result};
use crate::limits::Limits;
use crate::linalg;
use crate::lts::{l_operator, record_eq, record_zero, HomLts};
use crate::matrix::Matrix;
use crate::oop::{check_o_homomorphism, check_o_operator, descent_unchecked, WeightedOOperator};
use crate::rep::{d_operator, Representation};
use crate::report::ViolationReport;
use crate::scalar::Q;
use crate::tensor::{DenseTensor, SparseTensor};

/// A degree-`n` cochain: a tensor of arity `2n − 1` from `h` to `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    degree: usize,
    tensor: DenseTensor<Q>,
}

impl Cochain {
    pub fn new(degree: usize, tensor: DenseTensor<Q>) -> Result<Self> {
        if degree == 0 || tensor.arity() != 2 * degree - 1 {
            return Err(Error::shape(format!(
                "a degree-{degree} cochain needs arity {}, got {}",
                (2 * degree).saturating_sub(1),
                tensor.arity()
            )));
        }
        Ok(Cochain { degree, tensor })
    }

    pub fn zero(degree: usize, dim_h: usize, dim_g: usize) -> Self {
        Cochain {
            degree,
            tensor: DenseTensor::zeros(vec![dim_h; 2 * degree - 1], dim_g),
        }
    }

    /// A degree-1 cochain from the matrix of a linear map `h → g`.
    pub fn from_matrix(m: &Matrix<Q>) -> Self {
        Cochain {
            degree: 1,
            tensor: DenseTensor::from_matrix(m),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn arity(&self) -> usize {
        2 * self.degree - 1
    }

    pub fn tensor(&self) -> &DenseTensor<Q> {
        &self.tensor
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    /// The linear map of a degree-1 cochain.
    pub fn to_matrix(&self) -> Matrix<Q> {
        self.tensor.to_matrix()
    }

    pub fn coordinates(&self) -> &[Q] {
        self.tensor.data()
    }
}

/// A pair of vectors of `g`, both fixed by `α_g`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroCochain {
    pub a: Vec<Q>,
    pub b: Vec<Q>,
}

/// Cached structure of the complex of one operator.
#[derive(Clone, Debug)]
pub struct OperatorComplex {
    op: WeightedOOperator,
    limits: Limits,
    alpha_g: Matrix<Q>,
    alpha_h: Matrix<Q>,
    descent: DenseTensor<Q>,
    theta_a: DenseTensor<Q>,
    d_a: DenseTensor<Q>,
}

/// `θ_A(u,v)x = [x,Au,Av]_g + A(θ(x,Av)u − D(x,Au)v)` with inputs `(u, v, x)`.
fn theta_a_tensor(op: &WeightedOOperator) -> DenseTensor<Q> {
    let data = op.lifted::<Q>();
    let a = op.map();
    let t1 = data.bg.twist(&[1, 2], a).arrange(&[2, 0, 1]);
    let t2 = data.theta.precompose(1, a).arrange(&[2, 1, 0]);
    let t3 = data.d.precompose(1, a).arrange(&[2, 0, 1]);
    t1.plus(&t2.minus(&t3).postcompose(a))
}

/// `D_A(u,v)x = [Au,Av,x]_g + A(θ(Au,x)v − θ(Av,x)u)` with inputs `(u, v, x)`.
pub fn d_a_tensor(op: &WeightedOOperator) -> DenseTensor<Q> {
    let data = op.lifted::<Q>();
    let a = op.map();
    let s1 = data.bg.twist(&[0, 1], a);
    let s2 = data.theta.precompose(0, a).arrange(&[0, 2, 1]);
    let s3 = data.theta.precompose(0, a).arrange(&[1, 2, 0]);
    s1.plus(&s2.minus(&s3).postcompose(a))
}

/// The representation `θ_A` of the descent Hom-Lts on `(g, α_g)`.
pub fn theta_a(op: &WeightedOOperator) -> Result<Representation> {
    require("weighted O-operator", check_o_operator(op)?)?;
    Representation::new(
        descent_unchecked(op),
        op.target().alpha().clone(),
        SparseTensor::from_dense(&theta_a_tensor(op)),
    )
}

impl OperatorComplex {
    pub fn new(op: &WeightedOOperator) -> Result<Self> {
        Self::with_limits(op, Limits::from_env())
    }

    pub fn with_limits(op: &WeightedOOperator, limits: Limits) -> Result<Self> {
        require("weighted O-operator", check_o_operator(op)?)?;
        Ok(Self::unchecked(op, limits))
    }

    /// Builds the complex without validating the operator; the identities
    /// of the complex then need not hold.
    pub fn unchecked(op: &WeightedOOperator, limits: Limits) -> Self {
        OperatorComplex {
            op: op.clone(),
            limits,
            alpha_g: op.target().alpha().clone(),
            alpha_h: op.source().alpha().clone(),
            descent: op.lifted::<Q>().descent(op.map()),
            theta_a: theta_a_tensor(op),
            d_a: d_a_tensor(op),
        }
    }

    pub fn op(&self) -> &WeightedOOperator {
        &self.op
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn dim_g(&self) -> usize {
        self.alpha_g.rows()
    }

    pub fn dim_h(&self) -> usize {
        self.alpha_h.rows()
    }

    pub fn descent_bracket(&self) -> &DenseTensor<Q> {
        &self.descent
    }

    pub fn theta_a(&self) -> &DenseTensor<Q> {
        &self.theta_a
    }

    pub fn d_a(&self) -> &DenseTensor<Q> {
        &self.d_a
    }

    fn coords(&self, degree: usize) -> usize {
        self.dim_h().pow((2 * degree - 1) as u32) * self.dim_g()
    }

    fn check_coords(&self, degree: usize) -> Result<()> {
        let size = self.coords(degree);
        if size > self.limits.max_cochain_coords {
            return Err(Error::DimensionCap {
                what: format!("degree-{degree} cochain space"),
                size,
                cap: self.limits.max_cochain_coords,
            });
        }
        Ok(())
    }

    /// Checks the three constraint families on a cochain.
    pub fn check_cochain(&self, f: &Cochain) -> ViolationReport {
        let mut report = ViolationReport::new();
        let t = &f.tensor;
        let k = f.arity();
        record_eq(
            &mut report,
            "cochain commutes with twists",
            &t.postcompose(&self.alpha_g),
            &t.precompose_all(&self.alpha_h),
        );
        if k >= 3 {
            let mut swap: Vec<usize> = (0..k).collect();
            swap.swap(k - 3, k - 2);
            record_eq(
                &mut report,
                "cochain skew-symmetry",
                t,
                &t.arrange(&swap).negated(),
            );
            let mut rot1: Vec<usize> = (0..k).collect();
            let mut rot2: Vec<usize> = (0..k).collect();
            // f(.., w, u, v) and f(.., v, w, u) in variables (.., u, v, w).
            rot1[k - 3..].copy_from_slice(&[k - 1, k - 3, k - 2]);
            rot2[k - 3..].copy_from_slice(&[k - 2, k - 1, k - 3]);
            let cyc = t.clone().plus(&t.arrange(&rot1)).plus(&t.arrange(&rot2));
            record_zero(&mut report, "cochain cyclic sum", &cyc);
        }
        report
    }

    /// A basis of the degree-`n` cochain space.
    pub fn cochain_space_basis(&self, degree: usize) -> Result<Vec<Cochain>> {
        if degree == 0 {
            return Err(Error::Precondition(
                "degree-0 cochains are pairs; use fixed_vectors".to_string(),
            ));
        }
        self.limits.check_degree(degree)?;
        self.check_coords(degree)?;
        let (dh, dg) = (self.dim_h(), self.dim_g());
        let k = 2 * degree - 1;
        // Tensors satisfying the slot conditions, as prefix ⊗ form ⊗ output.
        let forms: Vec<DenseTensor<Q>> = if k >= 3 {
            trailing_forms(dh)
        } else {
            (0..dh)
                .map(|i| {
                    let mut t = DenseTensor::zeros(vec![dh], 1);
                    t.set(&[i], 0, Q::from_integer(1.into()));
                    t
                })
                .collect()
        };
        let prefix_len = k.saturating_sub(3);
        let prefix_count = dh.pow(prefix_len as u32);
        let mut candidates: Vec<DenseTensor<Q>> = Vec::new();
        for p in 0..prefix_count {
            let prefix = crate::tensor::unflatten(&vec![dh; prefix_len], p);
            for form in &forms {
                for l in 0..dg {
                    let mut t = DenseTensor::zeros(vec![dh; k], dg);
                    for (idx, c) in form_entries(form) {
                        let mut full = prefix.clone();
                        full.extend(idx);
                        t.set(&full, l, c);
                    }
                    candidates.push(t);
                }
            }
        }
        // Impose α_g f = f ∘ α_h^{⊗k} on the span of the candidates.
        let columns: Vec<Vec<Q>> = candidates
            .par_iter()
            .map(|t| {
                t.postcompose(&self.alpha_g)
                    .minus(&t.precompose_all(&self.alpha_h))
                    .into_data()
            })
            .collect();
        let rows = self.coords(degree);
        let constraint = Matrix::from_cols(&columns, rows);
        let kernel = linalg::kernel_basis(&constraint);
        Ok(kernel
            .into_iter()
            .map(|coeffs| {
                let mut t = DenseTensor::zeros(vec![dh; k], dg);
                for (c, cand) in coeffs.iter().zip(&candidates) {
                    if !num_traits::Zero::is_zero(c) {
                        t.add_assign(&cand.clone().scaled(c));
                    }
                }
                Cochain { degree, tensor: t }
            })
            .collect())
    }

    /// `δf`, evaluating the coboundary formula term by term.
    pub fn coboundary(&self, f: &Cochain) -> Result<Cochain> {
        let n = f.degree;
        if f.tensor.dims_in().iter().any(|&d| d != self.dim_h()) || f.tensor.dim_out() != self.dim_g()
        {
            return Err(Error::shape("cochain does not match the operator's spaces"));
        }
        self.check_coords(n + 1)?;
        let m = 2 * n + 1;
        let twist = self.alpha_h.pow(n - 1);
        let t = &f.tensor;
        let mut out = DenseTensor::zeros(vec![self.dim_h(); m], self.dim_g());
        let theta_a = self.theta_a.twist(&[0, 1], &twist);
        let d_a = self.d_a.twist(&[0, 1], &twist);

        // θ_A(α^{n−1}v_{2n}, α^{n−1}v_{2n+1}) f(v_1, .., v_{2n−1})
        let mut labels = vec![m - 2, m - 1];
        labels.extend(0..m - 2);
        theta_a.compose_into(2, t, &labels, false, &mut out);

        // −θ_A(α^{n−1}v_{2n−1}, α^{n−1}v_{2n+1}) f(v_1, .., v_{2n−2}, v_{2n})
        let mut labels = vec![m - 3, m - 1];
        labels.extend(0..m - 3);
        labels.push(m - 2);
        theta_a.compose_into(2, t, &labels, true, &mut out);

        // f with every slot but one precomposed with α_h, one per slot.
        let arity = 2 * n - 1;
        let twisted: Vec<DenseTensor<Q>> = (0..arity)
            .into_par_iter()
            .map(|pos| {
                let others: Vec<usize> = (0..arity).filter(|&s| s != pos).collect();
                t.twist(&others, &self.alpha_h)
            })
            .collect();
        for i in 1..=n {
            let (p, q) = (2 * i - 2, 2 * i - 1);
            let rest: Vec<usize> = (0..m).filter(|&v| v != p && v != q).collect();
            // (−1)^{i+n} D_A(α^{n−1}v_{2i−1}, α^{n−1}v_{2i}) f(rest)
            let mut labels = vec![p, q];
            labels.extend(&rest);
            d_a.compose_into(2, t, &labels, (i + n) % 2 == 1, &mut out);
            // (−1)^{i+n+1} f(α(rest) with {v_{2i−1}, v_{2i}, v_j}_A in place of v_j)
            for (pos, &j) in rest.iter().enumerate() {
                if j < 2 * i {
                    continue;
                }
                let mut labels: Vec<usize> = rest[..pos].to_vec();
                labels.extend([p, q, j]);
                labels.extend(&rest[pos + 1..]);
                twisted[pos].compose_into(pos, &self.descent, &labels, (i + n + 1) % 2 == 1, &mut out);
            }
        }
        Ok(Cochain {
            degree: n + 1,
            tensor: out,
        })
    }

    /// Basis of the `α_g`-fixed subspace of `g`.
    pub fn fixed_vectors(&self) -> Vec<Vec<Q>> {
        let n = self.dim_g();
        linalg::kernel_basis(&self.alpha_g.sub(&Matrix::identity(n)))
    }

    /// `ℑ(a,b)v = A(D(a,b)α_h^{-1}v) − [a,b,Aα_h^{-1}v]_g`.
    pub fn im_map(&self, z: &ZeroCochain) -> Result<Cochain> {
        let g = self.op.target();
        if self.alpha_g.apply(&z.a) != z.a || self.alpha_g.apply(&z.b) != z.b {
            return Err(Error::Precondition(
                "both vectors of a degree-0 cochain must be fixed by the twist".to_string(),
            ));
        }
        let inv = self.op.source().alpha_inverse()?;
        let a = self.op.map();
        let d = d_operator(self.op.action().rep(), &z.a, &z.b)?;
        let l = l_operator(g, &z.a, &z.b)?;
        let m = a.mul(&d).mul(&inv).sub(&l.mul(a).mul(&inv));
        Ok(Cochain::from_matrix(&m))
    }

    /// Whether `ℑ` is available: both twists invertible.
    pub fn regular_flags(&self) -> (bool, bool) {
        (self.op.source().is_regular(), self.op.target().is_regular())
    }

    fn image_rank(&self, images: Vec<Cochain>, degree: usize) -> usize {
        let len = self.coords(degree);
        let vectors: Vec<Vec<Q>> = images.into_iter().map(|c| c.tensor.into_data()).collect();
        linalg::rank_of_vectors(&vectors, len)
    }

    /// `δ` applied to every element of a basis, in parallel.
    pub fn coboundaries(&self, basis: &[Cochain]) -> Result<Vec<Cochain>> {
        basis.par_iter().map(|f| self.coboundary(f)).collect()
    }

    /// A basis of the degree-`n` cocycles.
    pub fn cocycle_basis(&self, degree: usize) -> Result<Vec<Cochain>> {
        let basis = self.cochain_space_basis(degree)?;
        let images = self.coboundaries(&basis)?;
        let len = self.coords(degree + 1);
        let cols: Vec<Vec<Q>> = images.into_iter().map(|c| c.tensor.into_data()).collect();
        let kernel = linalg::kernel_basis(&Matrix::from_cols(&cols, len));
        Ok(kernel
            .into_iter()
            .map(|coeffs| {
                let mut t = DenseTensor::zeros(basis[0].tensor.dims_in().to_vec(), self.dim_g());
                for (c, f) in coeffs.iter().zip(&basis) {
                    if !num_traits::Zero::is_zero(c) {
                        t.add_assign(&f.tensor.clone().scaled(c));
                    }
                }
                Cochain { degree, tensor: t }
            })
            .collect())
    }

    /// Dimensions of cocycles, coboundaries and cohomology in degree `n`.
    pub fn cohomology_dims(&self, degree: usize) -> Result<CohomologyDims> {
        let basis = self.cochain_space_basis(degree)?;
        let dim_c = basis.len();
        let rank_out = self.image_rank(self.coboundaries(&basis)?, degree + 1);
        let dim_z = dim_c - rank_out;
        let (regular_h, regular_g) = self.regular_flags();
        let dim_b = if degree == 1 {
            if regular_h && regular_g {
                let fixed = self.fixed_vectors();
                let mut images = Vec::new();
                for i in 0..fixed.len() {
                    for j in i + 1..fixed.len() {
                        images.push(self.im_map(&ZeroCochain {
                            a: fixed[i].clone(),
                            b: fixed[j].clone(),
                        })?);
                    }
                }
                Some(self.image_rank(images, 1))
            } else {
                None
            }
        } else {
            let prev = self.cochain_space_basis(degree - 1)?;
            Some(self.image_rank(self.coboundaries(&prev)?, degree))
        };
        Ok(CohomologyDims {
            degree,
            dim_c,
            dim_z,
            dim_b,
            dim_h: dim_b.map(|b| dim_z - b),
            regular_h,
            regular_g,
        })
    }

    /// Coordinates of a cochain with respect to a basis of its space, or
    /// `None` when it lies outside the span.
    pub fn coordinates_in(&self, basis: &[Cochain], f: &Cochain) -> Result<Option<Vec<Q>>> {
        let len = f.tensor.data().len();
        let cols: Vec<Vec<Q>> = basis.iter().map(|b| b.tensor.data().to_vec()).collect();
        linalg::solve(&Matrix::from_cols(&cols, len), f.tensor.data())
    }
}

/// Nonzero entries of a 3-form stored as a tensor with output dimension 1.
fn form_entries(form: &DenseTensor<Q>) -> Vec<(Vec<usize>, Q)> {
    crate::tensor::index_tuples(form.dims_in())
        .filter_map(|idx| {
            let c = form.get(&idx, 0).clone();
            (!num_traits::Zero::is_zero(&c)).then_some((idx, c))
        })
        .collect()
}

/// Basis of trilinear forms on a space of dimension `n` that are skew in
/// the first two arguments and have zero cyclic sum.
fn trailing_forms(n: usize) -> Vec<DenseTensor<Q>> {
    let len = n * n * n;
    let one = Q::from_integer(1.into());
    let mut rows = Vec::new();
    for idx in crate::tensor::index_tuples(&[n, n, n]) {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let at = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        let mut skew = vec![Q::from_integer(0.into()); len];
        skew[at(i, j, k)] += &one;
        skew[at(j, i, k)] += &one;
        rows.push(skew);
        let mut cyc = vec![Q::from_integer(0.into()); len];
        cyc[at(i, j, k)] += &one;
        cyc[at(k, i, j)] += &one;
        cyc[at(j, k, i)] += &one;
        rows.push(cyc);
    }
    linalg::kernel_basis(&Matrix::from_rows(rows, len))
        .into_iter()
        .map(|v| DenseTensor::from_data(vec![n; 3], 1, v))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyDims {
    pub degree: usize,
    pub dim_c: usize,
    pub dim_z: usize,
    /// `None` in degree 1 when a twist is not invertible, so `ℑ` (the
    /// degree-0 differential) is undefined.
    pub dim_b: Option<usize>,
    pub dim_h: Option<usize>,
    pub regular_h: bool,
    pub regular_g: bool,
}

/// `Φ(f)(v_1, ..) = φ_g f(φ_h^{-1} v_1, ..)` for a homomorphism
/// `(φ_h, φ_g)` from `op1` to `op2`.
pub fn transport_cochain(
    op1: &WeightedOOperator,
    op2: &WeightedOOperator,
    phi_h: &Matrix<Q>,
    phi_g: &Matrix<Q>,
    f: &Cochain,
) -> Result<Cochain> {
    require(
        "operator homomorphism",
        check_o_homomorphism(op1, op2, phi_h, phi_g)?,
    )?;
    let inv = linalg::inverse(phi_h)
        .ok_or_else(|| Error::RegularityRequired("φ_h".to_string()))?;
    Ok(Cochain {
        degree: f.degree,
        tensor: f.tensor.precompose_all(&inv).postcompose(phi_g),
    })
}

/// The descent Hom-Lts of the complex's operator.
pub fn descent_of(complex: &OperatorComplex) -> HomLts {
    descent_unchecked(&complex.op)
}
