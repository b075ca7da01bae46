//! Multilinear maps `V_1 x ... x V_k -> W` stored by structure constants.
//!
//! [`SparseTensor`] is the storage form (rational, zero entries omitted);
//! [`DenseTensor`] is the working form used to assemble both sides of an
//! identity as a single tensor and compare them entry by entry.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::Violation;
use crate::scalar::{Q, Scalar};

/// Row-major flat index of `idx` in a grid of shape `dims`.
pub fn flat_index(dims: &[usize], idx: &[usize]) -> usize {
    dims.iter().zip(idx).fold(0, |acc, (&d, &i)| acc * d + i)
}

/// Inverse of [`flat_index`].
pub fn unflatten(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut idx = vec![0; dims.len()];
    for (slot, &d) in idx.iter_mut().zip(dims).rev() {
        *slot = flat % d;
        flat /= d;
    }
    idx
}

/// All index tuples of the grid `dims` in row-major order.
pub fn index_tuples(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |f| unflatten(dims, f))
}

/// A k-linear map with rational structure constants, keyed by
/// `(i_1, ..., i_k, l)`; absent keys are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseTensor {
    dims_in: Vec<usize>,
    dim_out: usize,
    entries: BTreeMap<Vec<usize>, Q>,
}

impl SparseTensor {
    pub fn zero(dims_in: Vec<usize>, dim_out: usize) -> Self {
        SparseTensor {
            dims_in,
            dim_out,
            entries: BTreeMap::new(),
        }
    }

    /// Builds from `(inputs, output, value)` triples; repeated keys add up.
    pub fn from_entries(
        dims_in: Vec<usize>,
        dim_out: usize,
        entries: impl IntoIterator<Item = (Vec<usize>, usize, Q)>,
    ) -> Result<Self> {
        let mut t = Self::zero(dims_in, dim_out);
        for (inputs, out, value) in entries {
            t.add_entry(&inputs, out, value)?;
        }
        Ok(t)
    }

    pub fn add_entry(&mut self, inputs: &[usize], out: usize, value: Q) -> Result<()> {
        if inputs.len() != self.dims_in.len()
            || inputs.iter().zip(&self.dims_in).any(|(i, d)| i >= d)
            || out >= self.dim_out
        {
            return Err(Error::shape(format!(
                "entry {inputs:?} -> {out} is outside dims {:?} -> {}",
                self.dims_in, self.dim_out
            )));
        }
        let mut key = inputs.to_vec();
        key.push(out);
        let slot = self.entries.entry(key).or_insert_with(num_traits::Zero::zero);
        *slot += value;
        if num_traits::Zero::is_zero(slot) {
            let mut key = inputs.to_vec();
            key.push(out);
            self.entries.remove(&key);
        }
        Ok(())
    }

    pub fn dims_in(&self) -> &[usize] {
        &self.dims_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn arity(&self) -> usize {
        self.dims_in.len()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, inputs: &[usize], out: usize) -> Q {
        let mut key = inputs.to_vec();
        key.push(out);
        self.entries
            .get(&key)
            .cloned()
            .unwrap_or_else(num_traits::Zero::zero)
    }

    /// Nonzero entries as `(inputs ++ [out], value)` in key order.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &Q)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Contracts with one vector per input slot.
    pub fn eval<T: Scalar>(&self, args: &[&[T]]) -> Result<Vec<T>> {
        if args.len() != self.arity() || args.iter().zip(&self.dims_in).any(|(a, &d)| a.len() != d)
        {
            return Err(Error::shape(format!(
                "arguments of lengths {:?} for a tensor with inputs {:?}",
                args.iter().map(|a| a.len()).collect::<Vec<_>>(),
                self.dims_in
            )));
        }
        let mut out = vec![T::zero(); self.dim_out];
        'entries: for (key, c) in &self.entries {
            let (inputs, l) = key.split_at(key.len() - 1);
            let mut term = T::from_rational(c);
            for (a, &i) in args.iter().zip(inputs) {
                if a[i].is_zero() {
                    continue 'entries;
                }
                term *= &a[i];
            }
            out[l[0]] += &term;
        }
        Ok(out)
    }

    pub fn to_dense<T: Scalar>(&self) -> DenseTensor<T> {
        let mut t = DenseTensor::zeros(self.dims_in.clone(), self.dim_out);
        for (key, c) in &self.entries {
            let (inputs, l) = key.split_at(key.len() - 1);
            let f = t.offset(inputs) + l[0];
            t.data[f] = T::from_rational(c);
        }
        t
    }

    pub fn from_dense(t: &DenseTensor<Q>) -> Self {
        let mut entries = BTreeMap::new();
        for (f, v) in t.data.iter().enumerate() {
            if !num_traits::Zero::is_zero(v) {
                let mut key = unflatten(&t.dims_in, f / t.dim_out.max(1));
                key.push(f % t.dim_out);
                entries.insert(key, v.clone());
            }
        }
        SparseTensor {
            dims_in: t.dims_in.clone(),
            dim_out: t.dim_out,
            entries,
        }
    }
}

/// A k-linear map with every structure constant stored, output index last.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor<T> {
    dims_in: Vec<usize>,
    dim_out: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseTensor<T> {
    pub fn zeros(dims_in: Vec<usize>, dim_out: usize) -> Self {
        let len = dims_in.iter().product::<usize>() * dim_out;
        DenseTensor {
            dims_in,
            dim_out,
            data: vec![T::zero(); len],
        }
    }

    /// `f(inputs)` gives the output vector for each basis tuple.
    pub fn from_fn(dims_in: Vec<usize>, dim_out: usize, mut f: impl FnMut(&[usize]) -> Vec<T>) -> Self {
        let mut data = Vec::with_capacity(dims_in.iter().product::<usize>() * dim_out);
        for idx in index_tuples(&dims_in) {
            let v = f(&idx);
            assert_eq!(v.len(), dim_out, "output vector length");
            data.extend(v);
        }
        DenseTensor {
            dims_in,
            dim_out,
            data,
        }
    }

    /// Reinterprets a flat coordinate vector (as produced by [`Self::data`]).
    pub fn from_data(dims_in: Vec<usize>, dim_out: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), dims_in.iter().product::<usize>() * dim_out);
        DenseTensor {
            dims_in,
            dim_out,
            data,
        }
    }

    /// The matrix `m` as a 1-linear map.
    pub fn from_matrix(m: &Matrix<T>) -> Self {
        Self::from_fn(vec![m.cols()], m.rows(), |idx| m.col(idx[0]))
    }

    /// A 0-linear map, i.e. a constant vector.
    pub fn constant(v: Vec<T>) -> Self {
        DenseTensor {
            dims_in: Vec::new(),
            dim_out: v.len(),
            data: v,
        }
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        assert_eq!(self.arity(), 1);
        Matrix::from_fn(self.dim_out, self.dims_in[0], |i, j| {
            self.data[j * self.dim_out + i].clone()
        })
    }

    pub fn dims_in(&self) -> &[usize] {
        &self.dims_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn arity(&self) -> usize {
        self.dims_in.len()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn offset(&self, inputs: &[usize]) -> usize {
        flat_index(&self.dims_in, inputs) * self.dim_out
    }

    /// Output vector on a basis tuple.
    pub fn at(&self, inputs: &[usize]) -> &[T] {
        let o = self.offset(inputs);
        &self.data[o..o + self.dim_out]
    }

    pub fn get(&self, inputs: &[usize], out: usize) -> &T {
        &self.data[self.offset(inputs) + out]
    }

    pub fn set(&mut self, inputs: &[usize], out: usize, value: T) {
        let o = self.offset(inputs) + out;
        self.data[o] = value;
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> DenseTensor<U> {
        DenseTensor {
            dims_in: self.dims_in.clone(),
            dim_out: self.dim_out,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Contracts with one vector per input slot.
    pub fn eval(&self, args: &[&[T]]) -> Vec<T> {
        assert_eq!(args.len(), self.arity());
        let mut t = self.clone();
        for a in args.iter().rev() {
            let k = t.arity() - 1;
            t = t.compose(k, &DenseTensor::constant(a.to_vec()));
        }
        t.data
    }

    /// Substitutes `inner` into input `slot`. The result takes the inputs
    /// before `slot`, then the inputs of `inner`, then those after `slot`.
    pub fn compose(&self, slot: usize, inner: &DenseTensor<T>) -> DenseTensor<T> {
        let mut dims_in = self.dims_in[..slot].to_vec();
        dims_in.extend_from_slice(&inner.dims_in);
        dims_in.extend_from_slice(&self.dims_in[slot + 1..]);
        let labels: Vec<usize> = (0..dims_in.len()).collect();
        let mut out = DenseTensor::zeros(dims_in, self.dim_out);
        self.compose_into(slot, inner, &labels, false, &mut out);
        out
    }

    /// Adds (or with `negate`, subtracts) `self.compose(slot, inner)
    /// .arrange(labels)` into `out` without building the intermediate
    /// tensors. Only nonzero products are visited.
    pub fn compose_into(
        &self,
        slot: usize,
        inner: &DenseTensor<T>,
        labels: &[usize],
        negate: bool,
        out: &mut DenseTensor<T>,
    ) {
        assert_eq!(
            inner.dim_out, self.dims_in[slot],
            "composition into slot {slot}: inner output {} vs slot dimension {}",
            inner.dim_out, self.dims_in[slot]
        );
        assert_eq!(out.dim_out, self.dim_out, "output dimension of the target");
        let pre_dims = &self.dims_in[..slot];
        let post_dims = &self.dims_in[slot + 1..];
        let mid = self.dims_in[slot];
        let arity = pre_dims.len() + inner.dims_in.len() + post_dims.len();
        assert_eq!(labels.len(), arity, "one label per composed input");
        assert_eq!(out.dims_in.len(), arity, "arity of the target");

        // Stride in `out` of each composed input position.
        let mut out_strides = vec![0; arity];
        let mut acc = 1;
        for l in (0..arity).rev() {
            out_strides[l] = acc;
            acc *= out.dims_in[l];
        }
        let strides: Vec<usize> = labels.iter().map(|&l| out_strides[l]).collect();
        let offsets = |dims: &[usize], strides: &[usize]| -> Vec<usize> {
            index_tuples(dims)
                .map(|idx| idx.iter().zip(strides).map(|(i, s)| i * s).sum())
                .collect()
        };
        let k_pre = pre_dims.len();
        let k_inner = inner.dims_in.len();
        let pre_off = offsets(pre_dims, &strides[..k_pre]);
        let inner_off = offsets(&inner.dims_in, &strides[k_pre..k_pre + k_inner]);
        let post_off = offsets(post_dims, &strides[k_pre + k_inner..]);
        let post = post_off.len();

        // Nonzero inner entries grouped by the slot coordinate they feed.
        let mut feeds: Vec<Vec<(usize, T)>> = vec![Vec::new(); mid];
        for (q, chunk) in inner.data.chunks(mid.max(1)).enumerate().take(inner_off.len()) {
            for (m, c) in chunk.iter().enumerate() {
                if !c.is_zero() {
                    feeds[m].push((inner_off[q], if negate { -c.clone() } else { c.clone() }));
                }
            }
        }

        let dout = self.dim_out;
        for (p, &po) in pre_off.iter().enumerate() {
            for (m, feed) in feeds.iter().enumerate() {
                if feed.is_empty() {
                    continue;
                }
                for (s, &so) in post_off.iter().enumerate() {
                    let src = ((p * mid + m) * post + s) * dout;
                    let row = &self.data[src..src + dout];
                    if row.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    for (qo, c) in feed {
                        let dst = (po + qo + so) * dout;
                        for (o, x) in out.data[dst..dst + dout].iter_mut().zip(row) {
                            if !x.is_zero() {
                                o.add_product(c, x);
                            }
                        }
                    }
                }
            }
        }
    }

    /// Precomposes input `slot` with the linear map `m` (so the slot now
    /// ranges over the domain of `m`).
    pub fn precompose(&self, slot: usize, m: &Matrix<T>) -> DenseTensor<T> {
        self.compose(slot, &DenseTensor::from_matrix(m))
    }

    /// Precomposes each listed input slot with `m`.
    pub fn twist(&self, slots: &[usize], m: &Matrix<T>) -> DenseTensor<T> {
        let mut t = self.clone();
        for &slot in slots {
            t = t.precompose(slot, m);
        }
        t
    }

    /// Precomposes every input slot with `m`.
    pub fn precompose_all(&self, m: &Matrix<T>) -> DenseTensor<T> {
        let mut t = self.clone();
        for slot in 0..self.arity() {
            t = t.precompose(slot, m);
        }
        t
    }

    /// Applies `m` to the output.
    pub fn postcompose(&self, m: &Matrix<T>) -> DenseTensor<T> {
        assert_eq!(m.cols(), self.dim_out, "postcomposition shape");
        let count: usize = self.dims_in.iter().product();
        let mut out = DenseTensor::zeros(self.dims_in.clone(), m.rows());
        for q in 0..count {
            let v = &self.data[q * self.dim_out..(q + 1) * self.dim_out];
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            let w = m.apply(v);
            out.data[q * m.rows()..(q + 1) * m.rows()].clone_from_slice(&w);
        }
        out
    }

    /// Renames inputs: input `s` of `self` becomes input `labels[s]` of the
    /// result. `labels` must be a permutation of `0..arity`.
    pub fn arrange(&self, labels: &[usize]) -> DenseTensor<T> {
        let k = self.arity();
        assert_eq!(labels.len(), k);
        let mut dims = vec![0; k];
        for (s, &l) in labels.iter().enumerate() {
            dims[l] = self.dims_in[s];
        }
        let mut out = DenseTensor::zeros(dims.clone(), self.dim_out);
        let mut target = vec![0; k];
        for (f, idx) in index_tuples(&self.dims_in).enumerate() {
            for (s, &l) in labels.iter().enumerate() {
                target[l] = idx[s];
            }
            let dst = out.offset(&target);
            out.data[dst..dst + self.dim_out]
                .clone_from_slice(&self.data[f * self.dim_out..(f + 1) * self.dim_out]);
        }
        out
    }

    fn check_same_shape(&self, other: &Self) {
        assert_eq!(
            (&self.dims_in, self.dim_out),
            (&other.dims_in, other.dim_out),
            "tensor shape mismatch"
        );
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.check_same_shape(other);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.check_same_shape(other);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }

    pub fn plus(mut self, other: &Self) -> Self {
        self.add_assign(other);
        self
    }

    pub fn minus(mut self, other: &Self) -> Self {
        self.sub_assign(other);
        self
    }

    pub fn scaled(mut self, c: &T) -> Self {
        for a in self.data.iter_mut().filter(|a| !a.is_zero()) {
            *a *= c;
        }
        self
    }

    pub fn negated(self) -> Self {
        self.scaled(&-T::one())
    }

    /// Compares two tensors of the same shape tuple by tuple; each differing
    /// basis tuple becomes a violation. Series-valued tensors give one
    /// violation per differing power of `t`, tagged with that power.
    pub fn violations(&self, other: &Self, identity: &str) -> Vec<Violation> {
        self.check_same_shape(other);
        let count: usize = self.dims_in.iter().product();
        let d = self.dim_out;
        let mut out = Vec::new();
        for q in 0..count {
            let l = &self.data[q * d..(q + 1) * d];
            let r = &other.data[q * d..(q + 1) * d];
            if l == r {
                continue;
            }
            let witness = unflatten(&self.dims_in, q);
            if T::GRADED {
                let lc: Vec<Vec<Q>> = l.iter().map(|x| x.coefficients()).collect();
                let rc: Vec<Vec<Q>> = r.iter().map(|x| x.coefficients()).collect();
                let powers = lc.iter().chain(&rc).map(|c| c.len()).max().unwrap_or(0);
                let coord = |c: &Vec<Q>, p: usize| c.get(p).cloned().unwrap_or_else(num_traits::Zero::zero);
                for p in 0..powers {
                    let left: Vec<Q> = lc.iter().map(|c| coord(c, p)).collect();
                    let right: Vec<Q> = rc.iter().map(|c| coord(c, p)).collect();
                    if left != right {
                        out.push(Violation {
                            identity: format!("{identity} [t^{p}]"),
                            witness: witness.clone(),
                            left,
                            right,
                        });
                    }
                }
            } else {
                out.push(Violation {
                    identity: identity.to_string(),
                    witness,
                    left: l.iter().map(|x| x.coefficients().remove(0)).collect(),
                    right: r.iter().map(|x| x.coefficients().remove(0)).collect(),
                });
            }
        }
        out
    }

    /// Number of basis tuples, the evaluation count of an identity.
    pub fn tuple_count(&self) -> usize {
        self.dims_in.iter().product()
    }
}

impl DenseTensor<Q> {
    pub fn lift<T: Scalar>(&self) -> DenseTensor<T> {
        self.map(T::from_rational)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};
    use proptest::prelude::*;

    fn arb_dense(dims_in: Vec<usize>, dim_out: usize) -> impl Strategy<Value = DenseTensor<Q>> {
        let len = dims_in.iter().product::<usize>() * dim_out;
        proptest::collection::vec(prop_oneof![Just(0i64), -3i64..=3], len).prop_map(move |v| {
            DenseTensor::from_data(dims_in.clone(), dim_out, v.into_iter().map(q).collect())
        })
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = Vec<Q>> {
        proptest::collection::vec((-4i64..=4, 1i64..=3), n)
            .prop_map(|v| v.into_iter().map(|(a, b)| qf(a, b)).collect())
    }

    /// Triple loop over basis coordinates.
    fn naive_eval3(t: &DenseTensor<Q>, x: &[Q], y: &[Q], z: &[Q]) -> Vec<Q> {
        let mut out = vec![q(0); t.dim_out()];
        for i in 0..x.len() {
            for j in 0..y.len() {
                for k in 0..z.len() {
                    for (l, o) in out.iter_mut().enumerate() {
                        *o += &x[i] * &y[j] * &z[k] * t.get(&[i, j, k], l);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn sparse_round_trip_drops_zeros() {
        let mut t = SparseTensor::zero(vec![2, 2], 2);
        t.add_entry(&[0, 1], 1, q(3)).unwrap();
        t.add_entry(&[0, 1], 1, q(-3)).unwrap();
        t.add_entry(&[1, 0], 0, q(2)).unwrap();
        assert_eq!(t.nnz(), 1);
        assert!(t.add_entry(&[2, 0], 0, q(1)).is_err());
        let d: DenseTensor<Q> = t.to_dense();
        assert_eq!(SparseTensor::from_dense(&d), t);
    }

    #[test]
    fn arrange_moves_inputs() {
        let t = DenseTensor::from_fn(vec![2, 3], 1, |idx| vec![q((10 * idx[0] + idx[1]) as i64)]);
        let s = t.arrange(&[1, 0]);
        assert_eq!(s.dims_in(), &[3, 2]);
        assert_eq!(s.get(&[2, 1], 0), &q(12));
    }

    proptest! {
        #[test]
        fn eval_matches_naive(t in arb_dense(vec![2, 3, 2], 2), x in arb_vec(2), y in arb_vec(3), z in arb_vec(2)) {
            let expect = naive_eval3(&t, &x, &y, &z);
            prop_assert_eq!(t.eval(&[&x, &y, &z]), expect.clone());
            prop_assert_eq!(SparseTensor::from_dense(&t).eval(&[&x, &y, &z]).unwrap(), expect);
        }

        #[test]
        fn composition_is_substitution(
            outer in arb_dense(vec![2, 3], 2),
            inner in arb_dense(vec![2, 2], 3),
            a in arb_vec(2), b in arb_vec(2), c in arb_vec(2),
        ) {
            let composed = outer.compose(1, &inner);
            let direct = outer.eval(&[&a, &inner.eval(&[&b, &c])]);
            prop_assert_eq!(composed.eval(&[&a, &b, &c]), direct);
        }

        #[test]
        fn postcompose_is_matrix_application(t in arb_dense(vec![2, 2], 3), x in arb_vec(2), y in arb_vec(2), m in arb_dense(vec![3], 2)) {
            let m = m.to_matrix();
            prop_assert_eq!(t.postcompose(&m).eval(&[&x, &y]), m.apply(&t.eval(&[&x, &y])));
        }
    }
}
