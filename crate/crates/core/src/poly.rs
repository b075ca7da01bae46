//! Truncated power series `K[[t]]/(t^{m+1})`.

use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::scalar::{Q, Scalar};

/// A power series known modulo `t^{order+1}`.
///
/// Elements built with [`TruncPoly::truncated`] carry a finite order and
/// exactly `order + 1` coefficients. Embedded constants (`zero`, `one`,
/// [`Scalar::from_rational`]) are exact: they have no order and adopt the
/// order of whatever they are combined with. The order of a sum or product
/// is the smaller of the two operand orders.
#[derive(Clone, Debug)]
pub struct TruncPoly<T> {
    order: Option<usize>,
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncPoly<T> {
    /// A series of the given order; `coeffs` may be shorter than `order + 1`
    /// (missing coefficients are zero) but not longer.
    pub fn truncated(order: usize, mut coeffs: Vec<T>) -> Self {
        assert!(
            coeffs.len() <= order + 1,
            "{} coefficients do not fit order {order}",
            coeffs.len()
        );
        coeffs.resize(order + 1, T::zero());
        TruncPoly {
            order: Some(order),
            coeffs,
        }
    }

    pub fn constant(value: T) -> Self {
        let mut p = TruncPoly {
            order: None,
            coeffs: vec![value],
        };
        p.normalize();
        p
    }

    /// The series `t` at the given order.
    pub fn variable(order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        if order >= 1 {
            coeffs[1] = T::one();
        }
        TruncPoly {
            order: Some(order),
            coeffs,
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    /// Coefficient of `t^i` (zero past the stored length).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    fn normalize(&mut self) {
        match self.order {
            Some(m) => self.coeffs.resize(m + 1, T::zero()),
            None => {
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    fn combined_order(&self, other: &Self) -> Option<usize> {
        match (self.order, other.order) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        }
    }

    fn zip_with(&mut self, other: &Self, f: impl Fn(&mut T, &T)) {
        self.order = self.combined_order(other);
        let len = match self.order {
            Some(m) => m + 1,
            None => self.coeffs.len().max(other.coeffs.len()),
        };
        self.coeffs.resize(len.max(self.coeffs.len()), T::zero());
        for (i, c) in self.coeffs.iter_mut().enumerate().take(len) {
            if let Some(o) = other.coeffs.get(i) {
                f(c, o);
            }
        }
        self.normalize();
    }
}

impl<T: Scalar> PartialEq for TruncPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|i| self.coeff(i) == other.coeff(i))
    }
}

impl<T: Scalar> Zero for TruncPoly<T> {
    fn zero() -> Self {
        TruncPoly {
            order: None,
            coeffs: Vec::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl<T: Scalar> One for TruncPoly<T> {
    fn one() -> Self {
        TruncPoly::constant(T::one())
    }
}

impl<'a, T: Scalar> AddAssign<&'a TruncPoly<T>> for TruncPoly<T> {
    fn add_assign(&mut self, rhs: &'a TruncPoly<T>) {
        self.zip_with(rhs, |a, b| *a += b);
    }
}

impl<'a, T: Scalar> SubAssign<&'a TruncPoly<T>> for TruncPoly<T> {
    fn sub_assign(&mut self, rhs: &'a TruncPoly<T>) {
        self.zip_with(rhs, |a, b| *a -= b);
    }
}

impl<'a, T: Scalar> MulAssign<&'a TruncPoly<T>> for TruncPoly<T> {
    fn mul_assign(&mut self, rhs: &'a TruncPoly<T>) {
        let order = self.combined_order(rhs);
        let full = (self.coeffs.len() + rhs.coeffs.len()).saturating_sub(1);
        let len = order.map_or(full, |m| m + 1);
        let mut out = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j].add_product(a, b);
            }
        }
        self.order = order;
        self.coeffs = out;
        self.normalize();
    }
}

impl<T: Scalar> Add for TruncPoly<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<T: Scalar> Sub for TruncPoly<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<T: Scalar> Mul for TruncPoly<T> {
    type Output = Self;
    fn mul(mut self, rhs: Self) -> Self {
        self *= &rhs;
        self
    }
}

impl<T: Scalar> Neg for TruncPoly<T> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in &mut self.coeffs {
            *c = -c.clone();
        }
        self
    }
}

impl<T: Scalar> Scalar for TruncPoly<T> {
    const GRADED: bool = true;

    fn from_rational(q: &Q) -> Self {
        TruncPoly::constant(T::from_rational(q))
    }

    fn coefficients(&self) -> Vec<Q> {
        self.coeffs.iter().flat_map(|c| c.coefficients()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};
    use proptest::prelude::*;

    fn series(order: usize, cs: &[i64]) -> TruncPoly<Q> {
        TruncPoly::truncated(order, cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn multiplication_truncates() {
        let t = TruncPoly::<Q>::variable(2);
        let t3 = t.clone() * t.clone() * t.clone();
        assert!(t3.is_zero());
        let p = series(2, &[1, 1]);
        assert_eq!(p.clone() * p, series(2, &[1, 2, 1]));
    }

    #[test]
    fn constants_adopt_finite_order() {
        let p = series(1, &[2, 3]);
        let sum = p.clone() + TruncPoly::one();
        assert_eq!(sum.order(), Some(1));
        assert_eq!(sum, series(1, &[3, 3]));
        let scaled = p.scale(&qf(1, 2));
        assert_eq!(scaled.coeff(0), q(1));
        assert_eq!(scaled.coeff(1), qf(3, 2));
        assert_eq!(scaled.order(), Some(1));
    }

    #[test]
    fn mixed_orders_take_the_minimum() {
        let a = series(3, &[0, 1, 1, 1]);
        let b = series(1, &[1, 1]);
        let c = a * b;
        assert_eq!(c.order(), Some(1));
        assert_eq!(c, series(1, &[0, 1]));
    }

    fn arb_series(order: usize) -> impl Strategy<Value = TruncPoly<Q>> {
        proptest::collection::vec((-6i64..6, 1i64..4), order + 1).prop_map(move |cs| {
            TruncPoly::truncated(order, cs.into_iter().map(|(n, d)| qf(n, d)).collect())
        })
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_series(3), r in arb_series(3), s in arb_series(3)) {
            prop_assert_eq!((p.clone() * r.clone()) * s.clone(), p.clone() * (r.clone() * s.clone()));
            prop_assert_eq!(p.clone() * (r.clone() + s.clone()), p.clone() * r.clone() + p.clone() * s.clone());
            prop_assert_eq!(p.clone() * r.clone(), r.clone() * p.clone());
            prop_assert_eq!(p.clone() - p.clone(), TruncPoly::zero());
        }
    }
}
