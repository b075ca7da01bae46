//! Exact linear algebra over the rationals.
//!
//! Rows are cleared to primitive integer vectors and eliminated without
//! division: `r_i <- p * r_i - a_i * r_pivot`, then divided by the gcd of
//! the new row. This keeps entries as small as the content allows while
//! every intermediate value stays an integer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{denominator_lcm, Q};

/// Reduced echelon form with integer rows: every pivot column is zero
/// outside its own row.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}

fn integer_rows(m: &Matrix<Q>) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = denominator_lcm(row);
            let mut out: Vec<BigInt> = row
                .iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect();
            primitive(&mut out);
            out
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

fn echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].abs())
        else {
            continue;
        };
        rows.swap(r, found);
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        let p = pivot_row[c].clone();
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let a = row[c].clone();
            if !p.is_one() {
                for x in row.iter_mut().filter(|x| !x.is_zero()) {
                    *x *= &p;
                }
            }
            for (x, y) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                if !y.is_zero() {
                    *x -= &a * y;
                }
            }
            primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

/// Row rank over the rationals.
pub fn rank(m: &Matrix<Q>) -> usize {
    echelon(integer_rows(m), m.cols()).pivots.len()
}

/// A basis of `{x : m x = 0}`, one vector per free column.
pub fn kernel_basis(m: &Matrix<Q>) -> Vec<Vec<Q>> {
    let e = echelon(integer_rows(m), m.cols());
    let mut is_pivot = vec![false; m.cols()];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Q::zero(); m.cols()];
            v[f] = Q::one();
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                if !row[f].is_zero() {
                    v[p] = -Q::new(row[f].clone(), row[p].clone());
                }
            }
            v
        })
        .collect()
}

/// Some `x` with `m x = b`, or `None` when `b` is outside the column space.
pub fn solve(m: &Matrix<Q>, b: &[Q]) -> Result<Option<Vec<Q>>> {
    if b.len() != m.rows() {
        return Err(Error::shape(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let n = m.cols();
    let augmented = Matrix::from_fn(m.rows(), n + 1, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let e = echelon(integer_rows(&augmented), n + 1);
    if e.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![Q::zero(); n];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = Q::new(row[n].clone(), row[p].clone());
    }
    Ok(Some(x))
}

/// The inverse of a square matrix, or `None` when it is singular.
pub fn inverse(m: &Matrix<Q>) -> Option<Matrix<Q>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    if n == 0 {
        return Some(m.clone());
    }
    let augmented = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            Q::one()
        } else {
            Q::zero()
        }
    });
    let e = echelon(integer_rows(&augmented), 2 * n);
    if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| {
        Q::new(e.rows[i][n + j].clone(), e.rows[i][i].clone())
    }))
}

/// Rank of a list of vectors of a common length.
pub fn rank_of_vectors(vectors: &[Vec<Q>], len: usize) -> usize {
    rank(&Matrix::from_rows(vectors.to_vec(), len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn small_cases() {
        assert_eq!(rank(&Matrix::<Q>::identity(2)), 2);
        assert_eq!(rank(&Matrix::<Q>::zeros(3, 3)), 0);
        assert!(kernel_basis(&Matrix::<Q>::identity(3)).is_empty());
        assert_eq!(kernel_basis(&m(&[&[1, -1]])), vec![vec![q(1), q(1)]]);
        let b = vec![qf(1, 2), q(-3)];
        assert_eq!(solve(&Matrix::identity(2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&Matrix::zeros(2, 2), &b).unwrap(), None);
        assert!(solve(&Matrix::identity(2), &[q(1)]).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(inverse(&Matrix::<Q>::zeros(0, 0)), Some(Matrix::zeros(0, 0)));
    }

    /// Textbook elimination over Q with division, used as an independent
    /// reference for rank.
    fn naive_rank(m: &Matrix<Q>) -> usize {
        let mut rows = m.to_rows();
        let mut r = 0;
        for c in 0..m.cols() {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r][c].clone();
            let pr = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = &row[c] / &pivot;
                    for (x, y) in row.iter_mut().zip(&pr) {
                        *x -= &f * y;
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Q>> {
        proptest::collection::vec((-5i64..=5, 1i64..=3), rows * cols).prop_map(move |v| {
            Matrix::from_fn(rows, cols, |i, j| {
                let (n, d) = v[i * cols + j];
                qf(n, d)
            })
        })
    }

    fn low_rank(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Q>> {
        (arb_matrix(rows, 2), arb_matrix(2, cols)).prop_map(|(a, b)| a.mul(&b))
    }

    proptest! {
        #[test]
        fn rank_matches_naive(a in arb_matrix(4, 4), b in low_rank(5, 4)) {
            prop_assert_eq!(rank(&a), naive_rank(&a));
            prop_assert_eq!(rank(&b), naive_rank(&b));
        }

        #[test]
        fn kernel_is_annihilated(a in prop_oneof![arb_matrix(5, 3), low_rank(3, 5)]) {
            let ker = kernel_basis(&a);
            prop_assert_eq!(ker.len() + rank(&a), a.cols());
            for v in &ker {
                prop_assert!(a.apply(v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn consistent_systems_are_solved(a in low_rank(4, 3), x0 in proptest::collection::vec(-4i64..4, 3)) {
            let x0: Vec<Q> = x0.into_iter().map(q).collect();
            let b = a.apply(&x0);
            let x = solve(&a, &b).unwrap().expect("consistent by construction");
            prop_assert_eq!(a.apply(&x), b);
        }

        #[test]
        fn solvable_iff_in_column_space(a in low_rank(3, 3), b in proptest::collection::vec(-3i64..3, 3)) {
            let b: Vec<Q> = b.into_iter().map(q).collect();
            let mut cols: Vec<Vec<Q>> = (0..3).map(|j| a.col(j)).collect();
            let r = rank_of_vectors(&cols, 3);
            cols.push(b.clone());
            let in_span = rank_of_vectors(&cols, 3) == r;
            let sol = solve(&a, &b).unwrap();
            prop_assert_eq!(sol.is_some(), in_span);
            if let Some(x) = sol {
                prop_assert_eq!(a.apply(&x), b);
            }
        }
    }
}
