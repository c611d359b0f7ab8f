//! Small exact linear algebra over the crate's scalar fields.
//!
//! Everything here is plain Gaussian elimination with first-nonzero pivoting;
//! the scalars are exact fields, so there is no conditioning concern, only
//! termination. Matrices are `Vec<Vec<T>>` in row-major order.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::complex::ComplexFieldElement;
use crate::scalar::FieldElement;

/// An exact field scalar usable in generic elimination.
pub trait Scalar:
    Clone
    + PartialEq
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero(self.context())
    }
    fn one_like(&self) -> Self {
        FieldElement::one(self.context())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for ComplexFieldElement {
    fn zero_like(&self) -> Self {
        ComplexFieldElement::zero(self.context())
    }
    fn one_like(&self) -> Self {
        ComplexFieldElement::one(self.context())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce<T: Scalar>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero_elem()) else {
            continue;
        };
        m.swap(r, p);
        let inv_pivot = m[r][c].one_like() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv_pivot.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero_elem() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    m[i][j] = m[i][j].clone() - f.clone() * m[r][j].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a matrix.
pub fn rank<T: Scalar>(m: &[Vec<T>]) -> usize {
    let mut w: Vec<Vec<T>> = m.to_vec();
    row_reduce(&mut w).len()
}

/// Rank together with one left-kernel vector `y` (with `y^T m = 0`, `y != 0`)
/// whenever the rank is below the row count.
pub fn rank_with_left_kernel<T: Scalar>(m: &[Vec<T>]) -> (usize, Option<Vec<T>>) {
    let rows = m.len();
    if rows == 0 {
        return (0, None);
    }
    let cols = m[0].len();
    let zero = m[0][0].zero_like();
    let one = m[0][0].one_like();
    // Augment with the identity to track row operations.
    let mut w: Vec<Vec<T>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..rows {
                r.push(if i == j { one.clone() } else { zero.clone() });
            }
            r
        })
        .collect();
    // Eliminate only within the original columns.
    let mut rank = 0usize;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !w[i][c].is_zero_elem()) else {
            continue;
        };
        w.swap(rank, p);
        let inv_pivot = one.clone() / w[rank][c].clone();
        for x in w[rank].iter_mut() {
            *x = x.clone() * inv_pivot.clone();
        }
        for i in 0..rows {
            if i != rank && !w[i][c].is_zero_elem() {
                let f = w[i][c].clone();
                for j in 0..cols + rows {
                    w[i][j] = w[i][j].clone() - f.clone() * w[rank][j].clone();
                }
            }
        }
        rank += 1;
    }
    if rank == rows {
        return (rank, None);
    }
    // Any row beyond the rank has zero original part; its augmented part is a
    // left-kernel vector.
    let kernel = w[rank][cols..].to_vec();
    debug_assert!(kernel.iter().any(|x| !x.is_zero_elem()));
    (rank, Some(kernel))
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn null_space<T: Scalar>(m: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    if m.is_empty() {
        // Whole space.
        return Vec::new();
    }
    let zero = m[0][0].zero_like();
    let one = m[0][0].one_like();
    let mut w: Vec<Vec<T>> = m.to_vec();
    let pivots = row_reduce(&mut w);
    let mut basis = Vec::new();
    let pivot_rows: Vec<(usize, usize)> = pivots.iter().copied().enumerate().collect();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![zero.clone(); ncols];
        v[free] = one.clone();
        for &(r, pc) in &pivot_rows {
            v[pc] = -w[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Determinant by elimination with exact division.
pub fn determinant<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix required");
    let mut w: Vec<Vec<T>> = m.to_vec();
    let mut det = w[0][0].one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[i][c].is_zero_elem()) else {
            return m[0][0].zero_like();
        };
        if p != c {
            w.swap(p, c);
            det = -det;
        }
        det = det * w[c][c].clone();
        let inv_pivot = w[c][c].one_like() / w[c][c].clone();
        for i in c + 1..n {
            if !w[i][c].is_zero_elem() {
                let f = w[i][c].clone() * inv_pivot.clone();
                for j in c..n {
                    w[i][j] = w[i][j].clone() - f.clone() * w[c][j].clone();
                }
            }
        }
    }
    det
}

/// `L D L^T` factorization of a symmetric matrix with nonzero leading minors.
///
/// Returns `(l, d)` with `l` unit lower triangular. `None` when a zero pivot
/// appears, which for our callers means "not positive definite".
pub fn ldl<T: Scalar>(m: &[Vec<T>]) -> Option<(Vec<Vec<T>>, Vec<T>)> {
    let n = m.len();
    let zero = m[0][0].zero_like();
    let one = m[0][0].one_like();
    let mut l = vec![vec![zero.clone(); n]; n];
    let mut d = vec![zero.clone(); n];
    for i in 0..n {
        l[i][i] = one.clone();
    }
    for j in 0..n {
        let mut dj = m[j][j].clone();
        for k in 0..j {
            dj = dj - l[j][k].clone() * l[j][k].clone() * d[k].clone();
        }
        if dj.is_zero_elem() {
            return None;
        }
        d[j] = dj;
        for i in j + 1..n {
            let mut x = m[i][j].clone();
            for k in 0..j {
                x = x - l[i][k].clone() * l[j][k].clone() * d[k].clone();
            }
            l[i][j] = x / d[j].clone();
        }
    }
    Some((l, d))
}

/// Signature `(positive, negative)` of a rational symmetric matrix, by exact
/// congruence diagonalization. Zero eigenvalue directions are skipped.
pub fn symmetric_signature(m: &[Vec<BigRational>]) -> (usize, usize) {
    let n = m.len();
    let mut w: Vec<Vec<BigRational>> = m.to_vec();
    let mut pos = 0usize;
    let mut neg = 0usize;
    let mut i = 0usize;
    while i < n {
        if w[i][i].is_zero() {
            // Symmetric pivot repair: find j > i with w[i][j] != 0 and add
            // row/column j into i, creating 2*w[i][j] on the diagonal.
            if let Some(j) = (i + 1..n).find(|&j| !w[i][j].is_zero()) {
                for k in 0..n {
                    let t = w[j][k].clone();
                    w[i][k] += t;
                }
                for row in w.iter_mut() {
                    let t = row[j].clone();
                    row[i] += t;
                }
            } else {
                // Entire row/column vanishes: a radical direction.
                i += 1;
                continue;
            }
        }
        if w[i][i].is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        let pivot = w[i][i].clone();
        for j in i + 1..n {
            if w[i][j].is_zero() {
                continue;
            }
            let f = &w[i][j] / &pivot;
            // row_j -= f * row_i; col_j -= f * col_i (congruence step)
            for k in 0..n {
                let t = &w[i][k] * &f;
                w[j][k] -= t;
            }
            for row in w.iter_mut() {
                let t = &row[i] * &f;
                row[j] -= t;
            }
        }
        i += 1;
    }
    (pos, neg)
}
