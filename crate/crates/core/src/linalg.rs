//! Dense exact linear algebra over any exact field.
//!
//! Used for cyclotomic inversion (over ℚ), conformal solving, functional
//! equation kernels and change-of-basis checks. Matrices are row-major
//! `Vec<Vec<F>>`.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// The operations an exact field element must support.
pub trait FieldElement: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// Division by a nonzero element. Callers guarantee `other != 0`.
    fn div_ref(&self, other: &Self) -> Self;
}

impl FieldElement for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
}

/// Reduces `mat` to reduced row echelon form in place and returns the pivot
/// column of each nonzero row.
pub fn rref<F: FieldElement>(mat: &mut [Vec<F>]) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !mat[r][col].is_zero_elem()) else {
            continue;
        };
        mat.swap(row, p);
        let lead = mat[row][col].clone();
        for x in &mut mat[row][col..] {
            *x = x.div_ref(&lead);
        }
        let pivot_row = mat[row].clone();
        for (r, other) in mat.iter_mut().enumerate() {
            if r == row || other[col].is_zero_elem() {
                continue;
            }
            let factor = other[col].clone();
            for (x, p) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero_elem() {
                    *x = x.sub_ref(&factor.mul_ref(p));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of a matrix (the input is not modified).
pub fn rank<F: FieldElement>(mat: &[Vec<F>]) -> usize {
    let mut m = mat.to_vec();
    rref(&mut m).len()
}

/// True iff `mat` is square and of full rank.
pub fn is_invertible<F: FieldElement>(mat: &[Vec<F>]) -> bool {
    let n = mat.len();
    if mat.iter().any(|row| row.len() != n) {
        return false;
    }
    rank(mat) == n
}

/// Solves `a · x = b`. Free variables are set to zero, so the returned
/// solution has no component along non-pivot columns. Returns `None` when the
/// system is inconsistent.
pub fn solve<F: FieldElement>(a: &[Vec<F>], b: &[F], zero: &F) -> Option<Vec<F>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![zero.clone(); cols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug[row][cols].clone();
    }
    Some(x)
}

/// A basis of the right kernel `{x : a·x = 0}`, one vector per free column,
/// with that free coordinate equal to one.
pub fn kernel<F: FieldElement>(a: &[Vec<F>], cols: usize, zero: &F) -> Vec<Vec<F>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let one = zero.one_like();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); cols];
        v[free] = one.clone();
        for (row, &pc) in pivots.iter().enumerate() {
            let entry = &m[row][free];
            if !entry.is_zero_elem() {
                v[pc] = zero.sub_ref(entry);
            }
        }
        basis.push(v);
    }
    basis
}
