use std::fmt;

use serde::Serialize;

use crate::poly::UniPoly;
use crate::scalar::CyclotomicScalar;

/// Dense square matrix over the ambient field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matrix {
    dim: usize,
    rows: Vec<Vec<CyclotomicScalar>>,
}

impl Matrix {
    pub fn zero(dim: usize) -> Self {
        Matrix { dim, rows: vec![vec![CyclotomicScalar::zero(); dim]; dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.rows[i][i] = CyclotomicScalar::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicScalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: CyclotomicScalar) {
        self.rows[i][j] = c;
    }

    pub fn rows(&self) -> &[Vec<CyclotomicScalar>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &Matrix, f: impl Fn(&CyclotomicScalar, &CyclotomicScalar) -> CyclotomicScalar) -> Matrix {
        assert_eq!(self.dim, o.dim);
        let rows =
            self.rows.iter().zip(&o.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect()).collect();
        Matrix { dim: self.dim, rows }
    }

    pub fn scale(&self, c: &CyclotomicScalar) -> Matrix {
        let rows = self.rows.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        Matrix { dim: self.dim, rows }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.dim, o.dim);
        let n = self.dim;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for (l, a) in self.rows[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !o.rows[l][j].is_zero() {
                        out.rows[i][j] = &out.rows[i][j] + &(a * &o.rows[l][j]);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Matrix {
        (0..e).fold(Matrix::identity(self.dim), |acc, _| acc.mul(self))
    }

    /// `f(self)`.
    pub fn eval_poly(&self, f: &UniPoly) -> Matrix {
        let Some(deg) = f.degree() else {
            return Matrix::zero(self.dim);
        };
        let mut acc = Matrix::zero(self.dim);
        for e in (0..=deg).rev() {
            acc = acc.mul(self).add(&Matrix::identity(self.dim).scale(&f.coeff(e)));
        }
        acc
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        for row in &cells {
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::k;

    #[test]
    fn poly_of_nilpotent() {
        let mut n = Matrix::zero(2);
        n.set(0, 1, k(1));
        assert!(n.pow(2).is_zero());
        let f = UniPoly::from_ints(&[3, 2, 7]);
        let v = n.eval_poly(&f);
        assert_eq!(v.get(0, 0), &k(3));
        assert_eq!(v.get(0, 1), &k(2));
        assert_eq!(v.get(1, 0), &k(0));
    }
}
