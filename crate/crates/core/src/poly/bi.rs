use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{format_terms, CyclotomicScalar};

use super::UniPoly;

/// Compares exponent pairs by the bidegree order: the second exponent
/// dominates, ties are broken by the first.
pub fn bidegree_cmp(a: (u32, u32), b: (u32, u32)) -> Ordering {
    (a.1, a.0).cmp(&(b.1, b.0))
}

/// A sparse polynomial in two commuting variables `x`, `y`, keyed by
/// `(deg_x, deg_y)`.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct BiPoly {
    coeffs: BTreeMap<(u32, u32), CyclotomicScalar>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(CyclotomicScalar::one())
    }

    pub fn constant(c: CyclotomicScalar) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(CyclotomicScalar::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(CyclotomicScalar::one(), 0, 1)
    }

    pub fn monomial(c: CyclotomicScalar, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// `f(x)` viewed as a polynomial in two variables.
    pub fn from_uni_x(f: &UniPoly) -> Self {
        let mut p = Self::zero();
        for (e, c) in f.terms() {
            p.add_term(e, 0, c.clone());
        }
        p
    }

    pub fn from_uni_y(f: &UniPoly) -> Self {
        let mut p = Self::zero();
        for (e, c) in f.terms() {
            p.add_term(0, e, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: CyclotomicScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_insert_with(CyclotomicScalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> CyclotomicScalar {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(CyclotomicScalar::zero)
    }

    /// Terms in lexicographic `(i, j)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = ((u32, u32), &CyclotomicScalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn exponents(&self) -> Vec<(u32, u32)> {
        self.coeffs.keys().copied().collect()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The largest exponent pair under [`bidegree_cmp`].
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        self.coeffs.keys().copied().max_by(|a, b| bidegree_cmp(*a, *b))
    }

    /// Leading term under lex order with `x > y`.
    pub(crate) fn lex_leading(&self) -> Option<((u32, u32), &CyclotomicScalar)> {
        self.coeffs.iter().next_back().map(|(k, c)| (*k, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(i, j)| i + j).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.1).max()
    }

    pub fn scale(&self, c: &CyclotomicScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly { coeffs: self.coeffs.iter().map(|(k, a)| (*k, a * c)).collect() }
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        BiPoly { coeffs: self.coeffs.iter().map(|((i, j), c)| ((i + a, j + b), c.clone())).collect() }
    }

    pub fn eval(&self, x: &CyclotomicScalar, y: &CyclotomicScalar) -> CyclotomicScalar {
        let mut acc = CyclotomicScalar::zero();
        for ((i, j), c) in &self.coeffs {
            acc = &acc + &(&(c * &x.powu(*i)) * &y.powu(*j));
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `self(xs, ys)` for polynomial substitutions.
    pub fn compose(&self, xs: &BiPoly, ys: &BiPoly) -> Self {
        let mx = self.deg_x().unwrap_or(0) as usize;
        let my = self.deg_y().unwrap_or(0) as usize;
        let mut xp = vec![Self::one()];
        for k in 1..=mx {
            let next = &xp[k - 1] * xs;
            xp.push(next);
        }
        let mut yp = vec![Self::one()];
        for k in 1..=my {
            let next = &yp[k - 1] * ys;
            yp.push(next);
        }
        let mut out = Self::zero();
        for ((i, j), c) in &self.coeffs {
            let t = &xp[*i as usize] * &yp[*j as usize];
            out = &out + &t.scale(c);
        }
        out
    }

    /// Divides every coefficient by the coefficient at `key`.
    pub fn normalized_at(&self, key: (u32, u32)) -> Self {
        let lc = self.coeff(key.0, key.1);
        let inv = lc.inv().expect("normalizing by a zero coefficient");
        self.scale(&inv)
    }

    /// Prints in the cli grammar with the given variable names, highest
    /// bidegree first.
    pub fn to_string_in(&self, xv: &str, yv: &str) -> String {
        let mut keys: Vec<_> = self.coeffs.keys().copied().collect();
        keys.sort_by(|a, b| bidegree_cmp(*b, *a));
        let items: Vec<_> = keys
            .into_iter()
            .map(|(i, j)| {
                let mut parts = Vec::new();
                for (v, e) in [(xv, i), (yv, j)] {
                    match e {
                        0 => {}
                        1 => parts.push(v.to_string()),
                        _ => parts.push(format!("{v}^{e}")),
                    }
                }
                (self.coeffs[&(i, j)].clone(), parts.join("*"))
            })
            .collect();
        format_terms(&items)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x", "y"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((i, j), c) in &rhs.coeffs {
            out.add_term(*i, *j, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((i, j), c) in &rhs.coeffs {
            out.add_term(*i, *j, -c);
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((i1, j1), c1) in &self.coeffs {
            for ((i2, j2), c2) in &rhs.coeffs {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::k;

    #[test]
    fn bidegree_examples() {
        let p = &BiPoly::monomial(k(1), 3, 1) + &BiPoly::monomial(k(1), 1, 2);
        assert_eq!(p.bidegree(), Some((1, 2)));
        assert_eq!(BiPoly::zero().bidegree(), None);
        assert_eq!(bidegree_cmp((5, 0), (0, 1)), Ordering::Less);
    }

    #[test]
    fn compose_affine() {
        // (x + y)(x + 1, 2y) = x + 1 + 2y
        let p = &BiPoly::x() + &BiPoly::y();
        let xs = &BiPoly::x() + &BiPoly::one();
        let ys = BiPoly::y().scale(&k(2));
        let q = p.compose(&xs, &ys);
        assert_eq!(q.to_string(), "2*y + x + 1");
    }
}
