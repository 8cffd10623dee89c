use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{format_terms, CyclotomicScalar};

/// A sparse univariate polynomial with exact coefficients.
#[derive(Clone, PartialEq, Eq, Default, PartialOrd, Ord, Hash)]
pub struct UniPoly {
    coeffs: BTreeMap<u32, CyclotomicScalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(CyclotomicScalar::one())
    }

    pub fn x() -> Self {
        Self::monomial(CyclotomicScalar::one(), 1)
    }

    pub fn constant(c: CyclotomicScalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: CyclotomicScalar, e: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        UniPoly { coeffs }
    }

    /// From a dense coefficient list, lowest degree first.
    pub fn from_coeffs(cs: Vec<CyclotomicScalar>) -> Self {
        let mut p = Self::zero();
        for (e, c) in cs.into_iter().enumerate() {
            p.add_term(e as u32, c);
        }
        p
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| CyclotomicScalar::from_int(c)).collect())
    }

    pub fn add_term(&mut self, e: u32, c: CyclotomicScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(CyclotomicScalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: u32) -> CyclotomicScalar {
        self.coeffs.get(&e).cloned().unwrap_or_else(CyclotomicScalar::zero)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &CyclotomicScalar)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&CyclotomicScalar> {
        self.coeffs.values().next_back()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    /// `Some(c)` if this is the constant `c` (including 0).
    pub fn as_constant(&self) -> Option<CyclotomicScalar> {
        self.is_constant().then(|| self.coeff(0))
    }

    /// `Some((c, e))` if this is a single nonzero term `c·x^e`.
    pub fn as_monomial(&self) -> Option<(CyclotomicScalar, u32)> {
        if self.coeffs.len() == 1 {
            let (e, c) = self.coeffs.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &CyclotomicScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: u32) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|(e, a)| (e + k, a.clone())).collect() }
    }

    pub fn eval(&self, x: &CyclotomicScalar) -> CyclotomicScalar {
        let Some(deg) = self.degree() else {
            return CyclotomicScalar::zero();
        };
        let mut acc = CyclotomicScalar::zero();
        for e in (0..=deg).rev() {
            acc = &acc * x;
            if let Some(c) = self.coeffs.get(&e) {
                acc = &acc + c;
            }
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

    /// `self(g(x))`.
    pub fn compose(&self, g: &UniPoly) -> Self {
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut acc = Self::zero();
        for e in (0..=deg).rev() {
            acc = &acc * g;
            if let Some(c) = self.coeffs.get(&e) {
                acc.add_term(0, c.clone());
            }
        }
        acc
    }

    /// `self(a·x + b)`.
    pub fn twisted_substitute(&self, a: &CyclotomicScalar, b: &CyclotomicScalar) -> Self {
        let mut lin = Self::constant(b.clone());
        lin.add_term(1, a.clone());
        self.compose(&lin)
    }

    /// `self(x^n)`.
    pub fn inflate(&self, n: u32) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|(e, a)| (e * n, a.clone())).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(u32, &CyclotomicScalar) -> CyclotomicScalar) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.coeffs {
            out.add_term(*e, f(*e, c));
        }
        out
    }

    /// Prints in the cli grammar using the variable name `var`, highest
    /// degree first.
    pub fn to_string_in(&self, var: &str) -> String {
        let items: Vec<_> = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono = match e {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{e}"),
                };
                (c.clone(), mono)
            })
            .collect();
        format_terms(&items)
    }

    /// Largest conductor among the coefficients.
    pub fn conductor(&self) -> u32 {
        self.coeffs.values().map(|c| c.conductor()).max().unwrap_or(1)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{k, kq};

    #[test]
    fn twisted_substitute_examples() {
        let x2 = UniPoly::from_ints(&[0, 0, 1]);
        assert_eq!(x2.twisted_substitute(&k(1), &k(1)), UniPoly::from_ints(&[1, 2, 1]));
        let r = CyclotomicScalar::zeta(3);
        let g = kq(1, 2);
        let lin = UniPoly::x().twisted_substitute(&r, &g);
        assert_eq!(lin.coeff(1), r);
        assert_eq!(lin.coeff(0), g);
        let f = UniPoly::from_ints(&[3, -1, 0, 5]);
        assert_eq!(f.twisted_substitute(&k(1), &k(0)), f);
    }

    #[test]
    fn printing() {
        assert_eq!(UniPoly::from_ints(&[1, -2, 1]).to_string_in("h"), "h^2 - 2*h + 1");
        assert_eq!(UniPoly::zero().to_string(), "0");
        let p = UniPoly::monomial(&k(1) + &CyclotomicScalar::zeta(3), 1);
        assert_eq!(p.to_string(), "(1 + zeta(3))*x");
    }

    #[test]
    fn eval_and_degree() {
        let p = UniPoly::from_ints(&[1, 0, 2]);
        assert_eq!(p.eval(&k(3)), k(19));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(UniPoly::zero().degree(), None);
        let q = &p - &p;
        assert!(q.is_zero());
    }
}
