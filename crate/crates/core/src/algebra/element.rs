use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::poly::UniPoly;
use crate::scalar::{format_terms, CyclotomicScalar};

/// A finite combination of standard monomials `u^i h^j d^k`.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct PBWElement {
    terms: BTreeMap<(u32, u32, u32), CyclotomicScalar>,
}

impl PBWElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(CyclotomicScalar::one())
    }

    pub fn scalar(c: CyclotomicScalar) -> Self {
        Self::monomial(c, 0, 0, 0)
    }

    pub fn u() -> Self {
        Self::monomial(CyclotomicScalar::one(), 1, 0, 0)
    }

    pub fn h() -> Self {
        Self::monomial(CyclotomicScalar::one(), 0, 1, 0)
    }

    pub fn d() -> Self {
        Self::monomial(CyclotomicScalar::one(), 0, 0, 1)
    }

    pub fn monomial(c: CyclotomicScalar, i: u32, j: u32, k: u32) -> Self {
        let mut x = Self::zero();
        x.add_term(i, j, k, c);
        x
    }

    /// `u^i f(h) d^k`.
    pub fn from_row(i: u32, f: &UniPoly, k: u32) -> Self {
        let mut x = Self::zero();
        for (j, c) in f.terms() {
            x.add_term(i, j, k, c.clone());
        }
        x
    }

    /// `f(h)` as an algebra element.
    pub fn from_h_poly(f: &UniPoly) -> Self {
        Self::from_row(0, f, 0)
    }

    pub fn add_term(&mut self, i: u32, j: u32, k: u32, c: CyclotomicScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j, k)).or_insert_with(CyclotomicScalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&(i, j, k));
        }
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> CyclotomicScalar {
        self.terms.get(&(i, j, k)).cloned().unwrap_or_else(CyclotomicScalar::zero)
    }

    /// Terms in lexicographic `(i, j, k)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = ((u32, u32, u32), &CyclotomicScalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Groups terms as `Σ u^i f_{ik}(h) d^k`.
    pub fn rows(&self) -> BTreeMap<(u32, u32), UniPoly> {
        let mut rows: BTreeMap<(u32, u32), UniPoly> = BTreeMap::new();
        for ((i, j, k), c) in &self.terms {
            rows.entry((*i, *k)).or_default().add_term(*j, c.clone());
        }
        rows
    }

    pub fn from_rows(rows: &BTreeMap<(u32, u32), UniPoly>) -> Self {
        let mut x = Self::zero();
        for ((i, k), f) in rows {
            for (j, c) in f.terms() {
                x.add_term(*i, j, *k, c.clone());
            }
        }
        x
    }

    pub fn scale(&self, c: &CyclotomicScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PBWElement { terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect() }
    }

    /// Degrees `i - k` present in the element.
    pub fn degrees(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.terms.keys().map(|(i, _, k)| *i as i64 - *k as i64).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Components of each degree.
    pub fn homogeneous_decomposition(&self) -> BTreeMap<i64, PBWElement> {
        let mut out: BTreeMap<i64, PBWElement> = BTreeMap::new();
        for ((i, j, k), c) in &self.terms {
            out.entry(*i as i64 - *k as i64).or_default().add_term(*i, *j, *k, c.clone());
        }
        out
    }

    /// Number of nonzero homogeneous components.
    pub fn length(&self) -> usize {
        self.degrees().len()
    }

    pub fn homogeneous_degree(&self) -> Option<i64> {
        match self.degrees().as_slice() {
            [g] => Some(*g),
            _ => None,
        }
    }

    /// Largest `i + j + k` over the terms.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j, k)| i + j + k).max()
    }

    pub fn conductor(&self) -> u32 {
        self.terms.values().map(|c| c.conductor()).max().unwrap_or(1)
    }
}

pub(crate) fn monomial_string(i: u32, j: u32, k: u32) -> String {
    let mut parts = Vec::new();
    for (v, e) in [("u", i), ("h", j), ("d", k)] {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for PBWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<_> =
            self.terms.iter().rev().map(|((i, j, k), c)| (c.clone(), monomial_string(*i, *j, *k))).collect();
        f.write_str(&format_terms(&items))
    }
}

impl fmt::Debug for PBWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PBW({self})")
    }
}

impl Add<&PBWElement> for &PBWElement {
    type Output = PBWElement;
    fn add(self, rhs: &PBWElement) -> PBWElement {
        let mut out = self.clone();
        for ((i, j, k), c) in &rhs.terms {
            out.add_term(*i, *j, *k, c.clone());
        }
        out
    }
}

impl Sub<&PBWElement> for &PBWElement {
    type Output = PBWElement;
    fn sub(self, rhs: &PBWElement) -> PBWElement {
        let mut out = self.clone();
        for ((i, j, k), c) in &rhs.terms {
            out.add_term(*i, *j, *k, -c);
        }
        out
    }
}

impl Neg for &PBWElement {
    type Output = PBWElement;
    fn neg(self) -> PBWElement {
        PBWElement { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Add for PBWElement {
    type Output = PBWElement;
    fn add(self, rhs: PBWElement) -> PBWElement {
        &self + &rhs
    }
}

impl Sub for PBWElement {
    type Output = PBWElement;
    fn sub(self, rhs: PBWElement) -> PBWElement {
        &self - &rhs
    }
}

impl Neg for PBWElement {
    type Output = PBWElement;
    fn neg(self) -> PBWElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::k;

    #[test]
    fn decomposition_and_length() {
        let x = &PBWElement::u() + &PBWElement::monomial(k(1), 0, 1, 1);
        let parts = x.homogeneous_decomposition();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&1], PBWElement::u());
        assert_eq!(parts[&-1].to_string(), "h*d");
        assert_eq!(x.length(), 2);
        assert_eq!(PBWElement::monomial(k(1), 1, 1, 1).length(), 1);
        assert_eq!(PBWElement::zero().length(), 0);
    }

    #[test]
    fn printing_order() {
        let x = &PBWElement::monomial(k(2), 1, 0, 1) + &PBWElement::h();
        assert_eq!(x.to_string(), "2*u*d + h");
        assert_eq!(PBWElement::monomial(k(-1), 2, 3, 1).to_string(), "-u^2*h^3*d");
    }
}
