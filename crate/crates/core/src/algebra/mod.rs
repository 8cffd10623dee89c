//! Generalized down-up algebras: parameters, the standard basis and
//! normal-ordered multiplication.
//!
//! Products are computed from the normal form of `d^c u^i`, obtained by
//! recursion on `c` from the three defining relations
//!
//! ```text
//! h u = u σ(h),   d h = σ(h) d,   d u = s u d + φ(h),   σ(h) = r h + γ
//! ```
//!
//! and cached per `(c, i)`.

mod element;
mod graded;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use parking_lot::RwLock;

use crate::error::{DownUpError, Result};
use crate::poly::UniPoly;
use crate::scalar::CyclotomicScalar;

pub use element::PBWElement;
pub use graded::GradedForm;

/// Parameters `(φ, r, s, γ)` over the ambient field ℚ(ζ_N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraParams {
    pub phi: UniPoly,
    pub r: CyclotomicScalar,
    pub s: CyclotomicScalar,
    pub gamma: CyclotomicScalar,
    pub conductor: u32,
}

impl AlgebraParams {
    pub fn new(
        phi: UniPoly,
        r: CyclotomicScalar,
        s: CyclotomicScalar,
        gamma: CyclotomicScalar,
        conductor: u32,
    ) -> Result<Self> {
        if r.is_zero() || s.is_zero() {
            return Err(DownUpError::NotNoetherian);
        }
        let conductor = conductor.max(1);
        let p = AlgebraParams { phi, r, s, gamma, conductor };
        let field = 2 * conductor;
        let outside = [&p.r, &p.s, &p.gamma]
            .into_iter()
            .map(|c| c.conductor())
            .chain(p.phi.terms().map(|(_, c)| c.conductor()))
            .find(|c| !field.is_multiple_of(*c));
        if let Some(c) = outside {
            return Err(DownUpError::InvalidConfig(format!(
                "a parameter needs conductor {c}, outside the ambient field of conductor {conductor}"
            )));
        }
        Ok(p)
    }

    /// Rational parameters over ℚ, for tests and examples.
    pub fn rational(phi: UniPoly, r: CyclotomicScalar, s: CyclotomicScalar, gamma: CyclotomicScalar) -> Result<Self> {
        let n = [&r, &s, &gamma]
            .into_iter()
            .map(|c| c.conductor())
            .chain(phi.terms().map(|(_, c)| c.conductor()))
            .fold(1u32, |a, b| num_integer::Integer::lcm(&a, &b));
        Self::new(phi, r, s, gamma, n)
    }

    /// `σ^n(h) = a·h + b`, returned as `(a, b)`; `n` may be negative.
    pub fn sigma_pow(&self, n: i64) -> (CyclotomicScalar, CyclotomicScalar) {
        let one = CyclotomicScalar::one();
        if n >= 0 {
            let mut a = one.clone();
            let mut b = CyclotomicScalar::zero();
            for _ in 0..n {
                b = &(&self.r * &b) + &self.gamma;
                a = &a * &self.r;
            }
            (a, b)
        } else {
            // σ^{-1}(h) = (h - γ)/r
            let rinv = self.r.inv().expect("r is nonzero");
            let mut a = one;
            let mut b = CyclotomicScalar::zero();
            for _ in 0..(-n) {
                b = &(&b - &self.gamma) * &rinv;
                a = &a * &rinv;
            }
            (a, b)
        }
    }

    /// `f(σ^n(h))`.
    pub fn twist(&self, f: &UniPoly, n: i64) -> UniPoly {
        if n == 0 || f.is_constant() {
            return f.clone();
        }
        let (a, b) = self.sigma_pow(n);
        f.twisted_substitute(&a, &b)
    }
}

type NormalForm = Arc<BTreeMap<u32, UniPoly>>;

#[derive(Debug, Default)]
struct Memo {
    du: HashMap<(u32, u32), NormalForm>,
    g: Vec<UniPoly>,
}

/// An algebra `L(φ, r, s, γ)` with a shared product cache.
#[derive(Debug, Clone)]
pub struct Algebra {
    params: AlgebraParams,
    memo: Option<Arc<RwLock<Memo>>>,
}

/// A letter of a word to be normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    U,
    D,
    H,
    Scalar(CyclotomicScalar),
}

impl Algebra {
    pub fn new(params: AlgebraParams) -> Self {
        Algebra { params, memo: Some(Arc::new(RwLock::new(Memo::default()))) }
    }

    /// Same algebra with the product cache disabled.
    pub fn without_cache(params: AlgebraParams) -> Self {
        Algebra { params, memo: None }
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    /// `g_i(h)` with `d u^i = s^i u^i d + u^{i-1} g_i(h)`; `g_1 = φ`,
    /// `g_i = s·g_{i-1} + φ(σ^{i-1} h)`.
    fn g_poly(&self, i: u32) -> UniPoly {
        debug_assert!(i >= 1);
        if let Some(m) = &self.memo {
            if let Some(g) = m.read().g.get(i as usize - 1) {
                return g.clone();
            }
        }
        let p = &self.params;
        let value =
            if i == 1 { p.phi.clone() } else { &self.g_poly(i - 1).scale(&p.s) + &p.twist(&p.phi, i as i64 - 1) };
        if let Some(m) = &self.memo {
            let mut w = m.write();
            if w.g.len() == i as usize - 1 {
                w.g.push(value.clone());
            }
        }
        value
    }

    /// Normal form of `d^c u^i` as `z ↦ q_z(h)`, meaning
    /// `Σ_z u^{i-c+z} q_z(h) d^z`.
    fn du_power(&self, c: u32, i: u32) -> NormalForm {
        if let Some(m) = &self.memo {
            if let Some(v) = m.read().du.get(&(c, i)) {
                return Arc::clone(v);
            }
        }
        let value = Arc::new(self.du_power_uncached(c, i));
        if let Some(m) = &self.memo {
            m.write().du.entry((c, i)).or_insert_with(|| Arc::clone(&value));
        }
        value
    }

    fn du_power_uncached(&self, c: u32, i: u32) -> BTreeMap<u32, UniPoly> {
        let mut out: BTreeMap<u32, UniPoly> = BTreeMap::new();
        if c == 0 {
            out.insert(0, UniPoly::one());
            return out;
        }
        if i == 0 {
            out.insert(c, UniPoly::one());
            return out;
        }
        let p = &self.params;
        // d^c u^i = s^i (d^{c-1} u^i) d + (d^{c-1} u^{i-1}) g_i(h)
        let si = p.s.powu(i);
        for (z, q) in self.du_power(c - 1, i).iter() {
            let slot = out.entry(z + 1).or_default();
            *slot = &*slot + &q.scale(&si);
        }
        let g = self.g_poly(i);
        for (z, q) in self.du_power(c - 1, i - 1).iter() {
            let slot = out.entry(*z).or_default();
            *slot = &*slot + &(q * &p.twist(&g, *z as i64));
        }
        out.retain(|_, q| !q.is_zero());
        out
    }

    pub fn mul(&self, x: &PBWElement, y: &PBWElement) -> PBWElement {
        let p = &self.params;
        let mut acc: BTreeMap<(u32, u32), UniPoly> = BTreeMap::new();
        let yrows = y.rows();
        for ((a, c), left) in x.rows() {
            for ((i, k), right) in &yrows {
                let nf = self.du_power(c, *i);
                for (z, q) in nf.iter() {
                    let shift = i + z - c;
                    let poly = &(&p.twist(&left, shift as i64) * q) * &p.twist(right, *z as i64);
                    let slot = acc.entry((a + shift, z + k)).or_default();
                    *slot = &*slot + &poly;
                }
            }
        }
        PBWElement::from_rows(&acc)
    }

    pub fn pow(&self, x: &PBWElement, n: u32) -> PBWElement {
        let mut out = PBWElement::one();
        for _ in 0..n {
            out = self.mul(&out, x);
        }
        out
    }

    pub fn product(&self, factors: &[PBWElement]) -> PBWElement {
        factors.iter().fold(PBWElement::one(), |acc, f| self.mul(&acc, f))
    }

    /// Normal form of a word in `u, d, h` and scalars.
    pub fn normalize(&self, word: &[Atom]) -> PBWElement {
        let factors: Vec<PBWElement> = word
            .iter()
            .map(|a| match a {
                Atom::U => PBWElement::u(),
                Atom::D => PBWElement::d(),
                Atom::H => PBWElement::h(),
                Atom::Scalar(c) => PBWElement::scalar(c.clone()),
            })
            .collect();
        self.product(&factors)
    }

    /// `f_k` with `d^k u - s^k u d^k = f_k(h) d^{k-1}`.
    pub fn commutation_fk(&self, k: u32) -> UniPoly {
        assert!(k >= 1, "k must be positive");
        let p = &self.params;
        let mut f = p.phi.clone();
        for m in 1..k {
            f = &p.phi.scale(&p.s.powu(m)) + &p.twist(&f, 1);
        }
        f
    }

    /// `ud`, the second coordinate of the degree-zero subalgebra.
    pub fn w(&self) -> PBWElement {
        PBWElement::monomial(CyclotomicScalar::one(), 1, 0, 1)
    }
}

impl Atom {
    pub fn parse_word(src: &str) -> Option<Vec<Atom>> {
        src.chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .map(|c| match c {
                'u' => Some(Atom::U),
                'd' => Some(Atom::D),
                'h' => Some(Atom::H),
                _ => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::k;

    fn alg(phi: &[i64], r: i64, s: i64, g: i64) -> Algebra {
        Algebra::new(AlgebraParams::rational(UniPoly::from_ints(phi), k(r), k(s), k(g)).unwrap())
    }

    fn word(a: &Algebra, w: &str) -> PBWElement {
        a.normalize(&Atom::parse_word(w).unwrap())
    }

    #[test]
    fn du_relation() {
        let a = alg(&[0, 1], 1, 2, 0);
        assert_eq!(word(&a, "du").to_string(), "2*u*d + h");
    }

    #[test]
    fn hu_relation() {
        let a = alg(&[0, 1], 3, 1, 1);
        assert_eq!(word(&a, "hu").to_string(), "3*u*h + u");
        assert_eq!(word(&a, "uh").to_string(), "u*h");
    }

    #[test]
    fn ud_squared() {
        let a = alg(&[0, 1], 1, 1, 0);
        let w = a.w();
        assert_eq!(a.mul(&w, &w).to_string(), "u^2*d^2 + u*h*d");
    }

    #[test]
    fn h_times_uhd() {
        let a = alg(&[0, 1], 2, 1, 0);
        let x = a.mul(&PBWElement::h(), &PBWElement::monomial(k(1), 1, 1, 1));
        assert_eq!(x, PBWElement::monomial(k(2), 1, 2, 1));
    }

    #[test]
    fn fk_small_cases() {
        let a = alg(&[0, 1], 1, 3, 0);
        assert_eq!(a.commutation_fk(1), UniPoly::from_ints(&[0, 1]));
        assert_eq!(a.commutation_fk(2), UniPoly::from_ints(&[0, 4]));
    }

    #[test]
    fn cache_is_transparent() {
        let p = AlgebraParams::rational(UniPoly::from_ints(&[1, 2, 1]), k(2), kq(1, 3), k(1)).unwrap();
        let a = Algebra::new(p.clone());
        let b = Algebra::without_cache(p);
        for w in ["dduuh", "hdddu", "ddduuu", "dhudu"] {
            assert_eq!(word(&a, w), word(&b, w));
        }
    }

    use crate::scalar::kq;

    #[test]
    fn rejects_zero_r() {
        let e = AlgebraParams::rational(UniPoly::zero(), k(0), k(1), k(0)).unwrap_err();
        assert_eq!(e, DownUpError::NotNoetherian);
    }
}
