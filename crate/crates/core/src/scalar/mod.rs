//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! A [`CyclotomicScalar`] stores rational coordinates in the power basis
//! `1, ζ_N, …, ζ_N^{φ(N)-1}`. Values of different conductors are lifted to
//! the lcm before combining, so every operation is exact.

mod roots;
pub(crate) mod table;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{self, FieldElement};

pub use roots::{exact_isqrt, factor_integer, PowerIndex, RationalTimesRoot};
pub use table::{cyclotomic_polynomial, totient};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("the multiplicative order of zero is undefined")]
    ZeroInput,
}

impl ScalarError {
    pub fn name(&self) -> &'static str {
        match self {
            ScalarError::DivisionByZero => "DivisionByZero",
            ScalarError::ZeroInput => "ZeroInput",
        }
    }
}

/// Multiplicative order of a nonzero scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderValue {
    Finite(u32),
    Infinite,
}

impl OrderValue {
    pub fn finite(self) -> Option<u32> {
        match self {
            OrderValue::Finite(n) => Some(n),
            OrderValue::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, OrderValue::Finite(_))
    }
}

impl fmt::Display for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderValue::Finite(n) => write!(f, "{n}"),
            OrderValue::Infinite => f.write_str("inf"),
        }
    }
}

/// An exact element of ℚ(ζ_N).
#[derive(Clone)]
pub struct CyclotomicScalar {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

fn normalize_conductor(n: u32) -> u32 {
    // ℚ(ζ_2) = ℚ
    if n <= 2 {
        1
    } else {
        n
    }
}

impl CyclotomicScalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    /// `num/den`; panics if `den == 0`.
    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        CyclotomicScalar { conductor: 1, coeffs: vec![q] }
    }

    /// The primitive root of unity ζ_N = exp(2πi/N).
    pub fn zeta(n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        match n {
            1 => Self::one(),
            2 => Self::from_int(-1),
            _ => {
                let t = table::table(n);
                let mut coeffs = vec![BigRational::zero(); t.degree];
                coeffs[1] = BigRational::one();
                CyclotomicScalar { conductor: n, coeffs }
            }
        }
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let n = n.max(1);
        let e = k.rem_euclid(n as i64) as usize;
        let nn = normalize_conductor(n);
        if nn == 1 {
            return if n == 2 && e == 1 { Self::from_int(-1) } else { Self::one() };
        }
        let t = table::table(nn);
        CyclotomicScalar { conductor: nn, coeffs: t.powers[e].iter().map(|&c| int(c)).collect() }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Rational coordinates in the power basis of ℚ(ζ_conductor).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this scalar lies in ℚ.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    /// Re-expresses this scalar in ℚ(ζ_m); `m` must be a multiple of the
    /// current conductor.
    pub fn lift(&self, m: u32) -> Self {
        let m = normalize_conductor(m);
        if m == self.conductor {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.conductor), "cannot lift conductor {} to {}", self.conductor, m);
        let t = table::table(m);
        let step = (m / self.conductor) as usize;
        let mut out = vec![BigRational::zero(); t.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (k * step) % m as usize;
            for (slot, &p) in out.iter_mut().zip(&t.powers[e]) {
                if p != 0 {
                    *slot += c * int(p);
                }
            }
        }
        CyclotomicScalar { conductor: m, coeffs: out }
    }

    /// Tries to rewrite this scalar over the smaller conductor `m` (`m` must
    /// divide the current conductor). Returns `None` if it is not in ℚ(ζ_m).
    pub fn descend(&self, m: u32) -> Option<Self> {
        let m = normalize_conductor(m);
        if m == self.conductor {
            return Some(self.clone());
        }
        if !self.conductor.is_multiple_of(m) {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return Some(Self::from_rational(q));
        }
        // express self as a combination of the lifted basis ζ_m^k
        let dm = table::table(m).degree;
        let basis: Vec<CyclotomicScalar> = (0..dm).map(|k| Self::zeta_pow(m, k as i64).lift(self.conductor)).collect();
        let rows = self.coeffs.len();
        let a: Vec<Vec<BigRational>> = (0..rows).map(|r| basis.iter().map(|b| b.coeffs[r].clone()).collect()).collect();
        let x = linalg::solve(&a, &self.coeffs, &BigRational::zero())?;
        Some(CyclotomicScalar { conductor: m, coeffs: x })
    }

    /// Rewrites over the smallest conductor dividing the current one.
    pub fn simplify(&self) -> Self {
        if self.to_rational().is_some() {
            return Self::from_rational(self.coeffs[0].clone());
        }
        let n = self.conductor;
        let mut best = self.clone();
        for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
            if let Some(v) = self.descend(d) {
                if v.conductor < best.conductor {
                    best = v;
                }
            }
        }
        best
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = a.conductor.lcm(&b.conductor);
        (a.lift(m), b.lift(m))
    }

    fn with_common<R>(a: &Self, b: &Self, f: impl FnOnce(u32, &[BigRational], &[BigRational]) -> R) -> R {
        if a.conductor == b.conductor {
            f(a.conductor, &a.coeffs, &b.coeffs)
        } else {
            let (x, y) = Self::common(a, b);
            f(x.conductor, &x.coeffs, &y.coeffs)
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        CyclotomicScalar { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    fn mul_impl(a: &Self, b: &Self) -> Self {
        if a.conductor == 1 {
            return b.scale_rational(&a.coeffs[0]);
        }
        if b.conductor == 1 {
            return a.scale_rational(&b.coeffs[0]);
        }
        Self::with_common(a, b, |n, x, y| {
            let t = table::table(n);
            let d = t.degree;
            let mut conv = vec![BigRational::zero(); 2 * d - 1];
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    if !yj.is_zero() {
                        conv[i + j] += xi * yj;
                    }
                }
            }
            let mut out: Vec<BigRational> = conv[..d].to_vec();
            for (e, c) in conv.iter().enumerate().skip(d) {
                if c.is_zero() {
                    continue;
                }
                for (slot, &p) in out.iter_mut().zip(&t.powers[e % n as usize]) {
                    if p != 0 {
                        *slot += c * int(p);
                    }
                }
            }
            CyclotomicScalar { conductor: n, coeffs: out }
        })
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        // solve (multiplication-by-self matrix) · x = e_0
        let d = self.coeffs.len();
        let columns: Vec<CyclotomicScalar> =
            (0..d).map(|k| Self::mul_impl(self, &Self::zeta_pow(self.conductor, k as i64))).collect();
        let a: Vec<Vec<BigRational>> = (0..d).map(|r| columns.iter().map(|c| c.coeffs[r].clone()).collect()).collect();
        let mut e0 = vec![BigRational::zero(); d];
        e0[0] = BigRational::one();
        let x = linalg::solve(&a, &e0, &BigRational::zero()).expect("nonzero field element is invertible");
        Ok(CyclotomicScalar { conductor: self.conductor, coeffs: x })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Nonnegative power (never fails).
    pub fn powu(&self, e: u32) -> Self {
        self.pow(e as i64).expect("nonnegative power")
    }

    /// Multiplicative order: `n` if this is a primitive n-th root of unity.
    ///
    /// Roots of unity in ℚ(ζ_N) have order dividing lcm(2, N), so only those
    /// divisors are tested.
    pub fn order(&self) -> Result<OrderValue, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroInput);
        }
        let l = 2u32.lcm(&self.conductor);
        if !self.powu(l).is_one() {
            return Ok(OrderValue::Infinite);
        }
        let n = (1..=l).filter(|d| l.is_multiple_of(*d)).find(|&d| self.powu(d).is_one()).unwrap_or(l);
        Ok(OrderValue::Finite(n))
    }

    /// Writes the scalar as `Σ c_k ζ^k` in the cli grammar.
    fn fmt_terms(&self) -> Vec<(bool, String)> {
        let mut out = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let z = match k {
                0 => String::new(),
                1 => format!("zeta({})", self.conductor),
                _ => format!("zeta({})^{}", self.conductor, k),
            };
            let s = if z.is_empty() {
                fmt_rational(&a)
            } else if a.is_one() {
                z
            } else {
                format!("{}*{}", fmt_rational(&a), z)
            };
            out.push((neg, s));
        }
        out
    }

    /// True when the printed form is a single term (so it can be used as a
    /// coefficient without parentheses).
    pub fn is_single_term(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }

    /// Sign of a single-term scalar with rational coefficient; `None` when
    /// the scalar has several terms.
    pub fn leading_sign_negative(&self) -> Option<bool> {
        let terms = self.fmt_terms();
        if terms.len() == 1 {
            Some(terms[0].0)
        } else {
            None
        }
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.fmt_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (neg, s)) in terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{s}")?,
                (0, false) => write!(f, "{s}")?,
                (_, true) => write!(f, " - {s}")?,
                (_, false) => write!(f, " + {s}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialEq for CyclotomicScalar {
    fn eq(&self, other: &Self) -> bool {
        Self::with_common(self, other, |_, x, y| x == y)
    }
}

impl Eq for CyclotomicScalar {}

impl PartialEq<i64> for CyclotomicScalar {
    fn eq(&self, other: &i64) -> bool {
        self.to_rational().is_some_and(|q| q == int(*other))
    }
}

impl Default for CyclotomicScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CyclotomicScalar {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for CyclotomicScalar {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

/// A total order used only for deterministic sorting (not a field order).
impl PartialOrd for CyclotomicScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclotomicScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.conductor == 1 && other.conductor == 1 {
            return self.coeffs[0].cmp(&other.coeffs[0]);
        }
        let (a, b) = (self.simplify(), other.simplify());
        (a.conductor, &a.coeffs).cmp(&(b.conductor, &b.coeffs))
    }
}

impl std::hash::Hash for CyclotomicScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let s = self.simplify();
        s.conductor.hash(state);
        s.coeffs.hash(state);
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b CyclotomicScalar> for &'a CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $method(self, rhs: &'b CyclotomicScalar) -> CyclotomicScalar {
                let f: fn(&CyclotomicScalar, &CyclotomicScalar) -> CyclotomicScalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<CyclotomicScalar> for CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $method(self, rhs: CyclotomicScalar) -> CyclotomicScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $tr<&'b CyclotomicScalar> for CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $method(self, rhs: &'b CyclotomicScalar) -> CyclotomicScalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<CyclotomicScalar> for &'a CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $method(self, rhs: CyclotomicScalar) -> CyclotomicScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| {
    CyclotomicScalar::with_common(a, b, |n, x, y| CyclotomicScalar {
        conductor: n,
        coeffs: x.iter().zip(y).map(|(p, q)| p + q).collect(),
    })
});
forward_binop!(Sub, sub, |a, b| {
    CyclotomicScalar::with_common(a, b, |n, x, y| CyclotomicScalar {
        conductor: n,
        coeffs: x.iter().zip(y).map(|(p, q)| p - q).collect(),
    })
});
forward_binop!(Mul, mul, CyclotomicScalar::mul_impl);

impl Neg for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        -&self
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        CyclotomicScalar { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl FieldElement for CyclotomicScalar {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
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
        self.try_div(other).expect("division by a nonzero pivot")
    }
}

/// Joins `(coefficient, monomial)` pairs into a signed sum in the cli
/// grammar. An empty monomial string denotes the constant term.
pub fn format_terms(items: &[(CyclotomicScalar, String)]) -> String {
    let items: Vec<_> = items.iter().filter(|(c, _)| !c.is_zero()).collect();
    if items.is_empty() {
        return "0".to_string();
    }
    let alone = items.len() == 1;
    let mut out = String::new();
    for (idx, (c, mono)) in items.iter().enumerate() {
        let (neg, body) = match (c.leading_sign_negative(), mono.is_empty()) {
            (Some(neg), true) => (neg, (if neg { -c } else { c.clone() }).to_string()),
            (Some(neg), false) => {
                let a = if neg { -c } else { c.clone() };
                if a.is_one() {
                    (neg, mono.clone())
                } else {
                    (neg, format!("{a}*{mono}"))
                }
            }
            (None, true) if alone => (false, c.to_string()),
            (None, true) => (false, format!("({c})")),
            (None, false) => (false, format!("({c})*{mono}")),
        };
        match (idx, neg) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(&body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    out
}

/// Shorthand for an integer scalar.
pub fn k(n: i64) -> CyclotomicScalar {
    CyclotomicScalar::from_int(n)
}

/// Shorthand for a rational scalar.
pub fn kq(num: i64, den: i64) -> CyclotomicScalar {
    CyclotomicScalar::from_frac(num, den)
}

impl serde::Serialize for CyclotomicScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Finite orders serialize as integers, `Infinite` as `"infinite"`.
impl serde::Serialize for OrderValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            OrderValue::Finite(n) => s.serialize_u32(*n),
            OrderValue::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sum() {
        assert_eq!(kq(1, 2) + kq(1, 3), kq(5, 6));
    }

    #[test]
    fn i_squared() {
        let i = CyclotomicScalar::zeta(4);
        assert_eq!(&i * &i, k(-1));
    }

    #[test]
    fn inverse_of_zeta3() {
        let z = CyclotomicScalar::zeta(3);
        assert_eq!(z.inv().unwrap(), z.powu(2));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(k(1).try_div(&k(0)).unwrap_err(), ScalarError::DivisionByZero);
        assert_eq!(CyclotomicScalar::zero().inv().unwrap_err().name(), "DivisionByZero");
    }

    #[test]
    fn orders() {
        assert_eq!(k(1).order().unwrap(), OrderValue::Finite(1));
        assert_eq!(k(-1).order().unwrap(), OrderValue::Finite(2));
        assert_eq!(CyclotomicScalar::zeta(12).powu(3).order().unwrap(), OrderValue::Finite(4));
        assert_eq!(k(2).order().unwrap(), OrderValue::Infinite);
        assert_eq!(k(0).order().unwrap_err(), ScalarError::ZeroInput);
        // ζ_3 lives in a field whose roots of unity have order dividing 6
        assert_eq!((-CyclotomicScalar::zeta(3)).order().unwrap(), OrderValue::Finite(6));
    }

    #[test]
    fn mixed_conductors_lift_to_lcm() {
        let a = CyclotomicScalar::zeta(4);
        let b = CyclotomicScalar::zeta(3);
        let c = &a * &b;
        assert_eq!(c.conductor(), 12);
        assert_eq!(c, CyclotomicScalar::zeta(12).powu(7));
    }

    #[test]
    fn zeta8_squared_is_i() {
        let z8 = CyclotomicScalar::zeta(8);
        assert_eq!(z8.powu(2), CyclotomicScalar::zeta(4));
        assert_eq!(z8.powu(2).simplify().conductor(), 4);
    }

    #[test]
    fn display_forms() {
        assert_eq!(kq(-3, 4).to_string(), "-3/4");
        let z = CyclotomicScalar::zeta(8);
        let v = &z.powu(3) * &k(2) - kq(1, 2);
        assert_eq!(v.to_string(), "-1/2 + 2*zeta(8)^3");
    }

    #[test]
    fn descend_rejects_non_members() {
        let i = CyclotomicScalar::zeta(4).lift(8);
        assert_eq!(i.descend(4).unwrap(), CyclotomicScalar::zeta(4));
        assert!(CyclotomicScalar::zeta(8).descend(4).is_none());
    }
}
