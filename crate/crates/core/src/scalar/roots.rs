//! Roots of unity, rational-times-root decompositions and exact square roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CyclotomicScalar;

/// Largest conductor a square root may need before we give up.
const SQRT_CONDUCTOR_CAP: u32 = 4096;

/// `z = q · ζ_L^e` with `q > 0` rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalTimesRoot {
    pub modulus: BigRational,
    pub root_level: u32,
    pub root_exp: u32,
}

impl RationalTimesRoot {
    /// Order of the root-of-unity factor.
    pub fn root_order(&self) -> u32 {
        self.root_level / self.root_level.gcd(&self.root_exp)
    }
}

impl CyclotomicScalar {
    pub fn is_root_of_unity(&self) -> bool {
        !self.is_zero() && self.order().is_ok_and(|o| o.is_finite())
    }

    /// Decomposes `self` as a positive rational times a root of unity, when
    /// such a decomposition exists.
    pub fn rational_times_root(&self) -> Option<RationalTimesRoot> {
        if self.is_zero() {
            return None;
        }
        let l = 2u32.lcm(&self.conductor());
        for e in 0..l {
            let w = self * &CyclotomicScalar::zeta_pow(l, -(e as i64));
            if let Some(q) = w.to_rational() {
                if q.is_positive() {
                    return Some(RationalTimesRoot { modulus: q, root_level: l, root_exp: e });
                }
            }
        }
        None
    }

    /// An exact square root, found when `self` is a rational times a root of
    /// unity. The result may live in a larger cyclotomic field than `self`.
    pub fn sqrt(&self) -> Option<CyclotomicScalar> {
        if self.is_zero() {
            return Some(CyclotomicScalar::zero());
        }
        let d = self.rational_times_root()?;
        let root_part = CyclotomicScalar::zeta_pow(2 * d.root_level, d.root_exp as i64);
        let rat_part = sqrt_positive_rational(&d.modulus)?;
        let out = (&root_part * &rat_part).simplify();
        debug_assert!(&(&out * &out) == self);
        Some(out)
    }

    /// A square root lying in ℚ(ζ_m), if one exists.
    pub fn sqrt_in(&self, m: u32) -> Option<CyclotomicScalar> {
        let r = self.sqrt()?;
        let target = 2u32.lcm(&m);
        if target.is_multiple_of(r.conductor()) {
            return Some(r);
        }
        // the other root -r lives in the same field, so one check suffices
        r.lift(r.conductor().lcm(&target)).descend(m.max(1))
    }
}

/// Outcome of solving `base^i = target` over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerIndex {
    /// No integer exponent works.
    Never,
    /// `base^i = target` exactly for `i = first + k·period` (all k when
    /// `period` is set, otherwise only `k = 0`).
    At { first: i64, period: Option<u32> },
    /// Neither proved nor refuted with the available closed forms.
    Unknown,
}

impl CyclotomicScalar {
    /// Decides whether `target` is an integer power of `self` (both nonzero).
    ///
    /// Exact when `self` is a root of unity, or when both are a rational times
    /// a root of unity; otherwise [`PowerIndex::Unknown`].
    pub fn power_index(&self, target: &CyclotomicScalar) -> PowerIndex {
        if self.is_zero() || target.is_zero() {
            return PowerIndex::Never;
        }
        if let Ok(super::OrderValue::Finite(n)) = self.order() {
            return match (0..n as i64).find(|&i| &self.pow(i).unwrap() == target) {
                Some(i) => PowerIndex::At { first: i, period: Some(n) },
                None => PowerIndex::Never,
            };
        }
        let (Some(a), Some(b)) = (self.rational_times_root(), target.rational_times_root()) else {
            return PowerIndex::Unknown;
        };
        // |self| = a.modulus ≠ 1 here, so the exponent is pinned by magnitudes
        let Some(i) = rational_log(&a.modulus, &b.modulus) else {
            return PowerIndex::Never;
        };
        if &self.pow(i).unwrap() == target {
            PowerIndex::At { first: i, period: None }
        } else {
            PowerIndex::Never
        }
    }
}

/// The integer `i` with `base^i = target` for positive rationals, base ≠ 1.
fn rational_log(base: &BigRational, target: &BigRational) -> Option<i64> {
    let one = BigRational::one();
    if *target == one {
        return Some(0);
    }
    let (b, sign) = if (base > &one) == (target > &one) { (base.clone(), 1) } else { (base.recip(), -1) };
    // b and target lie on the same side of 1
    let grows = b > one;
    let mut acc = one;
    for i in 1..=4096i64 {
        acc = &acc * &b;
        if acc == *target {
            return Some(sign * i);
        }
        if (grows && acc > *target) || (!grows && acc < *target) {
            return None;
        }
    }
    None
}

fn sqrt_positive_rational(q: &BigRational) -> Option<CyclotomicScalar> {
    // sqrt(a/b) = sqrt(a*b)/b
    let prod = q.numer() * q.denom();
    let (square, free) = square_split(&prod)?;
    let mut acc = CyclotomicScalar::from_rational(BigRational::new(square, q.denom().clone()));
    for p in free {
        acc = &acc * &sqrt_prime(p)?;
        if acc.conductor() > SQRT_CONDUCTOR_CAP {
            return None;
        }
    }
    Some(acc)
}

/// Writes `n = t² · Π p` with distinct primes `p`; returns `(t, [p])`.
fn square_split(n: &BigInt) -> Option<(BigInt, Vec<u32>)> {
    let mut t = BigInt::one();
    let mut free = Vec::new();
    for (p, e) in factor_integer(n) {
        t *= p.pow(e / 2);
        if e % 2 == 1 {
            free.push(p.to_u32()?);
        }
    }
    Some((t, free))
}

/// Square root of a prime via quadratic Gauss sums.
fn sqrt_prime(p: u32) -> Option<CyclotomicScalar> {
    if p == 2 {
        let z = CyclotomicScalar::zeta(8);
        return Some(&z + &z.inv().ok()?);
    }
    if 4 * p > SQRT_CONDUCTOR_CAP {
        return None;
    }
    // g = Σ (a/p) ζ_p^a satisfies g² = (-1)^{(p-1)/2} p
    let mut g = CyclotomicScalar::zero();
    for a in 1..p {
        let term = CyclotomicScalar::zeta_pow(p, a as i64);
        if legendre(a, p) == 1 {
            g = &g + &term;
        } else {
            g = &g - &term;
        }
    }
    if p % 4 == 1 {
        Some(g)
    } else {
        // g² = -p, so (-i g)² = p
        Some(-&(&CyclotomicScalar::zeta(4) * &g))
    }
}

fn legendre(a: u32, p: u32) -> i32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = (p as u64 - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// Prime factorization of `|n|` by trial division (n ≠ 0).
pub fn factor_integer(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let two = BigInt::from(2);
    let mut p = two.clone();
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == two { BigInt::one() } else { two.clone() };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Integer square root, if exact.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{k, kq};

    #[test]
    fn sqrt_of_small_rationals() {
        for (n, d) in [(4, 9), (2, 1), (3, 1), (5, 1), (6, 7), (-1, 1), (-3, 4), (7, 1)] {
            let z = kq(n, d);
            let r = z.sqrt().expect("sqrt exists");
            assert_eq!(&r * &r, z, "sqrt of {n}/{d}");
        }
    }

    #[test]
    fn sqrt_of_root_of_unity() {
        let z = CyclotomicScalar::zeta(3);
        let r = z.sqrt().unwrap();
        assert_eq!(&r * &r, z);
        assert_eq!(r.conductor(), 3);
    }

    #[test]
    fn sqrt_in_ambient_field() {
        assert!(k(2).sqrt_in(1).is_none());
        assert!(k(2).sqrt_in(8).is_some());
        assert!(k(-1).sqrt_in(4).is_some());
        assert!(k(-1).sqrt_in(3).is_none());
        assert!(k(-3).sqrt_in(3).is_some());
    }

    #[test]
    fn not_rational_times_root() {
        let z = &k(1) + &CyclotomicScalar::zeta(5);
        // |1 + ζ_5| = 2cos(π/5) is irrational
        assert!(z.rational_times_root().is_none());
        let w = &k(2) + &CyclotomicScalar::zeta(4);
        assert!(w.rational_times_root().is_none());
        assert!(w.sqrt().is_none());
    }

    #[test]
    fn factorization() {
        let f = factor_integer(&BigInt::from(360));
        assert_eq!(f, vec![(BigInt::from(2), 3), (BigInt::from(3), 2), (BigInt::from(5), 1)]);
    }

    #[test]
    fn power_index_cases() {
        assert_eq!(k(2).power_index(&kq(1, 8)), PowerIndex::At { first: -3, period: None });
        assert_eq!(k(2).power_index(&k(6)), PowerIndex::Never);
        assert_eq!(k(-2).power_index(&k(4)), PowerIndex::At { first: 2, period: None });
        assert_eq!(k(-2).power_index(&k(-4)), PowerIndex::Never);
        let i = CyclotomicScalar::zeta(4);
        assert_eq!(i.power_index(&k(-1)), PowerIndex::At { first: 2, period: Some(4) });
        assert_eq!(i.power_index(&k(2)), PowerIndex::Never);
        let w = &k(1) + &CyclotomicScalar::zeta(5);
        assert_eq!(w.power_index(&k(3)), PowerIndex::Unknown);
    }
}
