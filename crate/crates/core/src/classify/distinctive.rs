use crate::error::{DownUpError, Result};
use crate::poly::BiPoly;
use crate::scalar::CyclotomicScalar;

use super::relgroup::RelationGroup;

/// Whether the values `r^i s^j` over `exponents` are pairwise distinct,
/// i.e. the pairs `(i, -j)` lie in different cosets of `S`.
pub fn is_distinctive(exponents: &[(u32, u32)], s: &RelationGroup) -> bool {
    colliding_pair(exponents, s).is_none()
}

fn colliding_pair(exponents: &[(u32, u32)], s: &RelationGroup) -> Option<((u32, u32), (u32, u32))> {
    for (a, &p) in exponents.iter().enumerate() {
        for &q in &exponents[a + 1..] {
            let di = p.0 as i64 - q.0 as i64;
            let dj = q.1 as i64 - p.1 as i64;
            if s.contains(di, dj) {
                return Some((p, q));
            }
        }
    }
    None
}

/// Rewrites `g(h, H)` (x = h, y = H) modulo the minimal ideal `I_c` until
/// its exponents form a distinctive set.
///
/// `I_c` is `⟨H^m - c h^n⟩` for `S = ⟨(n, m)⟩` (`⟨h^n - c⟩` when m = 0)
/// and `⟨h^n H^m - c⟩` for `S = ⟨(n, -m)⟩`. Each step merges two
/// colliding terms, so the number of terms strictly drops.
pub fn distinctive_reduce(g: &BiPoly, s: &RelationGroup, c: &CyclotomicScalar) -> Result<BiPoly> {
    if matches!(s, RelationGroup::Lattice { .. }) {
        return Err(DownUpError::HypothesisFailed("I_c needs a cyclic S".into()));
    }
    if c.is_zero() {
        return Err(DownUpError::HypothesisFailed("c must be nonzero".into()));
    }
    let (n, m) = s.generator().unwrap();
    let mut out = g.clone();
    loop {
        let exps: Vec<(u32, u32)> = out.exponents();
        let Some((p, q)) = colliding_pair(&exps, s) else {
            return Ok(out);
        };
        // orient so that (i - i', j' - j) = k·(n, ±m) with k > 0
        let (di, dj) = (p.0 as i64 - q.0 as i64, q.1 as i64 - p.1 as i64);
        let (hi, lo, k) = if n != 0 {
            if di > 0 {
                (p, q, di / n)
            } else {
                (q, p, -di / n)
            }
        } else if dj * m > 0 {
            (p, q, dj / m)
        } else {
            (q, p, -dj / m)
        };
        let ck = c.pow(k).expect("c is nonzero");
        // hi = (i, j), lo = (i', j'); decide which term is rewritten into which
        let (from, to) = if m > 0 && n >= 0 {
            // h^{i'} H^{j'} ≡ c^k h^i H^j
            (lo, hi)
        } else {
            // h^n ≡ c, or h^n H^m ≡ c: h^i H^j ≡ c^k h^{i'} H^{j'}
            (hi, lo)
        };
        let a = out.coeff(from.0, from.1);
        out.add_term(from.0, from.1, -&a);
        out.add_term(to.0, to.1, &a * &ck);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::k;

    fn poly(terms: &[((u32, u32), i64)]) -> BiPoly {
        let mut p = BiPoly::zero();
        for &((i, j), c) in terms {
            p.add_term(i, j, k(c));
        }
        p
    }

    #[test]
    fn distinctive_sets() {
        assert!(is_distinctive(&[(0, 0), (1, 1), (3, 2)], &RelationGroup::Trivial));
        let rs1 = RelationGroup::OppositeSign { n: 1, m: 1 };
        assert!(!is_distinctive(&[(0, 0), (1, 1)], &rs1));
        assert!(is_distinctive(&[(4, 7)], &rs1));
    }

    #[test]
    fn opposite_sign_step() {
        let s = RelationGroup::OppositeSign { n: 1, m: 1 };
        let g = poly(&[((1, 1), 1), ((0, 0), 1)]);
        assert_eq!(distinctive_reduce(&g, &s, &k(5)).unwrap(), poly(&[((0, 0), 6)]));
    }

    #[test]
    fn same_sign_steps() {
        let s = RelationGroup::SameSign { n: 1, m: 1 };
        let g = poly(&[((1, 1), 1), ((0, 1), 1)]);
        assert_eq!(distinctive_reduce(&g, &s, &k(2)).unwrap(), g);
        // (0,2) and (2,0) collide; H^2 ≡ c^2 h^2
        let g = poly(&[((0, 2), 1), ((2, 0), 3)]);
        let out = distinctive_reduce(&g, &s, &k(2)).unwrap();
        assert_eq!(out, poly(&[((2, 0), 7)]));
    }

    #[test]
    fn degenerate_generator_uses_h_power() {
        let s = RelationGroup::SameSign { n: 2, m: 0 };
        let g = poly(&[((3, 1), 1), ((1, 1), 1)]);
        assert_eq!(distinctive_reduce(&g, &s, &k(3)).unwrap(), poly(&[((1, 1), 4)]));
    }
}
