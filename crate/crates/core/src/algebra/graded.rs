use crate::error::{DownUpError, Result};
use crate::poly::BiPoly;
use crate::scalar::CyclotomicScalar;

use super::{Algebra, PBWElement};

/// A homogeneous element written as `u^g f(h, W)` (g ≥ 0) or
/// `f(h, W) d^{-g}` (g < 0), with `W = ud`. In the payload `x` stands for
/// `h` and `y` for `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedForm {
    pub degree: i64,
    pub payload: BiPoly,
}

impl Algebra {
    /// `f(h, ud)` as an algebra element.
    pub fn expand_l0(&self, f: &BiPoly) -> PBWElement {
        let w = self.w();
        let mut wp = vec![PBWElement::one()];
        let mut out = PBWElement::zero();
        for ((a, b), c) in f.terms() {
            while wp.len() <= b as usize {
                let next = self.mul(wp.last().unwrap(), &w);
                wp.push(next);
            }
            let ha = PBWElement::monomial(c.clone(), 0, a, 0);
            out = &out + &self.mul(&ha, &wp[b as usize]);
        }
        out
    }

    /// Coordinates of a degree-zero element in `h` and `W = ud`.
    ///
    /// `h^j W^k` has leading standard term `s^{k(k-1)/2} r^{kj} u^k h^j d^k`
    /// in the order that compares `k` first and then `j`, so terms are
    /// eliminated from the top.
    pub fn l0_coordinates(&self, x: &PBWElement) -> Result<BiPoly> {
        if x.degrees().iter().any(|&g| g != 0) {
            return Err(DownUpError::NotHomogeneous);
        }
        let mut rest = x.clone();
        let mut out = BiPoly::zero();
        while let Some(((k, j, _), c)) =
            rest.terms().max_by_key(|((i, j, _), _)| (*i, *j)).map(|(key, c)| (key, c.clone()))
        {
            let img = self.expand_l0(&BiPoly::monomial(CyclotomicScalar::one(), j, k));
            let lead = img.coeff(k, j, k);
            let dominated = img.terms().all(|((i2, j2, _), _)| (i2, j2) <= (k, j));
            assert!(!lead.is_zero() && dominated, "change of basis to (h, ud) coordinates is not triangular");
            let f = c.try_div(&lead)?;
            out.add_term(j, k, f.clone());
            rest = &rest - &img.scale(&f);
        }
        Ok(out)
    }

    pub fn to_graded_form(&self, x: &PBWElement) -> Result<GradedForm> {
        if x.is_zero() {
            return Ok(GradedForm { degree: 0, payload: BiPoly::zero() });
        }
        let g = x.homogeneous_degree().ok_or(DownUpError::NotHomogeneous)?;
        // strip u^g on the left or d^{-g} on the right, leaving degree zero
        let mut core = PBWElement::zero();
        for ((i, j, k), c) in x.terms() {
            if g >= 0 {
                core.add_term(k, j, k, c.clone());
            } else {
                core.add_term(i, j, i, c.clone());
            }
        }
        Ok(GradedForm { degree: g, payload: self.l0_coordinates(&core)? })
    }

    pub fn from_graded_form(&self, gf: &GradedForm) -> PBWElement {
        let f = self.expand_l0(&gf.payload);
        let e = gf.degree.unsigned_abs() as u32;
        if gf.degree >= 0 {
            self.mul(&PBWElement::monomial(CyclotomicScalar::one(), e, 0, 0), &f)
        } else {
            self.mul(&f, &PBWElement::monomial(CyclotomicScalar::one(), 0, 0, e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraParams;
    use crate::poly::UniPoly;
    use crate::scalar::{k, kq};

    #[test]
    fn examples() {
        let a = Algebra::new(AlgebraParams::rational(UniPoly::from_ints(&[0, 1]), k(2), k(3), k(1)).unwrap());
        let ud = a.to_graded_form(&a.w()).unwrap();
        assert_eq!(ud.degree, 0);
        assert_eq!(ud.payload, BiPoly::y());

        let uhd = a.to_graded_form(&PBWElement::monomial(k(1), 1, 1, 1)).unwrap();
        let mut expect = BiPoly::monomial(kq(1, 2), 1, 1);
        expect.add_term(0, 1, kq(-1, 2));
        assert_eq!(uhd.payload, expect);

        let u2 = a.to_graded_form(&PBWElement::monomial(k(1), 2, 0, 0)).unwrap();
        assert_eq!((u2.degree, u2.payload), (2, BiPoly::one()));
    }

    #[test]
    fn round_trip_negative_degree() {
        let a = Algebra::new(AlgebraParams::rational(UniPoly::from_ints(&[1, 0, 2]), k(-2), kq(1, 2), k(3)).unwrap());
        let x = &PBWElement::monomial(k(5), 1, 2, 3) + &PBWElement::monomial(kq(-1, 3), 0, 1, 2);
        let gf = a.to_graded_form(&x).unwrap();
        assert_eq!(gf.degree, -2);
        assert_eq!(a.from_graded_form(&gf), x);
    }

    #[test]
    fn inhomogeneous_is_rejected() {
        let a = Algebra::new(AlgebraParams::rational(UniPoly::zero(), k(1), k(1), k(0)).unwrap());
        let x = &PBWElement::u() + &PBWElement::d();
        assert_eq!(a.to_graded_form(&x).unwrap_err(), DownUpError::NotHomogeneous);
    }
}
