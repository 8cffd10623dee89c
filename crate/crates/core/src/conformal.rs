//! Conformality: removing γ, solving `s·ψ(x) - ψ(r·x + γ) = φ(x)`, the
//! element `H = ud + ψ(h)`, and the split of a nonconformal φ.

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraParams, PBWElement};
use crate::error::{DownUpError, Result};
use crate::linalg;
use crate::poly::UniPoly;
use crate::scalar::{CyclotomicScalar, OrderValue};

/// Replaces γ by 0 via the shift `h ↦ h + γ/(r-1)`: the new φ is
/// `φ(x - γ/(r-1))`.
pub fn gamma_shift(p: &AlgebraParams) -> Result<AlgebraParams> {
    let one = CyclotomicScalar::one();
    if p.r == one {
        return Err(DownUpError::RequiresRNotOne);
    }
    let c = p.gamma.try_div(&(&p.r - &one))?;
    Ok(AlgebraParams {
        phi: p.phi.twisted_substitute(&one, &-&c),
        r: p.r.clone(),
        s: p.s.clone(),
        gamma: CyclotomicScalar::zero(),
        conductor: p.conductor,
    })
}

/// Checks, inside the original algebra, that `h' = h + γ/(r-1)`, `u`, `d`
/// satisfy the relations of the shifted algebra.
pub fn verify_gamma_shift(p: &AlgebraParams) -> Result<bool> {
    let shifted = gamma_shift(p)?;
    let a = Algebra::new(p.clone());
    let c = p.gamma.try_div(&(&p.r - &CyclotomicScalar::one()))?;
    let hp = &PBWElement::h() + &PBWElement::scalar(c);
    let (u, d) = (PBWElement::u(), PBWElement::d());
    let rel1 = &a.mul(&hp, &u) - &a.mul(&u, &hp).scale(&p.r);
    let rel2 = &a.mul(&d, &hp) - &a.mul(&hp, &d).scale(&p.r);
    let rel3 = &(&a.mul(&d, &u) - &a.mul(&u, &d).scale(&p.s)) - &eval_poly_at(&a, &shifted.phi, &hp);
    Ok(rel1.is_zero() && rel2.is_zero() && rel3.is_zero())
}

/// `f(x)` for an algebra element `x`, by Horner's rule.
pub fn eval_poly_at(a: &Algebra, f: &UniPoly, x: &PBWElement) -> PBWElement {
    let Some(deg) = f.degree() else {
        return PBWElement::zero();
    };
    let mut acc = PBWElement::zero();
    for e in (0..=deg).rev() {
        acc = a.mul(&acc, x);
        acc = &acc + &PBWElement::scalar(f.coeff(e));
    }
    acc
}

/// A solution ψ and the element `H = ud + ψ(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConformalData {
    pub psi: UniPoly,
    pub h_elem: PBWElement,
    /// Exponents `i` in the solver window whose monomial `x^i` lies in the
    /// kernel of `ψ ↦ sψ(x) - ψ(rx + γ)`; these coefficients of ψ are 0.
    pub kernel_exponents: Vec<u32>,
}

/// `H = ud + ψ(h)`.
pub fn h_element(psi: &UniPoly) -> PBWElement {
    &PBWElement::monomial(CyclotomicScalar::one(), 1, 0, 1) + &PBWElement::from_h_poly(psi)
}

fn image_of_monomial(p: &AlgebraParams, i: u32) -> UniPoly {
    let xi = UniPoly::monomial(CyclotomicScalar::one(), i);
    &xi.scale(&p.s) - &xi.twisted_substitute(&p.r, &p.gamma)
}

/// Solves `s·ψ(x) - ψ(r·x + γ) = φ(x)` for ψ, canonically.
///
/// Supported when γ = 0, or r = 1 (where ψ may need degree deg φ + 1).
pub fn solve_conformal(p: &AlgebraParams) -> Result<ConformalData> {
    solve_for(p, &p.phi)
}

fn solve_for(p: &AlgebraParams, phi: &UniPoly) -> Result<ConformalData> {
    let one = CyclotomicScalar::one();
    let gamma0 = p.gamma.is_zero();
    if !gamma0 && p.r != one {
        return Err(DownUpError::UnsupportedRegime);
    }
    let deg_phi = phi.degree().unwrap_or(0);
    let window = if gamma0 { deg_phi } else { deg_phi + 1 };
    let cols = window as usize + 1;
    let zero = CyclotomicScalar::zero();
    let mut mat = vec![vec![zero.clone(); cols]; cols];
    for i in 0..=window {
        for (e, c) in image_of_monomial(p, i).terms() {
            mat[e as usize][i as usize] = c.clone();
        }
    }
    let rhs: Vec<CyclotomicScalar> = (0..=window).map(|e| phi.coeff(e)).collect();
    let kernel_exponents: Vec<u32> =
        (0..=window).filter(|&i| if gamma0 { p.s == p.r.powu(i) } else { i == 0 && p.s == one }).collect();
    let Some(sol) = linalg::solve(&mat, &rhs, &zero) else {
        let j = kernel_exponents
            .iter()
            .copied()
            .find(|&j| !phi.coeff(j).is_zero())
            .expect("an inconsistent diagonal system has a kernel exponent with a_j != 0");
        return Err(DownUpError::NotConformal { j });
    };
    let psi = UniPoly::from_coeffs(sol);
    debug_assert!(kernel_exponents.iter().all(|&i| psi.coeff(i).is_zero()));
    Ok(ConformalData { h_elem: h_element(&psi), psi, kernel_exponents })
}

/// The decomposition `φ = φ₀ + s·h^j·φ̃(h^n)` of a nonconformal φ (γ = 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonconformalSplit {
    pub j: u32,
    /// `o(r)`.
    pub n: OrderValue,
    pub phi0: UniPoly,
    /// `φ̃`; constant `C` when `o(r) = ∞`.
    pub phi_tilde: UniPoly,
    pub psi0: UniPoly,
}

impl NonconformalSplit {
    /// `C = φ̃` when it is constant.
    pub fn constant(&self) -> Option<CyclotomicScalar> {
        self.phi_tilde.as_constant()
    }

    /// `φ̃(h^n)·h^j` as a polynomial in h.
    pub fn twist_term(&self) -> UniPoly {
        let inflated = match self.n {
            OrderValue::Finite(n) => self.phi_tilde.inflate(n),
            OrderValue::Infinite => self.phi_tilde.clone(),
        };
        inflated.shift(self.j)
    }

    /// `φ₁ = s·h^j·φ̃(h^n)`.
    pub fn phi1(&self, s: &CyclotomicScalar) -> UniPoly {
        self.twist_term().scale(s)
    }

    pub fn h_elem(&self) -> PBWElement {
        h_element(&self.psi0)
    }
}

pub fn nonconformal_split(p: &AlgebraParams) -> Result<NonconformalSplit> {
    if !p.gamma.is_zero() {
        return Err(DownUpError::UnsupportedRegime);
    }
    match solve_conformal(p) {
        Ok(_) => return Err(DownUpError::IsConformal),
        Err(DownUpError::NotConformal { .. }) => {}
        Err(e) => return Err(e),
    }
    let n = p.r.order()?;
    let deg = p.phi.degree().unwrap_or(0);
    let s_inv = p.s.inv()?;
    let (j, phi0, phi_tilde) = match n {
        OrderValue::Finite(n) => {
            let j = (0..n)
                .find(|&j| p.s == p.r.powu(j))
                .ok_or_else(|| DownUpError::HypothesisFailed("s is not a power of r".into()))?;
            let mut phi0 = UniPoly::zero();
            let mut tilde = UniPoly::zero();
            for (i, a) in p.phi.terms() {
                if i % n == j {
                    tilde.add_term((i - j) / n, a * &s_inv);
                } else {
                    phi0.add_term(i, a.clone());
                }
            }
            (j, phi0, tilde)
        }
        OrderValue::Infinite => {
            let j = (0..=deg)
                .find(|&j| p.s == p.r.powu(j))
                .ok_or_else(|| DownUpError::HypothesisFailed("s is not a power of r".into()))?;
            let mut phi0 = p.phi.clone();
            let a_j = p.phi.coeff(j);
            phi0.add_term(j, -&a_j);
            (j, phi0, UniPoly::constant(&a_j * &s_inv))
        }
    };
    let psi0 = solve_for(p, &phi0)?.psi;
    Ok(NonconformalSplit { j, n, phi0, phi_tilde, psi0 })
}

/// Normalized residuals of the H-relations; all four are zero when the
/// relations hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HResiduals {
    #[serde(serialize_with = "ser_display")]
    pub u_side: PBWElement,
    #[serde(serialize_with = "ser_display")]
    pub d_side: PBWElement,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl HResiduals {
    pub fn all_zero(&self) -> bool {
        self.u_side.is_zero() && self.d_side.is_zero()
    }
}

/// Conformal case: `Hu - s·uH` and `dH - s·Hd`.
/// Split case: `Hu - s·u(H + φ̃(h^n)h^j)` and `dH - s·(H + φ̃(h^n)h^j)d`.
pub fn check_h_relations(a: &Algebra, h_elem: &PBWElement, split: Option<&NonconformalSplit>) -> HResiduals {
    let s = &a.params().s;
    let (u, d) = (PBWElement::u(), PBWElement::d());
    let shifted = match split {
        Some(sp) => h_elem + &PBWElement::from_h_poly(&sp.twist_term()),
        None => h_elem.clone(),
    };
    let u_side = &a.mul(h_elem, &u) - &a.mul(&u, &shifted).scale(s);
    let d_side = &a.mul(&d, h_elem) - &a.mul(&shifted, &d).scale(s);
    HResiduals { u_side, d_side }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{k, kq};

    fn params(phi: &[i64], r: i64, s: i64, g: i64) -> AlgebraParams {
        AlgebraParams::rational(UniPoly::from_ints(phi), k(r), k(s), k(g)).unwrap()
    }

    #[test]
    fn gamma_shift_examples() {
        let p = gamma_shift(&params(&[0, 1], 2, 3, 1)).unwrap();
        assert_eq!(p.phi, UniPoly::from_ints(&[-1, 1]));
        assert!(p.gamma.is_zero());
        let q = params(&[4, 0, 1], 2, 3, 0);
        assert_eq!(gamma_shift(&q).unwrap(), q);
        assert_eq!(gamma_shift(&params(&[0, 1], 1, 1, 1)).unwrap_err(), DownUpError::RequiresRNotOne);
        assert!(verify_gamma_shift(&params(&[1, 2, 3], -2, 5, 7)).unwrap());
    }

    #[test]
    fn solver_examples() {
        let data = solve_conformal(&params(&[0, 1], 2, 3, 0)).unwrap();
        assert_eq!(data.psi, UniPoly::x());
        let err = solve_conformal(&params(&[0, 1], 2, 2, 0)).unwrap_err();
        assert_eq!(err, DownUpError::NotConformal { j: 1 });
        assert_eq!(err.to_string(), "not conformal: s=r^1 and a_1≠0");
        let sl2 = solve_conformal(&params(&[0, 1], 1, 1, 1)).unwrap();
        // -x(x-1)/2
        assert_eq!(sl2.psi, UniPoly::from_coeffs(vec![k(0), kq(1, 2), kq(-1, 2)]));
        assert_eq!(solve_conformal(&params(&[0, 1], 2, 1, 1)).unwrap_err(), DownUpError::UnsupportedRegime);
    }

    #[test]
    fn split_examples() {
        let sp = nonconformal_split(&params(&[0, 1], 1, 1, 0)).unwrap();
        assert_eq!((sp.j, sp.n), (0, OrderValue::Finite(1)));
        assert!(sp.phi0.is_zero());
        assert_eq!(sp.phi_tilde, UniPoly::x());

        let sp = nonconformal_split(&params(&[0, 1], 2, 2, 0)).unwrap();
        assert_eq!(sp.j, 1);
        assert!(sp.phi0.is_zero());
        assert_eq!(sp.constant(), Some(kq(1, 2)));

        let sp = nonconformal_split(&params(&[0, 1, 1], 2, 2, 0)).unwrap();
        assert_eq!(sp.phi0, UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(sp.constant(), Some(kq(1, 2)));

        assert_eq!(nonconformal_split(&params(&[0, 1], 2, 3, 0)).unwrap_err(), DownUpError::IsConformal);
    }

    #[test]
    fn h_relations() {
        let p = params(&[0, 1], 1, 1, 1);
        let a = Algebra::new(p.clone());
        let data = solve_conformal(&p).unwrap();
        assert!(check_h_relations(&a, &data.h_elem, None).all_zero());

        let p = params(&[0, 1], 1, 1, 0);
        let a = Algebra::new(p.clone());
        let sp = nonconformal_split(&p).unwrap();
        assert_eq!(sp.h_elem(), a.w());
        assert!(check_h_relations(&a, &sp.h_elem(), Some(&sp)).all_zero());

        let p = params(&[3, 1, 2, 0, 5], -1, -1, 0);
        let a = Algebra::new(p.clone());
        let sp = nonconformal_split(&p).unwrap();
        assert!(check_h_relations(&a, &sp.h_elem(), Some(&sp)).all_zero());
    }
}
