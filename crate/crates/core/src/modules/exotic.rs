//! The two non-weight modules: one for `r = 1, γ ≠ 0` with constant ψ,
//! one for `γ = 0` with `ψ = C h^j`. Each comes with a mirror image in
//! which the roles of `u` and `d` are exchanged.

use std::sync::Arc;

use crate::algebra::AlgebraParams;
use crate::error::{DownUpError, Result};
use crate::poly::UniPoly;
use crate::scalar::{CyclotomicScalar, OrderValue};

use super::window::{Rule, WindowModule};

fn hyp(msg: impl Into<String>) -> DownUpError {
    DownUpError::HypothesisFailed(msg.into())
}

fn check_r1(p: &AlgebraParams, c: &CyclotomicScalar, n: u32) -> Result<()> {
    if n == 0 {
        return Err(hyp("n must be positive"));
    }
    if !p.r.is_one() || p.gamma.is_zero() {
        return Err(hyp("requires r = 1 and gamma != 0"));
    }
    let one = CyclotomicScalar::one();
    if p.phi != UniPoly::constant(&(&p.s - &one) * c) {
        return Err(hyp("requires psi = C, i.e. phi = (s - 1)*C"));
    }
    // the d-h relation leaves C(s^{i-n} - s^i) v_{i-n-1}
    if !c.is_zero() && !p.s.powu(n).is_one() {
        return Err(hyp("requires s^n = 1 when C != 0"));
    }
    Ok(())
}

/// `u v_i = v_{i+1}`, `h v_i = v_{i-n} + iγ v_i`, `d v_i = (s^i - 1)C v_{i-1}`.
pub fn exotic_module_r1(p: &AlgebraParams, c: &CyclotomicScalar, n: u32, window: (i64, i64)) -> Result<WindowModule> {
    check_r1(p, c, n)?;
    let one = CyclotomicScalar::one;
    let (s, g, cc) = (p.s.clone(), p.gamma.clone(), c.clone());
    let ni = n as i64;
    let u: Rule = Arc::new(move |i| vec![(i + 1, one())]);
    let d: Rule = Arc::new(move |i| vec![(i - 1, &(&s.pow(i).unwrap() - &one()) * &cc)]);
    let h: Rule = Arc::new(move |i| vec![(i - ni, one()), (i, &g * &CyclotomicScalar::from_int(i))]);
    let label = format!("exotic r1 (C = {c}, n = {n})");
    Ok(WindowModule::new(label, p.clone(), window, ni + 1, [1, 1, ni], [u, d, h]))
}

/// Mirror of [`exotic_module_r1`]: `d v_i = v_{i-1}`,
/// `h v_i = v_{i+n} + iγ v_i`, `u v_i = C(s^i - 1) v_{i+1}`; `u^n` acts as 0.
pub fn exotic_module_r1_mirror(
    p: &AlgebraParams,
    c: &CyclotomicScalar,
    n: u32,
    window: (i64, i64),
) -> Result<WindowModule> {
    check_r1(p, c, n)?;
    let one = CyclotomicScalar::one;
    let (s, g, cc) = (p.s.clone(), p.gamma.clone(), c.clone());
    let ni = n as i64;
    let u: Rule = Arc::new(move |i| vec![(i + 1, &(&s.pow(i).unwrap() - &one()) * &cc)]);
    let d: Rule = Arc::new(move |i| vec![(i - 1, one())]);
    let h: Rule = Arc::new(move |i| vec![(i + ni, one()), (i, &g * &CyclotomicScalar::from_int(i))]);
    let label = format!("exotic r1 mirror (C = {c}, n = {n})");
    Ok(WindowModule::new(label, p.clone(), window, ni + 1, [1, 1, ni], [u, d, h]))
}

/// Data shared by the conformal exotic module and its mirror.
struct ConfData {
    n: i64,
    m: i64,
    theta: CyclotomicScalar,
}

fn check_conformal(p: &AlgebraParams, c: &CyclotomicScalar, j: u32, m: u32) -> Result<ConfData> {
    if j == 0 || m == 0 {
        return Err(hyp("j and m must be positive"));
    }
    if !p.gamma.is_zero() {
        return Err(hyp("requires gamma = 0"));
    }
    let rj = p.r.powu(j);
    let expected = UniPoly::monomial(&(&p.s - &rj) * c, j);
    if p.phi != expected {
        return Err(hyp(format!("requires psi = C*h^{j}, i.e. phi = (s - r^{j})*C*h^{j}")));
    }
    let theta = rj.try_div(&p.s)?;
    if !c.is_zero() {
        if p.s.powu(m) != p.r.powu(j * m) {
            return Err(hyp(format!("requires s^{m} = r^{}", j * m)));
        }
        if theta.order()? != OrderValue::Finite(m) {
            return Err(hyp(format!("requires r^{j}/s to have order {m}")));
        }
    }
    Ok(ConfData { n: (j * m) as i64, m: m as i64, theta })
}

/// `r^{m(j-1)/2}`, using `sqrt_r` or a square root found in the ambient
/// field when the exponent is odd.
fn half_power(p: &AlgebraParams, e: u32, sqrt_r: Option<&CyclotomicScalar>) -> Result<CyclotomicScalar> {
    if e.is_multiple_of(2) {
        return Ok(p.r.powu(e / 2));
    }
    let root = match sqrt_r {
        Some(q) => {
            if (q * q) != p.r {
                return Err(hyp("the supplied square root of r does not square to r"));
            }
            q.clone()
        }
        None => p.r.sqrt_in(p.conductor).ok_or(DownUpError::NeedsSquareRootOfR)?,
    };
    Ok(root.powu(e))
}

/// `u v_i = v_{i+1}`, `d v_i = C s^i (1 - θ^i) v_{i-n-1}`,
/// `h v_i = r^{i + (n-m)/2} v_{i-m}`, with `θ = r^j/s` and `n = jm`.
pub fn exotic_module_conformal(
    p: &AlgebraParams,
    c: &CyclotomicScalar,
    j: u32,
    m: u32,
    window: (i64, i64),
    sqrt_r: Option<&CyclotomicScalar>,
) -> Result<WindowModule> {
    let ConfData { n, m: mi, theta } = check_conformal(p, c, j, m)?;
    let t0 = half_power(p, m * (j - 1), sqrt_r)?;
    let one = CyclotomicScalar::one;
    let (s, r, cc) = (p.s.clone(), p.r.clone(), c.clone());
    let u: Rule = Arc::new(move |i| vec![(i + 1, one())]);
    let d: Rule = Arc::new(move |i| {
        let coef = &(&cc * &s.pow(i).unwrap()) * &(&one() - &theta.pow(i).unwrap());
        vec![(i - n - 1, coef)]
    });
    let h: Rule = Arc::new(move |i| vec![(i - mi, &t0 * &r.pow(i).unwrap())]);
    let label = format!("exotic conformal (C = {c}, j = {j}, m = {m})");
    Ok(WindowModule::new(label, p.clone(), window, n + mi + 1, [1, n + 1, mi], [u, d, h]))
}

/// Mirror of [`exotic_module_conformal`]: `d v_i = v_{i-1}`,
/// `h v_i = r^i v_{i+m}`, `u v_i = A r^j s^i (1 - θ^i) v_{i+n+1}` with
/// `A = C r^{mj(j-1)/2}`; `u^m` acts as 0. No square root is needed.
pub fn exotic_module_conformal_mirror(
    p: &AlgebraParams,
    c: &CyclotomicScalar,
    j: u32,
    m: u32,
    window: (i64, i64),
) -> Result<WindowModule> {
    let ConfData { n, m: mi, theta } = check_conformal(p, c, j, m)?;
    let a = c * &p.r.powu(m * j * (j - 1) / 2);
    let one = CyclotomicScalar::one;
    let (s, r) = (p.s.clone(), p.r.clone());
    let ar = &a * &p.r.powu(j);
    let u: Rule = Arc::new(move |i| {
        let coef = &(&ar * &s.pow(i).unwrap()) * &(&one() - &theta.pow(i).unwrap());
        vec![(i + n + 1, coef)]
    });
    let d: Rule = Arc::new(move |i| vec![(i - 1, one())]);
    let h: Rule = Arc::new(move |i| vec![(i + mi, r.pow(i).unwrap())]);
    let label = format!("exotic conformal mirror (C = {c}, j = {j}, m = {m})");
    Ok(WindowModule::new(label, p.clone(), window, n + mi + 1, [n + 1, 1, mi], [u, d, h]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PBWElement;
    use crate::modules::window::{basis_vector, Gen};
    use crate::scalar::{k, kq};

    fn r1_params(s: CyclotomicScalar, c: &CyclotomicScalar) -> AlgebraParams {
        let phi = UniPoly::constant(&(&s - &k(1)) * c);
        AlgebraParams::new(phi, k(1), s.clone(), k(1), s.conductor()).unwrap()
    }

    #[test]
    fn r1_degenerate_c_zero() {
        let p = r1_params(k(3), &k(0));
        let m = exotic_module_r1(&p, &k(0), 1, (-20, 20)).unwrap();
        assert!(m.relations_hold());
        assert!(m.act(Gen::D, &basis_vector(4)).is_empty());
    }

    #[test]
    fn r1_root_of_unity_d_power_vanishes() {
        let s = CyclotomicScalar::zeta(3);
        let p = r1_params(s.clone(), &k(1));
        let m = exotic_module_r1(&p, &k(1), 3, (-25, 25)).unwrap();
        assert!(m.relations_hold(), "{:?}", m.relation_failures());
        assert!(m.kills_interior(&PBWElement::monomial(k(1), 0, 0, 3)));
        let mirror = exotic_module_r1_mirror(&p, &k(1), 3, (-25, 25)).unwrap();
        assert!(mirror.relations_hold());
        assert!(mirror.kills_interior(&PBWElement::monomial(k(1), 3, 0, 0)));
    }

    #[test]
    fn r1_rejects_nontrivial_c_without_root_of_unity() {
        let p = r1_params(k(2), &kq(1, 2));
        assert!(matches!(exotic_module_r1(&p, &kq(1, 2), 2, (-5, 5)), Err(DownUpError::HypothesisFailed(_))));
    }

    #[test]
    fn conformal_c_zero_reduces() {
        let p = AlgebraParams::rational(UniPoly::zero(), k(3), k(5), k(0)).unwrap();
        let m = exotic_module_conformal(&p, &k(0), 1, 1, (-20, 20), None).unwrap();
        assert!(m.relations_hold());
        assert!(m.act(Gen::D, &basis_vector(2)).is_empty());
        assert_eq!(m.act(Gen::H, &basis_vector(2)), [(1, k(9))].into_iter().collect());
    }

    #[test]
    fn conformal_needs_square_root() {
        // j = 2, m = 1: exponent m(j-1) = 1 is odd; s = r^2/θ with θ = 1
        let r = k(2);
        let s = r.powu(2);
        let c = k(1);
        let phi = UniPoly::monomial(&(&s - &r.powu(2)) * &c, 2);
        let p = AlgebraParams::rational(phi, r, s, k(0)).unwrap();
        let err = exotic_module_conformal(&p, &c, 2, 1, (-10, 10), None).unwrap_err();
        assert_eq!(err, DownUpError::NeedsSquareRootOfR);
    }

    #[test]
    fn conformal_with_root_of_unity_ratio() {
        // r = 3, θ = -1, s = -3, j = 1, m = 2, C = 2
        let (r, s, c) = (k(3), k(-3), k(2));
        let phi = UniPoly::monomial(&(&s - &r) * &c, 1);
        let p = AlgebraParams::rational(phi, r, s, k(0)).unwrap();
        let m = exotic_module_conformal(&p, &c, 1, 2, (-25, 25), None).unwrap();
        assert!(m.relations_hold(), "{:?}", m.relation_failures());
        let mirror = exotic_module_conformal_mirror(&p, &c, 1, 2, (-25, 25)).unwrap();
        assert!(mirror.relations_hold(), "{:?}", mirror.relation_failures());
        assert!(mirror.kills_interior(&PBWElement::monomial(k(1), 2, 0, 0)));
    }
}
