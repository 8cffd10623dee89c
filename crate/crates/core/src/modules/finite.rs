use serde::Serialize;

use crate::algebra::{Algebra, AlgebraParams, PBWElement};
use crate::error::{DownUpError, Result};
use crate::poly::{vanishing_ideal, BiPoly, PointSet2D};
use crate::scalar::CyclotomicScalar;

use super::matrix::Matrix;
use super::orbit::{orbit, phi_power, Weight};

/// Largest dimension of a finite module presentation.
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type")]
pub enum ModuleKind {
    HighestWeight { lambda: CyclotomicScalar, n: u32 },
    Cyclic { base: (CyclotomicScalar, CyclotomicScalar), rho: CyclotomicScalar },
    CyclicBar { base: (CyclotomicScalar, CyclotomicScalar), rho: CyclotomicScalar },
}

/// A finite-dimensional module given by the matrices of `u`, `d`, `h`
/// in the basis `v_0, …, v_{dim-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteModulePresentation {
    pub dim: usize,
    pub mat_u: Matrix,
    pub mat_d: Matrix,
    pub mat_h: Matrix,
    pub kind: ModuleKind,
    /// `(λ_i, β_i)` of each basis vector.
    #[serde(serialize_with = "ser_weights")]
    pub weights: Vec<Weight>,
    #[serde(skip)]
    pub params: AlgebraParams,
}

fn ser_weights<S: serde::Serializer>(w: &[Weight], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(w.len()))?;
    for x in w {
        seq.serialize_element(&(&x.lambda, &x.beta))?;
    }
    seq.end()
}

fn weight_pair(w: &Weight) -> (CyclotomicScalar, CyclotomicScalar) {
    (w.lambda.clone(), w.beta.clone())
}

fn distinct(ws: &[Weight]) -> bool {
    let set: std::collections::HashSet<&Weight> = ws.iter().collect();
    set.len() == ws.len()
}

fn check_dim(dim: usize) -> Result<()> {
    if dim > MAX_DIM {
        return Err(DownUpError::DimensionTooLarge(dim));
    }
    Ok(())
}

impl FiniteModulePresentation {
    fn finish(self) -> Result<Self> {
        let failed = self.relation_failures();
        if !failed.is_empty() {
            return Err(DownUpError::HypothesisFailed(format!("constructed matrices violate {}", failed.join(", "))));
        }
        Ok(self)
    }

    /// Names of the defining relations that fail as matrix identities.
    pub fn relation_failures(&self) -> Vec<&'static str> {
        let p = &self.params;
        let (u, d, h) = (&self.mat_u, &self.mat_d, &self.mat_h);
        let r1 = h.mul(u).sub(&u.mul(h).scale(&p.r)).sub(&u.scale(&p.gamma));
        let r2 = d.mul(h).sub(&h.mul(d).scale(&p.r)).sub(&d.scale(&p.gamma));
        let r3 = d.mul(u).sub(&u.mul(d).scale(&p.s)).sub(&h.eval_poly(&p.phi));
        [("hu-ruh-gu", r1), ("dh-rhd-gd", r2), ("du-sud-phi", r3)]
            .into_iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(n, _)| n)
            .collect()
    }

    /// The matrix by which `x` acts.
    pub fn evaluate(&self, x: &PBWElement) -> Matrix {
        let mut out = Matrix::zero(self.dim);
        let mut upow = vec![Matrix::identity(self.dim)];
        let mut dpow = vec![Matrix::identity(self.dim)];
        for ((i, k), f) in x.rows() {
            while upow.len() <= i as usize {
                let next = upow.last().unwrap().mul(&self.mat_u);
                upow.push(next);
            }
            while dpow.len() <= k as usize {
                let next = dpow.last().unwrap().mul(&self.mat_d);
                dpow.push(next);
            }
            let term = upow[i as usize].mul(&self.mat_h.eval_poly(&f)).mul(&dpow[k as usize]);
            out = out.add(&term);
        }
        out
    }

    pub fn verify_annihilates(&self, x: &PBWElement) -> bool {
        self.evaluate(x).is_zero()
    }

    /// Weight points `(λ_i, β_i)` as a point set in the `(h, ud)` plane.
    pub fn weight_points(&self) -> PointSet2D {
        PointSet2D::new(self.weights.iter().map(weight_pair))
    }

    /// Generators of the annihilator: `u^{n+1}, d^{n+1}` and the vanishing
    /// ideal of the weights for highest weight modules; `u^m - ρ^m`,
    /// `d^m - ηρ^{-m}` and the weight ideal for cyclic ones (u and d
    /// swapped for the bar variant), where `η = Π β_i`.
    pub fn annihilator_generators(&self, a: &Algebra) -> Vec<PBWElement> {
        let m = self.dim as u32;
        let one = CyclotomicScalar::one();
        let upow = PBWElement::monomial(one.clone(), m, 0, 0);
        let dpow = PBWElement::monomial(one.clone(), 0, 0, m);
        let mut gens = match &self.kind {
            ModuleKind::HighestWeight { .. } => vec![upow, dpow],
            ModuleKind::Cyclic { rho, .. } | ModuleKind::CyclicBar { rho, .. } => {
                let eta = self.eta();
                let rho_m = rho.powu(m);
                let other = eta.try_div(&rho_m).expect("rho is nonzero");
                let (cu, cd) = match self.kind {
                    ModuleKind::Cyclic { .. } => (rho_m, other),
                    _ => (other, rho_m),
                };
                vec![&upow - &PBWElement::scalar(cu), &dpow - &PBWElement::scalar(cd)]
            }
        };
        gens.extend(self.weight_ideal().iter().map(|g| a.expand_l0(g)));
        gens
    }

    /// Gröbner generators of the vanishing ideal of the weights in `(h, ud)`.
    pub fn weight_ideal(&self) -> Vec<BiPoly> {
        vanishing_ideal(&self.weight_points())
    }

    /// `η = Π β_i` over the basis.
    pub fn eta(&self) -> CyclotomicScalar {
        self.weights.iter().fold(CyclotomicScalar::one(), |acc, w| &acc * &w.beta)
    }

    pub fn report(&self) -> String {
        let mut s = format!("dimension {}\nkind {:?}\n", self.dim, self.kind);
        for (name, m) in [("u", &self.mat_u), ("d", &self.mat_d), ("h", &self.mat_h)] {
            s.push_str(&format!("{name} =\n{m}"));
        }
        let failed = self.relation_failures();
        s.push_str(&format!("relations verified: {}\n", failed.is_empty()));
        s
    }
}

/// The highest weight module of dimension `n + 1` on the orbit of `(λ, 0)`:
/// `h v_i = λ_i v_i`, `u v_i = v_{i+1}` (`u v_n = 0`), `d v_i = β_i v_{i-1}`.
pub fn build_fhw(p: &AlgebraParams, lambda: &CyclotomicScalar, n: u32) -> Result<FiniteModulePresentation> {
    let dim = n as usize + 1;
    check_dim(dim)?;
    let o = orbit(p, &Weight::new(lambda.clone(), CyclotomicScalar::zero()), (0, n as i64 + 1));
    if !o.get(n as i64 + 1).beta.is_zero() {
        return Err(DownUpError::HypothesisFailed(format!("beta_{} is not zero", n + 1)));
    }
    if let Some(i) = (1..=n as i64).find(|&i| o.get(i).beta.is_zero()) {
        return Err(DownUpError::HypothesisFailed(format!("beta_{i} is zero")));
    }
    let weights: Vec<Weight> = (0..=n as i64).map(|i| o.get(i).clone()).collect();
    if !distinct(&weights) {
        return Err(DownUpError::HypothesisFailed("weights are not distinct".into()));
    }
    let (mut mu, mut md, mut mh) = (Matrix::zero(dim), Matrix::zero(dim), Matrix::zero(dim));
    for (i, w) in weights.iter().enumerate() {
        mh.set(i, i, w.lambda.clone());
        if i + 1 < dim {
            mu.set(i + 1, i, CyclotomicScalar::one());
        }
        if i > 0 {
            md.set(i - 1, i, w.beta.clone());
        }
    }
    FiniteModulePresentation {
        dim,
        mat_u: mu,
        mat_d: md,
        mat_h: mh,
        kind: ModuleKind::HighestWeight { lambda: lambda.clone(), n },
        weights,
        params: p.clone(),
    }
    .finish()
}

fn periodic_weights(p: &AlgebraParams, base: &Weight, rho: &CyclotomicScalar) -> Result<Vec<Weight>> {
    if rho.is_zero() {
        return Err(DownUpError::HypothesisFailed("rho must be nonzero".into()));
    }
    let o = orbit(p, base, (0, 0));
    let m = o.period.ok_or_else(|| {
        DownUpError::HypothesisFailed(format!("the orbit of the base weight has no period up to {}", MAX_DIM))
    })?;
    check_dim(m as usize)?;
    let weights: Vec<Weight> = (0..m as i64).map(|i| phi_power(p, base, i)).collect();
    if weights.iter().any(|w| w.lambda.is_zero() && w.beta.is_zero()) {
        return Err(DownUpError::HypothesisFailed("some weight (lambda_i, beta_i) is (0, 0)".into()));
    }
    Ok(weights)
}

fn build_cyclic(
    p: &AlgebraParams,
    base: &Weight,
    rho: &CyclotomicScalar,
    bar: bool,
) -> Result<FiniteModulePresentation> {
    let weights = periodic_weights(p, base, rho)?;
    let dim = weights.len();
    let rho_inv = rho.inv()?;
    let (mut mu, mut md, mut mh) = (Matrix::zero(dim), Matrix::zero(dim), Matrix::zero(dim));
    for (i, w) in weights.iter().enumerate() {
        let next = (i + 1) % dim;
        let prev = (i + dim - 1) % dim;
        mh.set(i, i, w.lambda.clone());
        // u d acts on v_i by β_i in both variants
        if bar {
            md.set(prev, i, rho.clone());
            mu.set(next, i, &weights[next].beta * &rho_inv);
        } else {
            mu.set(next, i, rho.clone());
            md.set(prev, i, &w.beta * &rho_inv);
        }
    }
    let base_pair = weight_pair(base);
    let kind = if bar {
        ModuleKind::CyclicBar { base: base_pair, rho: rho.clone() }
    } else {
        ModuleKind::Cyclic { base: base_pair, rho: rho.clone() }
    };
    FiniteModulePresentation { dim, mat_u: mu, mat_d: md, mat_h: mh, kind, weights, params: p.clone() }.finish()
}

/// Cyclic module on a periodic orbit: `u v_i = ρ v_{i+1}`,
/// `d v_i = ρ^{-1} β_i v_{i-1}`, indices mod the period.
pub fn build_fc(p: &AlgebraParams, base: &Weight, rho: &CyclotomicScalar) -> Result<FiniteModulePresentation> {
    build_cyclic(p, base, rho, false)
}

/// Bar variant: `d v_i = ρ v_{i-1}`, `u v_i = ρ^{-1} β_{i+1} v_{i+1}`.
pub fn build_fc_bar(p: &AlgebraParams, base: &Weight, rho: &CyclotomicScalar) -> Result<FiniteModulePresentation> {
    build_cyclic(p, base, rho, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::UniPoly;
    use crate::scalar::{k, kq};

    fn params(phi: &[i64], r: i64, s: i64, g: i64) -> AlgebraParams {
        AlgebraParams::rational(UniPoly::from_ints(phi), k(r), k(s), k(g)).unwrap()
    }

    #[test]
    fn one_dimensional_highest_weight() {
        let p = params(&[0, 1], 1, 1, 1);
        let m = build_fhw(&p, &k(0), 0).unwrap();
        assert_eq!(m.dim, 1);
        assert!(m.mat_u.is_zero() && m.mat_d.is_zero());
        let a = Algebra::new(p);
        let gens = m.annihilator_generators(&a);
        let printed: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        assert_eq!(printed, ["u", "d", "h", "u*d"]);
        assert!(gens.iter().all(|g| m.verify_annihilates(g)));
        assert!(!m.verify_annihilates(&PBWElement::one()));
    }

    #[test]
    fn two_dimensional_highest_weight() {
        let p = params(&[0, 1], 1, 1, 1);
        let m = build_fhw(&p, &kq(-1, 2), 1).unwrap();
        assert_eq!(m.dim, 2);
        let a = Algebra::new(p);
        for g in m.annihilator_generators(&a) {
            assert!(m.verify_annihilates(&g), "{g}");
        }
        let h_minus = &PBWElement::h() - &PBWElement::scalar(kq(-1, 2));
        assert!(!m.verify_annihilates(&h_minus));
    }

    #[test]
    fn highest_weight_hypotheses() {
        let p = params(&[0, 1], 1, 1, 1);
        // λ = 0 gives β_1 = φ(0) = 0
        assert!(matches!(build_fhw(&p, &k(0), 1), Err(DownUpError::HypothesisFailed(_))));
    }

    #[test]
    fn cyclic_fixed_point() {
        // r = 2, s = 3, φ = x - 1: fixed point λ = 0, β = 1/2
        let p = params(&[-1, 1], 2, 3, 0);
        let base = Weight::new(k(0), kq(1, 2));
        let a = Algebra::new(p.clone());
        for m in [build_fc(&p, &base, &k(5)).unwrap(), build_fc_bar(&p, &base, &k(5)).unwrap()] {
            assert_eq!(m.dim, 1);
            for g in m.annihilator_generators(&a) {
                assert!(m.verify_annihilates(&g), "{g}");
            }
        }
        let fc = build_fc(&p, &base, &k(5)).unwrap();
        assert_eq!(fc.mat_u.get(0, 0), &k(5));
        assert_eq!(fc.mat_d.get(0, 0), &kq(1, 10));
    }

    #[test]
    fn cyclic_period_two() {
        let p = params(&[0, 0, 1], -1, -1, 0);
        let base = Weight::new(k(1), kq(1, 2));
        let m = build_fc(&p, &base, &k(3)).unwrap();
        assert_eq!(m.dim, 2);
        let a = Algebra::new(p.clone());
        for g in m.annihilator_generators(&a) {
            assert!(m.verify_annihilates(&g), "{g}");
        }
        assert!(matches!(build_fc(&p, &base, &k(0)), Err(DownUpError::HypothesisFailed(_))));
    }
}
