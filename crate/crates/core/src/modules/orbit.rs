use serde::Serialize;

use crate::algebra::AlgebraParams;
use crate::conformal::{gamma_shift, solve_conformal};
use crate::error::Result;
use crate::scalar::{CyclotomicScalar, OrderValue, PowerIndex};

/// Default number of steps searched when looking for a period.
pub const PERIOD_SEARCH: u32 = 64;

/// A weight `(λ, β)`: eigenvalues of `h` and `ud`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    pub lambda: CyclotomicScalar,
    pub beta: CyclotomicScalar,
}

impl Weight {
    pub fn new(lambda: CyclotomicScalar, beta: CyclotomicScalar) -> Self {
        Weight { lambda, beta }
    }
}

/// `Φ(λ, β) = (rλ + γ, sβ + φ(λ))`.
pub fn phi_step(p: &AlgebraParams, w: &Weight) -> Weight {
    Weight { lambda: &(&p.r * &w.lambda) + &p.gamma, beta: &(&p.s * &w.beta) + &p.phi.eval(&w.lambda) }
}

/// `Φ^{-1}`, exact since `r·s ≠ 0`.
pub fn phi_step_back(p: &AlgebraParams, w: &Weight) -> Weight {
    let lambda = (&w.lambda - &p.gamma).try_div(&p.r).expect("r is nonzero");
    let beta = (&w.beta - &p.phi.eval(&lambda)).try_div(&p.s).expect("s is nonzero");
    Weight { lambda, beta }
}

/// `Φ^i(base)` for any integer `i`.
pub fn phi_power(p: &AlgebraParams, base: &Weight, i: i64) -> Weight {
    let mut w = base.clone();
    for _ in 0..i.unsigned_abs() {
        w = if i > 0 { phi_step(p, &w) } else { phi_step_back(p, &w) };
    }
    w
}

/// The weights `Φ^i(base)` for `i` in a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightOrbit {
    pub base: Weight,
    pub window: (i64, i64),
    pub weights: Vec<Weight>,
    /// Smallest `m > 0` with `Φ^m(base) = base`, if found.
    pub period: Option<u32>,
}

impl WeightOrbit {
    /// Weight with index `i`, which must lie in the window.
    pub fn get(&self, i: i64) -> &Weight {
        assert!(i >= self.window.0 && i <= self.window.1, "index {i} outside the orbit window");
        &self.weights[(i - self.window.0) as usize]
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        self.window.0..=self.window.1
    }
}

/// Builds the orbit over `window` and searches for a period up to
/// `max(PERIOD_SEARCH, window length)` steps.
pub fn orbit(p: &AlgebraParams, base: &Weight, window: (i64, i64)) -> WeightOrbit {
    let (a, b) = window;
    assert!(a <= b, "empty window");
    let mut weights = Vec::with_capacity((b - a + 1) as usize);
    let mut w = phi_power(p, base, a);
    for _ in a..=b {
        weights.push(w.clone());
        w = phi_step(p, &w);
    }
    let bound = PERIOD_SEARCH.max((b - a + 1) as u32);
    let mut cur = phi_step(p, base);
    let mut period = None;
    for m in 1..=bound {
        if &cur == base {
            period = Some(m);
            break;
        }
        cur = phi_step(p, &cur);
    }
    WeightOrbit { base: base.clone(), window, weights, period }
}

/// Verdict of the simplicity criterion for the universal weight module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum SimplicityCertificate {
    /// Weights pairwise distinct and all β_i nonzero, for every i ∈ ℤ.
    SimpleByCriterion {
        argument: String,
    },
    /// The orbit has period m, so the weights repeat.
    PeriodicCase {
        m: u32,
    },
    Inconclusive {
        reason: String,
    },
}

/// Tries to prove the simplicity criterion for `W(λ, β)` over all of ℤ.
/// Never answers `SimpleByCriterion` without a proof.
pub fn simplicity_certificate(p: &AlgebraParams, orbit: &WeightOrbit) -> SimplicityCertificate {
    if let Some(m) = orbit.period {
        return SimplicityCertificate::PeriodicCase { m };
    }
    // cheap refutations inside the window first
    for i in orbit.indices() {
        if orbit.get(i).beta.is_zero() {
            return SimplicityCertificate::Inconclusive { reason: format!("beta_{i} = 0") };
        }
    }
    match prove(p, &orbit.base) {
        Ok(Some(argument)) => SimplicityCertificate::SimpleByCriterion { argument },
        Ok(None) | Err(_) => SimplicityCertificate::Inconclusive {
            reason: "no closed form settles the criterion for these parameters".into(),
        },
    }
}

fn never(idx: PowerIndex) -> bool {
    idx == PowerIndex::Never
}

/// `s^i·c ≠ k` for every integer i.
fn scaled_powers_avoid(s: &CyclotomicScalar, c: &CyclotomicScalar, k: &CyclotomicScalar) -> bool {
    if c.is_zero() {
        return !k.is_zero();
    }
    if k.is_zero() {
        return true;
    }
    never(s.power_index(&k.try_div(c).unwrap()))
}

fn prove(p: &AlgebraParams, base: &Weight) -> Result<Option<String>> {
    let one = CyclotomicScalar::one();
    if p.r == one && !p.gamma.is_zero() {
        // λ_i = λ + iγ are distinct; β_i = s^i·c - ψ(λ + iγ)
        let data = match solve_conformal(p) {
            Ok(d) => d,
            Err(_) => return Ok(None),
        };
        let Some(cc) = data.psi.as_constant() else {
            return Ok(None);
        };
        let c = &base.beta + &cc;
        return Ok(scaled_powers_avoid(&p.s, &c, &cc)
            .then(|| format!("lambda_i = lambda + i*gamma; beta_i = s^i*({c}) - ({cc}) never vanishes")));
    }
    let (q, lambda) = if p.gamma.is_zero() {
        (p.clone(), base.lambda.clone())
    } else {
        let shift = p.gamma.try_div(&(&p.r - &one))?;
        (gamma_shift(p)?, &base.lambda + &shift)
    };
    // γ = 0: λ_i = r^i λ and, when conformal, β_i = s^i μ - ψ(r^i λ)
    let data = match solve_conformal(&q) {
        Ok(d) => d,
        Err(_) => return Ok(None),
    };
    let mu = &base.beta + &data.psi.eval(&lambda);
    let r_inf = q.r.order()? == OrderValue::Infinite;
    let s_inf = q.s.order()? == OrderValue::Infinite;
    let distinct = (!lambda.is_zero() && r_inf) || (lambda.is_zero() && !mu.is_zero() && s_inf);
    if !distinct {
        return Ok(None);
    }
    if lambda.is_zero() {
        let c0 = data.psi.coeff(0);
        return Ok(scaled_powers_avoid(&q.s, &mu, &c0)
            .then(|| format!("lambda_i = 0; beta_i = s^i*({mu}) - ({c0}) never vanishes")));
    }
    if mu.is_zero() {
        // β_i = -ψ(r^i λ): nonzero when ψ is a single nonzero term
        return Ok(data
            .psi
            .as_monomial()
            .map(|_| "beta_i = -psi(r^i*lambda) with psi a nonzero monomial and lambda != 0".to_string()));
    }
    if let Some(cc) = data.psi.as_constant() {
        return Ok(scaled_powers_avoid(&q.s, &mu, &cc)
            .then(|| format!("lambda_i = r^i*lambda distinct; beta_i = s^i*({mu}) - ({cc}) never vanishes")));
    }
    Ok(None)
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
    fn sl2_orbit() {
        let p = params(&[0, 1], 1, 1, 1);
        let o = orbit(&p, &Weight::new(kq(-1, 2), k(0)), (-3, 3));
        assert_eq!(o.get(1).beta, kq(-1, 2));
        assert_eq!(o.get(2).beta, k(0));
        assert_eq!(o.get(-2), &phi_step_back(&p, o.get(-1)));
    }

    #[test]
    fn fixed_point_has_period_one() {
        let p = params(&[0, 1], 2, 3, 0);
        let o = orbit(&p, &Weight::new(k(0), k(0)), (0, 5));
        assert_eq!(o.period, Some(1));
    }

    #[test]
    fn sign_flip_orbit() {
        let p = params(&[0, 1], -1, -1, 0);
        let o = orbit(&p, &Weight::new(k(1), k(0)), (0, 4));
        assert_eq!(o.get(1), &Weight::new(k(-1), k(1)));
        assert_eq!(o.get(2), &Weight::new(k(1), k(-2)));
        // β alternates growing in size, so no period
        assert_eq!(o.period, None);
    }

    #[test]
    fn certificates() {
        let p = params(&[], 1, 2, 1);
        let o = orbit(&p, &Weight::new(k(0), k(1)), (-10, 10));
        assert!(matches!(simplicity_certificate(&p, &o), SimplicityCertificate::SimpleByCriterion { .. }));

        let o = orbit(&p, &Weight::new(k(0), k(0)), (-10, 10));
        assert!(matches!(simplicity_certificate(&p, &o), SimplicityCertificate::Inconclusive { .. }));

        let q = params(&[1, 1, 1], 1, 2, 1);
        let o = orbit(&q, &Weight::new(k(3), k(7)), (-5, 5));
        assert!(matches!(simplicity_certificate(&q, &o), SimplicityCertificate::Inconclusive { .. }));
    }
}
