//! Kernels of twisted functional equations `g(ρx + δ, τx^j + σy) = μ·g(x, y)`.

use std::collections::BTreeMap;

use crate::linalg;
use crate::scalar::CyclotomicScalar;

use super::bi::bidegree_cmp;
use super::BiPoly;

/// The substitution `(x, y) ↦ (ρx + δ, τx^j + σy)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineTwist {
    pub x_scale: CyclotomicScalar,
    pub x_shift: CyclotomicScalar,
    pub y_scale: CyclotomicScalar,
    pub x_coef: CyclotomicScalar,
    pub j: u32,
}

impl AffineTwist {
    /// `(x, y) ↦ (ρx, σy)`.
    pub fn diagonal(rho: CyclotomicScalar, sigma: CyclotomicScalar) -> Self {
        AffineTwist {
            x_scale: rho,
            x_shift: CyclotomicScalar::zero(),
            y_scale: sigma,
            x_coef: CyclotomicScalar::zero(),
            j: 0,
        }
    }

    pub fn x_substitution(&self) -> BiPoly {
        let mut p = BiPoly::monomial(self.x_scale.clone(), 1, 0);
        p.add_term(0, 0, self.x_shift.clone());
        p
    }

    pub fn y_substitution(&self) -> BiPoly {
        let mut p = BiPoly::monomial(self.y_scale.clone(), 0, 1);
        p.add_term(self.j, 0, self.x_coef.clone());
        p
    }

    pub fn apply(&self, g: &BiPoly) -> BiPoly {
        g.compose(&self.x_substitution(), &self.y_substitution())
    }
}

/// Basis of `{g : deg_x g ≤ a_max, deg_y g ≤ b_max, g∘twist = μ·g}`.
///
/// The basis is in reduced echelon form with respect to the bidegree order:
/// each element has leading coefficient 1 at a distinct bidegree, and no
/// other basis element has a term there.
pub fn functional_equation_kernel(twist: &AffineTwist, mu: &CyclotomicScalar, bounds: (u32, u32)) -> Vec<BiPoly> {
    let (a_max, b_max) = bounds;
    let mut domain: Vec<(u32, u32)> = (0..=a_max).flat_map(|a| (0..=b_max).map(move |b| (a, b))).collect();
    // columns from the largest bidegree down, so echelon pivots are leading terms
    domain.sort_by(|p, q| bidegree_cmp(*q, *p));

    let mut rows: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    let mut images = Vec::with_capacity(domain.len());
    for &(a, b) in &domain {
        let mono = BiPoly::monomial(CyclotomicScalar::one(), a, b);
        let img = &twist.apply(&mono) - &mono.scale(mu);
        for (key, _) in img.terms() {
            let n = rows.len();
            rows.entry(key).or_insert(n);
        }
        images.push(img);
    }
    let zero = CyclotomicScalar::zero();
    let mut mat = vec![vec![zero.clone(); domain.len()]; rows.len()];
    for (col, img) in images.iter().enumerate() {
        for (key, c) in img.terms() {
            mat[rows[&key]][col] = c.clone();
        }
    }
    let ker = linalg::kernel(&mat, domain.len(), &zero);
    if ker.is_empty() {
        return Vec::new();
    }
    let mut basis_mat = ker;
    linalg::rref(&mut basis_mat);
    basis_mat
        .into_iter()
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .map(|v| {
            let mut g = BiPoly::zero();
            for (c, &(a, b)) in v.into_iter().zip(&domain) {
                g.add_term(a, b, c);
            }
            g
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::k;

    #[test]
    fn shift_twist_gives_y() {
        let t = AffineTwist { x_scale: k(1), x_shift: k(1), y_scale: k(2), x_coef: k(0), j: 0 };
        let ker = functional_equation_kernel(&t, &k(2), (3, 1));
        assert_eq!(ker, vec![BiPoly::y()]);
    }

    #[test]
    fn skew_twist_gives_x() {
        let t = AffineTwist { x_scale: k(2), x_shift: k(0), y_scale: k(2), x_coef: k(2), j: 1 };
        let ker = functional_equation_kernel(&t, &k(2), (3, 3));
        assert_eq!(ker, vec![BiPoly::x()]);
    }

    #[test]
    fn off_spectrum_is_empty() {
        let t = AffineTwist::diagonal(k(2), k(3));
        assert!(functional_equation_kernel(&t, &k(5), (4, 4)).is_empty());
    }
}
