//! Buchberger's algorithm in two variables (lex, `x > y`) and vanishing
//! ideals of finite point sets.

use std::collections::BTreeSet;

use crate::scalar::CyclotomicScalar;

use super::BiPoly;

/// Distinct points in the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet2D {
    points: Vec<(CyclotomicScalar, CyclotomicScalar)>,
}

impl PointSet2D {
    /// Builds a point set, dropping duplicates.
    pub fn new(points: impl IntoIterator<Item = (CyclotomicScalar, CyclotomicScalar)>) -> Self {
        let mut out: Vec<(CyclotomicScalar, CyclotomicScalar)> = Vec::new();
        for p in points {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        PointSet2D { points: out }
    }

    pub fn points(&self) -> &[(CyclotomicScalar, CyclotomicScalar)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn divides(a: (u32, u32), b: (u32, u32)) -> bool {
    a.0 <= b.0 && a.1 <= b.1
}

fn lcm_mono(a: (u32, u32), b: (u32, u32)) -> (u32, u32) {
    (a.0.max(b.0), a.1.max(b.1))
}

/// Full reduction of `f` modulo `gens` (lex order).
pub fn reduce(f: &BiPoly, gens: &[BiPoly]) -> BiPoly {
    let mut p = f.clone();
    let mut rem = BiPoly::zero();
    while let Some((lm, lc)) = p.lex_leading().map(|(m, c)| (m, c.clone())) {
        let divisor = gens.iter().find(|g| g.lex_leading().is_some_and(|(gm, _)| divides(gm, lm)));
        match divisor {
            Some(g) => {
                let (gm, gc) = g.lex_leading().unwrap();
                let factor = lc.try_div(gc).expect("nonzero leading coefficient");
                let t = g.shift(lm.0 - gm.0, lm.1 - gm.1).scale(&factor);
                p = &p - &t;
            }
            None => {
                rem.add_term(lm.0, lm.1, lc.clone());
                p.add_term(lm.0, lm.1, -&lc);
            }
        }
    }
    rem
}

fn s_poly(f: &BiPoly, g: &BiPoly) -> BiPoly {
    let (fm, fc) = f.lex_leading().unwrap();
    let (gm, gc) = g.lex_leading().unwrap();
    let l = lcm_mono(fm, gm);
    let a = f.shift(l.0 - fm.0, l.1 - fm.1).scale(&gc.clone());
    let b = g.shift(l.0 - gm.0, l.1 - gm.1).scale(&fc.clone());
    &a - &b
}

/// Reduced lex Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[BiPoly]) -> Vec<BiPoly> {
    let mut basis: Vec<BiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    while let Some(&(i, j)) = pairs.iter().next() {
        pairs.remove(&(i, j));
        done.insert((i, j));
        let lmi = basis[i].lex_leading().unwrap().0;
        let lmj = basis[j].lex_leading().unwrap().0;
        let l = lcm_mono(lmi, lmj);
        // first criterion: coprime leading monomials
        if l == (lmi.0 + lmj.0, lmi.1 + lmj.1) {
            continue;
        }
        // second criterion: a third leading monomial divides the lcm and
        // both of its pairs have been handled
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lex_leading().unwrap().0, l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let n = basis.len();
            basis.push(r);
            for k in 0..n {
                pairs.insert((k, n));
            }
        }
    }
    interreduce(basis)
}

fn interreduce(basis: Vec<BiPoly>) -> Vec<BiPoly> {
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<BiPoly> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let gm = g.lex_leading().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hm = h.lex_leading().unwrap().0;
            k != idx && divides(hm, gm) && (hm != gm || k < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<BiPoly> =
            minimal.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, g)| g.clone()).collect();
        let g = &minimal[idx];
        let (lm, lc) = g.lex_leading().unwrap();
        let lc = lc.clone();
        let mut tail = g.clone();
        tail.add_term(lm.0, lm.1, -&lc);
        let mut red = reduce(&tail, &others);
        red.add_term(lm.0, lm.1, lc.clone());
        out.push(red.scale(&lc.inv().unwrap()));
    }
    sort_generators(&mut out);
    out
}

/// Deterministic output order: total degree, then lex-descending leading
/// monomial.
pub fn sort_generators(gens: &mut [BiPoly]) {
    gens.sort_by_key(|g| {
        let lm = g.lex_leading().map(|(m, _)| m).unwrap_or((0, 0));
        (g.total_degree().unwrap_or(0), std::cmp::Reverse(lm))
    });
}

/// Membership in the ideal with Gröbner basis `gb`.
pub fn ideal_contains(gb: &[BiPoly], f: &BiPoly) -> bool {
    reduce(f, gb).is_zero()
}

/// The reduced lex Gröbner basis of the ideal of polynomials vanishing on
/// `pts`. Built incrementally: for a new point `p`, `I(P ∪ {p}) = I(P)·m_p`
/// because the two ideals are comaximal.
pub fn vanishing_ideal(pts: &PointSet2D) -> Vec<BiPoly> {
    let mut gb: Vec<BiPoly> = vec![BiPoly::one()];
    for (a, b) in pts.points() {
        let xa = &BiPoly::x() - &BiPoly::constant(a.clone());
        let yb = &BiPoly::y() - &BiPoly::constant(b.clone());
        let mut gens = Vec::with_capacity(2 * gb.len());
        for g in &gb {
            gens.push(g * &xa);
            gens.push(g * &yb);
        }
        gb = groebner_basis(&gens);
    }
    gb
}

/// Monomials outside the leading-term ideal of `gb`, if finitely many
/// (otherwise `None`). For a vanishing ideal their number equals the number
/// of points.
pub fn standard_monomials(gb: &[BiPoly]) -> Option<Vec<(u32, u32)>> {
    let leads: Vec<(u32, u32)> = gb.iter().filter_map(|g| g.lex_leading().map(|(m, _)| m)).collect();
    let xmax = leads.iter().filter(|m| m.1 == 0).map(|m| m.0).min()?;
    let ymax = leads.iter().filter(|m| m.0 == 0).map(|m| m.1).min()?;
    let mut out = Vec::new();
    for i in 0..xmax {
        for j in 0..ymax {
            if !leads.iter().any(|&m| divides(m, (i, j))) {
                out.push((i, j));
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::k;

    fn pts(v: &[(i64, i64)]) -> PointSet2D {
        PointSet2D::new(v.iter().map(|&(a, b)| (k(a), k(b))))
    }

    fn show(g: &[BiPoly]) -> Vec<String> {
        g.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn origin() {
        assert_eq!(show(&vanishing_ideal(&pts(&[(0, 0)]))), vec!["x", "y"]);
    }

    #[test]
    fn two_points_on_x_axis() {
        assert_eq!(show(&vanishing_ideal(&pts(&[(0, 0), (1, 0)]))), vec!["y", "x^2 - x"]);
    }

    #[test]
    fn two_points_on_y_axis() {
        assert_eq!(show(&vanishing_ideal(&pts(&[(0, 0), (0, 1)]))), vec!["x", "y^2 - y"]);
    }

    #[test]
    fn membership() {
        let gb = vanishing_ideal(&pts(&[(1, 2), (3, -1), (0, 0)]));
        assert!(!ideal_contains(&gb, &BiPoly::one()));
        let f = &(&gb[0] * &BiPoly::y()) + &gb[1].scale(&k(5));
        assert!(ideal_contains(&gb, &f));
        assert_eq!(standard_monomials(&gb).unwrap().len(), 3);
    }
}
