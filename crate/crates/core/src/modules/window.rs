use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::Serialize;

use crate::algebra::{AlgebraParams, PBWElement};
use crate::poly::UniPoly;
use crate::scalar::CyclotomicScalar;

use super::orbit::{phi_step, phi_step_back, Weight};

/// A finite combination of basis vectors `v_i`, `i ∈ ℤ`.
pub type SparseVec = BTreeMap<i64, CyclotomicScalar>;

/// Action of one generator on a basis vector.
pub type Rule = Arc<dyn Fn(i64) -> Vec<(i64, CyclotomicScalar)> + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Gen {
    U,
    D,
    H,
}

/// A module with basis `{v_i : i ∈ ℤ}` whose generators act by banded
/// rules. The rules are total; the window only fixes which indices are
/// inspected, and the margin excludes indices near its edges.
#[derive(Clone)]
pub struct WindowModule {
    pub label: String,
    pub window: (i64, i64),
    pub margin: i64,
    /// Largest `|i' - i|` produced by the u, d and h rules.
    pub bands: [i64; 3],
    params: AlgebraParams,
    u: Rule,
    d: Rule,
    h: Rule,
}

impl fmt::Debug for WindowModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WindowModule")
            .field("label", &self.label)
            .field("window", &self.window)
            .field("margin", &self.margin)
            .field("bands", &self.bands)
            .finish()
    }
}

/// A relation whose residual is nonzero on some interior vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub relation: &'static str,
    pub index: i64,
    pub residual: Vec<(i64, CyclotomicScalar)>,
}

fn add_into(v: &mut SparseVec, i: i64, c: CyclotomicScalar) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(i).or_insert_with(CyclotomicScalar::zero);
    *slot = &*slot + &c;
    if slot.is_zero() {
        v.remove(&i);
    }
}

pub fn basis_vector(i: i64) -> SparseVec {
    SparseVec::from([(i, CyclotomicScalar::one())])
}

pub fn combine(a: &SparseVec, b: &SparseVec, cb: &CyclotomicScalar) -> SparseVec {
    let mut out = a.clone();
    for (i, c) in b {
        add_into(&mut out, *i, c * cb);
    }
    out
}

impl WindowModule {
    pub fn new(
        label: impl Into<String>,
        params: AlgebraParams,
        window: (i64, i64),
        margin: i64,
        bands: [i64; 3],
        rules: [Rule; 3],
    ) -> Self {
        assert!(window.0 <= window.1, "empty window");
        let [u, d, h] = rules;
        WindowModule { label: label.into(), window, margin, bands, params, u, d, h }
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    /// Indices at least `margin` away from both window edges.
    pub fn interior(&self) -> std::ops::RangeInclusive<i64> {
        (self.window.0 + self.margin)..=(self.window.1 - self.margin)
    }

    pub fn act(&self, g: Gen, v: &SparseVec) -> SparseVec {
        let rule = match g {
            Gen::U => &self.u,
            Gen::D => &self.d,
            Gen::H => &self.h,
        };
        let mut out = SparseVec::new();
        for (i, c) in v {
            for (j, a) in rule(*i) {
                add_into(&mut out, j, c * &a);
            }
        }
        out
    }

    fn act_power(&self, g: Gen, e: u32, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for _ in 0..e {
            if out.is_empty() {
                break;
            }
            out = self.act(g, &out);
        }
        out
    }

    /// `f(h)·v`.
    pub fn apply_h_poly(&self, f: &UniPoly, v: &SparseVec) -> SparseVec {
        let Some(deg) = f.degree() else {
            return SparseVec::new();
        };
        let mut acc = SparseVec::new();
        for e in (0..=deg).rev() {
            acc = combine(&self.act(Gen::H, &acc), v, &f.coeff(e));
        }
        acc
    }

    /// `x·v` for an algebra element in standard form.
    pub fn apply_element(&self, x: &PBWElement, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for ((i, k), f) in x.rows() {
            let w = self.act_power(Gen::D, k, v);
            let w = self.apply_h_poly(&f, &w);
            let w = self.act_power(Gen::U, i, &w);
            out = combine(&out, &w, &CyclotomicScalar::one());
        }
        out
    }

    /// Whether `x` kills every interior basis vector.
    pub fn kills_interior(&self, x: &PBWElement) -> bool {
        self.interior().all(|i| self.apply_element(x, &basis_vector(i)).is_empty())
    }

    /// Residuals of the three defining relations on every interior vector.
    pub fn relation_failures(&self) -> Vec<RelationFailure> {
        let p = &self.params;
        let one = CyclotomicScalar::one();
        let mut out = Vec::new();
        for i in self.interior() {
            let v = basis_vector(i);
            let uv = self.act(Gen::U, &v);
            let dv = self.act(Gen::D, &v);
            let hv = self.act(Gen::H, &v);
            // hu - r·uh - γ·u
            let hu = self.act(Gen::H, &uv);
            let uh = self.act(Gen::U, &hv);
            let r1 = combine(&combine(&hu, &uh, &-&p.r), &uv, &-&p.gamma);
            // dh - r·hd - γ·d
            let dh = self.act(Gen::D, &hv);
            let hd = self.act(Gen::H, &dv);
            let r2 = combine(&combine(&dh, &hd, &-&p.r), &dv, &-&p.gamma);
            // du - s·ud - φ(h)
            let du = self.act(Gen::D, &uv);
            let ud = self.act(Gen::U, &dv);
            let phv = self.apply_h_poly(&p.phi, &v);
            let r3 = combine(&combine(&du, &ud, &-&p.s), &phv, &-&one);
            for (name, r) in [("hu-ruh-gu", r1), ("dh-rhd-gd", r2), ("du-sud-phi", r3)] {
                if !r.is_empty() {
                    out.push(RelationFailure { relation: name, index: i, residual: r.into_iter().collect() });
                }
            }
        }
        out
    }

    pub fn relations_hold(&self) -> bool {
        self.relation_failures().is_empty()
    }

    /// Text listing of the action on interior vectors.
    pub fn report(&self, limit: usize) -> String {
        let mut s =
            format!("module {}\nwindow [{}, {}], margin {}\n", self.label, self.window.0, self.window.1, self.margin);
        for i in self.interior().take(limit) {
            let v = basis_vector(i);
            for (name, g) in [("u", Gen::U), ("d", Gen::D), ("h", Gen::H)] {
                s.push_str(&format!("{name} v_{i} = {}\n", format_vec(&self.act(g, &v))));
            }
        }
        s.push_str(&format!("relations hold on interior: {}\n", self.relations_hold()));
        s
    }
}

pub fn format_vec(v: &SparseVec) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let items: Vec<(CyclotomicScalar, String)> = v.iter().rev().map(|(i, c)| (c.clone(), format!("v_{i}"))).collect();
    crate::scalar::format_terms(&items)
}

/// `Φ^i(base)` cached and extended outward on demand.
#[derive(Debug)]
pub struct OrbitCache {
    params: AlgebraParams,
    base: Weight,
    known: RwLock<(Vec<Weight>, Vec<Weight>)>,
}

impl OrbitCache {
    pub fn new(params: AlgebraParams, base: Weight) -> Self {
        let known = RwLock::new((vec![base.clone()], vec![]));
        OrbitCache { params, base, known }
    }

    pub fn base(&self) -> &Weight {
        &self.base
    }

    /// `Φ^i(base)`.
    pub fn get(&self, i: i64) -> Weight {
        {
            let k = self.known.read();
            if i >= 0 && (i as usize) < k.0.len() {
                return k.0[i as usize].clone();
            }
            if i < 0 && ((-i - 1) as usize) < k.1.len() {
                return k.1[(-i - 1) as usize].clone();
            }
        }
        let mut k = self.known.write();
        if i >= 0 {
            while k.0.len() <= i as usize {
                let next = phi_step(&self.params, k.0.last().unwrap());
                k.0.push(next);
            }
            k.0[i as usize].clone()
        } else {
            while k.1.len() < (-i) as usize {
                let next = phi_step_back(&self.params, k.1.last().unwrap_or(&self.base));
                k.1.push(next);
            }
            k.1[(-i - 1) as usize].clone()
        }
    }
}

/// The universal weight module `W(λ, β)` with `h v_i = λ_i v_i`,
/// `u v_i = v_{i+1}` and `d v_i = β_i v_{i-1}` for `i > 0`,
/// `d v_i = v_{i-1}` and `u v_{i-1} = β_i v_i` for `i ≤ 0`.
pub fn universal_weight_window(p: &AlgebraParams, base: &Weight, window: (i64, i64)) -> WindowModule {
    let cache = Arc::new(OrbitCache::new(p.clone(), base.clone()));
    let one = CyclotomicScalar::one;
    let c = Arc::clone(&cache);
    let u: Rule = Arc::new(move |i| if i >= 0 { vec![(i + 1, one())] } else { vec![(i + 1, c.get(i + 1).beta)] });
    let c = Arc::clone(&cache);
    let d: Rule = Arc::new(move |i| if i <= 0 { vec![(i - 1, one())] } else { vec![(i - 1, c.get(i).beta)] });
    let c = Arc::clone(&cache);
    let h: Rule = Arc::new(move |i| vec![(i, c.get(i).lambda)]);
    let label = format!("W({}, {})", base.lambda, base.beta);
    WindowModule::new(label, p.clone(), window, 1, [1, 1, 0], [u, d, h])
}
