//! Primitive-ideal classification: the relation group `S(r, s)`,
//! distinctive reduction and the table-driven report.

pub mod distinctive;
pub mod relgroup;
pub mod tables;

use std::fmt;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraParams, PBWElement};
use crate::conformal::{gamma_shift, h_element, nonconformal_split, solve_conformal, NonconformalSplit};
use crate::error::{DownUpError, Result};
use crate::poly::UniPoly;
use crate::scalar::{CyclotomicScalar, OrderValue};

pub use distinctive::{distinctive_reduce, is_distinctive};
pub use relgroup::{compute_s, holds, verify_minimal, RelationGroup, SOptions, SResult, DEFAULT_BOUND};
pub use tables::{Row, Table, ROWS};

use tables::{Cons, Exp, Facts, GenCol, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    R1GammaNonzero,
    ConformalGamma0,
    NonconformalGamma0,
    FiniteDimOnly,
}

/// One term `±c^k u^a h^b H^e d^f` of a generator template.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TemplateTerm {
    pub negative: bool,
    pub c_pow: u32,
    pub u: u32,
    pub h: u32,
    pub big_h: u32,
    pub d: u32,
}

const fn mono(u: u32, h: u32, big_h: u32, d: u32) -> TemplateTerm {
    TemplateTerm { negative: false, c_pow: 0, u, h, big_h, d }
}

const fn minus_c(k: u32, h: u32) -> TemplateTerm {
    TemplateTerm { negative: true, c_pow: k, u: 0, h, big_h: 0, d: 0 }
}

impl fmt::Display for TemplateTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let pw = |v: &str, e: u32| if e == 1 { v.to_string() } else { format!("{v}^{e}") };
        if self.c_pow > 0 {
            parts.push(pw("c", self.c_pow));
        }
        for (v, e) in [("u", self.u), ("h", self.h), ("H", self.big_h), ("d", self.d)] {
            if e > 0 {
                parts.push(pw(v, e));
            }
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A generator template: a sum of terms, possibly involving the parameter `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template(pub Vec<TemplateTerm>);

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            match (i, t.negative) {
                (0, true) => write!(f, "-{t}")?,
                (0, false) => write!(f, "{t}")?,
                (_, true) => write!(f, " - {t}")?,
                (_, false) => write!(f, " + {t}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Template {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An excluded value `c^power ≠ value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Excluded {
    pub power: u32,
    pub value: CyclotomicScalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub text: String,
    pub c_nonzero: bool,
    pub excluded: Vec<Excluded>,
    /// `c` must not be a root of this polynomial.
    pub nonvanishing: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealFamily {
    pub ideal: String,
    pub generators: Vec<Template>,
    pub constraint: Option<Constraint>,
    pub row: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitEcho {
    pub j: u32,
    pub n: OrderValue,
    pub phi0: String,
    pub phi_tilde: String,
    pub psi0: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inputs {
    pub r: CyclotomicScalar,
    pub s: CyclotomicScalar,
    pub gamma: CyclotomicScalar,
    pub phi: String,
    pub o_r: OrderValue,
    pub o_s: OrderValue,
    pub psi: Option<String>,
    pub split: Option<SplitEcho>,
    pub relation_group: Option<String>,
    pub gamma_shift: Option<CyclotomicScalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub regime: Regime,
    pub table: Option<&'static str>,
    pub row: Option<&'static str>,
    pub inputs: Inputs,
    pub families: Vec<IdealFamily>,
    pub notes: Vec<String>,
    /// ψ used to expand `H`, in the shifted variable.
    #[serde(skip)]
    pub psi: UniPoly,
}

pub const NOTE_FINITE: &str = "families exclude annihilators of finite-dimensional simple modules; build those with `module fhw|fc|fcbar` and list their generators with `annihilate`";
pub const NOTE_COMPLETE: &str = "the finite-dimensional annihilators are taken to account for all remaining primitive ideals; this completeness is not verified by the engine";
pub const NOTE_H_AMBIGUITY: &str = "ambiguity: this row lists <H> although the argument that <H> is primitive in this regime assumes psi is not identically zero; the row is reproduced as printed";
pub const NOTE_P0: &str = "ambiguity: the table column p(0) is read as phi~(0), the constant term of phi~";
pub const NOTE_DEGENERATE: &str = "S has generator (n,0); the minimal ideal is written <h^n - c> rather than <1 - c*h^n>, equivalent after rescaling c";

fn exp_value(e: Exp, n: u32, m: u32) -> u32 {
    match e {
        Exp::One => 1,
        Exp::N => n,
        Exp::M => m,
    }
}

fn shape_template(shape: Shape, n: u32, m: u32) -> Option<Template> {
    let t = match shape {
        Shape::Zero => return None,
        Shape::U(e) => vec![mono(exp_value(e, n, m), 0, 0, 0)],
        Shape::D(e) => vec![mono(0, 0, 0, exp_value(e, n, m))],
        Shape::BigH => vec![mono(0, 0, 1, 0)],
        Shape::SmallH => vec![mono(0, 1, 0, 0)],
        Shape::HPowMinusCPow(e) => {
            let e = exp_value(e, n, m);
            vec![mono(0, 0, e, 0), minus_c(e, 0)]
        }
        Shape::HPowMinusC(e) => vec![mono(0, 0, exp_value(e, n, m), 0), minus_c(1, 0)],
        Shape::HmMinusChn => vec![mono(0, 0, m, 0), minus_c(1, n)],
        Shape::HnHmMinusC => vec![mono(0, n, m, 0), minus_c(1, 0)],
        Shape::HnMinusC => vec![mono(0, n, 0, 0), minus_c(1, 0)],
    };
    Some(Template(t))
}

fn constraint(cons: Cons, n: u32, m: u32, big_c: &CyclotomicScalar, tilde: &UniPoly) -> Option<Constraint> {
    let base = "c ∈ ℂ^×".to_string();
    let (text, excluded, nonvanishing) = match cons {
        Cons::None => return None,
        Cons::Nonzero => (base, vec![], None),
        Cons::PowNeq(e) => {
            let e = exp_value(e, n, m);
            let v = big_c.powu(e);
            (format!("{base}, c^{e} ≠ {v}"), vec![Excluded { power: e, value: v }], None)
        }
        Cons::NeqCm => {
            let v = big_c.powu(m);
            (format!("{base}, c ≠ {v}"), vec![Excluded { power: 1, value: v }], None)
        }
        Cons::TildeNonvanishing => {
            let t = tilde.to_string_in("x");
            (format!("{base}, phi~(c) ≠ 0 where phi~(x) = {t}"), vec![], Some(t))
        }
    };
    Some(Constraint { text, c_nonzero: true, excluded, nonvanishing })
}

fn families_for(row: &Row, n: u32, m: u32, big_c: &CyclotomicScalar, tilde: &UniPoly) -> Vec<IdealFamily> {
    row.families
        .iter()
        .map(|&(shape, cons)| {
            let gens: Vec<Template> = shape_template(shape, n, m).into_iter().collect();
            let ideal = if gens.is_empty() {
                "{0}".to_string()
            } else {
                format!("<{}>", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "))
            };
            IdealFamily { ideal, generators: gens, constraint: constraint(cons, n, m, big_c, tilde), row: row.id }
        })
        .collect()
}

/// Options for [`classify`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub s_options: SOptions,
}

fn order_of(z: &CyclotomicScalar) -> Result<OrderValue> {
    Ok(z.order()?)
}

pub fn classify(p: &AlgebraParams, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let mut notes = vec![NOTE_FINITE.to_string(), NOTE_COMPLETE.to_string()];
    let (q, shift) = if !p.r.is_one() && !p.gamma.is_zero() {
        let shift = p.gamma.try_div(&(&p.r - &CyclotomicScalar::one()))?;
        notes.push(format!(
            "r != 1 and gamma != 0: classified after the shift h -> h + {shift}, which removes gamma; in the generators h stands for h + {shift}"
        ));
        (gamma_shift(p)?, Some(shift))
    } else {
        (p.clone(), None)
    };
    let o_r = order_of(&q.r)?;
    let o_s = order_of(&q.s)?;
    let mut inputs = Inputs {
        r: p.r.clone(),
        s: p.s.clone(),
        gamma: p.gamma.clone(),
        phi: p.phi.to_string_in("h"),
        o_r,
        o_s,
        psi: None,
        split: None,
        relation_group: None,
        gamma_shift: shift,
    };
    let zero = CyclotomicScalar::zero();
    let blank = Facts {
        or_finite: o_r.is_finite(),
        os_finite: o_s.is_finite(),
        psi_zero: false,
        psi_constant: false,
        psi_chj: false,
        gen: GenCol::Any,
        j: None,
        p0_zero: None,
    };

    // r = 1, γ ≠ 0
    if !q.gamma.is_zero() {
        let data = solve_conformal(&q)?;
        inputs.psi = Some(data.psi.to_string_in("h"));
        let facts = Facts { psi_zero: data.psi.is_zero(), psi_constant: data.psi.is_constant(), ..blank };
        let row = tables::lookup(Table::R1, &facts);
        let n = o_s.finite().unwrap_or(0);
        let big_c = data.psi.coeff(0);
        if row.id == "r1.3" {
            notes.push(NOTE_H_AMBIGUITY.to_string());
        }
        let families = families_for(row, n, 0, &big_c, &UniPoly::zero());
        return Ok(report(Regime::R1GammaNonzero, row, inputs, families, notes, data.psi));
    }

    match solve_conformal(&q) {
        Ok(data) => {
            inputs.psi = Some(data.psi.to_string_in("h"));
            let psi = data.psi.clone();
            let mut facts = Facts { psi_zero: psi.is_zero(), psi_constant: psi.is_constant(), ..blank };
            if o_r.is_finite() || o_s.is_finite() {
                let row = tables::lookup(Table::ConformalRoots, &facts);
                let (n, m) = (o_r.finite().unwrap_or(0), o_s.finite().unwrap_or(0));
                if row.id == "conf-roots.2" {
                    notes.push(NOTE_DEGENERATE.to_string());
                }
                let regime = if row.families.is_empty() { Regime::FiniteDimOnly } else { Regime::ConformalGamma0 };
                let families = families_for(row, n, m, &psi.coeff(0), &UniPoly::zero());
                return Ok(report(regime, row, inputs, families, notes, psi));
            }
            let sres = compute_s(&q.r, &q.s, &opts.s_options)?;
            inputs.relation_group = Some(sres.group.to_string());
            if let Some(note) = &sres.note {
                notes.push(note.clone());
            }
            let (n, m) = sres.group.generator().expect("cyclic when neither is a root of unity");
            let (n, m) = (n as u32, m.unsigned_abs() as u32);
            facts.gen = match sres.group {
                RelationGroup::Trivial => GenCol::Trivial,
                RelationGroup::OppositeSign { .. } => GenCol::Opposite,
                RelationGroup::SameSign { .. } if n % m == 0 => GenCol::SameDivisible,
                _ => GenCol::SameOther,
            };
            let mut big_c = zero.clone();
            if facts.gen == GenCol::SameDivisible {
                if let Some((c, e)) = psi.as_monomial() {
                    if e == n / m {
                        facts.psi_chj = true;
                        big_c = c;
                    }
                }
            }
            let row = tables::lookup(Table::ConformalGeneric, &facts);
            let families = families_for(row, n, m, &big_c, &UniPoly::zero());
            Ok(report(Regime::ConformalGamma0, row, inputs, families, notes, psi))
        }
        Err(DownUpError::NotConformal { .. }) => {
            let split = nonconformal_split(&q)?;
            inputs.split = Some(echo(&split));
            let n = split.n.finite().unwrap_or(0);
            let p0_zero = split.phi_tilde.coeff(0).is_zero();
            let facts = Facts { j: Some(split.j), p0_zero: Some(p0_zero), ..blank };
            let row = tables::lookup(Table::Nonconformal, &facts);
            if split.n.is_finite() {
                notes.push(NOTE_P0.to_string());
            }
            let families = families_for(row, n, 0, &zero, &split.phi_tilde);
            Ok(report(Regime::NonconformalGamma0, row, inputs, families, notes, split.psi0))
        }
        Err(e) => Err(e),
    }
}

fn echo(s: &NonconformalSplit) -> SplitEcho {
    SplitEcho {
        j: s.j,
        n: s.n,
        phi0: s.phi0.to_string_in("h"),
        phi_tilde: s.phi_tilde.to_string_in("x"),
        psi0: s.psi0.to_string_in("h"),
    }
}

fn report(
    regime: Regime,
    row: &Row,
    inputs: Inputs,
    families: Vec<IdealFamily>,
    notes: Vec<String>,
    psi: UniPoly,
) -> ClassificationReport {
    ClassificationReport { regime, table: Some(row.table.name()), row: Some(row.id), inputs, families, notes, psi }
}

impl ClassificationReport {
    /// Instantiates the generators of family `idx` at parameter `c` as
    /// elements of the original algebra `a`.
    pub fn instantiate(&self, a: &Algebra, idx: usize, c: &CyclotomicScalar) -> Vec<PBWElement> {
        let shift = self.inputs.gamma_shift.clone().unwrap_or_else(CyclotomicScalar::zero);
        let h = &PBWElement::h() + &PBWElement::scalar(shift.clone());
        // H = ud + ψ(h + shift)
        let psi_shifted = self.psi.compose(&UniPoly::from_coeffs(vec![shift, CyclotomicScalar::one()]));
        let big_h = h_element(&psi_shifted);
        self.families[idx]
            .generators
            .iter()
            .map(|t| {
                let mut acc = PBWElement::zero();
                for term in &t.0 {
                    let mut coef = c.powu(term.c_pow);
                    if term.negative {
                        coef = -&coef;
                    }
                    let factors = [
                        PBWElement::monomial(CyclotomicScalar::one(), term.u, 0, 0),
                        a.pow(&h, term.h),
                        a.pow(&big_h, term.big_h),
                        PBWElement::monomial(CyclotomicScalar::one(), 0, 0, term.d),
                    ];
                    acc = &acc + &a.product(&factors).scale(&coef);
                }
                acc
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("regime: {:?}\n", self.regime);
        if let (Some(t), Some(r)) = (self.table, self.row) {
            s.push_str(&format!("table: {t}, row {r}\n"));
        }
        let i = &self.inputs;
        s.push_str(&format!("o(r) = {}, o(s) = {}\n", i.o_r, i.o_s));
        if let Some(psi) = &i.psi {
            s.push_str(&format!("psi = {psi}\n"));
        }
        if let Some(sp) = &i.split {
            s.push_str(&format!(
                "split: j = {}, n = {}, phi0 = {}, phi~ = {}, psi0 = {}\n",
                sp.j, sp.n, sp.phi0, sp.phi_tilde, sp.psi0
            ));
        }
        if let Some(g) = &i.relation_group {
            s.push_str(&format!("S = {g}\n"));
        }
        s.push_str("primitive ideals:\n");
        if self.families.is_empty() {
            s.push_str("  - (none beyond annihilators of finite-dimensional modules)\n");
        }
        for f in &self.families {
            match &f.constraint {
                Some(c) => s.push_str(&format!("  {}  ({})\n", f.ideal, c.text)),
                None => s.push_str(&format!("  {}\n", f.ideal)),
            }
        }
        s.push_str("notes:\n");
        for n in &self.notes {
            s.push_str(&format!("  - {n}\n"));
        }
        s
    }
}
