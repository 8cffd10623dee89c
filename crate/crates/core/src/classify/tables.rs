//! The four classification tables as data. Each row is a key matched
//! against facts about the parameters, plus family templates.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Table {
    /// r = 1, γ ≠ 0.
    R1,
    /// γ = 0, conformal, r or s a root of unity.
    ConformalRoots,
    /// γ = 0, conformal, neither r nor s a root of unity.
    ConformalGeneric,
    /// γ = 0, not conformal.
    Nonconformal,
}

impl Table {
    pub fn name(self) -> &'static str {
        match self {
            Table::R1 => "r1-gamma",
            Table::ConformalRoots => "conformal-roots-of-unity",
            Table::ConformalGeneric => "conformal-generic",
            Table::Nonconformal => "nonconformal",
        }
    }
}

/// An order column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ord {
    Any,
    Fin,
    Inf,
}

/// The ψ column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Psi {
    Any,
    Zero,
    Nonzero,
    /// Nonzero constant.
    Const,
    Nonconstant,
    /// `C h^j` with `C ≠ 0` and `j = n/m` for `S = ⟨(n, m)⟩`.
    CHj,
    /// Nonzero and not of the form above.
    OtherNonzero,
}

/// The S-generator column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenCol {
    Any,
    Trivial,
    Opposite,
    /// `(n, m)` with `m | n`.
    SameDivisible,
    /// `(n, m)` with `m ∤ n`.
    SameOther,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JCol {
    Any,
    Zero,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P0Col {
    Any,
    Zero,
    Nonzero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowKey {
    pub or: Ord,
    pub os: Ord,
    pub psi: Psi,
    pub gen: GenCol,
    pub j: JCol,
    pub p0: P0Col,
}

const ANY: RowKey =
    RowKey { or: Ord::Any, os: Ord::Any, psi: Psi::Any, gen: GenCol::Any, j: JCol::Any, p0: P0Col::Any };

/// Exponent appearing in a template: a literal, or the row's `n` or `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exp {
    One,
    N,
    M,
}

/// Shapes of the ideals appearing in the tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Zero,
    /// `⟨u^e⟩`.
    U(Exp),
    /// `⟨d^e⟩`.
    D(Exp),
    /// `⟨H⟩`.
    BigH,
    /// `⟨h⟩`.
    SmallH,
    /// `⟨H^e - c^e⟩`.
    HPowMinusCPow(Exp),
    /// `⟨H^e - c⟩`.
    HPowMinusC(Exp),
    /// `⟨H^m - c h^n⟩`.
    HmMinusChn,
    /// `⟨h^n H^m - c⟩`.
    HnHmMinusC,
    /// `⟨h^n - c⟩`.
    HnMinusC,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cons {
    None,
    /// `c ∈ ℂ^×`.
    Nonzero,
    /// `c ∈ ℂ^×, c^e ≠ C^e`.
    PowNeq(Exp),
    /// `c ∈ ℂ^×, c ≠ C^m`.
    NeqCm,
    /// `c ∈ ℂ^×, φ̃(c) ≠ 0`.
    TildeNonvanishing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Row {
    pub table: Table,
    pub id: &'static str,
    pub key: RowKey,
    pub families: &'static [(Shape, Cons)],
}

use Cons as C;
use Shape as S;

pub const ROWS: &[Row] = &[
    Row {
        table: Table::R1,
        id: "r1.1",
        key: RowKey { os: Ord::Inf, psi: Psi::Zero, ..ANY },
        families: &[(S::Zero, C::None), (S::U(Exp::One), C::None), (S::D(Exp::One), C::None)],
    },
    Row {
        table: Table::R1,
        id: "r1.2",
        key: RowKey { os: Ord::Inf, psi: Psi::Nonzero, ..ANY },
        families: &[(S::Zero, C::None), (S::BigH, C::None)],
    },
    Row {
        table: Table::R1,
        id: "r1.3",
        key: RowKey { os: Ord::Fin, psi: Psi::Zero, ..ANY },
        families: &[
            (S::BigH, C::None),
            (S::U(Exp::One), C::None),
            (S::D(Exp::One), C::None),
            (S::HPowMinusCPow(Exp::N), C::Nonzero),
        ],
    },
    Row {
        table: Table::R1,
        id: "r1.4",
        key: RowKey { os: Ord::Fin, psi: Psi::Const, ..ANY },
        families: &[
            (S::BigH, C::None),
            (S::U(Exp::N), C::None),
            (S::D(Exp::N), C::None),
            (S::HPowMinusCPow(Exp::N), C::PowNeq(Exp::N)),
        ],
    },
    Row {
        table: Table::R1,
        id: "r1.5",
        key: RowKey { os: Ord::Fin, psi: Psi::Nonconstant, ..ANY },
        families: &[(S::BigH, C::None), (S::HPowMinusCPow(Exp::N), C::Nonzero)],
    },
    Row {
        table: Table::ConformalRoots,
        id: "conf-roots.1",
        key: RowKey { or: Ord::Fin, os: Ord::Fin, ..ANY },
        families: &[],
    },
    Row {
        table: Table::ConformalRoots,
        id: "conf-roots.2",
        key: RowKey { or: Ord::Fin, os: Ord::Inf, ..ANY },
        families: &[(S::SmallH, C::None), (S::HnMinusC, C::Nonzero)],
    },
    Row {
        table: Table::ConformalRoots,
        id: "conf-roots.3",
        key: RowKey { or: Ord::Inf, os: Ord::Fin, psi: Psi::Zero, ..ANY },
        families: &[(S::U(Exp::One), C::None), (S::D(Exp::One), C::None), (S::HPowMinusC(Exp::M), C::Nonzero)],
    },
    Row {
        table: Table::ConformalRoots,
        id: "conf-roots.4",
        key: RowKey { or: Ord::Inf, os: Ord::Fin, psi: Psi::Const, ..ANY },
        families: &[
            (S::U(Exp::M), C::None),
            (S::D(Exp::M), C::None),
            (S::BigH, C::None),
            (S::HPowMinusCPow(Exp::M), C::PowNeq(Exp::M)),
        ],
    },
    Row {
        table: Table::ConformalRoots,
        id: "conf-roots.5",
        key: RowKey { or: Ord::Inf, os: Ord::Fin, psi: Psi::Nonconstant, ..ANY },
        families: &[(S::BigH, C::None), (S::HPowMinusC(Exp::M), C::Nonzero)],
    },
    Row {
        table: Table::ConformalGeneric,
        id: "conf-generic.1",
        key: RowKey { gen: GenCol::Trivial, psi: Psi::Zero, ..ANY },
        families: &[(S::Zero, C::None), (S::SmallH, C::None), (S::U(Exp::One), C::None), (S::D(Exp::One), C::None)],
    },
    Row {
        table: Table::ConformalGeneric,
        id: "conf-generic.2",
        key: RowKey { gen: GenCol::Trivial, psi: Psi::Nonzero, ..ANY },
        families: &[(S::Zero, C::None), (S::SmallH, C::None), (S::BigH, C::None)],
    },
    Row {
        table: Table::ConformalGeneric,
        id: "conf-generic.3",
        key: RowKey { gen: GenCol::Opposite, psi: Psi::Zero, ..ANY },
        families: &[
            (S::SmallH, C::None),
            (S::U(Exp::One), C::None),
            (S::D(Exp::One), C::None),
            (S::HnHmMinusC, C::Nonzero),
        ],
    },
    Row {
        table: Table::ConformalGeneric,
        id: "conf-generic.4",
        key: RowKey { gen: GenCol::Opposite, psi: Psi::Nonzero, ..ANY },
        families: &[(S::SmallH, C::None), (S::BigH, C::None), (S::HnHmMinusC, C::Nonzero)],
    },
    Row {
        table: Table::ConformalGeneric,
        id: "conf-generic.5",
        key: RowKey { gen: GenCol::SameDivisible, psi: Psi::CHj, ..ANY },
        families: &[
            (S::SmallH, C::None),
            (S::BigH, C::None),
            (S::U(Exp::M), C::None),
            (S::D(Exp::M), C::None),
            (S::HmMinusChn, C::NeqCm),
        ],
    },
    Row {
        table: Table::ConformalGeneric,
        id: "conf-generic.6",
        key: RowKey { gen: GenCol::SameDivisible, psi: Psi::Zero, ..ANY },
        families: &[
            (S::SmallH, C::None),
            (S::U(Exp::One), C::None),
            (S::D(Exp::One), C::None),
            (S::HmMinusChn, C::Nonzero),
        ],
    },
    Row {
        table: Table::ConformalGeneric,
        id: "conf-generic.7",
        key: RowKey { gen: GenCol::SameDivisible, psi: Psi::OtherNonzero, ..ANY },
        families: &[(S::SmallH, C::None), (S::BigH, C::None), (S::HmMinusChn, C::Nonzero)],
    },
    Row {
        table: Table::ConformalGeneric,
        id: "conf-generic.8",
        key: RowKey { gen: GenCol::SameOther, psi: Psi::Zero, ..ANY },
        families: &[
            (S::SmallH, C::None),
            (S::U(Exp::One), C::None),
            (S::D(Exp::One), C::None),
            (S::HmMinusChn, C::Nonzero),
        ],
    },
    Row {
        table: Table::ConformalGeneric,
        id: "conf-generic.9",
        key: RowKey { gen: GenCol::SameOther, psi: Psi::Nonzero, ..ANY },
        families: &[(S::SmallH, C::None), (S::BigH, C::None), (S::HmMinusChn, C::Nonzero)],
    },
    Row {
        table: Table::Nonconformal,
        id: "nonconformal.1",
        key: RowKey { or: Ord::Inf, ..ANY },
        families: &[(S::Zero, C::None), (S::SmallH, C::None)],
    },
    Row {
        table: Table::Nonconformal,
        id: "nonconformal.2",
        key: RowKey { or: Ord::Fin, j: JCol::Zero, p0: P0Col::Zero, ..ANY },
        families: &[(S::HnMinusC, C::TildeNonvanishing)],
    },
    Row {
        table: Table::Nonconformal,
        id: "nonconformal.3",
        key: RowKey { or: Ord::Fin, j: JCol::Zero, p0: P0Col::Nonzero, ..ANY },
        families: &[(S::SmallH, C::None), (S::HnMinusC, C::TildeNonvanishing)],
    },
    Row {
        table: Table::Nonconformal,
        id: "nonconformal.4",
        key: RowKey { or: Ord::Fin, j: JCol::Positive, ..ANY },
        families: &[(S::HnMinusC, C::TildeNonvanishing)],
    },
];

/// Facts about the parameters that the row keys are matched against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Facts {
    pub or_finite: bool,
    pub os_finite: bool,
    pub psi_zero: bool,
    pub psi_constant: bool,
    /// ψ is `C h^j` with `C ≠ 0` and `j = n/m` for the S generator.
    pub psi_chj: bool,
    pub gen: GenCol,
    pub j: Option<u32>,
    pub p0_zero: Option<bool>,
}

fn ord_ok(col: Ord, finite: bool) -> bool {
    match col {
        Ord::Any => true,
        Ord::Fin => finite,
        Ord::Inf => !finite,
    }
}

impl RowKey {
    pub fn matches(&self, f: &Facts) -> bool {
        let psi = match self.psi {
            Psi::Any => true,
            Psi::Zero => f.psi_zero,
            Psi::Nonzero => !f.psi_zero,
            Psi::Const => !f.psi_zero && f.psi_constant,
            Psi::Nonconstant => !f.psi_constant,
            Psi::CHj => f.psi_chj,
            Psi::OtherNonzero => !f.psi_zero && !f.psi_chj,
        };
        let gen = self.gen == GenCol::Any || self.gen == f.gen;
        let j = match self.j {
            JCol::Any => true,
            JCol::Zero => f.j == Some(0),
            JCol::Positive => f.j.is_some_and(|j| j > 0),
        };
        let p0 = match self.p0 {
            P0Col::Any => true,
            P0Col::Zero => f.p0_zero == Some(true),
            P0Col::Nonzero => f.p0_zero == Some(false),
        };
        ord_ok(self.or, f.or_finite) && ord_ok(self.os, f.os_finite) && psi && gen && j && p0
    }
}

/// The unique row of `table` matching `facts`.
pub fn lookup(table: Table, facts: &Facts) -> &'static Row {
    let mut hits = ROWS.iter().filter(|r| r.table == table && r.key.matches(facts));
    let row = hits.next().unwrap_or_else(|| panic!("no {} row matches {facts:?}", table.name()));
    assert!(hits.next().is_none(), "several {} rows match {facts:?}", table.name());
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_row_count() {
        let count = |t| ROWS.iter().filter(|r| r.table == t).count();
        assert_eq!(count(Table::R1), 5);
        assert_eq!(count(Table::ConformalRoots), 5);
        assert_eq!(count(Table::ConformalGeneric), 9);
        assert_eq!(count(Table::Nonconformal), 4);
    }
}
