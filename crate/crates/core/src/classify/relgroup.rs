use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{DownUpError, Result};
use crate::scalar::{factor_integer, CyclotomicScalar, OrderValue, RationalTimesRoot};

/// Default exponent bound for the search fallback.
pub const DEFAULT_BOUND: u32 = 64;

/// The group `S(r, s) = {(i, j) : r^i = s^j}`.
///
/// `SameSign(n, m)` is generated by `(n, m)` with `n, m ≥ 0`;
/// `OppositeSign(n, m)` by `(n, -m)` with `n, m > 0`. When both r and s
/// are roots of unity the group has rank two and is stored by a basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum RelationGroup {
    Trivial,
    SameSign {
        n: u32,
        m: u32,
    },
    OppositeSign {
        n: u32,
        m: u32,
    },
    /// Basis `(a, b), (0, c)` in Hermite form, `a, c > 0`, `0 ≤ b < c`.
    Lattice {
        a: u32,
        b: u32,
        c: u32,
    },
}

impl RelationGroup {
    /// Builds the group generated by `(i, j)`, normalized.
    pub fn generated_by(i: i64, j: i64) -> Self {
        let (i, j) = if i < 0 || (i == 0 && j < 0) { (-i, -j) } else { (i, j) };
        match (i, j) {
            (0, 0) => RelationGroup::Trivial,
            (i, j) if j >= 0 => RelationGroup::SameSign { n: i as u32, m: j as u32 },
            (i, j) => RelationGroup::OppositeSign { n: i as u32, m: (-j) as u32 },
        }
    }

    /// The generator `(n, ±m)` of a cyclic group.
    pub fn generator(&self) -> Option<(i64, i64)> {
        match *self {
            RelationGroup::Trivial => Some((0, 0)),
            RelationGroup::SameSign { n, m } => Some((n as i64, m as i64)),
            RelationGroup::OppositeSign { n, m } => Some((n as i64, -(m as i64))),
            RelationGroup::Lattice { .. } => None,
        }
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        match *self {
            RelationGroup::Lattice { a, b, c } => {
                let (a, b, c) = (a as i64, b as i64, c as i64);
                i.rem_euclid(a) == 0 && (j - (i / a) * b).rem_euclid(c) == 0
            }
            _ => {
                let (n, m) = self.generator().unwrap();
                match (n, m) {
                    (0, 0) => i == 0 && j == 0,
                    (0, m) => i == 0 && j % m == 0,
                    (n, m) => i % n == 0 && j * n == i * m,
                }
            }
        }
    }
}

impl fmt::Display for RelationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RelationGroup::Lattice { a, b, c } => write!(f, "<({a},{b}), (0,{c})>"),
            _ => {
                let (n, m) = self.generator().unwrap();
                write!(f, "<({n},{m})>")
            }
        }
    }
}

/// Options for [`compute_s`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SOptions {
    pub bound: u32,
    /// A relation `r^n = s^m` declared by the user, checked exactly.
    pub declared: Option<(i64, i64)>,
    /// Report `Trivial` instead of failing when the search finds nothing.
    pub assume_trivial: bool,
}

impl Default for SOptions {
    fn default() -> Self {
        SOptions { bound: DEFAULT_BOUND, declared: None, assume_trivial: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SResult {
    pub group: RelationGroup,
    /// How the group was determined.
    pub method: &'static str,
    pub note: Option<String>,
}

fn exact(group: RelationGroup, method: &'static str) -> SResult {
    SResult { group, method, note: None }
}

/// `r^i == s^j` exactly.
pub fn holds(r: &CyclotomicScalar, s: &CyclotomicScalar, i: i64, j: i64) -> bool {
    r.pow(i).expect("r is nonzero") == s.pow(j).expect("s is nonzero")
}

pub fn compute_s(r: &CyclotomicScalar, s: &CyclotomicScalar, opts: &SOptions) -> Result<SResult> {
    if r.is_zero() || s.is_zero() {
        return Err(DownUpError::NotNoetherian);
    }
    let (or, os) = (r.order()?, s.order()?);
    match (or, os) {
        (OrderValue::Finite(a), OrderValue::Finite(c)) => {
            // smallest i > 0 with r^i a power of s
            let powers: HashMap<CyclotomicScalar, u32> = (0..c).map(|j| (s.powu(j), j)).collect();
            let (ia, jb) = (1..=a).find_map(|i| powers.get(&r.powu(i)).map(|&j| (i, j))).expect("r^a = 1 = s^0");
            Ok(exact(RelationGroup::Lattice { a: ia, b: jb, c }, "roots of unity"))
        }
        (OrderValue::Finite(n), OrderValue::Infinite) => {
            Ok(exact(RelationGroup::SameSign { n, m: 0 }, "r is a root of unity"))
        }
        (OrderValue::Infinite, OrderValue::Finite(m)) => {
            Ok(exact(RelationGroup::SameSign { n: 0, m }, "s is a root of unity"))
        }
        (OrderValue::Infinite, OrderValue::Infinite) => {
            if let (Some(a), Some(b)) = (r.rational_times_root(), s.rational_times_root()) {
                return Ok(exact(rational_times_root_group(r, s, &a, &b), "factorization"));
            }
            search(r, s, opts)
        }
    }
}

fn exponent_vector(q: &num_rational::BigRational) -> BTreeMap<BigInt, i64> {
    let mut out = BTreeMap::new();
    for (p, e) in factor_integer(q.numer()) {
        *out.entry(p).or_insert(0) += e as i64;
    }
    for (p, e) in factor_integer(q.denom()) {
        *out.entry(p).or_insert(0) -= e as i64;
    }
    out
}

fn rational_times_root_group(
    r: &CyclotomicScalar,
    s: &CyclotomicScalar,
    a: &RationalTimesRoot,
    b: &RationalTimesRoot,
) -> RelationGroup {
    let (ea, eb) = (exponent_vector(&a.modulus), exponent_vector(&b.modulus));
    // i·ea = j·eb with ea, eb nonzero since neither is a root of unity
    let Some((p, &x)) = ea.iter().next() else {
        return RelationGroup::Trivial;
    };
    let Some(&y) = eb.get(p) else {
        return RelationGroup::Trivial;
    };
    let g = x.gcd(&y);
    let (i0, j0) = (y / g, x / g);
    let (i0, j0) = if i0 < 0 { (-i0, -j0) } else { (i0, j0) };
    let keys: std::collections::BTreeSet<&BigInt> = ea.keys().chain(eb.keys()).collect();
    if keys.iter().any(|p| i0 * ea.get(*p).copied().unwrap_or(0) != j0 * eb.get(*p).copied().unwrap_or(0)) {
        return RelationGroup::Trivial;
    }
    // the moduli agree along (i0, j0); fix the root-of-unity parts
    let period = a.root_order().lcm(&b.root_order()) as i64;
    let k = (1..=period).find(|&k| holds(r, s, k * i0, k * j0)).expect("k = lcm of root orders works");
    RelationGroup::generated_by(k * i0, k * j0)
}

fn search(r: &CyclotomicScalar, s: &CyclotomicScalar, opts: &SOptions) -> Result<SResult> {
    let bound = opts.bound as i64;
    let mut s_powers: HashMap<CyclotomicScalar, i64> = HashMap::new();
    let s_inv = s.inv()?;
    let (mut up, mut down) = (CyclotomicScalar::one(), CyclotomicScalar::one());
    for j in 1..=bound {
        up = &up * s;
        down = &down * &s_inv;
        s_powers.insert(up.clone(), j);
        s_powers.insert(down.clone(), -j);
    }
    let mut rp = CyclotomicScalar::one();
    for i in 1..=bound {
        rp = &rp * r;
        if let Some(&j) = s_powers.get(&rp) {
            // every relation is a multiple of the generator, whose first
            // coordinate is the least positive i
            return Ok(exact(RelationGroup::generated_by(i, j), "bounded search"));
        }
    }
    if let Some((n, m)) = opts.declared {
        if n == 0 || !holds(r, s, n, m) {
            return Err(DownUpError::InvalidConfig(format!("declared relation r^{n} = s^{m} does not hold")));
        }
        let g = n.abs().gcd(&m.abs()).to_u64().unwrap_or(1);
        let smaller = factor_integer(&BigInt::from(g)).into_iter().find(|(p, _)| {
            let p = p.to_i64().unwrap();
            holds(r, s, n / p, m / p)
        });
        if let Some((p, _)) = smaller {
            return Err(DownUpError::InvalidConfig(format!(
                "declared relation ({n},{m}) is not minimal: ({},{}) also holds",
                n / p.to_i64().unwrap(),
                m / p.to_i64().unwrap()
            )));
        }
        let mut out = exact(RelationGroup::generated_by(n, m), "declared");
        out.note = Some(format!("relation r^{n} = s^{m} declared by the user and verified exactly"));
        return Ok(out);
    }
    if opts.assume_trivial {
        return Ok(SResult {
            group: RelationGroup::Trivial,
            method: "bounded search",
            note: Some(format!("no relation r^i = s^j with 0 < |i|, |j| <= {}; assumed trivial", opts.bound)),
        });
    }
    Err(DownUpError::UndecidableAtBound(opts.bound))
}

/// Checks that `g` is a genuine relation and that no proper divisor of it is.
pub fn verify_minimal(r: &CyclotomicScalar, s: &CyclotomicScalar, g: &RelationGroup) -> bool {
    match *g {
        RelationGroup::Lattice { a, b, c } => {
            holds(r, s, a as i64, b as i64)
                && holds(r, s, 0, c as i64)
                && (1..a as i64).all(|i| (0..c as i64).all(|j| !holds(r, s, i, j)))
                && (1..c as i64).all(|j| !holds(r, s, 0, j))
        }
        _ => {
            let (n, m) = g.generator().unwrap();
            if (n, m) == (0, 0) {
                return true;
            }
            holds(r, s, n, m)
                && (2..=n.abs().max(m.abs())).filter(|d| n % d == 0 && m % d == 0).all(|d| !holds(r, s, n / d, m / d))
        }
    }
}
