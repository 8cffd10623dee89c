//! The algebra definition file.
//!
//! ```toml
//! conductor = 8            # optional; inferred from zeta(N) literals
//! r = 1
//! s = "zeta(8)^2"
//! gamma = "1/2"            # default 0
//! phi = "h^2 - 1"          # or ascending coefficients: phi = [-1, 0, 1]
//!
//! [relation]               # optional declared r^n = s^m
//! n = 2
//! m = -1
//!
//! [bounds]                 # all optional
//! degree = 12
//! s_search = 64
//! window = 20
//! assume_trivial = false
//! ```

use num_integer::Integer;
use serde::Deserialize;

use crate::algebra::{Algebra, AlgebraParams};
use crate::classify::SOptions;
use crate::error::{DownUpError, Result};
use crate::poly::UniPoly;
use crate::scalar::CyclotomicScalar;

use super::parse::{self, Expr};

pub const DEFAULT_DEGREE: u32 = 12;
pub const DEFAULT_WINDOW: i64 = 20;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Text(String),
}

impl Literal {
    fn expr(&self) -> Result<Expr> {
        match self {
            Literal::Int(n) => parse::parse_element(&n.to_string()),
            Literal::Text(s) => parse::parse_element(s),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PhiSpec {
    Coeffs(Vec<Literal>),
    Expr(Literal),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredRelation {
    pub n: i64,
    pub m: i64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    pub degree: u32,
    pub s_search: u32,
    pub window: i64,
    pub assume_trivial: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            degree: DEFAULT_DEGREE,
            s_search: crate::classify::DEFAULT_BOUND,
            window: DEFAULT_WINDOW,
            assume_trivial: false,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    pub conductor: Option<u32>,
    pub r: Literal,
    pub s: Literal,
    #[serde(default = "zero_literal")]
    pub gamma: Literal,
    #[serde(default = "zero_phi")]
    pub phi: PhiSpec,
    pub relation: Option<DeclaredRelation>,
    #[serde(default)]
    pub bounds: Bounds,
}

fn zero_literal() -> Literal {
    Literal::Int(0)
}

fn zero_phi() -> PhiSpec {
    PhiSpec::Expr(Literal::Int(0))
}

/// A loaded configuration.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub params: AlgebraParams,
    pub bounds: Bounds,
    pub declared: Option<(i64, i64)>,
}

impl Loaded {
    pub fn s_options(&self) -> SOptions {
        SOptions { bound: self.bounds.s_search, declared: self.declared, assume_trivial: self.bounds.assume_trivial }
    }
}

fn scalar_of(e: &Expr, what: &str) -> Result<CyclotomicScalar> {
    if !parse::is_scalar_expr(e) {
        return Err(DownUpError::InvalidConfig(format!("{what} must be a scalar, got '{e}'")));
    }
    parse::eval_scalar(e)
}

/// Evaluates an expression in `h` alone as a polynomial.
fn h_poly_of(e: &Expr) -> Result<UniPoly> {
    // h is central in L(0, 1, 1, 0), so products there are polynomial products
    let flat = AlgebraParams::new(
        UniPoly::zero(),
        CyclotomicScalar::one(),
        CyclotomicScalar::one(),
        CyclotomicScalar::zero(),
        1,
    )?;
    let x = parse::eval(e, &Algebra::without_cache(flat), None)?;
    let mut f = UniPoly::zero();
    for ((i, j, k), c) in x.terms() {
        if i != 0 || k != 0 {
            return Err(DownUpError::InvalidConfig(format!("phi must be a polynomial in h, got '{e}'")));
        }
        f.add_term(j, c.clone());
    }
    Ok(f)
}

impl AlgebraConfig {
    pub fn from_toml(src: &str) -> Result<Self> {
        toml::from_str(src).map_err(|e| DownUpError::InvalidConfig(e.message().to_string()))
    }

    pub fn load(&self) -> Result<Loaded> {
        let r_e = self.r.expr()?;
        let s_e = self.s.expr()?;
        let g_e = self.gamma.expr()?;
        let phi_es: Vec<Expr> = match &self.phi {
            PhiSpec::Coeffs(cs) => cs.iter().map(Literal::expr).collect::<Result<_>>()?,
            PhiSpec::Expr(e) => vec![e.expr()?],
        };
        let mut levels = Vec::new();
        for e in [&r_e, &s_e, &g_e].into_iter().chain(&phi_es) {
            parse::zeta_levels(e, &mut levels);
        }
        let inferred = levels.iter().fold(1u32, |a, &b| a.lcm(&b));
        let conductor = match self.conductor {
            Some(0) => return Err(DownUpError::InvalidConfig("conductor must be positive".into())),
            Some(n) => n,
            None => inferred,
        };
        let phi = match &self.phi {
            PhiSpec::Coeffs(_) => {
                let cs = phi_es.iter().map(|e| scalar_of(e, "a phi coefficient")).collect::<Result<Vec<_>>>()?;
                UniPoly::from_coeffs(cs)
            }
            PhiSpec::Expr(_) => h_poly_of(&phi_es[0])?,
        };
        let params = AlgebraParams::new(
            phi,
            scalar_of(&r_e, "r")?,
            scalar_of(&s_e, "s")?,
            scalar_of(&g_e, "gamma")?,
            conductor,
        )?;
        if self.bounds.window < 1 {
            return Err(DownUpError::InvalidConfig("bounds.window must be positive".into()));
        }
        Ok(Loaded { params, bounds: self.bounds, declared: self.relation.map(|d| (d.n, d.m)) })
    }
}

/// Parses and validates a configuration file's contents.
pub fn load_str(src: &str) -> Result<Loaded> {
    AlgebraConfig::from_toml(src)?.load()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::k;

    #[test]
    fn expression_and_coefficients() {
        let a = load_str("r = 1\ns = 2\ngamma = 1\nphi = \"h^2 - 1\"").unwrap();
        let b = load_str("r = 1\ns = 2\ngamma = 1\nphi = [-1, 0, 1]").unwrap();
        assert_eq!(a.params, b.params);
        assert_eq!(a.params.phi, UniPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(a.bounds.degree, DEFAULT_DEGREE);
    }

    #[test]
    fn infers_conductor() {
        let l = load_str("r = \"zeta(3)\"\ns = \"zeta(4)^2\"\nphi = \"0\"").unwrap();
        assert_eq!(l.params.conductor, 12);
        assert_eq!(l.params.s, k(-1));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(load_str("r = 0\ns = 1").unwrap_err(), DownUpError::NotNoetherian);
        assert!(matches!(load_str("r = 1\ns = 1\nphi = \"u*h\""), Err(DownUpError::InvalidConfig(_))));
        assert!(matches!(load_str("r = 1\ns = 1\nfoo = 3"), Err(DownUpError::InvalidConfig(_))));
        assert!(matches!(load_str("conductor = 3\nr = \"zeta(4)\"\ns = 1"), Err(DownUpError::InvalidConfig(_))));
    }

    #[test]
    fn declared_relation() {
        let l = load_str("r = 2\ns = 4\n[relation]\nn = 2\nm = 1\n[bounds]\ns_search = 8").unwrap();
        assert_eq!(l.s_options().declared, Some((2, 1)));
        assert_eq!(l.s_options().bound, 8);
    }
}
