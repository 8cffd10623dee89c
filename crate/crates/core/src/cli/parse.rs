//! Element expressions.
//!
//! ```text
//! expr   := '-'? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)? | '(' expr ')' ('^' nat)?
//! atom   := 'u' | 'd' | 'h' | 'H' | int | int '/' int | 'zeta(' nat ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{Algebra, PBWElement};
use crate::error::{DownUpError, Result};
use crate::scalar::CyclotomicScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    U,
    D,
    H,
    BigH,
    Num(BigRational),
    Zeta(u32),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Sym(char),
    Ident(String),
    Int(BigInt),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(s.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*^()/".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(DownUpError::SyntaxError { pos: i, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(DownUpError::SyntaxError { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn nat(&mut self) -> Result<u32> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                u32::try_from(&n).or_else(|_| self.err("exponent too large"))
            }
            _ => self.err("expected a nonnegative integer"),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat('-') { Expr::Neg(Box::new(self.term()?)) } else { self.term()? };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = if self.eat('(') {
            let e = self.expr()?;
            self.expect(')')?;
            e
        } else {
            self.atom()?
        };
        if self.eat('^') {
            let n = self.nat()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    let den = match self.peek().cloned() {
                        Some(Tok::Int(d)) if d != BigInt::from(0) => d,
                        _ => return self.err("expected a positive denominator"),
                    };
                    self.pos += 1;
                    return Ok(Expr::Num(BigRational::new(n, den)));
                }
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "u" => Ok(Expr::U),
                    "d" => Ok(Expr::D),
                    "h" => Ok(Expr::H),
                    "H" => Ok(Expr::BigH),
                    "zeta" => {
                        self.expect('(')?;
                        let n = self.nat()?;
                        if n == 0 {
                            return Err(DownUpError::SyntaxError { pos: start, msg: "zeta(0) is undefined".into() });
                        }
                        self.expect(')')?;
                        Ok(Expr::Zeta(n))
                    }
                    _ => Err(DownUpError::UnknownSymbol(name)),
                }
            }
            Some(_) => self.err("expected an atom"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_element(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.chars().count() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Neg(_) => 2,
        Expr::Mul(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Num(q) if !q.is_integer() => 3,
        _ => 5,
    }
}

struct Wrap<'a>(&'a Expr, bool);

impl fmt::Display for Wrap<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::U => write!(f, "u"),
            Expr::D => write!(f, "d"),
            Expr::H => write!(f, "h"),
            Expr::BigH => write!(f, "H"),
            Expr::Num(q) => write!(f, "{q}"),
            Expr::Zeta(n) => write!(f, "zeta({n})"),
            Expr::Add(a, b) => write!(f, "{} + {}", Wrap(a, false), Wrap(b, prec(b) < 3)),
            Expr::Sub(a, b) => write!(f, "{} - {}", Wrap(a, false), Wrap(b, prec(b) < 3)),
            Expr::Mul(a, b) => write!(f, "{}*{}", Wrap(a, prec(a) < 3), Wrap(b, prec(b) < 4)),
            Expr::Neg(a) => write!(f, "-{}", Wrap(a, prec(a) < 3)),
            Expr::Pow(a, n) => write!(f, "{}^{n}", Wrap(a, prec(a) < 5)),
        }
    }
}

/// Evaluates an expression in `a`; `big_h` is substituted for `H`.
pub fn eval(e: &Expr, a: &Algebra, big_h: Option<&PBWElement>) -> Result<PBWElement> {
    Ok(match e {
        Expr::U => PBWElement::u(),
        Expr::D => PBWElement::d(),
        Expr::H => PBWElement::h(),
        Expr::BigH => {
            big_h.cloned().ok_or_else(|| DownUpError::HypothesisFailed("H is undefined for these parameters".into()))?
        }
        Expr::Num(q) => PBWElement::scalar(CyclotomicScalar::from_rational(q.clone())),
        Expr::Zeta(n) => PBWElement::scalar(CyclotomicScalar::zeta(*n)),
        Expr::Add(x, y) => &eval(x, a, big_h)? + &eval(y, a, big_h)?,
        Expr::Sub(x, y) => &eval(x, a, big_h)? - &eval(y, a, big_h)?,
        Expr::Mul(x, y) => a.mul(&eval(x, a, big_h)?, &eval(y, a, big_h)?),
        Expr::Neg(x) => -&eval(x, a, big_h)?,
        Expr::Pow(x, n) => a.pow(&eval(x, a, big_h)?, *n),
    })
}

/// Whether the expression mentions only scalars.
pub fn is_scalar_expr(e: &Expr) -> bool {
    match e {
        Expr::U | Expr::D | Expr::H | Expr::BigH => false,
        Expr::Num(_) | Expr::Zeta(_) => true,
        Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) => is_scalar_expr(x) && is_scalar_expr(y),
        Expr::Neg(x) | Expr::Pow(x, _) => is_scalar_expr(x),
    }
}

/// Largest `n` of any `zeta(n)` in the expression.
pub fn zeta_levels(e: &Expr, out: &mut Vec<u32>) {
    match e {
        Expr::Zeta(n) => out.push(*n),
        Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) => {
            zeta_levels(x, out);
            zeta_levels(y, out);
        }
        Expr::Neg(x) | Expr::Pow(x, _) => zeta_levels(x, out),
        _ => {}
    }
}

/// Evaluates a scalar-only expression.
pub fn eval_scalar(e: &Expr) -> Result<CyclotomicScalar> {
    Ok(match e {
        Expr::Num(q) => CyclotomicScalar::from_rational(q.clone()),
        Expr::Zeta(n) => CyclotomicScalar::zeta(*n),
        Expr::Add(x, y) => &eval_scalar(x)? + &eval_scalar(y)?,
        Expr::Sub(x, y) => &eval_scalar(x)? - &eval_scalar(y)?,
        Expr::Mul(x, y) => &eval_scalar(x)? * &eval_scalar(y)?,
        Expr::Neg(x) => -&eval_scalar(x)?,
        Expr::Pow(x, n) => eval_scalar(x)?.powu(*n),
        _ => return Err(DownUpError::InvalidConfig(format!("'{e}' is not a scalar"))),
    })
}

pub fn parse_scalar(src: &str) -> Result<CyclotomicScalar> {
    let e = parse_element(src)?;
    if !is_scalar_expr(&e) {
        return Err(DownUpError::InvalidConfig(format!("'{src}' is not a scalar")));
    }
    eval_scalar(&e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_and_rejects() {
        assert!(parse_element("d*u - 2*u*d").is_ok());
        assert_eq!(parse_element("u^2*h^3*d").unwrap().to_string(), "u^2*h^3*d");
        assert!(matches!(parse_element("u**2"), Err(DownUpError::SyntaxError { pos: 2, .. })));
        assert!(matches!(parse_element("u h"), Err(DownUpError::SyntaxError { .. })));
        assert_eq!(parse_element("x + u"), Err(DownUpError::UnknownSymbol("x".into())));
    }

    #[test]
    fn round_trips() {
        for src in [
            "-u*d + 1/2*h",
            "(u + d)^3 - (h - 1)",
            "-(u - d)*(h + zeta(8)^3)",
            "u - (d - h)",
            "(-u)^2 + (u^2)^3",
            "2 + -3/4*u",
            "H^2 - 3*h^4",
        ] {
            let Ok(ast) = parse_element(src) else {
                continue;
            };
            let printed = ast.to_string();
            assert_eq!(parse_element(&printed).unwrap(), ast, "{src} -> {printed}");
        }
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("-1/2").unwrap(), crate::scalar::kq(-1, 2));
        assert_eq!(parse_scalar("zeta(4)^2").unwrap(), crate::scalar::k(-1));
        assert!(parse_scalar("2*h").is_err());
    }
}
