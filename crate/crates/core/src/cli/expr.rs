//! A small language for bundle expressions.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('^' UINT)?
//! factor := 'O' ('(' INT ')')?
//!         | 'T(-1)'
//!         | 'Omega(' UINT ',' INT ')'
//!         | ('wedge' | 'sym' | 'hom') '(' UINT ',' expr ')'
//!         | 'dual' '(' expr ')'
//!         | 'twist' '(' expr ',' INT ')'
//!         | '(' expr ')'
//! ```
//!
//! Whitespace is ignored between tokens. The ambient dimension is supplied
//! at elaboration time, so one expression describes a bundle on every `P^n`.

use std::fmt;

use thiserror::Error;

use crate::chow::{BundleClass, ChowError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BundleExpr {
    /// `O(d)`; plain `O` is `O(0)`.
    Line(i64),
    /// `T(-1)`
    TangentTwist,
    /// `Omega(p, t)`
    Omega(usize, i64),
    Sum(Vec<BundleExpr>),
    Power(Box<BundleExpr>, u32),
    Wedge(u32, Box<BundleExpr>),
    Sym(u32, Box<BundleExpr>),
    Hom(u32, Box<BundleExpr>),
    Dual(Box<BundleExpr>),
    Twist(Box<BundleExpr>, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("PARSE_ERROR at offset {offset}: expected {}", expected.join(" | "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElabError {
    #[error(transparent)]
    Chow(#[from] ChowError),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&[&format!("'{}'", c as char)])
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.digits().and_then(|d| d.parse().ok()) {
            Some(v) => Ok(v),
            None => {
                self.pos = start;
                self.err(&["UINT"])
            }
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let neg = match self.src.get(self.pos) {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        match self.digits().and_then(|d| d.parse::<i64>().ok()) {
            Some(v) => Ok(if neg { -v } else { v }),
            None => {
                self.pos = start;
                self.err(&["INT"])
            }
        }
    }

    fn expr(&mut self) -> Result<BundleExpr, ParseError> {
        let mut terms = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            BundleExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<BundleExpr, ParseError> {
        let f = self.factor()?;
        if self.eat(b'^') {
            let m = self.uint()?;
            return Ok(BundleExpr::Power(Box::new(f), m));
        }
        Ok(f)
    }

    fn factor(&mut self) -> Result<BundleExpr, ParseError> {
        const FACTOR: &[&str] = &[
            "'O'", "'T(-1)'", "'Omega'", "'wedge'", "'sym'", "'hom'", "'dual'", "'twist'", "'('",
        ];
        if self.eat(b'(') {
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        let start = self.pos;
        let Some(word) = self.ident() else {
            return self.err(FACTOR);
        };
        match word {
            "O" => {
                if self.eat(b'(') {
                    let d = self.int()?;
                    self.expect(b')')?;
                    Ok(BundleExpr::Line(d))
                } else {
                    Ok(BundleExpr::Line(0))
                }
            }
            "T" => {
                self.expect(b'(')?;
                self.skip_ws();
                let at = self.pos;
                if self.int()? != -1 {
                    self.pos = at;
                    return self.err(&["'-1'"]);
                }
                self.expect(b')')?;
                Ok(BundleExpr::TangentTwist)
            }
            "Omega" => {
                self.expect(b'(')?;
                let p = self.uint()?;
                self.expect(b',')?;
                let t = self.int()?;
                self.expect(b')')?;
                Ok(BundleExpr::Omega(p as usize, t))
            }
            "wedge" | "sym" | "hom" => {
                self.expect(b'(')?;
                let k = self.uint()?;
                self.expect(b',')?;
                let e = Box::new(self.expr()?);
                self.expect(b')')?;
                Ok(match word {
                    "wedge" => BundleExpr::Wedge(k, e),
                    "sym" => BundleExpr::Sym(k, e),
                    _ => BundleExpr::Hom(k, e),
                })
            }
            "dual" => {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(BundleExpr::Dual(Box::new(e)))
            }
            "twist" => {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b',')?;
                let d = self.int()?;
                self.expect(b')')?;
                Ok(BundleExpr::Twist(Box::new(e), d))
            }
            _ => {
                self.pos = start;
                self.err(FACTOR)
            }
        }
    }
}

pub fn parse(src: &str) -> Result<BundleExpr, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err(&["'+'", "'^'", "end of input"]);
    }
    Ok(e)
}

impl BundleExpr {
    /// The class of this expression on `P^n`.
    pub fn elaborate(&self, n: usize) -> Result<BundleClass, ElabError> {
        Ok(match self {
            BundleExpr::Line(d) => BundleClass::line(n, *d),
            BundleExpr::TangentTwist => BundleClass::tangent_twist(n),
            BundleExpr::Omega(p, t) => BundleClass::form(n, *p, *t)?,
            BundleExpr::Sum(terms) => {
                let mut acc = BundleClass::trivial(n, 0);
                for t in terms {
                    acc = acc.direct_sum(&t.elaborate(n)?)?;
                }
                acc
            }
            BundleExpr::Power(e, m) | BundleExpr::Hom(m, e) => e.elaborate(n)?.multiple(*m as usize),
            BundleExpr::Wedge(k, e) => e.elaborate(n)?.exterior_power(*k)?,
            BundleExpr::Sym(k, e) => e.elaborate(n)?.symmetric_power(*k)?,
            BundleExpr::Dual(e) => e.elaborate(n)?.dual(),
            BundleExpr::Twist(e, d) => e.elaborate(n)?.twist(*d)?,
        })
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::Line(0) => write!(f, "O"),
            BundleExpr::Line(d) => write!(f, "O({d})"),
            BundleExpr::TangentTwist => write!(f, "T(-1)"),
            BundleExpr::Omega(p, t) => write!(f, "Omega({p}, {t})"),
            BundleExpr::Sum(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    if matches!(t, BundleExpr::Sum(_)) {
                        write!(f, "({t})")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
            BundleExpr::Power(e, m) => {
                if matches!(**e, BundleExpr::Sum(_) | BundleExpr::Power(..)) {
                    write!(f, "({e})^{m}")
                } else {
                    write!(f, "{e}^{m}")
                }
            }
            BundleExpr::Wedge(k, e) => write!(f, "wedge({k}, {e})"),
            BundleExpr::Sym(k, e) => write!(f, "sym({k}, {e})"),
            BundleExpr::Hom(k, e) => write!(f, "hom({k}, {e})"),
            BundleExpr::Dual(e) => write!(f, "dual({e})"),
            BundleExpr::Twist(e, d) => write!(f, "twist({e}, {d})"),
        }
    }
}
