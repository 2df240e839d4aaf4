//! Parser for Beatty formula text such as `floor((1+sqrt(2))*n - sqrt(2)/2)`.
//!
//! The argument of `floor`/`ceil` must be linear in `n` with coefficients in
//! a single quadratic field. An optional `a(n) =` prefix is accepted.

use crate::error::{Error, Result};
use crate::quadratic::QuadraticNumber;
use crate::sturmian::{BeattyParams, Rounding};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(
                t.parse().map_err(|_| Error::Parse(format!("number too large: {t}")))?,
            ));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/()=".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

/// `c0 + c1 * n`.
#[derive(Debug, Clone)]
struct Linear {
    c0: QuadraticNumber,
    c1: QuadraticNumber,
}

impl Linear {
    fn constant(c: QuadraticNumber) -> Self {
        Linear {
            c0: c,
            c1: QuadraticNumber::zero(),
        }
    }

    fn as_constant(&self) -> Option<&QuadraticNumber> {
        self.c1.is_zero().then_some(&self.c0)
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

fn field_err() -> Error {
    Error::Parse("coefficients from different quadratic fields".into())
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.bump() {
            Some(Tok::Op(o)) if o == c => Ok(()),
            t => Err(Error::Parse(format!("expected {c:?}, found {t:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Linear> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            let (c0, c1) = if c == '+' {
                (acc.c0.checked_add(&rhs.c0), acc.c1.checked_add(&rhs.c1))
            } else {
                (acc.c0.checked_sub(&rhs.c0), acc.c1.checked_sub(&rhs.c1))
            };
            acc = Linear {
                c0: c0.ok_or_else(field_err)?,
                c1: c1.ok_or_else(field_err)?,
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Linear> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                let (k, v) = match (acc.as_constant(), rhs.as_constant()) {
                    (Some(k), _) => (k.clone(), rhs),
                    (_, Some(k)) => (k.clone(), acc),
                    _ => return Err(Error::Parse("formula is not linear in n".into())),
                };
                Linear {
                    c0: k.checked_mul(&v.c0).ok_or_else(field_err)?,
                    c1: k.checked_mul(&v.c1).ok_or_else(field_err)?,
                }
            } else {
                let k = rhs
                    .as_constant()
                    .filter(|k| !k.is_zero())
                    .ok_or_else(|| Error::Parse("division by zero or by n".into()))?;
                Linear {
                    c0: acc.c0.checked_div(k).ok_or_else(field_err)?,
                    c1: acc.c1.checked_div(k).ok_or_else(field_err)?,
                }
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Linear> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(Linear {
                    c0: -v.c0,
                    c1: -v.c1,
                })
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Linear> {
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Linear::constant(QuadraticNumber::integer(v))),
            Some(Tok::Ident(id)) if id == "n" => Ok(Linear {
                c0: QuadraticNumber::zero(),
                c1: QuadraticNumber::one(),
            }),
            Some(Tok::Ident(id)) if id == "sqrt" => {
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                let k = inner
                    .as_constant()
                    .filter(|k| k.is_integer() && k.signum() >= 0)
                    .ok_or_else(|| Error::Parse("sqrt needs a non-negative integer".into()))?;
                let k = num_traits::ToPrimitive::to_u64(&k.floor())
                    .ok_or_else(|| Error::Parse("sqrt argument too large".into()))?;
                Ok(Linear::constant(QuadraticNumber::sqrt(k)))
            }
            Some(Tok::Op('(')) => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

pub fn parse_beatty(text: &str) -> Result<BeattyParams> {
    let mut toks = lex(text)?;
    if let Some(eq) = toks.iter().position(|t| *t == Tok::Op('=')) {
        toks.drain(..=eq);
    }
    let mut p = Parser { toks, pos: 0 };
    let rounding = match p.bump() {
        Some(Tok::Ident(f)) if f == "floor" => Rounding::Floor,
        Some(Tok::Ident(f)) if f == "ceil" => Rounding::Ceil,
        t => return Err(Error::Parse(format!("expected floor or ceil, found {t:?}"))),
    };
    p.expect('(')?;
    let lin = p.expr()?;
    p.expect(')')?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    if lin.c1.checked_add(&lin.c0).is_none() {
        return Err(field_err());
    }
    Ok(BeattyParams::new(lin.c1, lin.c0, rounding))
}
