//! Exact integer expressions for exponent formulas such as `(2q-1)/3`.
//!
//! Grammar: `+ - * / ^`, parentheses, unary minus, implicit multiplication
//! (`2q`, `3(n+1)`), integer literals and the symbols `p q n k t`.
//! Division must be exact; `^` is right-associative with a non-negative exponent.

use crate::error::{Error, Result};

/// Values bound to the formula symbols; `None` means "not supplied".
#[derive(Clone, Copy, Debug, Default)]
pub struct ExprVars {
    pub p: Option<i128>,
    pub q: Option<i128>,
    pub n: Option<i128>,
    pub k: Option<i128>,
    pub t: Option<i128>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Tok {
    Num(i128),
    Var(char),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut v: i128 = 0;
                while let Some(&d) = chars.peek() {
                    let Some(d) = d.to_digit(10) else { break };
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as i128))
                        .ok_or_else(|| overflow(src))?;
                    chars.next();
                }
                out.push(Tok::Num(v));
            }
            'p' | 'q' | 'n' | 'k' | 't' => {
                out.push(Tok::Var(c));
                chars.next();
            }
            '+' | '-' | '*' | '/' | '^' => {
                out.push(Tok::Op(c));
                chars.next();
            }
            '(' => {
                out.push(Tok::LParen);
                chars.next();
            }
            ')' => {
                out.push(Tok::RParen);
                chars.next();
            }
            _ => {
                return Err(Error::InvalidFunction(format!(
                    "unexpected character {c:?} in exponent {src:?}"
                )))
            }
        }
    }
    Ok(out)
}

fn overflow(src: &str) -> Error {
    Error::InvalidFunction(format!("integer overflow evaluating {src:?}"))
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a ExprVars,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn syntax(&self, what: &str) -> Error {
        Error::InvalidFunction(format!("{what} in exponent {:?}", self.src))
    }

    fn expr(&mut self) -> Result<i128> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.checked_add(rhs) } else { acc.checked_sub(rhs) }
                .ok_or_else(|| overflow(self.src))?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<i128> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.checked_mul(rhs).ok_or_else(|| overflow(self.src))?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if rhs == 0 {
                        return Err(Error::InexactDivision(format!("division by zero in {:?}", self.src)));
                    }
                    if acc % rhs != 0 {
                        return Err(Error::InexactDivision(format!(
                            "{acc}/{rhs} is not an integer in {:?}",
                            self.src
                        )));
                    }
                    acc /= rhs;
                }
                // Implicit multiplication: `2q`, `3(n+1)`, `(q-1)(q+1)`.
                Some(Tok::Num(_) | Tok::Var(_) | Tok::LParen) => {
                    let rhs = self.power()?;
                    acc = acc.checked_mul(rhs).ok_or_else(|| overflow(self.src))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<i128> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return self.unary()?.checked_neg().ok_or_else(|| overflow(self.src));
        }
        if let Some(Tok::Op('+')) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<i128> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = self.unary()?;
            if e < 0 {
                return Err(self.syntax("negative power"));
            }
            let e = u32::try_from(e).map_err(|_| overflow(self.src))?;
            return base.checked_pow(e).ok_or_else(|| overflow(self.src));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<i128> {
        let tok = self.peek().ok_or_else(|| self.syntax("unexpected end"))?;
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(v),
            Tok::Var(c) => {
                let v = match c {
                    'p' => self.vars.p,
                    'q' => self.vars.q,
                    'n' => self.vars.n,
                    'k' => self.vars.k,
                    _ => self.vars.t,
                };
                v.ok_or_else(|| {
                    Error::InvalidFunction(format!("symbol {c} used in {:?} but not given", self.src))
                })
            }
            Tok::LParen => {
                let v = self.expr()?;
                if self.peek() != Some(Tok::RParen) {
                    return Err(self.syntax("missing ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.syntax("unexpected token")),
        }
    }
}

/// Evaluates an exponent formula exactly.
pub fn eval_expr(src: &str, vars: &ExprVars) -> Result<i128> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::InvalidFunction("empty exponent".into()));
    }
    let mut parser = Parser { toks, pos: 0, vars, src };
    let v = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.syntax("trailing input"));
    }
    Ok(v)
}
