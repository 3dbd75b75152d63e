//! A small recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*      division only by constants
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := number | number '/' number | name | '(' expr ')'
//! ```
//!
//! Columns in errors are 1-based character positions.

use crate::error::{Error, Result};
use crate::mpoly::Poly;
use crate::rational::Rational;
use num::{BigInt, Zero};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Sym(char),
}

fn tokenize(input: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n: BigInt = digits.parse().expect("ascii digits");
            out.push((Tok::Num(n), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Name(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(Error::Parse {
                column: col,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [&'a str],
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.col(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let col = self.col();
                self.pos += 1;
                let d = self.unary()?;
                let Some(c) = constant_value(&d) else {
                    return Err(Error::Parse {
                        column: col,
                        message: "division is only allowed by a constant".into(),
                    });
                };
                if c.is_zero() {
                    return Err(Error::Parse {
                        column: col,
                        message: "division by zero".into(),
                    });
                }
                acc = acc.scale(&(Rational::from_integer(1.into()) / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(k)) => {
                    let Some(k) = u32::try_from(&k).ok().filter(|&k| k <= 64) else {
                        return self.err("exponent too large");
                    };
                    self.pos += 1;
                    Ok(base.pow(k))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let nvars = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(nvars, Rational::from_integer(n)))
            }
            Some(Tok::Name(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Poly::var(nvars, i))
                }
                None => self.err(format!("unknown variable '{name}', expected one of {}", self.vars.join(", "))),
            },
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn constant_value(p: &Poly) -> Option<Rational> {
    if p.is_zero() {
        return Some(Rational::zero());
    }
    let mut terms = p.terms();
    let (e, c) = terms.next()?;
    if terms.next().is_none() && e.iter().all(|&x| x == 0) {
        Some(c.clone())
    } else {
        None
    }
}

/// Parses `input` as a polynomial in the named variables.
pub fn parse_poly(input: &str, vars: &[&str]) -> Result<Poly> {
    let toks = tokenize(input)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        vars,
        end_col: input.chars().count() + 1,
    };
    let p = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.err("unexpected trailing input");
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    const V: [&str; 2] = ["x", "y"];

    #[test]
    fn parses_polynomials() {
        let p = parse_poly("x*y - (x+1)^2 + 3/4", &V).unwrap();
        assert_eq!(p.evaluate(&[int(1), int(2)]), int(2) - int(4) + rat(3, 4));
        let q = parse_poly("-x^2 / 2", &V).unwrap();
        assert_eq!(q.evaluate(&[int(2), int(0)]), int(-2));
    }

    #[test]
    fn reports_columns() {
        let e = parse_poly("x + z", &V).unwrap_err();
        assert!(matches!(e, Error::Parse { column: 5, .. }), "{e:?}");
        let e = parse_poly("x + (y", &V).unwrap_err();
        assert!(matches!(e, Error::Parse { column: 7, .. }), "{e:?}");
        let e = parse_poly("x / y", &V).unwrap_err();
        assert!(matches!(e, Error::Parse { column: 3, .. }), "{e:?}");
        let e = parse_poly("x $ y", &V).unwrap_err();
        assert!(matches!(e, Error::Parse { column: 3, .. }), "{e:?}");
    }
}
