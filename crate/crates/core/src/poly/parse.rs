//! Recursive-descent parser for rational expressions over named variables.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
//! `unary := '-' unary | power`, `power := atom ('^' '-'? int)?`,
//! `atom := int | ident | '(' expr ')'`.

use num_bigint::BigInt;
use thiserror::Error;

use super::RationalFunction;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {0:?} at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("trailing input at offset {0}")]
    Trailing(usize),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|p| p.1).collect();
            out.push((Tok::Int(text.parse().expect("digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().map(|p| p.1).collect()), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), pos));
            i += 1;
        } else {
            return Err(ParseError::UnexpectedChar(c, pos));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Result<Tok, ParseError> {
        let t = self.toks.get(self.pos).ok_or(ParseError::UnexpectedEnd)?.0.clone();
        self.pos += 1;
        Ok(t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(0, |t| t.1)
    }

    fn expr(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            if c == '*' {
                acc = acc.mul(&rhs);
            } else {
                if rhs.is_zero() {
                    return Err(ParseError::DivisionByZero);
                }
                acc = acc.div(&rhs);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction, ParseError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let neg = matches!(self.peek(), Some(Tok::Op('-')));
            if neg {
                self.pos += 1;
            }
            let off = self.offset();
            let Tok::Int(e) = self.next()? else {
                return Err(ParseError::UnexpectedChar('^', off));
            };
            let e: i64 = i64::try_from(e).map_err(|_| ParseError::UnexpectedChar('^', off))?;
            let e = if neg { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(ParseError::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction, ParseError> {
        let n = self.names.len();
        let off = self.offset();
        match self.next()? {
            Tok::Int(v) => Ok(RationalFunction::constant(n, v)),
            Tok::Ident(name) => {
                let i = self
                    .names
                    .iter()
                    .position(|s| *s == name)
                    .ok_or(ParseError::UnknownVariable(name))?;
                Ok(RationalFunction::var(n, i))
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                match self.next()? {
                    Tok::Op(')') => Ok(e),
                    _ => Err(ParseError::UnexpectedChar(')', off)),
                }
            }
            Tok::Op(c) => Err(ParseError::UnexpectedChar(c, off)),
        }
    }
}

/// Parses a rational expression over the variables `names` (index = position).
pub fn parse_rational(s: &str, names: &[String]) -> Result<RationalFunction, ParseError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, names };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Trailing(p.offset()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::indexed_names;

    #[test]
    fn precedence() {
        let names = indexed_names("x", 2);
        let a = parse_rational("1 + x1*x2^2 - -x2", &names).unwrap();
        let b = parse_rational("x2 + 1 + x1*x2*x2", &names).unwrap();
        assert_eq!(a, b);
        let c = parse_rational("x1^-2", &names).unwrap();
        assert_eq!(c, parse_rational("1/(x1*x1)", &names).unwrap());
    }

    #[test]
    fn errors() {
        let names = indexed_names("x", 1);
        assert_eq!(parse_rational("x7", &names), Err(ParseError::UnknownVariable("x7".into())));
        assert_eq!(parse_rational("1/0", &names), Err(ParseError::DivisionByZero));
        assert!(matches!(parse_rational("(x1", &names), Err(ParseError::UnexpectedEnd)));
        assert!(matches!(parse_rational("x1 x1", &names), Err(ParseError::Trailing(_))));
    }
}
