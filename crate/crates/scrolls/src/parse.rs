//! Parser for polynomial expressions.
//!
//! Grammar (UTF-8 text): integer literals, rationals written `a/b`,
//! identifiers `[A-Za-z][A-Za-z0-9_]*`, operators `+ - * ^`, parentheses.
//! `^` takes a nonnegative integer literal. Implicit multiplication is not
//! allowed, and `/` only forms rational literals between two integers.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Rat};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(mut self) -> Result<Vec<(usize, Tok)>> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            let start = self.pos;
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.pos += 1;
                }
                b'+' => {
                    out.push((start, Tok::Plus));
                    self.pos += 1;
                }
                b'-' => {
                    out.push((start, Tok::Minus));
                    self.pos += 1;
                }
                b'*' => {
                    out.push((start, Tok::Star));
                    self.pos += 1;
                }
                b'/' => {
                    out.push((start, Tok::Slash));
                    self.pos += 1;
                }
                b'^' => {
                    out.push((start, Tok::Caret));
                    self.pos += 1;
                }
                b'(' => {
                    out.push((start, Tok::LParen));
                    self.pos += 1;
                }
                b')' => {
                    out.push((start, Tok::RParen));
                    self.pos += 1;
                }
                b'0'..=b'9' => {
                    let mut end = self.pos;
                    while end < self.src.len() && self.src[end].is_ascii_digit() {
                        end += 1;
                    }
                    let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                    out.push((start, Tok::Int(text.parse().unwrap())));
                    self.pos = end;
                }
                c if c.is_ascii_alphabetic() => {
                    let mut end = self.pos;
                    while end < self.src.len()
                        && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                    {
                        end += 1;
                    }
                    let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                    out.push((start, Tok::Ident(text.to_string())));
                    self.pos = end;
                }
                other => {
                    return Err(Error::Parse {
                        offset: start,
                        msg: format!("unexpected character `{}`", other as char),
                    });
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    vars: &'a [String],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos(),
            msg: msg.into(),
        }
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary ('*' unary)*
    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    // unary := ('+'|'-')* power
    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    // power := atom ('^' exponent)?
    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        match self.bump() {
            Some(Tok::Int(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    return Err(self.err("fractional exponent is not allowed"));
                }
                u32::try_from(&n).map_err(|_| self.err("exponent too large"))
            }
            Some(Tok::Minus) => Err(self.err("negative exponent is not allowed")),
            _ => Err(self.err("expected a nonnegative integer exponent after `^`")),
        }
    }

    // atom := INT ('/' INT)? | IDENT | '(' expr ')'
    fn atom(&mut self) -> Result<MultiPoly> {
        match self.bump() {
            Some(Tok::Int(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(self.err("zero denominator"));
                            }
                            Ok(MultiPoly::constant(self.vars, Rat::new(n, d)))
                        }
                        _ => Err(self.err("expected integer denominator after `/`")),
                    }
                } else {
                    Ok(MultiPoly::constant(self.vars, Rat::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => {
                if !self.vars.contains(&name) {
                    self.idx -= 1; // point at the identifier
                    return Err(self.err(format!("unknown identifier `{name}`")));
                }
                MultiPoly::var(self.vars, &name)
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(tok) => {
                self.idx -= 1;
                Err(self.err(format!("unexpected token {tok:?}")))
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse an expression over the given ordered variable list.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<MultiPoly> {
    let toks = Lexer {
        src: text.as_bytes(),
        pos: 0,
    }
    .tokens()?;
    let mut p = Parser {
        toks,
        idx: 0,
        vars,
        end: text.len(),
    };
    let poly = p.expr()?;
    if p.idx != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int, vars};

    #[test]
    fn basic_expression() {
        let vs = vars(&["t1", "t2"]);
        let p = parse_poly("3*t1^2 - 1/2*t2", &vs).unwrap();
        let t1 = MultiPoly::var(&vs, "t1").unwrap();
        let t2 = MultiPoly::var(&vs, "t2").unwrap();
        assert_eq!(p, &t1.pow(2).scale(&rat_int(3)) - &t2.scale(&rat(1, 2)));
    }

    #[test]
    fn binomial_expansion() {
        let vs = vars(&["t1"]);
        let p = parse_poly("(t1+1)^3", &vs).unwrap();
        let q = parse_poly("t1^3 + 3*t1^2 + 3*t1 + 1", &vs).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn unknown_identifier() {
        let vs = vars(&["t1", "t2"]);
        match parse_poly("t3", &vs) {
            Err(Error::Parse { offset, msg }) => {
                assert_eq!(offset, 0);
                assert!(msg.contains("t3"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn bad_exponents() {
        let vs = vars(&["t"]);
        assert!(matches!(
            parse_poly("t^-2", &vs),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_poly("t^1/2", &vs),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn syntax_error_has_position() {
        let vs = vars(&["t"]);
        match parse_poly("t + &", &vs) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn print_parse_roundtrip() {
        let vs = vars(&["t", "x0"]);
        for text in ["t^2*x0 - 3*t + 1/2", "-t + x0", "0", "7"] {
            let p = parse_poly(text, &vs).unwrap();
            let q = parse_poly(&p.to_string(), &vs).unwrap();
            assert_eq!(p, q);
        }
    }
}
