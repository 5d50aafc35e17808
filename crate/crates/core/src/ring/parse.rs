//! Recursive-descent parser for ring elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | identifier | '(' expr ')'
//! ```
//! Whitespace is insignificant; positions in errors are byte offsets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{is_identifier, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Token::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            debug_assert!(is_identifier(&text[start..i]));
            out.push((start, Token::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Token::Op(c)));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap();
            return Err(Error::Syntax {
                position: i,
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a, R: Ring> {
    ring: &'a R,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl<R: Ring> Parser<'_, R> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<R::Elem> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.ring.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.ring.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<R::Elem> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            let f = self.unary()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<R::Elem> {
        if self.eat('-') {
            let v = self.unary()?;
            Ok(self.ring.neg(&v))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<R::Elem> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    let Ok(e) = u32::try_from(&n) else {
                        return self.error("exponent too large");
                    };
                    self.pos += 1;
                    Ok(self.ring.pow(&base, e))
                }
                _ => self.error("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<R::Elem> {
        let start = self.offset();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    let Some(Token::Int(d)) = self.peek().cloned() else {
                        return self.error("expected an integer denominator");
                    };
                    if d.is_zero() {
                        return self.error("zero denominator");
                    }
                    self.pos += 1;
                    let q = BigRational::new(n, d);
                    match self.ring.embed_rational(&q) {
                        Some(v) => Ok(v),
                        None => Err(Error::Syntax {
                            position: start,
                            message: "rational literal is not a ring element".into(),
                        }),
                    }
                } else {
                    Ok(self.ring.embed_integer(&n))
                }
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.ring.variable(&name).ok_or(Error::UnknownVariable {
                    name,
                    position: start,
                })
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected `)`");
                }
                Ok(v)
            }
            Some(Token::Op(c)) => self.error(format!("unexpected `{c}`")),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parse `text` as an element of `ring`.
pub fn parse_element<R: Ring>(ring: &R, text: &str) -> Result<R::Elem> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        ring,
        tokens,
        pos: 0,
        end: text.len(),
    };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return p.error("trailing input");
    }
    Ok(v)
}
