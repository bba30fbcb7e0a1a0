//! Expression grammar:
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' uint)?
//! atom     := rational | identifier | '(' expr ')'
//! rational := int ('/' uint)?
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Element, GeneratorTable};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Token {
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

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Int(text[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse { position: i, message: format!("unexpected character `{ch}`") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    table: &'a GeneratorTable,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.offset(), message: message.into() })
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Element> {
        let negate = if self.peek() == Some(&Token::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            match self.bump() {
                Some(Token::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse { position: self.offset(), message: "exponent too large".into() })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.pos -= 1;
                    return self.error("expected a non-negative integer exponent");
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Element> {
        match self.bump() {
            Some(Token::Int(n)) => {
                let mut q = Scalar::from_integer(n);
                if self.peek() == Some(&Token::Slash) {
                    self.bump();
                    match self.bump() {
                        Some(Token::Int(d)) if !d.is_zero() => q /= Scalar::from_integer(d),
                        _ => {
                            self.pos -= 1;
                            return self.error("expected a positive denominator");
                        }
                    }
                }
                Ok(Element::constant(self.table, q))
            }
            Some(Token::Ident(name)) => Element::generator(self.table, &name),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Token::RParen) {
                    self.pos -= 1;
                    return self.error("expected `)`");
                }
                Ok(inner)
            }
            Some(_) => {
                self.pos -= 1;
                self.error("expected a number, generator or `(`")
            }
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses an expression over `table` into canonical form. Odd generators
/// raised to a power ≥ 2 normalize to zero.
pub fn parse(text: &str, table: &GeneratorTable) -> Result<Element> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, end: text.len(), table };
    let e = p.expr()?;
    if p.pos < p.tokens.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Generator, Monomial};
    use crate::scalar::{int, ratio};

    fn table() -> GeneratorTable {
        GeneratorTable::new(vec![Generator::even("x", 0), Generator::odd("xi", 1), Generator::odd("eta", 1)]).unwrap()
    }

    #[test]
    fn rational_coefficients() {
        let t = table();
        let e = parse("2/3 * x^2 * xi - 1", &t).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.coefficient(&Monomial::from_exponents(vec![2, 1, 0])), ratio(2, 3));
        assert_eq!(e.constant_term(), int(-1));
        assert_eq!(e.to_string(), "2/3 * x^2 * xi - 1");
    }

    #[test]
    fn reversed_odd_pair_prints_with_sign() {
        let t = table();
        assert_eq!(parse("eta*xi", &t).unwrap().to_string(), "-1 * xi * eta");
    }

    #[test]
    fn odd_square_vanishes() {
        assert!(parse("xi^2", &table()).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let t = table();
        assert_eq!(
            parse("x + $", &t).unwrap_err(),
            Error::Parse { position: 4, message: "unexpected character `$`".into() }
        );
        assert!(matches!(parse("x +", &t), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse("(x", &t), Err(Error::Parse { .. })));
        assert!(matches!(parse("1/0", &t), Err(Error::Parse { .. })));
        assert_eq!(parse("y", &t).unwrap_err(), Error::UnknownGenerator("y".into()));
        assert!(matches!(parse("x x", &t), Err(Error::Parse { position: 2, .. })));
    }

    #[test]
    fn nested_parentheses() {
        let t = table();
        assert_eq!(parse("-(x - 1)^2", &t).unwrap(), parse("-x^2 + 2*x - 1", &t).unwrap());
    }
}
