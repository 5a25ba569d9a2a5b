//! Text grammar for rational functions:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary   := ('+' | '-') unary | power
//! power   := primary ('^' exponent)?
//! exponent:= '-'? int | '(' '-'? int ')'
//! primary := int | 'x' | 't' | '(' expr ')'
//! ```

use super::{Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::ff::Field;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Tok {
    Int,
    Var,
    Gen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
    field: &'a Field,
    var: char,
    generator: Option<char>,
    gen_declared: bool,
}

impl<'a> Parser<'a> {
    fn err(&self, at: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col0 + at + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let at = self.pos;
        let Some(&c) = self.chars.get(self.pos) else {
            return Ok((Tok::End, at));
        };
        let t = match c {
            '0'..='9' => Tok::Int,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c == self.var => Tok::Var,
            c if Some(c) == self.generator => Tok::Gen,
            c => return Err(self.err(at, format!("unexpected character '{c}'"))),
        };
        Ok((t, at))
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn int_digits(&mut self) -> (String, usize) {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.chars[start..self.pos].iter().collect(), start)
    }

    fn int_mod_p(&self, digits: &str) -> i64 {
        let p = self.field.characteristic() as u64;
        let mut v = 0u64;
        for d in digits.bytes() {
            v = (v * 10 + (d - b'0') as u64) % p;
        }
        v as i64
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            match self.peek()?.0 {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            let (t, at) = self.peek()?;
            match t {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(self.err(at, "division by zero"));
                    }
                    acc = &acc / &d;
                }
                Tok::Int | Tok::Var | Tok::Gen | Tok::LParen => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek()?.0 {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let (t, _) = self.peek()?;
        let paren = t == Tok::LParen;
        if paren {
            self.bump();
        }
        let neg = if self.peek()?.0 == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (digits, at) = self.int_digits();
        if digits.is_empty() {
            return Err(self.err(at, "expected an integer exponent"));
        }
        let v: i64 = digits
            .parse()
            .map_err(|_| self.err(at, "exponent too large"))?;
        if paren {
            let (t, at) = self.peek()?;
            if t != Tok::RParen {
                return Err(self.err(at, "expected ')'"));
            }
            self.bump();
        }
        Ok(if neg { -v } else { v })
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.primary()?;
        if self.peek()?.0 == Tok::Caret {
            let at = self.pos;
            self.bump();
            let e = self.exponent()?;
            if e < 0 && base.is_zero() {
                return Err(self.err(at, "division by zero"));
            }
            return base.powi(e);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<RationalFunction> {
        let (t, at) = self.peek()?;
        match t {
            Tok::Int => {
                let (digits, _) = self.int_digits();
                Ok(RationalFunction::constant(
                    &self.field.from_int(self.int_mod_p(&digits)),
                ))
            }
            Tok::Var => {
                self.bump();
                Ok(RationalFunction::x(self.field))
            }
            Tok::Gen => {
                self.bump();
                if !self.gen_declared {
                    return Err(Error::UndeclaredGenerator);
                }
                Ok(RationalFunction::constant(&self.field.generator()))
            }
            Tok::LParen => {
                self.bump();
                let v = self.expr()?;
                let (t, at) = self.peek()?;
                if t != Tok::RParen {
                    return Err(self.err(at, "expected ')'"));
                }
                self.bump();
                Ok(v)
            }
            Tok::End => Err(self.err(at, "unexpected end of input")),
            _ => Err(self.err(at, "expected a number, variable or '('")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        let (t, at) = self.peek()?;
        if t != Tok::End {
            return Err(self.err(at, "unexpected trailing input"));
        }
        Ok(())
    }
}

/// Parses a rational function in x over `field`. The generator `t` is
/// accepted only when the field is not prime.
pub fn parse_rational(text: &str, field: &Field) -> Result<RationalFunction> {
    parse_rational_at(text, field, 1, 0)
}

/// As [`parse_rational`], reporting errors at the given line and column
/// offset of an enclosing document.
pub fn parse_rational_at(
    text: &str,
    field: &Field,
    line: usize,
    column_offset: usize,
) -> Result<RationalFunction> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        line,
        col0: column_offset,
        field,
        var: 'x',
        generator: Some('t'),
        gen_declared: !field.is_prime_field(),
    };
    let v = p.expr()?;
    p.finish()?;
    Ok(v)
}

/// Parses a polynomial in t over F_p (for example a field modulus) and
/// returns its residues, constant term first.
pub fn parse_prime_poly_in_t(text: &str, p: u64, line: usize, column_offset: usize) -> Result<Vec<u32>> {
    let field = Field::prime(p)?;
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        line,
        col0: column_offset,
        field: &field,
        var: 't',
        generator: None,
        gen_declared: false,
    };
    let v = parser.expr()?;
    parser.finish()?;
    let poly: &Polynomial = v.as_polynomial().ok_or_else(|| Error::Parse {
        line,
        column: column_offset + 1,
        message: "expected a polynomial in t".into(),
    })?;
    Ok(poly.coeffs().iter().map(|c| c.coeffs()[0]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn parses_factored_denominators() {
        let f9 = make_field(3, 2, None).unwrap();
        let f = parse_rational("(x^2+t)/((x-1)^2*(x+t))", &f9).unwrap();
        assert_eq!(f.den().degree(), Some(3));
        let again = parse_rational(&f.to_string(), &f9).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn generator_requires_extension() {
        let f3 = make_field(3, 1, None).unwrap();
        assert_eq!(
            parse_rational("x+t", &f3).unwrap_err(),
            Error::UndeclaredGenerator
        );
    }

    #[test]
    fn reports_positions() {
        let f3 = make_field(3, 1, None).unwrap();
        match parse_rational("x^2 + ?", &f3).unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (1, 7)),
            e => panic!("{e}"),
        }
        assert!(parse_rational("1/(x-x)", &f3).is_err());
    }

    #[test]
    fn negative_exponents_and_juxtaposition() {
        let f5 = make_field(5, 1, None).unwrap();
        let a = parse_rational("2x + x^-1", &f5).unwrap();
        let b = parse_rational("2*x + 1/x", &f5).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_prime_poly_in_t("t^2+1", 3, 1, 0).unwrap(), vec![1, 0, 1]);
    }
}
