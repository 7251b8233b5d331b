//! Text form of polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := uint | 'x' | 'w' | '(' expr ')'
//! ```
//!
//! Integer literals are reduced mod p and whitespace is ignored. `w` denotes the
//! generator of F_{p^k} over F_p and is only accepted when `k > 1`.

use crate::field::Field;
use crate::poly::Polynomial;

/// Largest accepted exponent.
pub const MAX_EXPONENT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("exponent exceeds {MAX_EXPONENT}")]
    ExponentOverflow,
    #[error("'w' is only defined in extension fields")]
    GeneratorInPrimeField,
    #[error("unbalanced parenthesis")]
    Unbalanced,
}

pub fn parse_poly(text: &str, field: Field) -> Result<Polynomial, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    match parser.peek() {
        None => Ok(poly),
        Some(b')') => Err(parser.error(ParseErrorKind::Unbalanced)),
        Some(c) => Err(parser.error(ParseErrorKind::Unexpected(c as char))),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: Field,
}

impl Parser<'_> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            offset: self.pos,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let mut e: u64 = 0;
        while let Some(d) = self.peek().filter(u8::is_ascii_digit) {
            e = e * 10 + (d - b'0') as u64;
            if e > MAX_EXPONENT {
                return Err(ParseError {
                    offset: start,
                    kind: ParseErrorKind::ExponentOverflow,
                });
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(match self.peek() {
                Some(c) => self.error(ParseErrorKind::Unexpected(c as char)),
                None => self.error(ParseErrorKind::UnexpectedEnd),
            });
        }
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        let field = self.field;
        match self.peek() {
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
            Some(b'x') => {
                self.pos += 1;
                Ok(Polynomial::x(field))
            }
            Some(b'w') => {
                if field.k() == 1 {
                    return Err(self.error(ParseErrorKind::GeneratorInPrimeField));
                }
                self.pos += 1;
                Ok(Polynomial::constant(field.generator()))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error(ParseErrorKind::Unbalanced));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(d) if d.is_ascii_digit() => {
                let p = field.p();
                let mut v = 0u64;
                while let Some(d) = self.peek().filter(u8::is_ascii_digit) {
                    v = (v * 10 + (d - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(Polynomial::constant(field.element(v as i64)))
            }
            Some(c) => Err(self.error(ParseErrorKind::Unexpected(c as char))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn examples() {
        let f13 = make_field(13, 1).unwrap();
        assert_eq!(
            parse_poly("x^2*(x+1)", f13).unwrap(),
            Polynomial::from_ints(f13, &[0, 0, 1, 1])
        );
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(
            parse_poly("x^3+x^2+1", f5).unwrap(),
            Polynomial::from_ints(f5, &[1, 0, 1, 1])
        );
        assert_eq!(parse_poly("(x+1)^0", f5).unwrap(), Polynomial::one(f5));
    }

    #[test]
    fn literals_reduce_and_whitespace_is_ignored() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(
            parse_poly(" 10 * x ^ 2 - 8 ", f7).unwrap(),
            Polynomial::from_ints(f7, &[-8, 0, 10])
        );
        assert_eq!(
            parse_poly("123456789012345678901234567890", f7).unwrap(),
            Polynomial::constant(f7.element((123456789012345678901234567890u128 % 7) as i64))
        );
    }

    #[test]
    fn extension_generator() {
        let f4 = make_field(2, 2).unwrap();
        let p = parse_poly("w*x^2 + (1+w)", f4).unwrap();
        assert_eq!(p.coeff_at(2), f4.generator());
        assert_eq!(p.coeff_at(0), f4.generator() + f4.one());
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(
            parse_poly("w+1", f5).unwrap_err().kind,
            ParseErrorKind::GeneratorInPrimeField
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let f5 = make_field(5, 1).unwrap();
        let e = parse_poly("x^2 + y", f5).unwrap_err();
        assert_eq!((e.offset, e.kind), (6, ParseErrorKind::Unexpected('y')));
        let e = parse_poly("(x+1", f5).unwrap_err();
        assert_eq!((e.offset, e.kind), (4, ParseErrorKind::Unbalanced));
        let e = parse_poly("x+", f5).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        let e = parse_poly("x^99999999999999999999", f5).unwrap_err();
        assert_eq!((e.offset, e.kind), (2, ParseErrorKind::ExponentOverflow));
        let e = parse_poly("x)", f5).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unbalanced);
        assert!(parse_poly("-x", f5).is_err());
    }

    #[test]
    fn display_round_trips() {
        let f9 = make_field(3, 2).unwrap();
        let w = f9.generator();
        let p = Polynomial::new(f9, vec![w, f9.element(2), w * w + f9.one(), f9.one()]);
        assert_eq!(parse_poly(&p.to_string(), f9).unwrap(), p);
        let f13 = make_field(13, 1).unwrap();
        let q = Polynomial::from_ints(f13, &[12, 0, 5, 1]);
        assert_eq!(parse_poly(&q.to_string(), f13).unwrap(), q);
    }
}
