//! Text syntax for polynomials: `3/2*x1^2*x2 - x2`.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' integer | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, which is how rational
//! coefficients such as `3/2` are written.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct PolyParseError {
    /// 1-based column within the parsed text.
    pub column: usize,
    pub message: String,
}

pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly, PolyParseError> {
    let mut parser = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        nvars,
        len: text.len(),
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    nvars: usize,
    len: usize,
}

impl Parser {
    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i) + 1
    }

    fn error(&self, message: impl Into<String>) -> PolyParseError {
        PolyParseError {
            column: self.column(),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn integer(&mut self) -> Result<BigInt, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok(digits.parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<Poly, PolyParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let col = self.column();
                    let divisor = self.unary()?;
                    let c = divisor.constant_term();
                    if !divisor.is_constant() || c.is_zero() {
                        return Err(PolyParseError {
                            column: col,
                            message: "division is only allowed by a nonzero constant".into(),
                        });
                    }
                    acc = acc.scale(&(Rational::from_integer(1.into()) / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, PolyParseError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, PolyParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, PolyParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(Poly::constant(self.nvars, Rational::from_integer(v)))
            }
            Some('x') => {
                let col = self.column();
                self.pos += 1;
                if !matches!(self.chars.get(self.pos), Some((_, c)) if c.is_ascii_digit()) {
                    return Err(self.error("expected a variable index after 'x'"));
                }
                let idx = self.integer()?;
                let idx: usize = idx.try_into().unwrap_or(usize::MAX);
                if idx == 0 || idx > self.nvars {
                    return Err(PolyParseError {
                        column: col,
                        message: format!("variable x{idx} out of range (algebra has {} variables)", self.nvars),
                    });
                }
                Ok(Poly::var(self.nvars, idx - 1).expect("checked range"))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_coefficients() {
        let p = parse_poly("3/2*x1^2*x2 - x2", 2).unwrap();
        assert_eq!(p.to_string(), "3/2*x1^2*x2 - x2");
    }

    #[test]
    fn parses_parentheses_and_unary_minus() {
        let p = parse_poly("-(x1 + x2)*(x1 - x2)", 2).unwrap();
        assert_eq!(p.to_string(), "-x1^2 + x2^2");
        assert_eq!(parse_poly(" 7 ", 0).unwrap(), Poly::int(0, 7));
        assert_eq!(parse_poly("-1/3", 0).unwrap().to_string(), "-1/3");
    }

    #[test]
    fn rejects_bad_input_with_columns() {
        let e = parse_poly("x1 + x3", 2).unwrap_err();
        assert_eq!(e.column, 6);
        let e = parse_poly("x1 / x2", 2).unwrap_err();
        assert_eq!(e.column, 6);
        let e = parse_poly("x1 +", 2).unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_poly("2 x1", 2).unwrap_err();
        assert_eq!(e.column, 3);
        assert!(parse_poly("1/0", 0).is_err());
        assert!(parse_poly("0.5", 0).is_err());
    }
}
