//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! poly := sign? term (('+'|'-') term)*
//! term := coef? mono*          (at least one of the two)
//! mono := ('x'|'y') ('^' nat)?
//! coef := int ('/' posint)?
//! ```
//!
//! Whitespace is insignificant and juxtaposition means product. Error
//! positions are 1-based line and column numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Poly2;
use crate::error::{Error, Result};
use crate::exactnum::Rational;

pub fn parse_polynomial(text: &str) -> Result<Poly2> {
    let mut p = Parser::new(text);
    let poly = p.poly()?;
    p.skip_ws();
    if let Some((c, pos)) = p.peek() {
        return Err(p.error_at(pos, format!("unexpected character {c:?}")));
    }
    Ok(poly)
}

#[derive(Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

struct Parser {
    chars: Vec<(char, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn new(text: &str) -> Self {
        let mut chars = Vec::with_capacity(text.len());
        let (mut line, mut column) = (1, 1);
        for c in text.chars() {
            chars.push((c, Pos { line, column }));
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Parser {
            chars,
            at: 0,
            end: Pos { line, column },
        }
    }

    fn peek(&self) -> Option<(char, Pos)> {
        self.chars.get(self.at).copied()
    }

    fn pos(&self) -> Pos {
        self.peek().map(|(_, p)| p).unwrap_or(self.end)
    }

    fn bump(&mut self) {
        self.at += 1;
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some((c, _)) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn error_at(&self, pos: Pos, message: impl Into<String>) -> Error {
        Error::Parse {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }

    fn poly(&mut self) -> Result<Poly2> {
        self.skip_ws();
        let mut negate = false;
        let start = self.pos();
        if let Some((c @ ('+' | '-'), _)) = self.peek() {
            negate = c == '-';
            self.bump();
        }
        let mut acc = match self.term()? {
            Some(t) if negate => -t,
            Some(t) => t,
            None if self.peek().is_none() && !negate => {
                return Err(self.error_at(start, "empty polynomial"))
            }
            None => return Err(self.error_at(start, "expected a term")),
        };
        loop {
            self.skip_ws();
            let (op, op_pos) = match self.peek() {
                Some((c @ ('+' | '-'), pos)) => (c, pos),
                _ => break,
            };
            self.bump();
            match self.term()? {
                Some(t) if op == '-' => acc -= &t,
                Some(t) => acc += t,
                None => return Err(self.error_at(op_pos, format!("expected a term after '{op}'"))),
            }
        }
        Ok(acc)
    }

    /// `None` when no term starts here.
    fn term(&mut self) -> Result<Option<Poly2>> {
        self.skip_ws();
        let coef = self.coef()?;
        let mut seen = coef.is_some();
        let (mut i, mut j) = (0u32, 0u32);
        loop {
            self.skip_ws();
            let var = match self.peek() {
                Some((c @ ('x' | 'y'), _)) => c,
                _ => break,
            };
            self.bump();
            seen = true;
            let e = self.exponent()?;
            if var == 'x' {
                i = i.checked_add(e).ok_or_else(|| self.error_at(self.pos(), "exponent overflow"))?;
            } else {
                j = j.checked_add(e).ok_or_else(|| self.error_at(self.pos(), "exponent overflow"))?;
            }
        }
        if !seen {
            return Ok(None);
        }
        let c = coef.unwrap_or_else(Rational::one);
        Ok(Some(Poly2::monomial(i, j, c)))
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        match self.peek() {
            Some(('^', _)) => {
                self.bump();
                self.skip_ws();
                let pos = self.pos();
                let digits = self
                    .digits()
                    .ok_or_else(|| self.error_at(pos, "expected an exponent after '^'"))?;
                digits
                    .parse::<u32>()
                    .map_err(|_| self.error_at(pos, "exponent out of range"))
            }
            _ => Ok(1),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some((c, _)) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        (!s.is_empty()).then_some(s)
    }

    fn coef(&mut self) -> Result<Option<Rational>> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().expect("ascii digits");
        let save = self.at;
        self.skip_ws();
        if let Some(('/', slash)) = self.peek() {
            self.bump();
            self.skip_ws();
            let pos = self.pos();
            let den = self
                .digits()
                .ok_or_else(|| self.error_at(slash, "expected a denominator after '/'"))?;
            let den: BigInt = den.parse().expect("ascii digits");
            if den.is_zero() {
                return Err(self.error_at(pos, "zero denominator"));
            }
            return Ok(Some(Rational::new(num, den)));
        }
        self.at = save;
        Ok(Some(Rational::from_integer(num)))
    }
}
