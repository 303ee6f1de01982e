use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Q, RatFun, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("coefficient syntax error at byte {pos}: {msg}")]
pub struct ParseCoeffError {
    pub pos: usize,
    pub msg: String,
}

/// Parses a coefficient such as `-3/4`, `z^2-1`, `(z^2-1)/(z)` or `1/(1-t)`.
/// Both `z` and `t` denote the indeterminate.
pub fn parse_coeff(text: &str) -> Result<RatFun, ParseCoeffError> {
    let mut p = CoeffParser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct CoeffParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl CoeffParser<'_> {
    fn err(&self, msg: &str) -> ParseCoeffError {
        ParseCoeffError { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFun, ParseCoeffError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun, ParseCoeffError> {
        let mut acc = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            if c == b'*' {
                acc = acc * rhs;
            } else {
                if rhs.is_zero() {
                    return Err(self.err("division by zero"));
                }
                acc = acc / rhs;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFun, ParseCoeffError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParseCoeffError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<RatFun, ParseCoeffError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'z' | b't') => {
                self.pos += 1;
                Ok(RatFun::var())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFun::from_poly(UPoly::constant(Q::from_integer(n))))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
