use crate::exponent::{Exponent, ExponentParseError};

use super::{function_arity, BinOp, Expr, ParseError};

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let expr = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("operator or end of input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn found(&self) -> String {
        match self.src.get(self.pos) {
            None => "end of input".to_string(),
            Some(_) => {
                // one full character, even if it is multi-byte
                let rest = String::from_utf8_lossy(&self.src[self.pos..]);
                let c = rest.chars().next().unwrap_or('?');
                format!("`{c}`")
            }
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            expected: expected.to_string(),
            found: self.found(),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("`{}`", byte as char)))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.product()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            // right associative, and the exponent may carry a sign: x^-1
            let exponent = self.unary()?;
            return Ok(Expr::binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                let name = self.ident();
                if name == "dt" {
                    return self.dt_literal();
                }
                if self.peek() == Some(b'(') {
                    return self.call(name, start);
                }
                Ok(Expr::Var(name))
            }
            _ => Err(self.error("number, `dt[...]`, name or `(`")),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.src.get(p.pos).is_some_and(u8::is_ascii_digit) {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut count = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            count += digits(self);
        }
        if count == 0 {
            self.pos = start;
            return Err(self.error("number"));
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                // not an exponent after all, e.g. `2e` is `2` followed by `e`
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Expr::Num(v)),
            _ => {
                self.pos = start;
                Err(self.error("finite number"))
            }
        }
    }

    fn dt_literal(&mut self) -> Result<Expr, ParseError> {
        // bare `dt` is the first order infinitesimal dt[1]
        if self.src.get(self.pos) != Some(&b'[') {
            return Ok(Expr::Dt(Exponent::one()));
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let mut seen_digit = false;
        let mut seen_slash = false;
        while let Some(&c) = self.src.get(self.pos) {
            match c {
                b'0'..=b'9' => seen_digit = true,
                b'.' => {}
                b'/' if seen_digit && !seen_slash => {
                    seen_slash = true;
                    seen_digit = false;
                }
                b' ' | b'\t' if seen_slash && !seen_digit => {}
                _ => break,
            }
            self.pos += 1;
        }
        if !seen_digit {
            return Err(self.error("order"));
        }
        let end = self.pos;
        let text = std::str::from_utf8(&self.src[start..end]).unwrap_or_default();
        let order = Exponent::parse_literal(text).map_err(|e| ParseError {
            offset: start,
            expected: match e {
                ExponentParseError::TooManyDigits => {
                    "order with at most 12 significant digits".to_string()
                }
                ExponentParseError::ZeroDenominator => "nonzero denominator".to_string(),
                _ => "order".to_string(),
            },
            found: format!("`{text}`"),
        })?;
        if !order.is_positive() {
            return Err(ParseError {
                offset: start,
                expected: "positive order".to_string(),
                found: format!("`{text}`"),
            });
        }
        self.skip_ws();
        if self.src.get(self.pos) != Some(&b']') {
            return Err(self.error("`]`"));
        }
        self.pos += 1;
        Ok(Expr::Dt(order))
    }

    fn call(&mut self, name: String, start: usize) -> Result<Expr, ParseError> {
        let Some(arity) = function_arity(&name) else {
            return Err(ParseError {
                offset: start,
                expected: "known function".to_string(),
                found: format!("`{name}`"),
            });
        };
        self.expect(b'(')?;
        let mut args = vec![self.sum()?];
        while args.len() < arity {
            self.expect(b',')?;
            args.push(self.sum()?);
        }
        self.expect(b')')?;
        Ok(Expr::Call(name, args))
    }
}
