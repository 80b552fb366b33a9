//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | symbol | '(' expr ')'
//! ```
//!
//! Implicit multiplication is rejected and so is `**`. Offsets in errors are byte offsets.

use num_bigint::BigInt;

use super::poly::{Polynomial, VarList};
use super::rational::Rational;
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, vars: &VarList) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected character {:?}", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VarList,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        self.err_at(self.pos, message)
    }

    fn err_at(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            offset,
            message: message.into(),
        }
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

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(b'*') = self.peek() {
            let star = self.pos;
            self.pos += 1;
            if self.src.get(self.pos) == Some(&b'*') {
                return Err(self.err_at(star, "`**` is not an operator; use `^`"));
            }
            let rhs = self.unary()?;
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            if self.src.get(self.pos) == Some(&b'-') {
                return Err(self.err_at(at, "negative exponents are not allowed"));
            }
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.err_at(at, "expected a non-negative integer exponent"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| self.err_at(at, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let Some(ch) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        let start = self.pos;
        if ch.is_ascii_digit() {
            let num: BigInt = self.digits().parse().expect("digits parse");
            let mut value = Rational::from_integer(num);
            if self.src.get(self.pos) == Some(&b'/') {
                self.pos += 1;
                let at = self.pos;
                let d = self.digits();
                if d.is_empty() {
                    return Err(self.err_at(at, "expected denominator after '/'"));
                }
                let den: BigInt = d.parse().expect("digits parse");
                if den == BigInt::from(0) {
                    return Err(self.err_at(at, "zero denominator"));
                }
                value = Rational::new(value.to_integer(), den);
            }
            self.reject_implicit_product()?;
            return Ok(Polynomial::constant(self.vars, value));
        }
        if ch.is_ascii_alphabetic() || ch == b'_' {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            let idx = self
                .vars
                .index_of(name)
                .ok_or_else(|| self.err_at(start, format!("unknown symbol {name:?}")))?;
            self.reject_implicit_product()?;
            return Ok(Polynomial::var_at(self.vars, idx));
        }
        if ch == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            self.reject_implicit_product()?;
            return Ok(inner);
        }
        Err(self.err(format!("unexpected character {:?}", ch as char)))
    }

    fn reject_implicit_product(&mut self) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_alphanumeric() || c == b'_' || c == b'(' => {
                Err(self.err("implicit multiplication is not allowed; use '*'"))
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::int;
    use super::*;

    fn vars() -> VarList {
        VarList::new(&["l1", "l2"])
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &vars()).unwrap()
    }

    #[test]
    fn simple_forms() {
        let one = Polynomial::constant(&vars(), int(1));
        let l2 = Polynomial::var(&vars(), "l2").unwrap();
        assert_eq!(p("1-l2"), one.sub(&l2));
        assert_eq!(p("(l1-l2)^2").to_string(), "l1^2 - 2*l1*l2 + l2^2");
        assert_eq!(p("-1/2*l1^2").to_string(), "-1/2*l1^2");
        assert_eq!(p("-(l1)").to_string(), "-l1");
        assert_eq!(p("2 * 3/4").to_string(), "3/2");
    }

    #[test]
    fn double_star_is_rejected_at_its_offset() {
        match parse_poly("l1**2", &vars()) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [("l1 + zz", 5), ("2l1", 1), ("(l1", 3), ("l1^-1", 3), ("", 0), ("l1 +", 4)];
        for (src, at) in cases {
            match parse_poly(src, &vars()) {
                Err(Error::Parse { offset, .. }) => assert_eq!(offset, at, "{src}"),
                other => panic!("{src}: expected parse error, got {other:?}"),
            }
        }
    }
}
