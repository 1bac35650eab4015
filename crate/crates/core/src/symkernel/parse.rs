//! Recursive-descent parser for the ASCII expression grammar.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' exponent)?
//! exponent:= ['-'] INT | '(' ['-'] INT ')'
//! primary := INT | IDENT | FUNC '(' sum ')' | '(' sum ')'
//! ```

use super::expr::{AtomKind, Expr};
use crate::error::{Error, ParseError};

/// Variables accepted by [`parse_expr`].
pub const DEFAULT_VARIABLES: [&str; 11] = ["z", "zb", "v", "w", "wb", "wp", "wpp", "t", "x", "y", "u"];

/// Parses with the default variable set.
pub fn parse_expr(text: &str) -> Result<Expr, Error> {
    parse_expr_with(text, &DEFAULT_VARIABLES)
}

/// Parses accepting exactly the listed variable names.
pub fn parse_expr_with(text: &str, variables: &[&str]) -> Result<Expr, Error> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars: variables };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn syntax(&self, msg: String) -> Error {
        Error::Parse(ParseError::Syntax { pos: self.pos, msg })
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

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected '{}'", c as char)))
        }
    }

    fn sum(&mut self) -> Result<Expr, Error> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d).map_err(|_| {
                        Error::Parse(ParseError::Syntax { pos: at, msg: "division by zero".into() })
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, Error> {
        let base = self.primary()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let k = self.exponent()?;
        base.powi(k).map_err(|_| Error::Parse(ParseError::Syntax { pos: at, msg: "zero to a negative power".into() }))
    }

    fn exponent(&mut self) -> Result<i64, Error> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let non_int = |pos| Error::Parse(ParseError::NonIntegerExponent { pos });
        if start == self.pos {
            return Err(non_int(start));
        }
        if self.src.get(self.pos) == Some(&b'.') {
            return Err(non_int(start));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let k: i64 = digits.parse().map_err(|_| self.syntax("exponent too large".into()))?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(non_int(start));
            }
            self.pos += 1;
        }
        Ok(if neg { -k } else { k })
    }

    fn primary(&mut self) -> Result<Expr, Error> {
        let Some(c) = self.peek() else {
            return Err(self.syntax("unexpected end of input".into()));
        };
        if c == b'(' {
            self.pos += 1;
            let e = self.sum()?;
            self.expect(b')')?;
            return Ok(e);
        }
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.src.get(self.pos) == Some(&b'.') {
                return Err(self.syntax("decimal literals are not supported; write p/q".into()));
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let n: num_bigint::BigInt = digits.parse().unwrap();
            let r = crate::symkernel::scalar::Rat::from_bigints(n, num_bigint::BigInt::from(1));
            return Ok(Expr::from(r));
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let kind = match name {
                "atan" | "arctan" => Some(AtomKind::Arctan),
                "exp" => Some(AtomKind::Exp),
                "log" => Some(AtomKind::Log),
                "sqrt" => Some(AtomKind::Sqrt),
                _ => None,
            };
            if let Some(kind) = kind {
                self.expect(b'(')?;
                let arg = self.sum()?;
                self.expect(b')')?;
                return Expr::apply_kind(kind, &arg)
                    .map_err(|e| Error::Parse(ParseError::Syntax { pos: start, msg: e.to_string() }));
            }
            if name == "i" {
                return Ok(Expr::i());
            }
            if self.vars.contains(&name) {
                return Ok(Expr::var(name));
            }
            return Err(Error::Parse(ParseError::UnknownIdentifier { pos: start, name: name.to_string() }));
        }
        Err(self.syntax(format!("unexpected '{}'", c as char)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors() {
        assert!(matches!(parse_expr("z +"), Err(Error::Parse(ParseError::Syntax { pos: 3, .. }))));
        assert!(matches!(parse_expr("q*z"), Err(Error::Parse(ParseError::UnknownIdentifier { pos: 0, .. }))));
        assert!(matches!(parse_expr("z^zb"), Err(Error::Parse(ParseError::NonIntegerExponent { .. }))));
        assert!(matches!(parse_expr("z^1.5"), Err(Error::Parse(ParseError::NonIntegerExponent { .. }))));
        assert!(parse_expr("(z").is_err());
        assert!(parse_expr("1/0").is_err());
    }

    #[test]
    fn precedence() {
        let a = parse_expr("-z^2").unwrap();
        assert_eq!(a, -(Expr::var("z").pow(2)));
        let b = parse_expr("2^-1*z").unwrap();
        assert_eq!(b, Expr::var("z").scale(&crate::GaussRat::frac(1, 2)));
        let c = parse_expr("z^(-2)").unwrap();
        assert_eq!(c, Expr::var("z").pow(2).inv().unwrap());
    }

    #[test]
    fn example_surface() {
        let h = parse_expr("z*zb + z*atan(zb) + atan(z)*zb").unwrap();
        assert_eq!(h.atoms().len(), 4);
        assert_eq!(parse_expr(&h.to_text()).unwrap(), h);
    }
}
