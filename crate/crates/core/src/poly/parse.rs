use num_bigint::BigInt;

use super::{Monomial, MonomialOrder, PolyError, Polynomial, MAX_VARS};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
    order: MonomialOrder,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> PolyError {
        PolyError::Parse {
            offset: self.pos,
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

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.product()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected an exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let v: BigInt = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .unwrap();
                Ok(Polynomial::constant(v, self.order))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = self.resolve(ident).ok_or_else(|| PolyError::Parse {
                    offset: start,
                    message: format!("unknown variable `{ident}`"),
                })?;
                if idx >= MAX_VARS {
                    return Err(PolyError::TooManyVariables(idx));
                }
                Ok(Polynomial::term(Monomial::var(idx), BigInt::from(1), self.order))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn resolve(&self, ident: &str) -> Option<usize> {
        if let Some(i) = self.names.iter().position(|n| n == ident) {
            return Some(i);
        }
        if self.names.is_empty() {
            let k: usize = ident.strip_prefix('x')?.parse().ok()?;
            return k.checked_sub(1);
        }
        None
    }
}

/// Parses `+ - * ^` expressions with parentheses and integer literals.
/// With an empty `names` slice, variables are `x1, x2, ...` (1-based);
/// otherwise identifiers are looked up in `names`.
pub fn parse_polynomial(text: &str, names: &[String], order: MonomialOrder) -> Result<Polynomial, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        names,
        order,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const O: MonomialOrder = MonomialOrder::DegRevLex;

    #[test]
    fn basic_forms() {
        let p = parse_polynomial("-(1 + x2 + x5 + x2*x5)", &[], O).unwrap();
        assert_eq!(p.to_string(), "-x2*x5 - x2 - x5 - 1");
        let q = parse_polynomial("(x1+1)^2", &[], O).unwrap();
        assert_eq!(q.to_string(), "x1^2 + 2*x1 + 1");
        assert_eq!(parse_polynomial("0", &[], O).unwrap().to_string(), "0");
    }

    #[test]
    fn named_variables() {
        let names: Vec<String> = vec!["x1".into(), "y1".into(), "z1".into()];
        let p = parse_polynomial("x1*y1*z1 - x1 - y1 - z1 - 2", &names, O).unwrap();
        assert_eq!(p.render(&names), "x1*y1*z1 - x1 - y1 - z1 - 2");
        assert!(parse_polynomial("w", &names, O).is_err());
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            parse_polynomial("x1 + ", &[], O),
            Err(PolyError::Parse {
                offset: 5,
                message: "unexpected end of input".into()
            })
        );
        assert!(matches!(
            parse_polynomial("x1 )", &[], O),
            Err(PolyError::Parse { offset: 3, .. })
        ));
        assert!(parse_polynomial("x0", &[], O).is_err());
    }
}
