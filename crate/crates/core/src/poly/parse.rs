use super::Poly;
use crate::error::{Error, Result};
use crate::field::Field;

/// Recursive-descent parser for `x^3 + (1+w)*x + 2` style literals.
/// Supports `+ - *`, integer powers, parentheses and implicit products
/// such as `2x`.
pub(super) fn parse_poly<F: Field>(f: &F, s: &str) -> Result<Poly<F::Elem>> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parser = Parser { f, chars, pos: 0 };
    let out = parser.expr()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error());
    }
    Ok(out)
}

struct Parser<'a, F> {
    f: &'a F,
    chars: Vec<char>,
    pos: usize,
}

impl<F: Field> Parser<'_, F> {
    fn error(&self) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Parse(format!(
            "malformed polynomial {text:?} at position {}",
            self.pos
        ))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly<F::Elem>> {
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if negative {
                acc.sub(self.f, &t)
            } else {
                acc.add(self.f, &t)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<F::Elem>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                }
                Some(c) if c == '(' || c.is_ascii_alphabetic() => {}
                _ => break,
            }
            let next = self.factor()?;
            acc = acc.mul(self.f, &next);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly<F::Elem>> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.integer()?;
            let k: usize = k.parse().map_err(|_| self.error())?;
            return Ok(base.pow(self.f, k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error());
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<Poly<F::Elem>> {
        let f = self.f;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('x') => {
                self.pos += 1;
                Ok(Poly::x(f))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                Ok(Poly::constant(f, f.parse(&c.to_string())?))
            }
            Some(c) if c.is_ascii_digit() => {
                let mut literal = self.integer()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    literal.push('/');
                    literal.push_str(&self.integer()?);
                }
                Ok(Poly::constant(f, f.parse(&literal)?))
            }
            _ => Err(self.error()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, GaussianRationals};

    #[test]
    fn parses_nested_expressions() {
        let f = FiniteField::new(2, 2, true).unwrap();
        let a = parse_poly(&f, "(x+1)^2").unwrap();
        let b = parse_poly(&f, "x^2 + 1").unwrap();
        assert_eq!(a, b);
        let c = parse_poly(&f, "w x + w^2").unwrap();
        assert_eq!(c.format(&f), "w*x + (1+w)");
    }

    #[test]
    fn parses_gaussian_coefficients() {
        let g = GaussianRationals;
        let a = parse_poly(&g, "x - (1+i)").unwrap();
        assert_eq!(a.format(&g), "x + (-1-i)");
        let b = parse_poly(&g, "x^2 + 1/2").unwrap();
        assert_eq!(b.coeffs().len(), 3);
    }

    #[test]
    fn rejects_malformed() {
        let f = FiniteField::new(3, 1, false).unwrap();
        for bad in ["", "x^", "(x+1", "x+*", "x)"] {
            assert!(parse_poly(&f, bad).is_err(), "{bad:?}");
        }
    }
}
