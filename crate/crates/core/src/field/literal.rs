use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// One term `num/den · sym^power` of an element literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LinearTerm {
    pub num: BigInt,
    pub den: BigInt,
    pub power: u32,
}

/// Parse `a + b*w` style literals into terms. `symbols` lists the accepted
/// generator names; an empty slice admits plain rationals only.
pub(crate) fn parse_linear_literal(s: &str, symbols: &[char]) -> Result<Vec<LinearTerm>> {
    let err = || Error::Parse(format!("malformed element literal {s:?}"));
    let mut text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    while text.starts_with('(') && text.ends_with(')') && balanced(&text[1..text.len() - 1]) {
        text = text[1..text.len() - 1].to_string();
    }
    if text.is_empty() {
        return Err(err());
    }

    let mut terms = Vec::new();
    let mut rest = text.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        } else if !first {
            return Err(err());
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        rest = tail;
        let mut parsed = parse_term(term, symbols).ok_or_else(err)?;
        if negative {
            parsed.num = -parsed.num;
        }
        terms.push(parsed);
    }
    Ok(terms)
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

fn parse_term(term: &str, symbols: &[char]) -> Option<LinearTerm> {
    if term.is_empty() {
        return None;
    }
    let mut out = LinearTerm {
        num: BigInt::one(),
        den: BigInt::one(),
        power: 0,
    };
    for factor in term.split('*') {
        if factor.is_empty() {
            return None;
        }
        // Implicit product such as "2w".
        let digits = factor.find(|c: char| !(c.is_ascii_digit() || c == '/'));
        let (number, symbol) = match digits {
            Some(0) => ("", factor),
            Some(i) => factor.split_at(i),
            None => (factor, ""),
        };
        if !number.is_empty() {
            let (n, d) = match number.split_once('/') {
                Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
                None => (number.parse::<BigInt>().ok()?, BigInt::one()),
            };
            if d.is_zero() {
                return None;
            }
            out.num *= n;
            out.den *= d;
        }
        if !symbol.is_empty() {
            let mut chars = symbol.chars();
            let sym = chars.next()?;
            if !symbols.contains(&sym) {
                return None;
            }
            let exp = chars.as_str();
            let k = if exp.is_empty() {
                1
            } else {
                exp.strip_prefix('^')?.parse::<u32>().ok()?
            };
            out.power += k;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(num: i64, den: i64, power: u32) -> LinearTerm {
        LinearTerm {
            num: num.into(),
            den: den.into(),
            power,
        }
    }

    #[test]
    fn parses_sums() {
        assert_eq!(
            parse_linear_literal("1 + 2*w", &['w']).unwrap(),
            vec![t(1, 1, 0), t(2, 1, 1)]
        );
        assert_eq!(
            parse_linear_literal("(-1/2-i)", &['i']).unwrap(),
            vec![t(-1, 2, 0), t(-1, 1, 1)]
        );
        assert_eq!(
            parse_linear_literal("w^3", &['w']).unwrap(),
            vec![t(1, 1, 3)]
        );
        assert_eq!(
            parse_linear_literal("3w", &['w']).unwrap(),
            vec![t(3, 1, 1)]
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_linear_literal("", &['w']).is_err());
        assert!(parse_linear_literal("1+", &['w']).is_err());
        assert!(parse_linear_literal("x", &['w']).is_err());
        assert!(parse_linear_literal("1/0", &[]).is_err());
        assert!(parse_linear_literal("w", &[]).is_err());
    }
}
