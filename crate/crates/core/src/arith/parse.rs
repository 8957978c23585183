//! Text input: rational-function expressions and component lists.
//!
//! Grammar (`x` and `t` are the same variable):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | atom)*
//! unary  := '-' unary | power
//! power  := atom ('^' signed_int)?
//! atom   := integer | 'x' | 't' | '(' expr ')'
//! ```

use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    p: u64,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("integer out of range"))
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            Some('(') => {
                self.bump();
                let v = self.signed_int()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                return Ok(v);
            }
            _ => false,
        };
        let v = self.integer()?;
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some('/') => {
                    self.bump();
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
                }
                // implicit product such as `3x` or `2(x+1)`
                Some(c) if c == 'x' || c == 't' || c == '(' || c.is_ascii_digit() => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.peek() == Some('-') {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let e = self.signed_int()?;
        let mag = u32::try_from(e.unsigned_abs()).map_err(|_| self.err("exponent too large"))?;
        let pw = base.pow(mag);
        if e < 0 {
            RatFunc::one(self.p)
                .div(&pw)
                .map_err(|_| self.err("negative power of zero"))
        } else {
            Ok(pw)
        }
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('x') | Some('t') => {
                self.bump();
                Ok(RatFunc::x(self.p))
            }
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(RatFunc::constant(self.p, v.rem_euclid(self.p as i64)))
            }
            _ => Err(self.err("expected a number, a variable or '('")),
        }
    }
}

/// Parses an expression in `x` (or `t`) over F_p.
pub fn parse_ratfunc(p: u64, src: &str) -> Result<RatFunc> {
    let mut ps = Parser {
        src,
        chars: src.chars().collect(),
        pos: 0,
        p,
    };
    let f = ps.expr()?;
    if ps.peek().is_some() {
        return Err(ps.err("trailing input"));
    }
    Ok(f)
}

/// Splits `"(a, b, c)"` or `"a, b, c"` at top-level commas.
pub fn split_components(src: &str) -> Result<Vec<String>> {
    let mut s = src.trim();
    if s.starts_with('(') && s.ends_with(')') && closes_at_end(s) {
        s = &s[1..s.len() - 1];
    }
    let mut out = vec![];
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {src:?}")));
        }
        if c == ',' && depth == 0 {
            out.push(std::mem::take(&mut cur).trim().to_string());
        } else {
            cur.push(c);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {src:?}")));
    }
    out.push(cur.trim().to_string());
    if out.iter().any(|c| c.is_empty()) {
        return Err(Error::Parse(format!("empty component in {src:?}")));
    }
    Ok(out)
}

fn closes_at_end(s: &str) -> bool {
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i == s.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

/// Comma-separated integer list, e.g. `"1,2,4"`.
pub fn parse_int_list(src: &str) -> Result<Vec<i64>> {
    split_components(src)?
        .iter()
        .map(|c| {
            c.parse()
                .map_err(|_| Error::Parse(format!("not an integer: {c:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Poly;
    use crate::arith::ratfunc::Place;

    #[test]
    fn parses_negative_powers() {
        let f = parse_ratfunc(3, "t^-2").unwrap();
        assert_eq!(f, RatFunc::monomial(3, 1, -2));
        let g = parse_ratfunc(3, "1/x^2").unwrap();
        assert_eq!(f, g);
        let h = parse_ratfunc(5, "x^(-3)").unwrap();
        assert_eq!(h.valuation(Place::Finite(0)), Some(-3));
    }

    #[test]
    fn precedence_and_implicit_products() {
        let f = parse_ratfunc(7, "2x^2 + 3*x - 1").unwrap();
        assert_eq!(f, RatFunc::from_poly(Poly::from_ints(7, &[-1, 3, 2])));
        let g = parse_ratfunc(3, "1/(x*(x-1))").unwrap();
        assert_eq!(g.valuation(Place::Finite(1)), Some(-1));
        assert_eq!(parse_ratfunc(5, "-x").unwrap(), RatFunc::x(5).neg());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfunc(3, "x +").is_err());
        assert!(parse_ratfunc(3, "1/0").is_err());
        assert!(parse_ratfunc(3, "x)").is_err());
        assert!(parse_ratfunc(3, "y").is_err());
    }

    #[test]
    fn component_lists() {
        assert_eq!(split_components("(t^-2, 0)").unwrap(), vec!["t^-2", "0"]);
        assert_eq!(split_components("1/(x*(x-1)),0").unwrap(), vec!["1/(x*(x-1))", "0"]);
        assert_eq!(split_components("(x+1)/(x-1)").unwrap(), vec!["(x+1)/(x-1)"]);
        assert_eq!(parse_int_list("1, 2,4").unwrap(), vec![1, 2, 4]);
        assert!(split_components("1,,2").is_err());
    }
}
