//! Reader for the textual polynomial grammar
//! `term (('+'|'-') term)*` with `term = [coeff '*'] var['^'int] ('*' var['^'int])*`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rat;
use crate::ring::{Monomial, Ring};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax { column: self.pos + 1, message: message.into() }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }
}

/// Parses a polynomial over `ring`.
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    if c.peek().is_none() {
        return Err(Error::EmptyInput);
    }
    let mut terms: Vec<(Monomial, Rat)> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match c.peek() {
            None if first => return Err(Error::EmptyInput),
            None => break,
            Some(b'+') => {
                c.pos += 1;
            }
            Some(b'-') => {
                negative = true;
                c.pos += 1;
            }
            Some(_) if first => {}
            Some(ch) => return Err(c.err(format!("expected `+` or `-`, found `{}`", ch as char))),
        }
        first = false;
        let (m, coeff) = parse_term(&mut c, ring)?;
        terms.push((m, if negative { -coeff } else { coeff }));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

fn parse_term(c: &mut Cursor<'_>, ring: &Ring) -> Result<(Monomial, Rat)> {
    let mut coeff = Rat::one();
    let mut mono = Monomial::one();
    match c.peek() {
        Some(ch) if ch.is_ascii_digit() => {
            let num = c.digits();
            let mut value: Rat = Rat::from(num.parse::<BigInt>().map_err(|_| c.err("bad integer"))?);
            if c.peek() == Some(b'/') {
                c.pos += 1;
                c.skip_ws();
                let den = c.digits();
                if den.is_empty() {
                    return Err(c.err("expected denominator"));
                }
                let den: BigInt = den.parse().map_err(|_| c.err("bad integer"))?;
                if den == BigInt::from(0) {
                    return Err(c.err("zero denominator"));
                }
                value = &value / &Rat::from(den);
            }
            coeff = value;
            if c.peek() != Some(b'*') {
                return Ok((mono, coeff));
            }
            c.pos += 1;
        }
        Some(ch) if ch.is_ascii_alphabetic() || ch == b'_' => {}
        Some(ch) => return Err(c.err(format!("unexpected `{}`", ch as char))),
        None => return Err(c.err("expected a term")),
    }
    loop {
        match c.peek() {
            Some(ch) if ch.is_ascii_alphabetic() || ch == b'_' => {}
            Some(ch) => return Err(c.err(format!("expected a variable, found `{}`", ch as char))),
            None => return Err(c.err("expected a variable")),
        }
        let name = c.ident();
        let idx = ring.var_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut e: u32 = 1;
        if c.peek() == Some(b'^') {
            c.pos += 1;
            c.skip_ws();
            let start = c.pos;
            let d = c.digits();
            if d.is_empty() {
                let rest: String = String::from_utf8_lossy(&c.s[start..]).chars().take(8).collect();
                return Err(Error::MalformedExponent(format!("{name}^{rest}")));
            }
            e = d
                .parse::<u32>()
                .ok()
                .filter(|&x| x <= u16::MAX as u32)
                .ok_or_else(|| Error::MalformedExponent(format!("{name}^{d}")))?;
        }
        let total = mono.exp(idx) as u32 + e;
        if total > u16::MAX as u32 {
            return Err(Error::MalformedExponent(format!("{name}^{total}")));
        }
        mono.set_exp(idx, total as u16);
        if c.peek() == Some(b'*') {
            c.pos += 1;
        } else {
            return Ok((mono, coeff));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(&["X", "Y", "Z", "W"]).unwrap()
    }

    #[test]
    fn reads_binomials_and_powers() {
        let r = ring();
        let f = parse_polynomial("X - Y", &r).unwrap();
        let terms: Vec<_> = f.terms().map(|(m, c)| (m.exps(4), c.clone())).collect();
        assert_eq!(
            terms,
            vec![(vec![1, 0, 0, 0], Rat::one()), (vec![0, 1, 0, 0], Rat::from_int(-1))]
        );
        let g = parse_polynomial("Y^2", &r).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.leading().unwrap().0.exps(4), vec![0, 2, 0, 0]);
        assert_eq!(g.leading().unwrap().1, &Rat::one());
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
    }

    #[test]
    fn errors() {
        let r = ring();
        assert_eq!(parse_polynomial("", &r), Err(Error::EmptyInput));
        assert_eq!(parse_polynomial("   ", &r), Err(Error::EmptyInput));
        assert_eq!(parse_polynomial("X + V", &r), Err(Error::UnknownVariable("V".into())));
        assert!(matches!(parse_polynomial("X^a", &r), Err(Error::MalformedExponent(_))));
        assert!(matches!(parse_polynomial("X^", &r), Err(Error::MalformedExponent(_))));
        assert!(matches!(parse_polynomial("X Y", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("X +", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("1/0*X", &r), Err(Error::Syntax { .. })));
    }

    #[test]
    fn coefficients_and_roundtrip() {
        let r = ring();
        let f = parse_polynomial("-3/6*X*Y^2 + 2 - Z*Z + 7*W", &r).unwrap();
        assert_eq!(f.to_string(), "-1/2*X*Y^2 - Z^2 + 7*W + 2");
        assert_eq!(parse_polynomial(&f.to_string(), &r).unwrap(), f);
    }
}
