//! Text form of polynomials: `x0^2*y1^3 - 2/3*x1^2*y0`.
//!
//! Terms are joined by `+`/`-`, coefficients are integers or `a/b`, powers
//! use `^` and the `*` between factors may be omitted. The printer emits
//! terms leading-first and the parser accepts everything the printer emits.

use std::sync::Arc;

use num_traits::Signed;

use super::{Modulus, Monomial, Poly, PolyError, Scalar, VarContext};

pub(crate) fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = p.ctx().names();
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = match c {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            other => other.clone(),
        };
        let factors: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(v, e)| match e {
                1 => names[v].clone(),
                _ => format!("{}^{}", names[v], e),
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, PolyError> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '^' | '*' | '/' | '+' | '-' => {
                out.push(match c {
                    '^' => Tok::Caret,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '+' => Tok::Plus,
                    _ => Tok::Minus,
                });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(chars[start..i].iter().collect()));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(PolyError::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ctx: &'a Arc<VarContext>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn number(&mut self) -> Result<String, PolyError> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(n),
            other => Err(PolyError::Parse(format!("expected a number, found {other:?}"))),
        }
    }

    fn term(&mut self) -> Result<(Monomial, Scalar), PolyError> {
        let mut coeff = Scalar::one();
        let mut exps = vec![0u32; self.ctx.len()];
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(Tok::Num(_)) => {
                    let n = self.number()?;
                    let val = if self.peek() == Some(&Tok::Slash) {
                        self.pos += 1;
                        let d = self.number()?;
                        format!("{n}/{d}").parse::<Scalar>()?
                    } else {
                        n.parse::<Scalar>()?
                    };
                    coeff = &coeff * &val;
                }
                Some(Tok::Ident(_)) => {
                    let Some(Tok::Ident(name)) = self.next() else {
                        unreachable!()
                    };
                    let v = self
                        .ctx
                        .index_of(&name)
                        .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
                    let e = if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        self.number()?
                            .parse::<u32>()
                            .map_err(|_| PolyError::Parse("bad exponent".into()))?
                    } else {
                        1
                    };
                    exps[v] += e;
                }
                _ => break,
            }
            factors += 1;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                if !matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_))) {
                    return Err(PolyError::Parse("dangling `*`".into()));
                }
            }
        }
        if factors == 0 {
            return Err(PolyError::Parse("empty term".into()));
        }
        Ok((Monomial::new(exps), coeff))
    }
}

/// Parse a polynomial with rational coefficients.
pub fn parse_poly(ctx: &Arc<VarContext>, s: &str) -> Result<Poly, PolyError> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        ctx,
    };
    let mut out = Poly::zero(ctx);
    let mut first = true;
    while p.pos < p.toks.len() || first {
        let negative = match p.peek() {
            Some(Tok::Plus | Tok::Minus) => p.next() == Some(Tok::Minus),
            _ if first => false,
            other => return Err(PolyError::Parse(format!("expected `+` or `-`, found {other:?}"))),
        };
        first = false;
        let (m, c) = p.term()?;
        out.add_term(m, if negative { -c } else { c });
    }
    Ok(out)
}

/// Parse, then reduce the coefficients into `F_p`.
pub fn parse_poly_mod(ctx: &Arc<VarContext>, s: &str, m: Modulus) -> Result<Poly, PolyError> {
    parse_poly(ctx, s)?.reduce(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx() -> Arc<VarContext> {
        VarContext::from_blocks(&[
            ("x", 0, 2, vec![1, 0]),
            ("y", 0, 3, vec![0, 1]),
            ("z", 1, 2, vec![-1, 2]),
        ])
    }

    #[test]
    fn parses_documented_example() {
        let c = ctx();
        let p = parse_poly(&c, "x0^2*y1^3 - 2/3*x1^2*y0").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "x0^2*y1^3 - 2/3*x1^2*y0");
    }

    #[test]
    fn star_is_optional() {
        let c = ctx();
        let a = parse_poly(&c, "2x0y1^2 + z1 x1").unwrap();
        let b = parse_poly(&c, "2*x0*y1^2 + x1*z1").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn constants_and_cancellation() {
        let c = ctx();
        assert!(parse_poly(&c, "x0 - x0").unwrap().is_zero());
        assert_eq!(parse_poly(&c, "0").unwrap().to_string(), "0");
        assert_eq!(parse_poly(&c, "-3/6").unwrap().to_string(), "-1/2");
        assert_eq!(parse_poly(&c, "-x0 + 1").unwrap().to_string(), "-x0 + 1");
    }

    #[test]
    fn rejects_garbage() {
        let c = ctx();
        assert!(parse_poly(&c, "x9").is_err());
        assert!(parse_poly(&c, "x0 +").is_err());
        assert!(parse_poly(&c, "x0 * ").is_err());
        assert!(parse_poly(&c, "x0 $ y0").is_err());
        assert!(parse_poly(&c, "x0 y0 x1 y1 /").is_err());
    }

    #[test]
    fn residue_printing_round_trips_through_mod_parse() {
        let c = ctx();
        let m = Modulus::new(5).unwrap();
        let p = parse_poly_mod(&c, "-x0 + 7*y2", m).unwrap();
        assert_eq!(p.to_string(), "4*x0 + 2*y2");
        assert_eq!(parse_poly_mod(&c, &p.to_string(), m).unwrap(), p);
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(
            terms in prop::collection::vec(
                (prop::collection::vec(0u32..4, 7), -20i64..20, 1i64..6),
                0..6,
            )
        ) {
            let c = ctx();
            let p = Poly::from_terms(
                &c,
                terms.into_iter().map(|(e, n, d)| (Monomial::new(e), Scalar::ratio(n, d))),
            ).unwrap();
            let back = parse_poly(&c, &p.to_string()).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
