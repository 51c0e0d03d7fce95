//! Expression grammar for mixed polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary | power)*      juxtaposition multiplies
//! unary  := ('+'|'-') unary | power
//! power  := atom ['^' uint]
//! atom   := uint | 'i' | var | ('Re'|'Im'|'conj') '(' expr ')' | '(' expr ')' | '|' expr '|' '^' even
//! var    := 'z1'..'z9' | 'w'
//! ```
//!
//! `w` names the last variable. Division is only allowed by nonzero constants, so
//! `15/7` is a rational literal. Inside a modulus a `|` in operator position closes it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::MixedPolynomial;
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Bar,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'|' => Tok::Bar,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(text[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{ch}`") });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

enum Scheme<'a> {
    Standard(usize),
    Named(&'a [&'a str]),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    scheme: Scheme<'a>,
    nvars: usize,
    in_modulus: bool,
    used_w: bool,
    max_z: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.at(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<MixedPolynomial> {
        let mut acc = match self.peek() {
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            Tok::Minus => {
                self.bump();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MixedPolynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.at();
                    let d = self.unary()?;
                    let inv = d
                        .constant_value()
                        .and_then(|c| c.inv())
                        .ok_or(Error::Syntax { pos: at, msg: "division only by a nonzero constant".into() })?;
                    acc = acc.scale(&inv);
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::LParen => acc = acc.mul(&self.power()?),
                Tok::Bar if !self.in_modulus => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MixedPolynomial> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        match self.bump() {
            Tok::Num(n) => match n.to_u32() {
                Some(k) => Ok(k),
                None => self.err("exponent too large"),
            },
            _ => {
                self.pos -= 1;
                self.err("expected a nonnegative integer exponent")
            }
        }
    }

    fn power(&mut self) -> Result<MixedPolynomial> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let k = self.uint()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn nested(&mut self, in_modulus: bool) -> Result<MixedPolynomial> {
        let saved = std::mem::replace(&mut self.in_modulus, in_modulus);
        let r = self.expr();
        self.in_modulus = saved;
        r
    }

    fn atom(&mut self) -> Result<MixedPolynomial> {
        let at = self.at();
        match self.bump() {
            Tok::Num(n) => Ok(MixedPolynomial::constant(self.nvars, GaussianRational::real(BigRational::from_integer(n)))),
            Tok::LParen => {
                let e = self.nested(false)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Bar => {
                let e = self.nested(true)?;
                self.expect(Tok::Bar, "closing `|`")?;
                if *self.peek() != Tok::Caret {
                    return Err(Error::OddModulusExponent(1));
                }
                self.bump();
                let k = self.uint()?;
                if k % 2 == 1 {
                    return Err(Error::OddModulusExponent(k));
                }
                Ok(e.mul(&e.conj()).pow(k / 2))
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(MixedPolynomial::constant(self.nvars, GaussianRational::i())),
                "Re" | "Im" | "conj" => {
                    self.expect(Tok::LParen, "`(` after function name")?;
                    let e = self.nested(false)?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(match name.as_str() {
                        "Re" => e.real_part(),
                        "Im" => e.imag_part(),
                        _ => e.conj(),
                    })
                }
                _ => Ok(MixedPolynomial::var(self.nvars, self.resolve(&name)?)),
            },
            _ => Err(Error::Syntax { pos: at, msg: "expected an operand".into() }),
        }
    }

    fn resolve(&mut self, name: &str) -> Result<usize> {
        match &self.scheme {
            Scheme::Named(names) => names.iter().position(|n| *n == name).ok_or_else(|| Error::UnknownVariable(name.to_string())),
            Scheme::Standard(n) => {
                let n = *n;
                if name == "w" {
                    self.used_w = true;
                    return Ok(n - 1);
                }
                let idx = standard_z(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                if idx >= n {
                    return Err(Error::UnknownVariable(name.to_string()));
                }
                self.max_z = self.max_z.max(idx + 1);
                Ok(idx)
            }
        }
    }
}

fn standard_z(name: &str) -> Option<usize> {
    let d = name.strip_prefix('z')?;
    let k: usize = d.parse().ok()?;
    (d.len() == 1 && (1..=9).contains(&k)).then(|| k - 1)
}

fn run(text: &str, scheme: Scheme<'_>, nvars: usize) -> Result<MixedPolynomial> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, scheme, nvars, in_modulus: false, used_w: false, max_z: 0 };
    let r = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    if p.used_w && p.max_z == nvars {
        return Err(Error::UnknownVariable(format!("z{nvars} (same slot as w)")));
    }
    Ok(r)
}

/// Parses `text` as a mixed polynomial in `nvars` variables `z1..`, with `w` the last one.
pub fn parse(text: &str, nvars: usize) -> Result<MixedPolynomial> {
    if nvars == 0 {
        return Err(Error::Config("nvars must be positive".into()));
    }
    run(text, Scheme::Standard(nvars), nvars)
}

/// Parses with the number of variables inferred: the largest `zk` index, plus one slot for `w`.
pub fn parse_auto(text: &str) -> Result<MixedPolynomial> {
    let toks = tokenize(text)?;
    let mut max_z = 0;
    let mut has_w = false;
    for (t, _) in &toks {
        if let Tok::Ident(name) = t {
            if name == "w" {
                has_w = true;
            } else if let Some(k) = standard_z(name) {
                max_z = max_z.max(k + 1);
            }
        }
    }
    parse(text, (max_z + usize::from(has_w)).max(1))
}

/// Parses with an explicit list of variable names, e.g. `["t"]` for curve components.
pub fn parse_named(text: &str, names: &[&str]) -> Result<MixedPolynomial> {
    if names.is_empty() {
        return Err(Error::Config("no variables".into()));
    }
    run(text, Scheme::Named(names), names.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixedpoly::{q, Monomial};

    fn mono(a: &[u32], b: &[u32]) -> Monomial {
        Monomial { alpha: a.to_vec(), beta: b.to_vec() }
    }

    #[test]
    fn real_part_of_w_and_modulus() {
        let f = parse("Re(w) + |z1|^2", 2).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.coef(&mono(&[0, 1], &[0, 0])), q(1, 2));
        assert_eq!(f.coef(&mono(&[0, 0], &[0, 1])), q(1, 2));
        assert_eq!(f.coef(&mono(&[1, 0], &[1, 0])), q(1, 1));
    }

    #[test]
    fn kohn_nirenberg_term() {
        let f = parse("|z1|^8 + (15/7)*|z1|^2*Re(z1^6)", 1).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.coef(&mono(&[4], &[4])), q(1, 1));
        assert_eq!(f.coef(&mono(&[7], &[1])), q(15, 14));
        assert_eq!(f.coef(&mono(&[1], &[7])), q(15, 14));
    }

    #[test]
    fn implicit_multiplication() {
        let a = parse("2Re(z3) + |z1|^2|z2|^2", 3).unwrap();
        let b = parse("2*Re(z3) + |z1|^2*|z2|^2", 3).unwrap();
        assert_eq!(a, b);
        let support: Vec<_> = parse("2*Re(z3) + |z1^3 - z2^2|^2", 3).unwrap().support().into_iter().collect();
        assert_eq!(support, vec![vec![0, 0, 1], vec![0, 4, 0], vec![3, 2, 0], vec![6, 0, 0]]);
    }

    #[test]
    fn nested_modulus_inside_parentheses() {
        let a = parse("|(|z1|^2 - 1) z2|^2", 2).unwrap();
        let b = parse("(|z1|^2 - 1)^2 |z2|^2", 2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_are_reported() {
        assert!(matches!(parse("|z1|^3", 1), Err(Error::OddModulusExponent(3))));
        assert!(matches!(parse("|z1|", 1), Err(Error::OddModulusExponent(1))));
        assert!(matches!(parse("z4", 3), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse("z2 + w", 2), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse("z1 + * z1", 1), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse("z1 / z1", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse("z1 $", 1), Err(Error::Syntax { pos: 3, .. })));
    }

    #[test]
    fn auto_arity() {
        assert_eq!(parse_auto("Re(w) + |z2|^2").unwrap().nvars(), 3);
        assert_eq!(parse_auto("|z1|^2").unwrap().nvars(), 1);
        assert_eq!(parse_named("t^2 + 3t", &["t"]).unwrap().len(), 2);
    }
}
