//! Canonical string rendering and parsing of scalars.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" exp)?
//! exp    := ["-" | "+"] int | "(" ["-" | "+"] int ")"
//! atom   := int | "q" | "zeta" int | "zeta(" int ")" | "(" expr ")"
//! ```

use super::{Cyclotomic, FieldContext, LaurentPoly, Rational, Scalar};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed};

/// Appends one signed term `coef·atom` to `out`.
fn push_term(out: &mut String, coef: &Rational, atom: &str) {
    if coef.is_negative() {
        out.push('-');
    } else if !out.is_empty() {
        out.push('+');
    }
    let a = coef.abs();
    if atom.is_empty() {
        out.push_str(&a.to_string());
    } else if a.is_one() {
        out.push_str(atom);
    } else if a.is_integer() {
        out.push_str(&format!("{a}*{atom}"));
    } else {
        out.push_str(&format!("({a})*{atom}"));
    }
}

fn zeta_atom(order: u32, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => format!("zeta{order}"),
        _ => format!("zeta{order}^{k}"),
    }
}

fn q_atom(e: i64) -> String {
    match e {
        0 => String::new(),
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    }
}

fn join_atoms(a: &str, b: &str) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b.to_string(),
        (_, true) => a.to_string(),
        _ => format!("{a}*{b}"),
    }
}

fn render_cyclotomic(c: &Cyclotomic) -> String {
    let mut out = String::new();
    for (k, coef) in c.terms() {
        push_term(&mut out, coef, &zeta_atom(c.order(), k));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Terms are ordered by |exponent|, negative exponent first on ties, so that
/// both `1+q` and `-1-q^-1` read in increasing degree.
fn render_laurent(p: &LaurentPoly) -> String {
    let mut out = String::new();
    let mut terms: Vec<_> = p.terms().iter().collect();
    terms.sort_by_key(|(e, _)| (e.unsigned_abs(), **e));
    for (e, c) in terms {
        let qa = q_atom(*e);
        if let Some((k, coef)) = c.single_term() {
            push_term(&mut out, coef, &join_atoms(&zeta_atom(c.order(), k), &qa));
        } else if *e == 0 {
            // A constant with several ζ-terms splices into the sum directly.
            for (k, coef) in c.terms() {
                push_term(&mut out, coef, &zeta_atom(c.order(), k));
            }
        } else {
            if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&format!("({})*{qa}", render_cyclotomic(c)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// True when the rendered polynomial is a single product that needs no parentheses.
fn is_product(p: &LaurentPoly) -> bool {
    match p.as_monomial() {
        Some((e, c)) => c.single_term().is_some() || e != 0,
        None => false,
    }
}

pub(super) fn render(s: &Scalar) -> String {
    match s {
        Scalar::Rat(r) => r.to_string(),
        Scalar::Cyc(c) => render_cyclotomic(c),
        Scalar::Poly(p) => render_laurent(p),
        Scalar::Func(f) => {
            let num = render_laurent(f.num());
            let num = if is_product(f.num()) { num } else { format!("({num})") };
            format!("{num}/({})", render_laurent(f.den()))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Q,
    Zeta(u32),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().map_err(|_| err(start, "bad integer"))?;
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'q' => out.push((start, Tok::Q)),
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'z' if text[i..].starts_with("zeta") => {
                i += 4;
                let paren = i < bytes.len() && bytes[i] == b'(';
                if paren {
                    i += 1;
                }
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(err(ds, "expected root order after zeta"));
                }
                let m: u32 = text[ds..i].parse().map_err(|_| err(ds, "root order too large"))?;
                if m == 0 {
                    return Err(err(ds, "root order must be positive"));
                }
                if paren {
                    if i >= bytes.len() || bytes[i] != b')' {
                        return Err(err(i, "expected ')' after zeta order"));
                    }
                    i += 1;
                }
                out.push((start, Tok::Zeta(m)));
                continue;
            }
            _ => return Err(err(start, &format!("unexpected character '{}'", c as char))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ctx: FieldContext,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.here(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.checked_mul(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    acc = acc.checked_div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let v: i64 = match i64::try_from(n) {
                    Ok(v) => v,
                    Err(_) => return self.fail("exponent too large"),
                };
                Ok(if neg { -v } else { v })
            }
            _ => self.fail("expected integer exponent"),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let e = self.signed_int()?;
            if self.peek() != Some(&Tok::RParen) {
                return self.fail("expected ')'");
            }
            self.pos += 1;
            return Ok(e);
        }
        self.signed_int()
    }

    fn atom(&mut self) -> Result<Scalar> {
        let ctx = self.ctx;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Scalar::from_rational(Rational::from_integer(n), ctx))
            }
            Some(Tok::Q) => {
                self.pos += 1;
                Ok(Scalar::q(ctx.order))
            }
            Some(Tok::Zeta(m)) => {
                self.pos += 1;
                Scalar::zeta(m, 1, ctx)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(_) => self.fail("unexpected token"),
            None => self.fail("unexpected end of input"),
        }
    }
}

/// Parses `text`; without a prescribed context the smallest one containing
/// every atom is used.
pub(super) fn parse(text: &str, ctx: Option<FieldContext>) -> Result<Scalar> {
    let toks = lex(text)?;
    let mut needed = FieldContext::RATIONAL;
    for (_, t) in &toks {
        match t {
            Tok::Q => needed = needed.join(FieldContext::RATIONAL_FUNCTIONS),
            Tok::Zeta(m) => needed = needed.join(FieldContext::cyclotomic(*m)),
            _ => {}
        }
    }
    let ctx = match ctx {
        Some(c) if needed.embeds_into(c) => c,
        Some(c) => return Err(Error::Coercion { from: needed, to: c }),
        None => needed,
    };
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ctx,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.fail("trailing input");
    }
    // Keep q-free values in the prescribed symbolic context as constants.
    v.coerce(ctx)
}
