//! Text syntax for field elements, torsion classes and Hecke expressions.
//!
//! Field elements: integers, `w`, `+ - * / ^` and parentheses, e.g.
//! `(1 + w)/3` or `2w - 1`. Torsion classes use the same syntax and are
//! reduced mod `O`. Hecke expressions combine `theta(r)`, `mu(a)`,
//! `mustar(a)`, `M(a, r, b)`, `alpha(a, X)`, `beta(a, X)`, `id` and rational
//! scalars with `+ - *` and division by scalars.

use num_traits::{One, Zero};

use crate::error::{HeckeError, Result};
use crate::hecke::{self, HeckeElement};
use crate::numberfield::{FieldCtx, FieldElem, Rat};
use crate::torsion::TorsionClass;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i128),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            let n = lit
                .parse()
                .map_err(|_| HeckeError::Parse(format!("integer literal too large: {lit}")))?;
            out.push(Tok::Num(n));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(HeckeError::Parse(format!(
                "unexpected character '{c}' in '{s}'"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a FieldCtx,
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

fn overflow() -> HeckeError {
    HeckeError::Parse("arithmetic overflow while parsing".into())
}

impl<'a> Parser<'a> {
    fn new(ctx: &'a FieldCtx, src: &'a str) -> Result<Self> {
        Ok(Parser {
            ctx,
            toks: tokenize(src)?,
            pos: 0,
            src,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn err(&self, what: &str) -> HeckeError {
        HeckeError::Parse(format!(
            "{what} at token {} of '{}'",
            self.pos + 1,
            self.src
        ))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err("trailing input"))
        }
    }

    // ----- field expressions -----

    fn field_expr(&mut self) -> Result<FieldElem> {
        let mut acc = self.field_term()?;
        loop {
            if self.is_sym('+') {
                self.pos += 1;
                acc = &acc + &self.field_term()?;
            } else if self.is_sym('-') {
                self.pos += 1;
                acc = &acc - &self.field_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn field_term(&mut self) -> Result<FieldElem> {
        let mut acc = self.field_unary()?;
        loop {
            if self.is_sym('*') {
                self.pos += 1;
                let rhs = self.field_unary()?;
                acc = self.ctx.mul(&acc, &rhs);
            } else if self.is_sym('/') {
                self.pos += 1;
                let rhs = self.field_unary()?;
                if rhs.is_zero() {
                    return Err(HeckeError::Zero("division by zero"));
                }
                acc = self.ctx.div(&acc, &rhs)?;
            } else if matches!(self.peek(), Some(Tok::Ident(_))) || self.is_sym('(') {
                // implicit product such as `2w` or `3(1+w)`
                let rhs = self.field_power()?;
                acc = self.ctx.mul(&acc, &rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn field_unary(&mut self) -> Result<FieldElem> {
        if self.is_sym('-') {
            self.pos += 1;
            return Ok(-&self.field_unary()?);
        }
        if self.is_sym('+') {
            self.pos += 1;
        }
        self.field_power()
    }

    fn field_power(&mut self) -> Result<FieldElem> {
        let base = self.field_atom()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.is_sym('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.peek() {
            Some(Tok::Num(n)) if *n <= 64 => *n as u32,
            _ => return Err(self.err("expected a small exponent")),
        };
        self.pos += 1;
        let p = self.ctx.pow(&base, e);
        if neg {
            self.ctx.inv(&p)
        } else {
            Ok(p)
        }
    }

    fn field_atom(&mut self) -> Result<FieldElem> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(FieldElem::int(n))
            }
            Some(Tok::Ident(id)) if id == "w" => {
                self.pos += 1;
                if self.ctx.is_rational() {
                    return Err(HeckeError::Parse("'w' is not defined over Q".into()));
                }
                Ok(self.ctx.omega())
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.field_expr()?;
                self.expect(')')?;
                Ok(v)
            }
            _ => Err(self.err("expected a field element")),
        }
    }

    // ----- Hecke expressions -----

    fn hecke_expr(&mut self) -> Result<HeckeElement> {
        let mut acc = self.hecke_term()?;
        loop {
            if self.is_sym('+') {
                self.pos += 1;
                acc = acc.add(&self.hecke_term()?);
            } else if self.is_sym('-') {
                self.pos += 1;
                acc = acc.sub(&self.hecke_term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn hecke_term(&mut self) -> Result<HeckeElement> {
        let mut acc = self.hecke_unary()?;
        loop {
            if self.is_sym('*') {
                self.pos += 1;
                let rhs = self.hecke_unary()?;
                acc = hecke::mul(self.ctx, &acc, &rhs);
            } else if self.is_sym('/') {
                self.pos += 1;
                let q = self.scalar()?;
                if q.is_zero() {
                    return Err(HeckeError::Zero("division by zero"));
                }
                acc = acc.scale(&q.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn scalar(&mut self) -> Result<Rat> {
        let neg = if self.is_sym('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let q = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Rat::from_integer(n)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.field_expr()?;
                self.expect(')')?;
                if !v.c1.is_zero() {
                    return Err(self.err("expected a rational scalar"));
                }
                v.c0
            }
            _ => return Err(self.err("expected a rational scalar")),
        };
        Ok(if neg { -q } else { q })
    }

    fn hecke_unary(&mut self) -> Result<HeckeElement> {
        if self.is_sym('-') {
            self.pos += 1;
            return Ok(self.hecke_unary()?.scale(&-Rat::one()));
        }
        if self.is_sym('+') {
            self.pos += 1;
        }
        self.hecke_atom()
    }

    fn hecke_atom(&mut self) -> Result<HeckeElement> {
        let ctx = self.ctx;
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(HeckeElement::identity(ctx).scale(&Rat::from_integer(n)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.hecke_expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if id == "id" {
                    return Ok(HeckeElement::identity(ctx));
                }
                self.expect('(')?;
                let v = match id.as_str() {
                    "theta" => hecke::theta(ctx, &self.field_expr()?),
                    "mu" => hecke::mu(ctx, &self.field_expr()?)?,
                    "mustar" => hecke::mu_star(ctx, &self.field_expr()?)?,
                    "M" => {
                        let a = self.field_expr()?;
                        self.expect(',')?;
                        let r = self.field_expr()?;
                        self.expect(',')?;
                        let b = self.field_expr()?;
                        hecke::monomial(ctx, &a, &r, &b)?
                    }
                    "alpha" | "beta" => {
                        let a = self.field_expr()?;
                        self.expect(',')?;
                        let x = self.hecke_expr()?;
                        if id == "alpha" {
                            hecke::alpha(ctx, &a, &x)?
                        } else {
                            hecke::beta_endo(ctx, &a, &x)?
                        }
                    }
                    _ => return Err(HeckeError::Parse(format!("unknown function '{id}'"))),
                };
                self.expect(')')?;
                Ok(v)
            }
            _ => Err(self.err("expected a Hecke expression")),
        }
    }
}

fn guard<T>(f: impl FnOnce() -> Result<T>) -> Result<T> {
    // i128 overflow inside rational arithmetic panics; report it as a parse error
    std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)).unwrap_or_else(|_| Err(overflow()))
}

pub fn parse_field_elem(ctx: &FieldCtx, s: &str) -> Result<FieldElem> {
    guard(|| {
        let mut p = Parser::new(ctx, s)?;
        let v = p.field_expr()?;
        p.finish()?;
        Ok(v)
    })
}

/// A nonzero integral element, e.g. an ideal generator or level.
pub fn parse_integral(ctx: &FieldCtx, s: &str) -> Result<FieldElem> {
    let x = parse_field_elem(ctx, s)?;
    if x.is_zero() {
        return Err(HeckeError::Zero("ideal generator"));
    }
    if !x.is_integral() {
        return Err(HeckeError::NotIntegral(x.to_string()));
    }
    Ok(x)
}

pub fn parse_torsion(ctx: &FieldCtx, s: &str) -> Result<TorsionClass> {
    Ok(TorsionClass::new(&parse_field_elem(ctx, s)?))
}

pub fn parse_hecke(ctx: &FieldCtx, s: &str) -> Result<HeckeElement> {
    guard(|| {
        let mut p = Parser::new(ctx, s)?;
        let v = p.hecke_expr()?;
        p.finish()?;
        Ok(v)
    })
}

/// `Q` or `d<k>` (also `0` / `<k>`).
pub fn parse_field_tag(s: &str) -> Result<FieldCtx> {
    let t = s.trim();
    let d = if t.eq_ignore_ascii_case("q") {
        0
    } else {
        let digits = t.strip_prefix('d').unwrap_or(t);
        digits.parse::<i64>().map_err(|_| {
            HeckeError::Parse(format!("invalid field tag '{s}' (expected Q or d<k>)"))
        })?
    };
    FieldCtx::new(d)
}

/// `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let bad = || HeckeError::Parse(format!("invalid rational '{s}'"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: i128 = n.parse().map_err(|_| bad())?;
    let d: i128 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(HeckeError::Zero("denominator"));
    }
    Ok(Rat::new(n, d))
}
