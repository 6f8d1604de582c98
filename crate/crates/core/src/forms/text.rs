//! Canonical text rendering and parsing of fields and 1-forms.
//!
//! ```text
//! rational ::= int [ "/" int ]           (decimals are accepted as well)
//! atom     ::= rational | "nR^" int | "c_v^" int | "p^" int | "V^" int | "(" field ")"
//! monomial ::= atom ( "*" atom )*        (a bare symbol means exponent 1)
//! field    ::= ["-"] monomial ( ("+" | "-") monomial )*
//! oneform  ::= "0" | [ field ] "dp" [ ("+" | "-") [ field ] "dV" ] | [ field ] "dV"
//! ```
//!
//! Rendering emits the same grammar: coefficients with a `/` are wrapped in
//! parentheses, multi-term coefficients of a differential are parenthesized,
//! and unit coefficients are omitted.

use std::fmt;

use super::calculus::{OneForm, Potential, TwoForm};
use super::field::{Exponents, Monomial, ScalarField};
use super::{Coefficient, FormError};

fn coeff_text<C: Coefficient>(c: &C) -> String {
    let s = c.to_string();
    if s.contains('/') {
        format!("({s})")
    } else {
        s
    }
}

/// Monomial without its sign.
fn unsigned_monomial<C: Coefficient>(coeff: &C, e: &Exponents) -> String {
    let mut parts = Vec::new();
    let abs = coeff.abs();
    let symbols = [("nR", e.nr_pow), ("c_v", e.cv_pow), ("p", e.p_pow), ("V", e.v_pow)];
    let has_symbols = symbols.iter().any(|(_, k)| *k != 0);
    if !abs.is_one() || !has_symbols {
        parts.push(coeff_text(&abs));
    }
    for (name, k) in symbols {
        match k {
            0 => {}
            1 => parts.push(name.to_string()),
            k => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("*")
}

impl<C: Coefficient> fmt::Display for Monomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_negative() {
            f.write_str("-")?;
        }
        f.write_str(&unsigned_monomial(&self.coeff, &self.exponents))
    }
}

impl<C: Coefficient> fmt::Display for ScalarField<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            f.write_str(&unsigned_monomial(c, e))?;
        }
        Ok(())
    }
}

/// `field` as a factor in front of `suffix`, e.g. `2*p dp`, `-dV`,
/// `(p + V) dp`, `c_v*ln(p)`.
fn factor<C: Coefficient>(field: &ScalarField<C>, sep: &str, suffix: &str) -> String {
    if field.is_one() {
        return suffix.to_string();
    }
    if field.len() == 1 {
        let (e, c) = field.leading().expect("single term");
        if *e == Exponents::ZERO && c.abs().is_one() {
            return format!("-{suffix}");
        }
        let sign = if c.is_negative() { "-" } else { "" };
        return format!("{sign}{}{sep}{suffix}", unsigned_monomial(c, e));
    }
    format!("({field}){sep}{suffix}")
}

fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, part) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(part);
        } else if let Some(rest) = part.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(part);
        }
    }
    out
}

impl<C: Coefficient> fmt::Display for OneForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.dp.is_zero() {
            parts.push(factor(&self.dp, " ", "dp"));
        }
        if !self.dv.is_zero() {
            parts.push(factor(&self.dv, " ", "dV"));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&join_signed(&parts))
    }
}

impl<C: Coefficient> fmt::Display for TwoForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        f.write_str(&factor(&self.dp_dv, " ", "dp^dV"))
    }
}

impl<C: Coefficient> fmt::Display for Potential<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.poly().is_zero() {
            parts.extend(self.poly().monomials().map(|m| m.to_string()));
        }
        if !self.log_p().is_zero() {
            parts.push(factor(self.log_p(), "*", "ln(p)"));
        }
        if !self.log_v().is_zero() {
            parts.push(factor(self.log_v(), "*", "ln(V)"));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&join_signed(&parts))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    Decimal(i64, u32),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn perr(offset: usize, message: impl Into<String>) -> FormError {
    FormError::Parse {
        offset,
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, FormError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        let start = i;
        let single = match ch {
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'/' => Some(Token::Slash),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((start, tok));
            i += 1;
        } else if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut frac = 0u32;
            let mut digits = src[start..i].to_string();
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                let fs = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                frac = (i - fs) as u32;
                digits.push_str(&src[fs..i]);
            }
            let value: i64 = digits
                .parse()
                .map_err(|_| perr(start, "number out of range"))?;
            out.push((start, if frac == 0 { Token::Int(value) } else { Token::Decimal(value, frac) }));
        } else if ch.is_ascii_alphabetic() || ch == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Token::Ident(src[start..i].to_string())));
        } else {
            return Err(perr(start, format!("unexpected character `{}`", ch as char)));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, FormError> {
        Ok(Parser {
            tokens: tokenize(src)?,
            pos: 0,
            end: src.len(),
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        tok
    }

    fn at_differential(&self) -> bool {
        matches!(self.peek(), Some(Token::Ident(s)) if s == "dp" || s == "dV")
    }

    fn at_field_end(&self) -> bool {
        self.at_differential() || matches!(self.peek(), None | Some(Token::RParen))
    }

    fn integer(&mut self) -> Result<i64, FormError> {
        let offset = self.offset();
        let negative = if self.peek() == Some(&Token::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Some(Token::Int(n)) => Ok(if negative { -n } else { n }),
            _ => Err(perr(offset, "expected an integer")),
        }
    }

    fn field<C: Coefficient>(&mut self) -> Result<ScalarField<C>, FormError> {
        let mut negative = false;
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            negative = true;
        }
        let mut acc = ScalarField::zero();
        loop {
            let term = self.monomial::<C>()?;
            acc = if negative { acc - term } else { acc + term };
            match self.peek() {
                Some(Token::Plus) => negative = false,
                Some(Token::Minus) => negative = true,
                _ => return Ok(acc),
            }
            // a sign directly before a differential belongs to the 1-form
            let save = self.pos;
            self.bump();
            if self.at_field_end() {
                self.pos = save;
                return Ok(acc);
            }
        }
    }

    fn monomial<C: Coefficient>(&mut self) -> Result<ScalarField<C>, FormError> {
        let mut acc = self.atom::<C>()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            acc = &acc * &self.atom::<C>()?;
        }
        Ok(acc)
    }

    fn atom<C: Coefficient>(&mut self) -> Result<ScalarField<C>, FormError> {
        let offset = self.offset();
        match self.bump() {
            Some(Token::Int(n)) => {
                let mut value = C::from_int(n);
                if self.peek() == Some(&Token::Slash) {
                    self.bump();
                    let d = self.integer()?;
                    if d == 0 {
                        return Err(perr(offset, "zero denominator"));
                    }
                    value = value / C::from_int(d);
                }
                Ok(ScalarField::constant(value))
            }
            Some(Token::Decimal(mantissa, frac)) => {
                let scale = 10i64
                    .checked_pow(frac)
                    .ok_or_else(|| perr(offset, "too many decimal digits"))?;
                Ok(ScalarField::constant(C::from_int(mantissa) / C::from_int(scale)))
            }
            Some(Token::LParen) => {
                let inner = self.field::<C>()?;
                if self.bump() != Some(Token::RParen) {
                    return Err(perr(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                let base = match name.as_str() {
                    "p" => Exponents::new(1, 0, 0, 0),
                    "V" => Exponents::new(0, 1, 0, 0),
                    "nR" => Exponents::new(0, 0, 1, 0),
                    "c_v" => Exponents::new(0, 0, 0, 1),
                    other => return Err(perr(offset, format!("unknown symbol `{other}`"))),
                };
                let k = if self.peek() == Some(&Token::Caret) {
                    self.bump();
                    i32::try_from(self.integer()?).map_err(|_| perr(offset, "exponent out of range"))?
                } else {
                    1
                };
                let e = Exponents::new(base.p_pow * k, base.v_pow * k, base.nr_pow * k, base.cv_pow * k);
                Ok(ScalarField::monomial(C::one(), e))
            }
            _ => Err(perr(offset, "expected a number, symbol or `(`")),
        }
    }

    /// Optional coefficient field followed by a differential.
    fn side<C: Coefficient>(&mut self) -> Result<(ScalarField<C>, String), FormError> {
        let coeff = if self.at_differential() {
            ScalarField::one()
        } else if self.peek() == Some(&Token::Minus) && {
            let next = self.tokens.get(self.pos + 1).map(|(_, t)| t);
            matches!(next, Some(Token::Ident(s)) if s == "dp" || s == "dV")
        } {
            self.bump();
            -ScalarField::one()
        } else {
            self.field::<C>()?
        };
        let offset = self.offset();
        match self.bump() {
            Some(Token::Ident(d)) if d == "dp" || d == "dV" => Ok((coeff, d)),
            _ => Err(perr(offset, "expected `dp` or `dV`")),
        }
    }
}

/// Parses a coefficient field such as `(3/2)*nR*p^-1 - V`.
pub fn parse_field<C: Coefficient>(src: &str) -> Result<ScalarField<C>, FormError> {
    let mut parser = Parser::new(src)?;
    if parser.peek().is_none() {
        return Err(perr(0, "empty field"));
    }
    let field = parser.field::<C>()?;
    if parser.peek().is_some() {
        return Err(perr(parser.offset(), "trailing input"));
    }
    Ok(field)
}

/// Parses a 1-form such as `(3/2)*nR*p^-1 dp + (5/2)*nR*V^-1 dV`.
pub fn parse_one_form<C: Coefficient>(src: &str) -> Result<OneForm<C>, FormError> {
    let mut parser = Parser::new(src)?;
    if parser.tokens.len() == 1 && parser.peek() == Some(&Token::Int(0)) {
        return Ok(OneForm::zero());
    }
    if parser.peek().is_none() {
        return Err(perr(0, "empty 1-form"));
    }
    let mut form = OneForm::zero();
    let mut seen = Vec::new();
    let mut sign_negative = false;
    loop {
        let offset = parser.offset();
        let (mut coeff, d) = parser.side::<C>()?;
        if seen.contains(&d) {
            return Err(perr(offset, format!("`{d}` appears twice")));
        }
        if sign_negative {
            coeff = -coeff;
        }
        if d == "dp" {
            form.dp = coeff;
        } else {
            form.dv = coeff;
        }
        seen.push(d);
        match parser.bump() {
            None => return Ok(form),
            Some(Token::Plus) => sign_negative = false,
            Some(Token::Minus) => sign_negative = true,
            Some(_) => return Err(perr(parser.offset(), "expected `+`, `-` or end of input")),
        }
    }
}
