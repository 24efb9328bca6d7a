use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::sparse::{Monomial, Registry, SparsePoly};
use crate::error::{Error, Result};

/// `"num/den"`, or just `"num"` for integers.
pub fn render_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Canonical text: terms in descending graded-lex order, joined by `" + "` /
/// `" - "`, each term `coef*var^e*...` with unit coefficients omitted.
pub fn render_poly(poly: &SparsePoly<BigRational>) -> String {
    let reg = poly.registry();
    let mut out = String::new();
    for (i, (m, c)) in poly.terms().rev().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        let mut factors: Vec<String> = Vec::new();
        for (v, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(reg.name(v).to_string()),
                _ => factors.push(format!("{}^{}", reg.name(v), e)),
            }
        }
        let body = if factors.is_empty() {
            render_rational(&mag)
        } else if mag.is_one() {
            factors.join("*")
        } else {
            format!("{}*{}", render_rational(&mag), factors.join("*"))
        };
        match (i == 0, negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Num(digits.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                i += 1;
            }
            out.push(Token::Name(chars[start..i].iter().collect()));
        } else {
            out.push(match c {
                '+' => Token::Plus,
                '-' => Token::Minus,
                '*' => Token::Star,
                '/' => Token::Slash,
                '^' => Token::Caret,
                other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
            });
            i += 1;
        }
    }
    Ok(out)
}

/// Parses the format produced by [`render_poly`] (and any sum of products of
/// rationals and variable powers) over `registry`.
pub fn parse_poly(src: &str, registry: &Arc<Registry>) -> Result<SparsePoly<BigRational>> {
    let tokens = tokenize(src)?;
    let mut pos = 0;
    let mut terms = Vec::new();
    let mut sign = BigRational::one();
    if matches!(tokens.first(), Some(Token::Minus)) {
        sign = -sign;
        pos += 1;
    } else if matches!(tokens.first(), Some(Token::Plus)) {
        pos += 1;
    }
    loop {
        let (coef, mono) = parse_term(&tokens, &mut pos, registry)?;
        terms.push((mono, sign.clone() * coef));
        match tokens.get(pos) {
            None => break,
            Some(Token::Plus) => sign = BigRational::one(),
            Some(Token::Minus) => sign = -BigRational::one(),
            Some(t) => return Err(Error::Parse(format!("expected '+' or '-', found {t:?}"))),
        }
        pos += 1;
    }
    Ok(SparsePoly::from_terms(registry, terms))
}

fn parse_term(tokens: &[Token], pos: &mut usize, registry: &Arc<Registry>) -> Result<(BigRational, Monomial)> {
    let mut coef = BigRational::one();
    let mut exps = vec![0u32; registry.len()];
    loop {
        match tokens.get(*pos) {
            Some(Token::Num(n)) => {
                let mut value = BigRational::from_integer(n.clone());
                *pos += 1;
                if matches!(tokens.get(*pos), Some(Token::Slash)) {
                    *pos += 1;
                    match tokens.get(*pos) {
                        Some(Token::Num(d)) if !d.is_zero() => {
                            value /= BigRational::from_integer(d.clone());
                            *pos += 1;
                        }
                        _ => return Err(Error::Parse("expected a nonzero denominator".into())),
                    }
                }
                coef *= value;
            }
            Some(Token::Name(name)) => {
                let v = registry
                    .index(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                *pos += 1;
                let mut e = 1u32;
                if matches!(tokens.get(*pos), Some(Token::Caret)) {
                    *pos += 1;
                    match tokens.get(*pos) {
                        Some(Token::Num(k)) => {
                            e = k.to_string().parse().map_err(|_| Error::Parse("exponent too large".into()))?;
                            *pos += 1;
                        }
                        _ => return Err(Error::Parse("expected an exponent after '^'".into())),
                    }
                }
                exps[v] += e;
            }
            other => return Err(Error::Parse(format!("expected a factor, found {other:?}"))),
        }
        if matches!(tokens.get(*pos), Some(Token::Star)) {
            *pos += 1;
        } else {
            return Ok((coef, Monomial::from_exponents(exps)));
        }
    }
}
