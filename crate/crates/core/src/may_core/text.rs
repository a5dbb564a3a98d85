//! Text forms: `2 a0^2 h[1,0] b[1,3]` for monomials, `(s,t,u)` for tridegrees.

use super::generator::{Generator, TriDegree};
use super::monomial::{Element, Monomial};
use crate::error::TextError;
use crate::prime::PrimeContext;

fn parse_u32(what: &'static str, whole: &str, s: &str) -> Result<u32, TextError> {
    s.trim()
        .parse::<u32>()
        .map_err(|e| TextError::new(what, whole, format!("bad integer {s:?}: {e}")))
}

fn parse_pair(what: &'static str, whole: &str, body: &str) -> Result<(u32, u32), TextError> {
    let inner = body
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| TextError::new(what, whole, "expected [i,j]"))?;
    let (i, j) = inner
        .split_once(',')
        .ok_or_else(|| TextError::new(what, whole, "expected [i,j]"))?;
    Ok((parse_u32(what, whole, i)?, parse_u32(what, whole, j)?))
}

pub fn parse_generator(text: &str) -> Result<Generator, TextError> {
    let t = text.trim();
    let g = if let Some(rest) = t.strip_prefix('a') {
        Generator::A(parse_u32("generator", text, rest)?)
    } else if let Some(rest) = t.strip_prefix('h') {
        let (i, j) = parse_pair("generator", text, rest)?;
        Generator::H(i, j)
    } else if let Some(rest) = t.strip_prefix('b') {
        let (i, j) = parse_pair("generator", text, rest)?;
        Generator::B(i, j)
    } else {
        return Err(TextError::new("generator", text, "expected a, h[..] or b[..]"));
    };
    if !g.is_well_formed() {
        return Err(TextError::new("generator", text, "first index of h and b must be >= 1"));
    }
    Ok(g)
}

/// Split a monomial into its written coefficient and factor list, without
/// reordering anything.
pub fn parse_factors(text: &str) -> Result<(i64, Vec<(Generator, u32)>), TextError> {
    let mut coeff = 1i64;
    let mut factors = Vec::new();
    let mut tokens = text.split_whitespace().peekable();
    if tokens.peek().is_none() {
        return Err(TextError::new("monomial", text, "empty"));
    }
    if let Some(first) = tokens.peek() {
        if *first == "-" {
            coeff = -1;
            tokens.next();
        } else if let Ok(c) = first.parse::<i64>() {
            coeff = c;
            tokens.next();
        }
    }
    for tok in tokens {
        let (base, exp) = match tok.rsplit_once('^') {
            Some((b, e)) => (b, parse_u32("monomial", text, e)?),
            None => (tok, 1),
        };
        if exp == 0 {
            return Err(TextError::new("monomial", text, "zero exponent"));
        }
        let g = parse_generator(base).map_err(|e| TextError::new("monomial", text, e.reason))?;
        factors.push((g, exp));
    }
    Ok((coeff, factors))
}

/// Parse a monomial; the product may vanish (e.g. `h[1,0]^2`), hence `Option`.
pub fn parse_monomial(ctx: &PrimeContext, text: &str) -> Result<Option<Monomial>, TextError> {
    let (c, f) = parse_factors(text)?;
    Ok(Monomial::from_factors(ctx, c, f))
}

/// Parse `m1 + m2 + ...`; `0` is the zero element.
pub fn parse_element(ctx: &PrimeContext, text: &str) -> Result<Element, TextError> {
    let mut out = Element::zero();
    if text.trim() == "0" {
        return Ok(out);
    }
    for part in text.split(" + ") {
        if let Some(m) = parse_monomial(ctx, part)? {
            out.add_monomial(ctx, m);
        }
    }
    Ok(out)
}

pub fn parse_tridegree(text: &str) -> Result<TriDegree, TextError> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| TextError::new("tridegree", text, "expected (s,t,u)"))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 3 {
        return Err(TextError::new("tridegree", text, "expected three components"));
    }
    let s = parse_u32("tridegree", text, parts[0])?;
    let t = parts[1]
        .trim()
        .parse::<u64>()
        .map_err(|e| TextError::new("tridegree", text, e.to_string()))?;
    let u = parse_u32("tridegree", text, parts[2])?;
    Ok(TriDegree::new(s, t, u))
}

/// Factor list with coefficient dropped, as used in basis listings.
pub fn format_key(m: &Monomial) -> String {
    if m.factors().is_empty() {
        return "1".to_string();
    }
    let mut s = String::new();
    super::monomial::write_key(&mut s, m.factors()).expect("writing to a String");
    s
}
