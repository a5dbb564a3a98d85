use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::generator::{Generator, TriDegree};
use super::text::parse_factors;
use crate::error::TextError;
use crate::prime::PrimeContext;

/// Factor list of a monomial: generators with positive exponents, sorted in
/// the context's generator order, no repeats.
pub type FactorKey = Vec<(Generator, u32)>;

/// A nonzero scalar times a product of generators.
///
/// Serializes as its text form, e.g. `2 a0^2 h[1,0] b[1,3]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Monomial {
    coeff: u32,
    factors: FactorKey,
}

impl Monomial {
    pub fn unit() -> Self {
        Self {
            coeff: 1,
            factors: Vec::new(),
        }
    }

    pub fn generator(g: Generator) -> Self {
        Self {
            coeff: 1,
            factors: vec![(g, 1)],
        }
    }

    /// Multiply out `coeff * f1^e1 * f2^e2 * ...` written left to right,
    /// bringing the factors into canonical order and collecting the Koszul sign.
    /// Returns `None` if the product is zero.
    pub fn from_factors<I>(ctx: &PrimeContext, coeff: i64, factors: I) -> Option<Self>
    where
        I: IntoIterator<Item = (Generator, u32)>,
    {
        let coeff = ctx.reduce(coeff);
        let (sign_odd, factors) = normalize(ctx, factors.into_iter().filter(|&(_, e)| e > 0).collect())?;
        let coeff = if sign_odd { ctx.neg(coeff) } else { coeff };
        if coeff == 0 {
            return None;
        }
        Some(Self { coeff, factors })
    }

    /// Coefficient-one monomial from a product of single generators.
    pub fn product(ctx: &PrimeContext, gens: &[Generator]) -> Option<Self> {
        Self::from_factors(ctx, 1, gens.iter().map(|&g| (g, 1)))
    }

    /// Build from an already-normalized key; the caller guarantees the order.
    pub(crate) fn from_key(coeff: u32, factors: FactorKey) -> Self {
        Self { coeff, factors }
    }

    #[inline]
    pub fn coeff(&self) -> u32 {
        self.coeff
    }

    #[inline]
    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn key(&self) -> &FactorKey {
        &self.factors
    }

    pub fn into_key(self) -> FactorKey {
        self.factors
    }

    /// Same factors, coefficient replaced.
    pub fn with_coeff(&self, coeff: u32) -> Self {
        Self {
            coeff,
            factors: self.factors.clone(),
        }
    }

    pub fn tridegree(&self, ctx: &PrimeContext) -> TriDegree {
        key_tridegree(ctx, &self.factors)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Whether the monomial is odd in the Koszul grading.
    pub fn is_odd(&self) -> bool {
        key_is_odd(&self.factors)
    }

    pub fn exponent_of(&self, g: Generator) -> u32 {
        self.factors.iter().find(|(h, _)| *h == g).map_or(0, |&(_, e)| e)
    }

    pub fn multiply(&self, other: &Monomial, ctx: &PrimeContext) -> Option<Monomial> {
        let coeff = ctx.mul(self.coeff, other.coeff) as i64;
        Monomial::from_factors(
            ctx,
            coeff,
            self.factors.iter().chain(other.factors.iter()).copied(),
        )
    }
}

pub fn key_tridegree(ctx: &PrimeContext, key: &[(Generator, u32)]) -> TriDegree {
    key.iter()
        .fold(TriDegree::ZERO, |acc, &(g, e)| acc + g.tridegree(ctx).scale(e))
}

pub(crate) fn key_is_odd(key: &[(Generator, u32)]) -> bool {
    key.iter().filter(|(g, e)| g.is_odd() && e % 2 == 1).count() % 2 == 1
}

/// Insertion sort with sign tracking, then merge equal neighbours.
fn normalize(ctx: &PrimeContext, mut items: Vec<(Generator, u32)>) -> Option<(bool, FactorKey)> {
    let order = ctx.order();
    let mut sign = false;
    for i in 1..items.len() {
        let mut k = i;
        while k > 0 && items[k - 1].0.cmp_in(&items[k].0, order).is_gt() {
            let (x, ex) = items[k - 1];
            let (y, ey) = items[k];
            if x.is_odd() && y.is_odd() && ex % 2 == 1 && ey % 2 == 1 {
                sign = !sign;
            }
            items.swap(k - 1, k);
            k -= 1;
        }
    }
    let mut out: FactorKey = Vec::with_capacity(items.len());
    for (g, e) in items {
        match out.last_mut() {
            Some((h, f)) if *h == g => {
                if g.is_exterior() {
                    return None;
                }
                *f += e;
            }
            _ => {
                if g.is_exterior() && e > 1 {
                    return None;
                }
                out.push((g, e));
            }
        }
    }
    Some((sign, out))
}

/// A finite F_p-linear combination of monomials.
///
/// Serializes as `m1 + m2 + ...` (or `0`); deserialization trusts that the
/// text was produced by `Display`, i.e. factors already in order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Element {
    terms: BTreeMap<FactorKey, u32>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Monomial::unit().into()
    }

    pub fn generator(g: Generator) -> Self {
        Monomial::generator(g).into()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, key: &FactorKey) -> u32 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, ctx: &PrimeContext, key: FactorKey, coeff: u32) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff % ctx.p() as u32);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let c = ctx.add(*o.get(), coeff);
                if c == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = c;
                }
            }
        }
    }

    pub fn add_monomial(&mut self, ctx: &PrimeContext, m: Monomial) {
        let c = m.coeff;
        self.add_term(ctx, m.factors, c);
    }

    pub fn add_assign(&mut self, ctx: &PrimeContext, other: &Element) {
        for (k, &c) in &other.terms {
            self.add_term(ctx, k.clone(), c);
        }
    }

    pub fn add(&self, ctx: &PrimeContext, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign(ctx, other);
        out
    }

    pub fn scale(&self, ctx: &PrimeContext, c: u32) -> Element {
        let c = c % ctx.p() as u32;
        if c == 0 {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(k, &v)| (k.clone(), ctx.mul(v, c))).collect(),
        }
    }

    pub fn neg(&self, ctx: &PrimeContext) -> Element {
        self.scale(ctx, ctx.neg(1))
    }

    pub fn sub(&self, ctx: &PrimeContext, other: &Element) -> Element {
        self.add(ctx, &other.neg(ctx))
    }

    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(k, &c)| Monomial::from_key(c, k.clone()))
    }

    pub fn raw_terms(&self) -> impl Iterator<Item = (&FactorKey, u32)> + '_ {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    /// Common tridegree, or `None` for zero or inhomogeneous elements.
    pub fn tridegree(&self, ctx: &PrimeContext) -> Option<TriDegree> {
        let mut it = self.terms.keys().map(|k| key_tridegree(ctx, k));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn multiply(&self, other: &Element, ctx: &PrimeContext) -> Element {
        let mut out = Element::zero();
        for (ka, &ca) in &self.terms {
            for (kb, &cb) in &other.terms {
                let coeff = ctx.mul(ca, cb) as i64;
                if let Some(m) = Monomial::from_factors(ctx, coeff, ka.iter().chain(kb.iter()).copied()) {
                    out.add_monomial(ctx, m);
                }
            }
        }
        out
    }
}

impl From<Monomial> for Element {
    fn from(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m.factors, m.coeff);
        Element { terms }
    }
}

/// Bilinear graded-commutative product.
pub fn multiply(x: &Element, y: &Element, ctx: &PrimeContext) -> Element {
    x.multiply(y, ctx)
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff != 1 {
            write!(f, "{} ", self.coeff)?;
        }
        write_key(f, &self.factors)
    }
}

pub(crate) fn write_key(f: &mut impl fmt::Write, key: &[(Generator, u32)]) -> fmt::Result {
    for (i, (g, e)) in key.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        if *e == 1 {
            write!(f, "{g}")?;
        } else {
            write!(f, "{g}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl From<Monomial> for String {
    fn from(m: Monomial) -> String {
        m.to_string()
    }
}

impl TryFrom<String> for Monomial {
    type Error = TextError;

    fn try_from(text: String) -> Result<Self, TextError> {
        let (c, factors) = parse_factors(&text)?;
        if c <= 0 {
            return Err(TextError::new("monomial", &text, "coefficient must be positive"));
        }
        Ok(Monomial::from_key(c as u32, factors))
    }
}

impl From<Element> for String {
    fn from(e: Element) -> String {
        e.to_string()
    }
}

impl TryFrom<String> for Element {
    type Error = TextError;

    fn try_from(text: String) -> Result<Self, TextError> {
        let mut terms = BTreeMap::new();
        if text.trim() != "0" {
            for part in text.split(" + ") {
                let m = Monomial::try_from(part.to_string())?;
                terms.insert(m.factors, m.coeff);
            }
        }
        Ok(Element { terms })
    }
}
