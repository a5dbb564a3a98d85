//! The odd prime everything is computed at.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ContextError;

/// Total order used to sort the factors of a monomial.
///
/// `Canonical` is A(i) < H(i,j) < B(i,j), each lexicographic in its indices.
/// `Reversed` is the exact opposite; it only changes signs of basis monomials
/// and exists so dimension-level outputs can be checked for order independence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum GeneratorOrder {
    #[default]
    Canonical,
    Reversed,
}

/// An odd prime `p` together with the degree quantum `q = 2(p - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeContext {
    p: u64,
    order: GeneratorOrder,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self, ContextError> {
        if p < 3 || !is_prime(p) {
            return Err(ContextError::NotOddPrime(p));
        }
        Ok(Self {
            p,
            order: GeneratorOrder::Canonical,
        })
    }

    /// Same prime, different factor order.
    pub fn with_order(self, order: GeneratorOrder) -> Self {
        Self { order, ..self }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> u64 {
        2 * (self.p - 1)
    }

    #[inline]
    pub fn order(&self) -> GeneratorOrder {
        self.order
    }

    /// `p^e`, panicking on overflow (degrees here never get close).
    #[inline]
    pub fn pow(&self, e: u32) -> u64 {
        self.p
            .checked_pow(e)
            .unwrap_or_else(|| panic!("{}^{} overflows u64", self.p, e))
    }

    /// `p^e` if it fits.
    #[inline]
    pub fn checked_pow(&self, e: u32) -> Option<u64> {
        self.p.checked_pow(e)
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            (self.p as u32) - x
        }
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        ((x as u64 + y as u64) % self.p) as u32
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        ((x as u64 * y as u64) % self.p) as u32
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(&self, x: u32) -> u32 {
        debug_assert!(x as u64 % self.p != 0);
        // Fermat: x^(p-2)
        let mut base = x as u64 % self.p;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc as u32
    }
}

impl TryFrom<u64> for PrimeContext {
    type Error = ContextError;

    fn try_from(p: u64) -> Result<Self, Self::Error> {
        Self::new(p)
    }
}

impl From<PrimeContext> for u64 {
    fn from(ctx: PrimeContext) -> u64 {
        ctx.p
    }
}

impl fmt::Display for PrimeContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}", self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
