use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::prime::{GeneratorOrder, PrimeContext};

/// (filtration s, internal degree t, May weight u).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct TriDegree {
    pub s: u32,
    pub t: u64,
    pub u: u32,
}

impl TriDegree {
    pub const ZERO: TriDegree = TriDegree { s: 0, t: 0, u: 0 };

    pub const fn new(s: u32, t: u64, u: u32) -> Self {
        Self { s, t, u }
    }

    pub fn scale(self, k: u32) -> Self {
        Self {
            s: self.s * k,
            t: self.t * k as u64,
            u: self.u * k,
        }
    }

    /// Koszul parity: `t - s` mod 2. Only the h(i,j) are odd.
    pub fn is_odd(&self) -> bool {
        (self.t + self.s as u64) % 2 == 1
    }
}

impl Add for TriDegree {
    type Output = TriDegree;

    fn add(self, rhs: Self) -> Self {
        Self {
            s: self.s + rhs.s,
            t: self.t + rhs.t,
            u: self.u + rhs.u,
        }
    }
}

impl fmt::Display for TriDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.s, self.t, self.u)
    }
}

/// A generator of the May E1-term.
///
/// The derived `Ord` is the canonical order: all `A` first, then `H`, then `B`,
/// each lexicographic in its indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    /// a_i, i >= 0; polynomial.
    A(u32),
    /// h_{i,j}, i >= 1, j >= 0; exterior.
    H(u32, u32),
    /// b_{i,j}, i >= 1, j >= 0; polynomial.
    B(u32, u32),
}

impl Generator {
    pub fn is_well_formed(&self) -> bool {
        match *self {
            Generator::A(_) => true,
            Generator::H(i, _) | Generator::B(i, _) => i >= 1,
        }
    }

    pub fn tridegree(&self, ctx: &PrimeContext) -> TriDegree {
        match *self {
            Generator::H(i, j) => TriDegree::new(1, 2 * (ctx.pow(i) - 1) * ctx.pow(j), 2 * i - 1),
            Generator::B(i, j) => {
                TriDegree::new(2, 2 * (ctx.pow(i) - 1) * ctx.pow(j + 1), (ctx.p() as u32) * (2 * i - 1))
            }
            Generator::A(i) => TriDegree::new(1, 2 * ctx.pow(i) - 1, 2 * i + 1),
        }
    }

    /// Internal degree, or `None` if it does not fit in a u64.
    pub fn checked_t(&self, ctx: &PrimeContext) -> Option<u64> {
        match *self {
            Generator::H(i, j) => {
                let a = ctx.checked_pow(i)?.checked_sub(1)?;
                a.checked_mul(2)?.checked_mul(ctx.checked_pow(j)?)
            }
            Generator::B(i, j) => {
                let a = ctx.checked_pow(i)?.checked_sub(1)?;
                a.checked_mul(2)?.checked_mul(ctx.checked_pow(j.checked_add(1)?)?)
            }
            Generator::A(i) => ctx.checked_pow(i)?.checked_mul(2).map(|x| x - 1),
        }
    }

    /// Exterior generators square to zero.
    #[inline]
    pub fn is_exterior(&self) -> bool {
        matches!(self, Generator::H(..))
    }

    /// Whether the generator anticommutes with other odd generators.
    #[inline]
    pub fn is_odd(&self) -> bool {
        self.is_exterior()
    }

    /// Compare under the given factor order.
    pub fn cmp_in(&self, other: &Generator, order: GeneratorOrder) -> Ordering {
        match order {
            GeneratorOrder::Canonical => self.cmp(other),
            GeneratorOrder::Reversed => other.cmp(self),
        }
    }

    /// Internal degree reduced modulo `modulus`; a diagnostic mirroring
    /// residue tables written mod `p^n q`.
    pub fn degree_residue(&self, ctx: &PrimeContext, modulus: u64) -> u64 {
        assert!(modulus >= 1, "modulus must be positive");
        self.tridegree(ctx).t % modulus
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::A(i) => write!(f, "a{i}"),
            Generator::H(i, j) => write!(f, "h[{i},{j}]"),
            Generator::B(i, j) => write!(f, "b[{i},{j}]"),
        }
    }
}

/// All generators of internal degree at most `t_max`, in the context's order.
pub fn generators_bounded(ctx: &PrimeContext, t_max: u64) -> Vec<Generator> {
    let mut out = Vec::new();
    for i in 0.. {
        match Generator::A(i).checked_t(ctx) {
            Some(t) if t <= t_max => out.push(Generator::A(i)),
            _ => break,
        }
    }
    for family in [Generator::H as fn(u32, u32) -> Generator, Generator::B] {
        for i in 1.. {
            if family(i, 0).checked_t(ctx).is_none_or(|t| t > t_max) {
                break;
            }
            for j in 0.. {
                match family(i, j).checked_t(ctx) {
                    Some(t) if t <= t_max => out.push(family(i, j)),
                    _ => break,
                }
            }
        }
    }
    out.sort_by(|a, b| a.cmp_in(b, ctx.order()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    #[test]
    fn generator_tridegrees() {
        let c = ctx(5);
        assert_eq!(Generator::H(1, 0).tridegree(&c), TriDegree::new(1, 8, 1));
        assert_eq!(Generator::B(1, 0).tridegree(&c), TriDegree::new(2, 40, 5));
        assert_eq!(Generator::A(0).tridegree(&c), TriDegree::new(1, 1, 1));
    }

    #[test]
    fn residues() {
        let c = ctx(7);
        let m = 7u64.pow(4) * 12;
        assert_eq!(Generator::H(2, 1).degree_residue(&c, m), 672);
        assert_eq!(Generator::A(1).degree_residue(&c, m), 13);
        assert_eq!(Generator::B(3, 2).degree_residue(&c, 1), 0);
    }

    #[test]
    fn bounded_small() {
        let c = ctx(5);
        assert_eq!(generators_bounded(&c, 8), vec![Generator::A(0), Generator::H(1, 0)]);
        assert!(generators_bounded(&c, 0).is_empty());
    }

    #[test]
    fn bounded_p7_600() {
        let c = ctx(7);
        let gens = generators_bounded(&c, 600);
        for g in [
            Generator::H(1, 0),
            Generator::H(1, 1),
            Generator::H(1, 2),
            Generator::H(2, 0),
            Generator::A(0),
            Generator::A(1),
            Generator::A(2),
            Generator::B(1, 0),
            Generator::B(1, 1),
        ] {
            assert!(gens.contains(&g), "{g} missing");
        }
        assert!(gens.iter().all(|g| g.tridegree(&c).t <= 600));
        // h[2,1] = 672, a3 = 685, b[2,0] = 672 are out
        assert_eq!(gens.len(), 9);
    }

    #[test]
    fn reversed_order_sorts_backwards() {
        let c = ctx(5).with_order(GeneratorOrder::Reversed);
        let gens = generators_bounded(&c, 40);
        assert_eq!(gens.first(), Some(&Generator::B(1, 0)));
        assert_eq!(gens.last(), Some(&Generator::A(0)));
    }
}
