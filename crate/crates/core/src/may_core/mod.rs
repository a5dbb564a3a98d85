//! The trigraded algebra E(h_ij) ⊗ P(b_ij) ⊗ P(a_i).
//!
//! Signs follow the Koszul rule in the parity of `t - s`: only the h_ij are odd,
//! so h's anticommute among themselves and everything else commutes.

mod enumerate;
mod generator;
mod monomial;
mod text;

pub use enumerate::{cmp_keys, enumerate_basis, enumerate_basis_weight, enumerate_by_weight};
pub use generator::{generators_bounded, Generator, TriDegree};
pub use monomial::{key_tridegree, multiply, Element, FactorKey, Monomial};
pub use text::{format_key, parse_element, parse_factors, parse_generator, parse_monomial, parse_tridegree};

/// Tridegree of a generator or monomial.
pub trait HasTriDegree {
    fn tridegree(&self, ctx: &crate::PrimeContext) -> TriDegree;
}

impl HasTriDegree for Generator {
    fn tridegree(&self, ctx: &crate::PrimeContext) -> TriDegree {
        Generator::tridegree(self, ctx)
    }
}

impl HasTriDegree for Monomial {
    fn tridegree(&self, ctx: &crate::PrimeContext) -> TriDegree {
        Monomial::tridegree(self, ctx)
    }
}

pub fn tridegree<X: HasTriDegree>(x: &X, ctx: &crate::PrimeContext) -> TriDegree {
    x.tridegree(ctx)
}

pub fn degree_residue(g: Generator, ctx: &crate::PrimeContext, modulus: u64) -> u64 {
    g.degree_residue(ctx, modulus)
}
