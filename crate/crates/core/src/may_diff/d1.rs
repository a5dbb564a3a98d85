use crate::may_core::{Element, Generator, Monomial};
use crate::prime::PrimeContext;

/// d1 on a single generator.
pub fn d1_generator(ctx: &PrimeContext, g: Generator) -> Element {
    let mut out = Element::zero();
    match g {
        Generator::H(i, j) => {
            for k in 1..i {
                if let Some(m) = Monomial::from_factors(ctx, -1, [(Generator::H(i - k, k + j), 1), (Generator::H(k, j), 1)]) {
                    out.add_monomial(ctx, m);
                }
            }
        }
        Generator::A(i) => {
            for k in 0..i {
                if let Some(m) = Monomial::from_factors(ctx, -1, [(Generator::A(k), 1), (Generator::H(i - k, k), 1)]) {
                    out.add_monomial(ctx, m);
                }
            }
        }
        Generator::B(..) => {}
    }
    out
}

/// d1 on a monomial, by the Leibniz rule
/// `d(xy) = d(x) y + (-1)^|x| x d(y)` with the Koszul parity of `x`.
pub fn d1_monomial(ctx: &PrimeContext, m: &Monomial) -> Element {
    let mut out = Element::zero();
    let factors = m.factors();
    let mut prefix_odd = false;
    for (k, &(g, e)) in factors.iter().enumerate() {
        let dg = d1_generator(ctx, g);
        if !dg.is_zero() {
            let base = ctx.mul(m.coeff(), ctx.reduce(e as i64));
            let base = if prefix_odd { ctx.neg(base) } else { base };
            if base != 0 {
                for term in dg.terms() {
                    let coeff = ctx.mul(base, term.coeff()) as i64;
                    let written = factors[..k]
                        .iter()
                        .copied()
                        .chain(std::iter::once((g, e - 1)))
                        .chain(term.factors().iter().copied())
                        .chain(factors[k + 1..].iter().copied());
                    if let Some(x) = Monomial::from_factors(ctx, coeff, written) {
                        out.add_monomial(ctx, x);
                    }
                }
            }
        }
        if g.is_odd() && e % 2 == 1 {
            prefix_odd = !prefix_odd;
        }
    }
    debug_assert!(out.tridegree(ctx).is_none_or(|d| {
        let src = m.tridegree(ctx);
        d.s == src.s + 1 && d.t == src.t && d.u + 1 == src.u
    }));
    out
}

/// d1 extended linearly.
pub fn d1(x: &Element, ctx: &PrimeContext) -> Element {
    let mut out = Element::zero();
    for m in x.terms() {
        out.add_assign(ctx, &d1_monomial(ctx, &m));
    }
    out
}
