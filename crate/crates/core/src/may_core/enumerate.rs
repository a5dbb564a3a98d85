use super::generator::{generators_bounded, Generator};
use super::monomial::{FactorKey, Monomial};
use crate::prime::PrimeContext;

struct Slot {
    g: Generator,
    s: u32,
    t: u64,
}

struct Search<'a> {
    slots: &'a [Slot],
    // suffix bounds on t/s over slots[k..], as (t, s) pairs
    min_ratio: Vec<(u64, u32)>,
    max_ratio: Vec<(u64, u32)>,
    u_filter: Option<u32>,
    ctx: &'a PrimeContext,
    stack: FactorKey,
    out: Vec<Monomial>,
}

impl Search<'_> {
    fn feasible(&self, k: usize, s: u32, t: u64) -> bool {
        if s == 0 {
            return t == 0;
        }
        if k == self.slots.len() {
            return false;
        }
        let (tmin, smin) = self.min_ratio[k];
        let (tmax, smax) = self.max_ratio[k];
        // s * tmin/smin <= t <= s * tmax/smax
        (s as u128) * (tmin as u128) <= (t as u128) * (smin as u128)
            && (t as u128) * (smax as u128) <= (s as u128) * (tmax as u128)
    }

    fn run(&mut self, k: usize, s: u32, t: u64) {
        if s == 0 && t == 0 {
            let key = self.stack.clone();
            if let Some(u) = self.u_filter {
                if super::monomial::key_tridegree(self.ctx, &key).u != u {
                    return;
                }
            }
            self.out.push(Monomial::from_key(1, key));
            return;
        }
        if !self.feasible(k, s, t) {
            return;
        }
        let slot = &self.slots[k];
        let cap = if slot.g.is_exterior() {
            1
        } else {
            (s / slot.s).min((t / slot.t) as u32)
        };
        for e in (1..=cap).rev() {
            let (ds, dt) = (slot.s * e, slot.t * e as u64);
            if ds > s || dt > t {
                continue;
            }
            self.stack.push((slot.g, e));
            self.run(k + 1, s - ds, t - dt);
            self.stack.pop();
        }
        self.run(k + 1, s, t);
    }
}

fn search(ctx: &PrimeContext, s: u32, t: u64, u: Option<u32>) -> Vec<Monomial> {
    let gens = generators_bounded(ctx, t);
    let slots: Vec<Slot> = gens
        .into_iter()
        .map(|g| {
            let d = g.tridegree(ctx);
            Slot { g, s: d.s, t: d.t }
        })
        .collect();
    let n = slots.len();
    let mut min_ratio = vec![(u64::MAX, 1u32); n];
    let mut max_ratio = vec![(0u64, 1u32); n];
    for k in (0..n).rev() {
        let cur = (slots[k].t, slots[k].s);
        let (mut lo, mut hi) = (cur, cur);
        if k + 1 < n {
            let (a, b) = (min_ratio[k + 1], max_ratio[k + 1]);
            if (a.0 as u128) * (lo.1 as u128) < (lo.0 as u128) * (a.1 as u128) {
                lo = a;
            }
            if (b.0 as u128) * (hi.1 as u128) > (hi.0 as u128) * (b.1 as u128) {
                hi = b;
            }
        }
        min_ratio[k] = lo;
        max_ratio[k] = hi;
    }
    let mut st = Search {
        slots: &slots,
        min_ratio,
        max_ratio,
        u_filter: u,
        ctx,
        stack: Vec::new(),
        out: Vec::new(),
    };
    st.run(0, s, t);
    let mut out = st.out;
    out.sort_by(|a, b| cmp_keys(ctx, a.key(), b.key()));
    out
}

/// Lexicographic comparison of factor keys under the context's order.
pub fn cmp_keys(ctx: &PrimeContext, a: &FactorKey, b: &FactorKey) -> std::cmp::Ordering {
    let order = ctx.order();
    for (x, y) in a.iter().zip(b.iter()) {
        let c = x.0.cmp_in(&y.0, order).then(y.1.cmp(&x.1));
        if c.is_ne() {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

/// Every coefficient-one monomial of filtration `s` and internal degree `t`,
/// over all weights.
pub fn enumerate_basis(ctx: &PrimeContext, s: u32, t: u64) -> Vec<Monomial> {
    search(ctx, s, t, None)
}

/// The part of [`enumerate_basis`] in May weight `u`.
pub fn enumerate_basis_weight(ctx: &PrimeContext, s: u32, t: u64, u: u32) -> Vec<Monomial> {
    search(ctx, s, t, Some(u))
}

/// Basis of the cell grouped by weight, ascending in `u`.
pub fn enumerate_by_weight(ctx: &PrimeContext, s: u32, t: u64) -> Vec<(u32, Vec<Monomial>)> {
    let mut groups: std::collections::BTreeMap<u32, Vec<Monomial>> = Default::default();
    for m in enumerate_basis(ctx, s, t) {
        groups.entry(m.tridegree(ctx).u).or_default().push(m);
    }
    groups.into_iter().collect()
}
