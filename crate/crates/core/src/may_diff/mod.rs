//! The May d1 differential and E2 = H(E1, d1), one (s,t) cell at a time.

mod cell;
mod d1;

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;
use rayon::prelude::*;

pub use cell::{CellHomology, E2Report, WeightSummary};
pub use d1::{d1, d1_generator, d1_monomial};

use crate::may_core::{enumerate_basis, Monomial};
use crate::prime::PrimeContext;

/// Memoizing E1/E2 calculator for one prime.
///
/// Readers share the tables; a cell computed twice by racing threads is
/// simply stored once.
#[derive(Debug)]
pub struct MayEngine {
    ctx: PrimeContext,
    bases: RwLock<HashMap<(u32, u64), Arc<Vec<Monomial>>>>,
    cells: RwLock<HashMap<(u32, u64), Arc<CellHomology>>>,
}

impl MayEngine {
    pub fn new(ctx: PrimeContext) -> Self {
        Self {
            ctx,
            bases: RwLock::new(HashMap::new()),
            cells: RwLock::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn basis(&self, s: u32, t: u64) -> Arc<Vec<Monomial>> {
        if let Some(b) = self.bases.read().get(&(s, t)) {
            return b.clone();
        }
        let b = Arc::new(enumerate_basis(&self.ctx, s, t));
        self.bases.write().entry((s, t)).or_insert(b).clone()
    }

    pub fn cell(&self, s: u32, t: u64) -> Arc<CellHomology> {
        if let Some(c) = self.cells.read().get(&(s, t)) {
            return c.clone();
        }
        let cur = self.basis(s, t);
        let prev = match s.checked_sub(1) {
            Some(sp) if !cur.is_empty() => self.basis(sp, t),
            _ => Arc::new(Vec::new()),
        };
        let next = if cur.is_empty() {
            Arc::new(Vec::new())
        } else {
            self.basis(s + 1, t)
        };
        let c = Arc::new(CellHomology::compute(&self.ctx, s, t, &prev, &cur, &next));
        self.cells.write().entry((s, t)).or_insert(c).clone()
    }

    pub fn e2(&self, s: u32, t: u64) -> E2Report {
        self.cell(s, t).report().clone()
    }

    /// E2 dimension summed over weights; negative filtration counts as empty.
    pub fn e2_total(&self, s: i64, t: i64) -> usize {
        if s < 0 || t < 0 {
            return 0;
        }
        self.cell(s as u32, t as u64).report().e2_total
    }

    /// Fill the cache for many cells in parallel.
    pub fn prefetch(&self, cells: &[(u32, u64)]) {
        cells.par_iter().for_each(|&(s, t)| {
            self.cell(s, t);
        });
    }

    pub fn cached_cells(&self) -> usize {
        self.cells.read().len()
    }
}

/// One-shot E2 computation without a shared cache.
pub fn e2_at(ctx: &PrimeContext, s: u32, t: u64) -> E2Report {
    MayEngine::new(*ctx).e2(s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::may_core::{Element, Generator};

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    #[test]
    fn unit_and_a0() {
        let c = ctx(5);
        let r = e2_at(&c, 0, 0);
        assert_eq!(r.e2_total, 1);
        assert_eq!(r.representatives().next(), Some(&Element::one()));
        let r = e2_at(&c, 1, 1);
        assert_eq!(r.e2_total, 1);
        assert_eq!(r.representatives().next(), Some(&Element::generator(Generator::A(0))));
    }

    #[test]
    fn empty_cell() {
        let r = e2_at(&ctx(5), 2, 16);
        assert_eq!((r.e1_total, r.e2_total), (0, 0));
        assert!(r.per_weight.is_empty());
    }

    #[test]
    fn killed_cell() {
        let c = ctx(7);
        let tq = (7u64.pow(4) + 49) * 12;
        let r = e2_at(&c, 5, tq + 13);
        assert_eq!(r.e1_total, 3);
        assert_eq!(r.e2_total, 0);
    }

    #[test]
    fn bb_survives() {
        let c = ctx(7);
        let tq = (7u64.pow(4) + 49) * 12;
        let r = e2_at(&c, 4, tq);
        assert_eq!(r.e2_total, 1);
        assert_eq!(r.representatives().next().unwrap().to_string(), "b[1,1] b[1,3]");
    }
}
