use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::d1::d1_monomial;
use crate::linalg::{Echelon, Matrix};
use crate::may_core::{Element, FactorKey, Monomial};
use crate::prime::PrimeContext;

/// E1/E2 numbers for one weight inside a bidegree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSummary {
    pub u: u32,
    pub e1_dim: usize,
    pub cycle_dim: usize,
    pub boundary_dim: usize,
    pub e2_dim: usize,
    pub representatives: Vec<Element>,
}

/// Homology of d1 at one bidegree, split by May weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Report {
    pub s: u32,
    pub t: u64,
    pub per_weight: Vec<WeightSummary>,
    pub e1_total: usize,
    pub e2_total: usize,
}

impl E2Report {
    pub fn representatives(&self) -> impl Iterator<Item = &Element> {
        self.per_weight.iter().flat_map(|w| w.representatives.iter())
    }

    pub fn weight(&self, u: u32) -> Option<&WeightSummary> {
        self.per_weight.iter().find(|w| w.u == u)
    }
}

/// Everything computed for a cell: the report plus the data needed to test
/// classes against it.
#[derive(Debug, Clone)]
pub struct CellHomology {
    ctx: PrimeContext,
    basis: Vec<FactorKey>,
    index: HashMap<FactorKey, usize>,
    boundaries: Echelon,
    report: E2Report,
}

fn index_of(basis: &[Monomial]) -> HashMap<FactorKey, usize> {
    basis.iter().enumerate().map(|(i, m)| (m.key().clone(), i)).collect()
}

fn by_weight(ctx: &PrimeContext, basis: &[Monomial]) -> BTreeMap<u32, Vec<usize>> {
    let mut out: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, m) in basis.iter().enumerate() {
        out.entry(m.tridegree(ctx).u).or_default().push(i);
    }
    out
}

/// Column of d1(m) in the coordinates of the `local` slice of `target`.
fn image_column(
    ctx: &PrimeContext,
    m: &Monomial,
    target_index: &HashMap<FactorKey, usize>,
    local: &HashMap<usize, usize>,
    len: usize,
) -> Vec<u32> {
    let mut col = vec![0u32; len];
    for (key, c) in d1_monomial(ctx, m).raw_terms() {
        let global = *target_index
            .get(key)
            .unwrap_or_else(|| panic!("d1({m}) left the target cell"));
        let li = *local
            .get(&global)
            .unwrap_or_else(|| panic!("d1({m}) has the wrong weight"));
        col[li] = c;
    }
    col
}

impl CellHomology {
    /// `prev`, `cur`, `next` are the E1 bases at filtrations s-1, s, s+1 with
    /// the same internal degree.
    pub fn compute(ctx: &PrimeContext, s: u32, t: u64, prev: &[Monomial], cur: &[Monomial], next: &[Monomial]) -> Self {
        let index = index_of(cur);
        let next_index = index_of(next);
        let cur_w = by_weight(ctx, cur);
        let prev_w = by_weight(ctx, prev);
        let next_w = by_weight(ctx, next);
        let mut boundaries = Echelon::new(cur.len());
        let mut per_weight = Vec::new();
        for (&u, src) in &cur_w {
            let local: HashMap<usize, usize> = src.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            // boundaries: d1 of weight u+1 classes one filtration down
            let mut bound_local = Echelon::new(src.len());
            if let Some(pre) = prev_w.get(&(u + 1)) {
                for &i in pre {
                    let col = image_column(ctx, &prev[i], &index, &local, src.len());
                    bound_local.insert(ctx, &col);
                    let mut global = vec![0u32; cur.len()];
                    for (l, &g) in src.iter().enumerate() {
                        global[g] = col[l];
                    }
                    boundaries.insert(ctx, &global);
                }
            }
            // cycles: kernel of d1 into weight u-1 one filtration up
            let kernel = match u.checked_sub(1).and_then(|w| next_w.get(&w)) {
                Some(tgt) => {
                    let tlocal: HashMap<usize, usize> = tgt.iter().enumerate().map(|(l, &g)| (g, l)).collect();
                    let cols: Vec<Vec<u32>> = src
                        .iter()
                        .map(|&i| image_column(ctx, &cur[i], &next_index, &tlocal, tgt.len()))
                        .collect();
                    Matrix::from_columns(tgt.len(), &cols).kernel(ctx)
                }
                None => (0..src.len())
                    .map(|l| {
                        let mut v = vec![0u32; src.len()];
                        v[l] = 1;
                        v
                    })
                    .collect(),
            };
            let cycle_dim = kernel.len();
            let boundary_dim = bound_local.rank();
            let mut quotient = bound_local;
            let mut representatives = Vec::new();
            for v in &kernel {
                if let Some(r) = quotient.insert(ctx, v) {
                    let mut e = Element::zero();
                    for (l, &c) in r.iter().enumerate() {
                        if c != 0 {
                            e.add_term(ctx, cur[src[l]].key().clone(), c);
                        }
                    }
                    representatives.push(e);
                }
            }
            assert_eq!(representatives.len(), cycle_dim - boundary_dim);
            per_weight.push(WeightSummary {
                u,
                e1_dim: src.len(),
                cycle_dim,
                boundary_dim,
                e2_dim: cycle_dim - boundary_dim,
                representatives,
            });
        }
        let e1_total = cur.len();
        let e2_total = per_weight.iter().map(|w| w.e2_dim).sum();
        Self {
            ctx: *ctx,
            basis: cur.iter().map(|m| m.key().clone()).collect(),
            index,
            boundaries,
            report: E2Report {
                s,
                t,
                per_weight,
                e1_total,
                e2_total,
            },
        }
    }

    pub fn report(&self) -> &E2Report {
        &self.report
    }

    pub fn basis(&self) -> &[FactorKey] {
        &self.basis
    }

    /// Coordinates of `x` in this cell's E1 basis; `None` if `x` does not
    /// live here.
    pub fn coords(&self, x: &Element) -> Option<Vec<u32>> {
        let mut v = vec![0u32; self.basis.len()];
        for (k, c) in x.raw_terms() {
            v[*self.index.get(k)?] = c;
        }
        Some(v)
    }

    pub fn is_boundary(&self, x: &Element) -> bool {
        match self.coords(x) {
            Some(v) => self.boundaries.contains(&self.ctx, &v),
            None => x.is_zero(),
        }
    }

    /// Dimension of the span of `xs` modulo d1-boundaries. The inputs are
    /// assumed to be cycles in this cell.
    pub fn rank_mod_boundaries(&self, xs: &[Element]) -> usize {
        let mut e = self.boundaries.clone();
        xs.iter()
            .filter_map(|x| self.coords(x))
            .filter(|v| e.insert(&self.ctx, v).is_some())
            .count()
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundaries.rank()
    }
}
