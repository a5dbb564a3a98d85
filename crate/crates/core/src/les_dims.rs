//! Ext dimensions of the Moore spectrum M, the cofiber L of alpha_1, and
//! K = V(1), from the sphere through their long exact sequences.
//!
//! Groups are Ext_A^{s,t}(H*X, Z_p). The `_dual` variants index by
//! Ext_A^{s,t}(Z_p, H*X) instead; for these self-dual complexes that is a shift
//! of t by the top cell dimension.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adams_certify::{certify_ext_dim, Certificate};
use crate::error::LesError;
use crate::may_core::{Element, Generator};
use crate::may_diff::MayEngine;
use crate::prime::PrimeContext;

/// Default bound on the number of sphere cells a table may hold.
pub const DEFAULT_CELL_CAP: usize = 250_000;

/// Certified sphere data at one bidegree plus rank bounds for the two
/// multiplications out of it: a0 into (s+1, t+1) and h0 into (s+1, t+q).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereCell {
    pub s: i64,
    pub t: i64,
    pub certificate: Certificate,
    pub a0_rank_lower: usize,
    pub a0_rank_upper: usize,
    pub h0_rank_lower: usize,
    pub h0_rank_upper: usize,
}

impl SphereCell {
    pub fn dim(&self) -> Interval {
        let (lo, hi) = self.certificate.bounds();
        Interval::new(lo, hi)
    }
}

/// Plain `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0, hi: 0 };

    pub fn new(lo: usize, hi: usize) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    /// Cokernel of a map into `self` whose rank lies in `rank`.
    pub fn coker(self, rank: Interval) -> Interval {
        Interval::new(self.lo.saturating_sub(rank.hi), self.hi - rank.lo.min(self.hi))
    }

    pub fn sum(self, other: Interval) -> Interval {
        Interval::new(self.lo + other.lo, self.hi + other.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

/// Dimension bounds with a record of where they came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimInterval {
    pub lo: usize,
    pub hi: usize,
    pub exact: bool,
    pub provenance: Vec<String>,
}

impl DimInterval {
    fn from_interval(i: Interval, provenance: Vec<String>) -> Self {
        Self {
            lo: i.lo,
            hi: i.hi,
            exact: i.lo == i.hi,
            provenance,
        }
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo, self.hi)
    }

    pub fn contains(&self, d: usize) -> bool {
        self.lo <= d && d <= self.hi
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact && self.hi == 0
    }
}

impl fmt::Display for DimInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.interval())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spectrum {
    Sphere,
    M,
    L,
    K,
}

impl Spectrum {
    pub fn parse(s: &str) -> Option<Spectrum> {
        match s {
            "S" | "sphere" => Some(Spectrum::Sphere),
            "M" => Some(Spectrum::M),
            "L" => Some(Spectrum::L),
            "K" | "V(1)" => Some(Spectrum::K),
            _ => None,
        }
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spectrum::Sphere => "S",
            Spectrum::M => "M",
            Spectrum::L => "L",
            Spectrum::K => "K",
        })
    }
}

/// Immutable window of sphere cells.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SphereTable {
    ctx: PrimeContext,
    s_range: RangeInclusive<u32>,
    t_range: RangeInclusive<u64>,
    cells: HashMap<(i64, i64), SphereCell>,
}

/// Rank bounds for multiplication by `g` from E2^{s,t} into the cell `shift` away.
fn mult_rank(engine: &MayEngine, src: &Certificate, g: Generator, dt: u64) -> (usize, usize) {
    let (s, t) = (src.s, src.t);
    let tgt = certify_ext_dim(engine, s as i64 + 1, (t + dt) as i64);
    let upper = src.bounds().1.min(tgt.bounds().1);
    if upper == 0 || !src.is_certified() || !tgt.is_certified() {
        return (0, upper);
    }
    let ctx = engine.ctx();
    let gen = Element::generator(g);
    let images: Vec<Element> = engine
        .cell(s, t)
        .report()
        .representatives()
        .map(|x| x.multiply(&gen, ctx))
        .collect();
    let lower = engine.cell(s + 1, t + dt).rank_mod_boundaries(&images);
    (lower, upper)
}

impl SphereTable {
    pub fn build(engine: &MayEngine, s_range: RangeInclusive<u32>, t_range: RangeInclusive<u64>) -> Result<Self, LesError> {
        Self::build_capped(engine, s_range, t_range, DEFAULT_CELL_CAP)
    }

    pub fn build_capped(
        engine: &MayEngine,
        s_range: RangeInclusive<u32>,
        t_range: RangeInclusive<u64>,
        cap: usize,
    ) -> Result<Self, LesError> {
        let ns = if s_range.is_empty() { 0 } else { (s_range.end() - s_range.start() + 1) as usize };
        let nt = if t_range.is_empty() { 0 } else { (t_range.end() - t_range.start() + 1) as usize };
        let count = ns.saturating_mul(nt);
        if count > cap {
            return Err(LesError::WindowTooLarge { cells: count, cap });
        }
        let q = engine.ctx().q();
        let keys: Vec<(u32, u64)> = s_range
            .clone()
            .flat_map(|s| t_range.clone().map(move |t| (s, t)))
            .collect();
        let cells: HashMap<(i64, i64), SphereCell> = keys
            .par_iter()
            .map(|&(s, t)| {
                let certificate = certify_ext_dim(engine, s as i64, t as i64);
                let (a0_rank_lower, a0_rank_upper) = mult_rank(engine, &certificate, Generator::A(0), 1);
                let (h0_rank_lower, h0_rank_upper) = mult_rank(engine, &certificate, Generator::H(1, 0), q);
                let cell = SphereCell {
                    s: s as i64,
                    t: t as i64,
                    certificate,
                    a0_rank_lower,
                    a0_rank_upper,
                    h0_rank_lower,
                    h0_rank_upper,
                };
                ((s as i64, t as i64), cell)
            })
            .collect();
        Ok(Self {
            ctx: *engine.ctx(),
            s_range,
            t_range,
            cells,
        })
    }

    /// Smallest window that answers `spectrum` at (s,t) (or its dual column).
    pub fn for_query(engine: &MayEngine, spectrum: Spectrum, s: u32, t: u64) -> Result<Self, LesError> {
        let q = engine.ctx().q();
        let down = match spectrum {
            Spectrum::Sphere => 0,
            Spectrum::M => 1,
            Spectrum::L => q,
            Spectrum::K => q + 2,
        };
        let ds = if spectrum == Spectrum::K { 2 } else { 1 };
        Self::build(engine, s.saturating_sub(ds)..=s + ds, t.saturating_sub(down)..=t)
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells in (s, t) order.
    pub fn cells(&self) -> Vec<&SphereCell> {
        let mut v: Vec<&SphereCell> = self.cells.values().collect();
        v.sort_by_key(|c| (c.s, c.t));
        v
    }

    /// Negative degrees are zero; anything else must be inside the window.
    pub fn cell(&self, s: i64, t: i64) -> Result<Option<&SphereCell>, LesError> {
        if s < 0 || t < 0 {
            return Ok(None);
        }
        self.cells
            .get(&(s, t))
            .map(Some)
            .ok_or(LesError::InsufficientWindow { s, t })
    }

    pub fn dim(&self, s: i64, t: i64) -> Result<Interval, LesError> {
        Ok(self.cell(s, t)?.map_or(Interval::ZERO, |c| c.dim()))
    }

    fn a0_rank(&self, s: i64, t: i64) -> Result<Interval, LesError> {
        Ok(self
            .cell(s, t)?
            .map_or(Interval::ZERO, |c| Interval::new(c.a0_rank_lower, c.a0_rank_upper)))
    }

    fn h0_rank(&self, s: i64, t: i64) -> Result<Interval, LesError> {
        Ok(self
            .cell(s, t)?
            .map_or(Interval::ZERO, |c| Interval::new(c.h0_rank_lower, c.h0_rank_upper)))
    }

    /// Copy with every a0-multiplication forced to zero.
    pub fn with_zero_a0(&self) -> Self {
        let mut out = self.clone();
        for c in out.cells.values_mut() {
            c.a0_rank_lower = 0;
            c.a0_rank_upper = 0;
        }
        out
    }

    /// Copy where the cell's certificate is weakened to an unproven upper bound.
    pub fn widened(&self, s: i64, t: i64) -> Self {
        let mut out = self.clone();
        if let Some(c) = out.cells.get_mut(&(s, t)) {
            let hi = c.certificate.bounds().1;
            c.certificate.verdict = crate::adams_certify::Verdict::UpperBound(hi);
            c.certificate.lower = 0;
            c.a0_rank_lower = 0;
            c.h0_rank_lower = 0;
        }
        // ranks into this cell can no longer be witnessed either
        let q = self.ctx.q() as i64;
        if let Some(c) = out.cells.get_mut(&(s - 1, t - 1)) {
            c.a0_rank_lower = 0;
        }
        if let Some(c) = out.cells.get_mut(&(s - 1, t - q)) {
            c.h0_rank_lower = 0;
        }
        out
    }

    pub fn in_window(&self, s: u32, t: u64) -> bool {
        self.s_range.contains(&s) && self.t_range.contains(&t)
    }
}

fn arm(label: &str, what: Interval, from: (i64, i64), to: (i64, i64), rank: Interval) -> String {
    format!("{label} ({},{})->({},{}) rank {rank}: {what}", from.0, from.1, to.0, to.1)
}

/// `dim = ker(f: A -> B') + coker(g: A' -> B)` for a map shifting by `(1, dt)`.
fn two_arms(
    label: &str,
    s: i64,
    t: i64,
    dt: i64,
    dim: impl Fn(i64, i64) -> Result<Interval, LesError>,
    rank: impl Fn(i64, i64) -> Result<Interval, LesError>,
) -> Result<DimInterval, LesError> {
    // coker of (s-1, t-dt) -> (s, t)
    let r_in = rank(s - 1, t - dt)?;
    let coker = dim(s, t)?.coker(r_in);
    // ker of (s, t-dt) -> (s+1, t)
    let r_out = rank(s, t - dt)?;
    let ker = dim(s, t - dt)?.coker(r_out);
    let prov = vec![
        arm(&format!("coker {label}"), coker, (s - 1, t - dt), (s, t), r_in),
        arm(&format!("ker {label}"), ker, (s, t - dt), (s + 1, t), r_out),
    ];
    Ok(DimInterval::from_interval(coker.sum(ker), prov))
}

/// dim Ext^{s,t}(H*M) = ker(a0: (s,t-1) -> (s+1,t)) + coker(a0: (s-1,t-1) -> (s,t)).
pub fn ext_dims_m(table: &SphereTable, s: i64, t: i64) -> Result<DimInterval, LesError> {
    if s < 0 || t < 0 {
        return Ok(DimInterval::from_interval(Interval::ZERO, vec![]));
    }
    two_arms("a0", s, t, 1, |s, t| table.dim(s, t), |s, t| table.a0_rank(s, t))
}

/// dim Ext^{s,t}(H*L) = ker(h0: (s,t-q) -> (s+1,t)) + coker(h0: (s-1,t-q) -> (s,t)).
pub fn ext_dims_l(table: &SphereTable, s: i64, t: i64) -> Result<DimInterval, LesError> {
    if s < 0 || t < 0 {
        return Ok(DimInterval::from_interval(Interval::ZERO, vec![]));
    }
    let q = table.ctx.q() as i64;
    two_arms("h0", s, t, q, |s, t| table.dim(s, t), |s, t| table.h0_rank(s, t))
}

/// Rank bounds of the map Ext^{s,t}(H*M) -> Ext^{s+1,t+q+1}(H*M) induced by
/// the Adams map. Composed with the bottom cell and top cell maps it is h0 on
/// the sphere, which gives the lower bound.
fn alpha_rank(table: &SphereTable, s: i64, t: i64) -> Result<Interval, LesError> {
    if s < 0 || t < 0 {
        return Ok(Interval::ZERO);
    }
    let q = table.ctx.q() as i64;
    let src = ext_dims_m(table, s, t)?.hi;
    let tgt = ext_dims_m(table, s + 1, t + q + 1)?.hi;
    let hi = src.min(tgt);
    let lo = table.h0_rank(s, t)?.lo.min(hi);
    Ok(Interval::new(lo, hi))
}

/// dim Ext^{s,t}(H*K) from the sequence of the Adams map on M:
/// ker(alpha: M(s,t-q-1) -> M(s+1,t)) + coker(alpha: M(s-1,t-q-1) -> M(s,t)).
pub fn ext_dims_k(table: &SphereTable, s: i64, t: i64) -> Result<DimInterval, LesError> {
    if s < 0 || t < 0 {
        return Ok(DimInterval::from_interval(Interval::ZERO, vec![]));
    }
    let q = table.ctx.q() as i64;
    let m = |s: i64, t: i64| ext_dims_m(table, s, t).map(|d| d.interval());
    two_arms("alpha", s, t, q + 1, m, |s, t| alpha_rank(table, s, t))
}

/// Ext^{s,t}(Z_p, H*M) = Ext^{s,t+1}(H*M, Z_p).
pub fn ext_dims_m_dual(table: &SphereTable, s: i64, t: i64) -> Result<DimInterval, LesError> {
    ext_dims_m(table, s, t + 1)
}

/// Ext^{s,t}(Z_p, H*L) = Ext^{s,t+q}(H*L, Z_p).
pub fn ext_dims_l_dual(table: &SphereTable, s: i64, t: i64) -> Result<DimInterval, LesError> {
    ext_dims_l(table, s, t + table.ctx.q() as i64)
}

/// Ext^{s,t}(Z_p, H*K) = Ext^{s,t+q+2}(H*K, Z_p).
pub fn ext_dims_k_dual(table: &SphereTable, s: i64, t: i64) -> Result<DimInterval, LesError> {
    ext_dims_k(table, s, t + table.ctx.q() as i64 + 2)
}

pub fn ext_dims(table: &SphereTable, spectrum: Spectrum, s: i64, t: i64, dual: bool) -> Result<DimInterval, LesError> {
    match (spectrum, dual) {
        (Spectrum::Sphere, _) => {
            let d = table.dim(s, t)?;
            Ok(DimInterval::from_interval(d, vec![format!("sphere ({s},{t}): {d}")]))
        }
        (Spectrum::M, false) => ext_dims_m(table, s, t),
        (Spectrum::M, true) => ext_dims_m_dual(table, s, t),
        (Spectrum::L, false) => ext_dims_l(table, s, t),
        (Spectrum::L, true) => ext_dims_l_dual(table, s, t),
        (Spectrum::K, false) => ext_dims_k(table, s, t),
        (Spectrum::K, true) => ext_dims_k_dual(table, s, t),
    }
}

/// Window needed for a dual-column query: the plain query shifted up in t.
pub fn dual_shift(ctx: &PrimeContext, spectrum: Spectrum) -> u64 {
    match spectrum {
        Spectrum::Sphere => 0,
        Spectrum::M => 1,
        Spectrum::L => ctx.q(),
        Spectrum::K => ctx.q() + 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(p: u64) -> MayEngine {
        MayEngine::new(PrimeContext::new(p).unwrap())
    }

    #[test]
    fn interval_coker() {
        let b = Interval::new(1, 3);
        assert_eq!(b.coker(Interval::new(1, 2)), Interval::new(0, 2));
        assert_eq!(Interval::new(2, 2).coker(Interval::ZERO), Interval::new(2, 2));
    }

    #[test]
    fn bottom_cells() {
        let e = engine(5);
        let table = SphereTable::build(&e, 0..=2, 0..=12).unwrap();
        let c = table.cell(0, 0).unwrap().unwrap();
        assert_eq!(c.dim(), Interval::new(1, 1));
        assert_eq!(c.a0_rank_lower, 1);
        assert!(!ext_dims_m(&table, 0, 0).unwrap().is_exact_zero());
        let m = ext_dims_m(&table, 0, 0).unwrap();
        assert_eq!((m.lo, m.hi), (1, 1));
        let k = ext_dims_k(&table, 0, 0).unwrap();
        assert_eq!((k.lo, k.hi), (1, 1));
    }

    #[test]
    fn window_errors() {
        let e = engine(5);
        assert!(matches!(
            SphereTable::build_capped(&e, 0..=10, 0..=10, 50),
            Err(LesError::WindowTooLarge { .. })
        ));
        let table = SphereTable::build(&e, 0..=1, 0..=3).unwrap();
        assert!(matches!(ext_dims_m(&table, 3, 3), Err(LesError::InsufficientWindow { .. })));
    }

    #[test]
    fn h0_rank_p7() {
        let e = engine(7);
        let table = SphereTable::build(&e, 1..=2, 588..=588).unwrap();
        let c = table.cell(1, 588).unwrap().unwrap();
        assert_eq!(c.h0_rank_lower, 1);
        let b = table.cell(2, 588).unwrap().unwrap();
        assert_eq!(b.a0_rank_lower, 1);
    }
}
