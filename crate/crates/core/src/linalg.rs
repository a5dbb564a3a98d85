//! Dense linear algebra over F_p. Blocks here are small, so no sparsity tricks.

use crate::prime::PrimeContext;

/// Row-major dense matrix with entries in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, ctx: &PrimeContext) -> Vec<usize> {
        let p = ctx.p() as u32;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = ctx.inv(self.get(r, c));
            for x in self.row_mut(r) {
                *x = ctx.mul(*x, inv);
            }
            let pivot_row: Vec<u32> = self.data[r * self.cols..(r + 1) * self.cols].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                let nf = p - f;
                for (x, &y) in self.row_mut(i).iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = ((*x as u64 + nf as u64 * y as u64) % p as u64) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, ctx: &PrimeContext) -> usize {
        self.clone().rref(ctx).len()
    }

    /// Basis of the null space, one vector per free column, in column order.
    pub fn kernel(&self, ctx: &PrimeContext) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(ctx);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = ctx.neg(m.get(r, free));
            }
            out.push(v);
        }
        out
    }

    pub fn mul_vec(&self, ctx: &PrimeContext, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let acc = (0..self.cols).fold(0u64, |acc, j| acc + self.get(i, j) as u64 * v[j] as u64);
                (acc % ctx.p()) as u32
            })
            .collect()
    }
}

/// Incrementally built echelon basis of a subspace of F_p^n.
#[derive(Debug, Clone)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduce `v` against the stored rows; the result vanishes at every pivot.
    pub fn reduce(&self, ctx: &PrimeContext, v: &mut [u32]) {
        let p = ctx.p();
        for (piv, row) in &self.rows {
            let f = v[*piv];
            if f == 0 {
                continue;
            }
            let nf = p - f as u64;
            for (x, &y) in v.iter_mut().zip(row) {
                if y != 0 {
                    *x = ((*x as u64 + nf * y as u64) % p) as u32;
                }
            }
        }
    }

    /// Add `v` to the span; returns the reduced vector if it was new.
    pub fn insert(&mut self, ctx: &PrimeContext, v: &[u32]) -> Option<Vec<u32>> {
        let mut w = v.to_vec();
        self.reduce(ctx, &mut w);
        let piv = w.iter().position(|&x| x != 0)?;
        let reduced = w.clone();
        let inv = ctx.inv(w[piv]);
        for x in &mut w {
            *x = ctx.mul(*x, inv);
        }
        self.rows.push((piv, w));
        Some(reduced)
    }

    pub fn contains(&self, ctx: &PrimeContext, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(ctx, &mut w);
        w.iter().all(|&x| x == 0)
    }
}
