use std::collections::HashMap;
use std::sync::Arc;

use super::{Poly, PolyError, Scalar, VarContext};

/// Largest square size accepted by [`PolyMatrix::det`].
pub const MAX_DET_SIZE: usize = 10;

/// Row-major matrix of polynomials sharing one variable context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    ctx: Arc<VarContext>,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(ctx: &Arc<VarContext>, rows: Vec<Vec<Poly>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(PolyError::Shape("ragged rows".into()));
        }
        let entries: Vec<Poly> = rows.into_iter().flatten().collect();
        if entries.iter().any(|p| p.ctx() != ctx) {
            return Err(PolyError::ContextMismatch);
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            ctx: ctx.clone(),
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Poly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&self, a: usize, b: usize) -> PolyMatrix {
        let mut m = self.clone();
        for c in 0..self.cols {
            m.entries.swap(a * self.cols + c, b * self.cols + c);
        }
        m
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Poly]) -> Result<Vec<Poly>, PolyError> {
        if v.len() != self.cols {
            return Err(PolyError::Shape(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .try_fold(Poly::zero(&self.ctx), |acc, (a, b)| acc.checked_add(&a.checked_mul(b)?))
            })
            .collect()
    }

    /// Evaluate every entry at a point.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Vec<Vec<Scalar>>, PolyError> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|p| p.evaluate(point)).collect())
            .collect()
    }

    /// Exact determinant by Laplace expansion along columns, memoized on the
    /// set of rows still in play.
    pub fn det(&self) -> Result<Poly, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::Shape(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows > MAX_DET_SIZE {
            return Err(PolyError::Shape(format!(
                "determinant size {} exceeds {}",
                self.rows, MAX_DET_SIZE
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::constant(&self.ctx, Scalar::one()));
        }
        // minors[mask] = det of rows in `mask` against the first popcount(mask) columns
        let mut minors: HashMap<u32, Poly> = HashMap::new();
        minors.insert(0, Poly::constant(&self.ctx, Scalar::one()));
        for mask in 1u32..(1 << n) {
            let k = mask.count_ones() as usize;
            let col = k - 1;
            let mut acc = Poly::zero(&self.ctx);
            let mut pos = 0;
            for r in 0..n {
                if mask & (1 << r) == 0 {
                    continue;
                }
                let entry = self.get(r, col);
                if !entry.is_zero() {
                    let sub = &minors[&(mask & !(1 << r))];
                    if !sub.is_zero() {
                        let t = entry * sub;
                        acc = if (pos + col).is_multiple_of(2) {
                            &acc + &t
                        } else {
                            &acc - &t
                        };
                    }
                }
                pos += 1;
            }
            minors.insert(mask, acc);
        }
        Ok(minors.remove(&((1u32 << n) - 1)).unwrap())
    }
}
