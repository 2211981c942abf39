//! Dense Gaussian elimination over `F_p`.
//!
//! Rows are held as `u64` and reduced lazily: pivot rows are normalized to
//! residues `< p`, and each elimination step adds `(p - f) * pivot` to a row
//! without reducing. One step adds less than `p^2 < 2^32`, and a row takes at
//! most one step per pivot, so nothing overflows for any realistic width.
//! Entries are only reduced when they are inspected as pivot candidates.

use crate::error::{Error, Result};
use crate::fp::Prime;

/// Reduced row echelon form of a set of vectors.
#[derive(Debug, Clone)]
pub struct Rref {
    ncols: usize,
    /// Pivot column of each row, strictly increasing.
    pivots: Vec<usize>,
    /// Normalized rows: 1 at their own pivot, 0 at every other pivot column.
    rows: Vec<Vec<u32>>,
}

impl Rref {
    pub fn new(vectors: Vec<Vec<u32>>, ncols: usize, p: Prime) -> Result<Self> {
        let rows = widen(vectors, ncols)?;
        let (pivots, rows) = eliminate(rows, ncols, p, true);
        Ok(Rref {
            ncols,
            pivots,
            rows,
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Columns without a pivot. Their unit vectors form a basis of the
    /// quotient by the row space.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Rank over `F_p`. Entries need not be reduced.
pub fn rank_fp(vectors: &[Vec<u32>], p: Prime) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let ncols = first.len();
    let rows = widen(vectors.to_vec(), ncols)?;
    Ok(eliminate(rows, ncols, p, false).0.len())
}

fn widen(vectors: Vec<Vec<u32>>, ncols: usize) -> Result<Vec<Vec<u64>>> {
    vectors
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            if v.len() != ncols {
                return Err(Error::Dimension(format!(
                    "vector {i} has length {}, expected {ncols}",
                    v.len()
                )));
            }
            Ok(v.into_iter().map(u64::from).collect())
        })
        .collect()
}

/// Column-by-column elimination. With `full`, rows above each pivot are
/// cleared too, giving reduced row echelon form. Returns the pivot columns
/// and the first `rank` rows reduced mod `p`.
pub(crate) fn eliminate(
    mut rows: Vec<Vec<u64>>,
    ncols: usize,
    p: Prime,
    full: bool,
) -> (Vec<usize>, Vec<Vec<u32>>) {
    let pm = u64::from(p.get());
    let mut pivots = Vec::new();
    let mut pivot_row = vec![0u32; ncols];
    for col in 0..ncols {
        let rank = pivots.len();
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&i| {
            let x = &mut rows[i][col];
            *x %= pm;
            *x != 0
        }) else {
            continue;
        };
        rows.swap(rank, found);

        let inv = u64::from(p.inv(rows[rank][col] as u32));
        for (dst, x) in pivot_row[col..].iter_mut().zip(&mut rows[rank][col..]) {
            *x = (*x % pm) * inv % pm;
            *dst = *x as u32;
        }
        rows[rank][..col].iter_mut().for_each(|x| *x = 0);

        let targets = if full {
            0..rows.len()
        } else {
            rank + 1..rows.len()
        };
        for i in targets {
            if i == rank {
                continue;
            }
            let row = &mut rows[i];
            let f = row[col] % pm;
            if f == 0 {
                row[col] = 0;
                continue;
            }
            let neg = pm - f;
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x += neg * u64::from(y);
            }
        }
        pivots.push(col);
    }
    rows.truncate(pivots.len());
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| (x % pm) as u32).collect())
        .collect();
    (pivots, rows)
}
