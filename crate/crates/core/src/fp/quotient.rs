//! The degree-0 piece of `J_g M_a + I_o h(M_b)` inside `(M_a)_0 = ⊕ R_{a_i}`.
//!
//! Two spanning families generate it:
//!
//! * type 1, `(J_g M_a)_0`: `ν · g_j` placed in block `i`, for every `i`, every
//!   `j` with `a_i >= b_j` and every monomial `ν` of degree `a_i - b_j`;
//! * type 2, `(I_o h(M_b))_0`: the column `(μ · h_1j, ..., μ · h_rj)` for every
//!   `j` and every monomial `μ ≠ x_0^{b_j}` of degree `b_j`.
//!
//! [`quotient_dim_dense`] stacks both families into one matrix. That matrix
//! gets large (about 14 500 × 6 000 for the biggest published triples), so
//! [`quotient_dim`] exploits the block structure instead: type-1 vectors live
//! in a single block and only depend on the block's degree, so it row-reduces
//! `(J_g)_d ⊂ R_d` once per distinct degree `d`, projects the type-2 vectors
//! onto the small quotients `R_d / (J_g)_d`, and takes the rank there.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
#[cfg(test)]
use crate::fp::linalg::Rref;
use crate::fp::linalg::{eliminate, rank_fp};
use crate::fp::poly::{monomial_basis, HomogPoly, Monomial, MonomialIndexer};
use crate::fp::witness::GHData;
use crate::fp::Prime;
use crate::multidegree::MultiDegree;

/// Coordinates on `(M_a)_0 = ⊕_i R_{a_i}`: block `i` holds the monomial
/// basis of `R_{a_i}` starting at `offsets[i]`.
#[derive(Debug, Clone)]
pub struct GradedBasisIndex {
    n: u32,
    degrees: Vec<u32>,
    offsets: Vec<usize>,
    indexers: Vec<MonomialIndexer>,
    dim: usize,
}

impl GradedBasisIndex {
    pub fn new(n: u32, a: &MultiDegree) -> Self {
        let mut offsets = Vec::with_capacity(a.len());
        let mut indexers = Vec::with_capacity(a.len());
        let mut dim = 0;
        for &d in a.entries() {
            let idx = MonomialIndexer::new(n as usize, d);
            offsets.push(dim);
            dim += idx.len();
            indexers.push(idx);
        }
        GradedBasisIndex {
            n,
            degrees: a.entries().to_vec(),
            offsets,
            indexers,
            dim,
        }
    }

    /// `D = Σ C(n + a_i, n)`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> usize {
        self.degrees.len()
    }

    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.indexers[i].len()
    }

    /// Coordinate of monomial `m` in block `i`.
    pub fn coordinate(&self, i: usize, m: &Monomial) -> usize {
        self.offsets[i] + self.indexers[i].index(m)
    }
}

fn check_shape(gh: &GHData, idx: &GradedBasisIndex) -> Result<()> {
    if idx.n != gh.n || idx.degrees != gh.a.entries() {
        return Err(Error::Dimension(format!(
            "basis index is for ({}, {:?}), witness is for ({}, {})",
            idx.n, idx.degrees, gh.n, gh.a
        )));
    }
    gh.validate()
}

/// The type-1 and type-2 spanning vectors, each of length `D`, type 1 first.
pub fn assemble_generators(gh: &GHData, idx: &GradedBasisIndex) -> Result<Vec<Vec<u32>>> {
    check_shape(gh, idx)?;
    let n = gh.n as usize;
    let p = gh.p;
    let mut out = Vec::new();
    for (i, &ai) in gh.a.entries().iter().enumerate() {
        for (gj, &bj) in gh.g.iter().zip(gh.b.entries()) {
            let Some(d) = ai.checked_sub(bj) else {
                continue;
            };
            for nu in monomial_basis(n, d) {
                let mut v = vec![0; idx.dim];
                gj.scatter_times(&nu, &idx.indexers[i], &mut v, idx.offsets[i], p);
                out.push(v);
            }
        }
    }
    for (j, &bj) in gh.b.entries().iter().enumerate() {
        for mu in monomial_basis(n, bj).into_iter().skip(1) {
            let mut v = vec![0; idx.dim];
            for i in 0..gh.r() {
                gh.h[i][j].scatter_times(&mu, &idx.indexers[i], &mut v, idx.offsets[i], p);
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// `D - rank` of the full generator matrix. Simple and slow; the reference
/// for [`quotient_dim`].
pub fn quotient_dim_dense(gh: &GHData) -> Result<u64> {
    let idx = GradedBasisIndex::new(gh.n, &gh.a);
    let gens = assemble_generators(gh, &idx)?;
    let rank = if gens.is_empty() {
        0
    } else {
        rank_fp(&gens, gh.p)?
    };
    Ok((idx.dim - rank) as u64)
}

/// `R_d / (J_g)_d` in coordinates: the free columns of the row-reduced
/// type-1 vectors, and each pivot row restricted to them.
struct DegreeQuotient {
    indexer: MonomialIndexer,
    /// For each basis slot of `R_d`: `Ok(free position)` or `Err(pivot row)`.
    slots: Vec<std::result::Result<usize, usize>>,
    /// Pivot rows restricted to the free columns.
    pivot_rows: Vec<Vec<u32>>,
    free: usize,
}

impl DegreeQuotient {
    fn new(n: usize, d: u32, g: &[HomogPoly], b: &MultiDegree, p: Prime) -> Self {
        let indexer = MonomialIndexer::new(n, d);
        let width = indexer.len();
        let mut rows = Vec::new();
        for (gj, &bj) in g.iter().zip(b.entries()) {
            let Some(e) = d.checked_sub(bj) else { continue };
            for nu in monomial_basis(n, e) {
                let mut v = vec![0u64; width];
                for (m, c) in gj.terms() {
                    v[indexer.index_of_product(&nu, m)] += u64::from(*c);
                }
                rows.push(v);
            }
        }
        let (pivots, rows) = eliminate(rows, width, p, true);
        let mut slots = vec![Ok(0); width];
        for (k, &c) in pivots.iter().enumerate() {
            slots[c] = Err(k);
        }
        let mut free = 0;
        for slot in slots.iter_mut().filter(|s| s.is_ok()) {
            *slot = Ok(free);
            free += 1;
        }
        let free_cols: Vec<usize> = (0..width).filter(|&c| slots[c].is_ok()).collect();
        let pivot_rows = rows
            .iter()
            .map(|row| free_cols.iter().map(|&c| row[c]).collect())
            .collect();
        DegreeQuotient {
            indexer,
            slots,
            pivot_rows,
            free,
        }
    }

    /// Adds the class of `mono * f` modulo `(J_g)_d` into `out` (length
    /// `self.free`), unreduced.
    fn accumulate(&self, mono: &Monomial, f: &HomogPoly, p: Prime, out: &mut [u64]) {
        let pm = u64::from(p.get());
        for (m, c) in f.terms() {
            let c = u64::from(*c);
            match self.slots[self.indexer.index_of_product(mono, m)] {
                Ok(pos) => out[pos] += c,
                // x = e_pivot ≡ -(row restricted to free columns).
                Err(k) => {
                    let neg = pm - c;
                    for (o, &y) in out.iter_mut().zip(&self.pivot_rows[k]) {
                        *o += neg * u64::from(y);
                    }
                }
            }
        }
    }
}

/// `dim (M_a / (J_g M_a + I_o h(M_b)))_0` over `F_p`.
///
/// Equal to [`quotient_dim_dense`]; computed block-wise as described in the
/// module docs.
pub fn quotient_dim(gh: &GHData) -> Result<u64> {
    gh.validate()?;
    let n = gh.n as usize;
    let p = gh.p;
    let pm = u64::from(p.get());

    let mut by_degree: BTreeMap<u32, DegreeQuotient> = BTreeMap::new();
    for &d in gh.a.entries() {
        by_degree
            .entry(d)
            .or_insert_with(|| DegreeQuotient::new(n, d, &gh.g, &gh.b, p));
    }
    let blocks: Vec<&DegreeQuotient> = gh.a.entries().iter().map(|d| &by_degree[d]).collect();
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut width = 0;
    for q in &blocks {
        offsets.push(width);
        width += q.free;
    }
    if width == 0 {
        return Ok(0);
    }

    let mut rows = Vec::new();
    for (j, &bj) in gh.b.entries().iter().enumerate() {
        for mu in monomial_basis(n, bj).into_iter().skip(1) {
            let mut v = vec![0u64; width];
            for (i, q) in blocks.iter().enumerate() {
                let block = &mut v[offsets[i]..offsets[i] + q.free];
                q.accumulate(&mu, &gh.h[i][j], p, block);
                // Bound growth: each accumulate adds < |terms| * p^2.
                block.iter_mut().for_each(|x| *x %= pm);
            }
            if v.iter().any(|&x| x != 0) {
                rows.push(v);
            }
        }
    }
    let (pivots, _) = eliminate(rows, width, p, false);
    Ok((width - pivots.len()) as u64)
}

/// `Σ_i dim (R / J_g)_{a_i}`: the quotient by the type-1 vectors alone.
pub fn type1_quotient_dim(gh: &GHData) -> Result<u64> {
    gh.validate()?;
    let mut by_degree: BTreeMap<u32, u64> = BTreeMap::new();
    let mut total = 0;
    for &d in gh.a.entries() {
        total += *by_degree.entry(d).or_insert_with(|| {
            DegreeQuotient::new(gh.n as usize, d, &gh.g, &gh.b, gh.p).free as u64
        });
    }
    Ok(total)
}

/// Rank of the type-1 vectors of one degree, via [`Rref`]; used by tests to
/// cross-check the block path.
#[cfg(test)]
pub(crate) fn type1_rank(gh: &GHData, d: u32) -> usize {
    let n = gh.n as usize;
    let idx = MonomialIndexer::new(n, d);
    let mut rows = Vec::new();
    for (gj, &bj) in gh.g.iter().zip(gh.b.entries()) {
        let Some(e) = d.checked_sub(bj) else { continue };
        for nu in monomial_basis(n, e) {
            let mut v = vec![0; idx.len()];
            gj.scatter_times(&nu, &idx, &mut v, 0, gh.p);
            rows.push(v);
        }
    }
    let width = idx.len();
    Rref::new(rows, width, gh.p).unwrap().rank()
}
