//! Random witnesses `(g, h) ∈ V = (I_o M_b)_0 × Hom(M_b, N_a)_0`.
//!
//! Sampling discipline, fixed for reproducibility: a `ChaCha8Rng` seeded with
//! `seed_from_u64(seed)` draws each free coefficient uniformly from
//! `0..p` via `gen_range`, in [`monomial_basis`] order. All of `g_1..g_s` are
//! drawn first, then `h` row by row (`h_11, h_12, ..., h_rs`). Coefficients
//! forced to zero (the `x_0`-power slots required by `I_o`, and entries of
//! negative degree) consume no draws.

use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fp::poly::{monomial_basis, HomogPoly, PolyContext};
use crate::fp::Prime;
use crate::multidegree::MultiDegree;

/// A sampled witness together with the triple and prime it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GHData {
    pub n: u32,
    pub a: MultiDegree,
    pub b: MultiDegree,
    pub p: Prime,
    /// `g_j ∈ (I_o)_{b_j}`.
    pub g: Vec<HomogPoly>,
    /// `h[i][j] ∈ R_{a_i - b_j}`, with the last row in `I_o`.
    pub h: Vec<Vec<HomogPoly>>,
}

fn uniform_poly(
    n: usize,
    degree: u32,
    vanish_at_o: bool,
    p: Prime,
    rng: &mut ChaCha8Rng,
) -> HomogPoly {
    let basis = monomial_basis(n, degree);
    let coeffs: Vec<u32> = basis
        .iter()
        .enumerate()
        .map(|(i, _)| {
            // Slot 0 is x_0^degree.
            if vanish_at_o && i == 0 {
                0
            } else {
                rng.gen_range(0..p.get())
            }
        })
        .collect();
    HomogPoly::from_dense(&basis, degree, &coeffs)
}

/// Draws `g_j` uniformly from `(I_o)_{b_j}` for each `j`.
pub fn sample_g(n: u32, b: &MultiDegree, p: Prime, rng: &mut ChaCha8Rng) -> Vec<HomogPoly> {
    b.entries()
        .iter()
        .map(|&bj| uniform_poly(n as usize, bj, true, p, rng))
        .collect()
}

/// Draws `h_ij` uniformly from `R_{a_i - b_j}` (from `(I_o)_{a_r - b_j}` in
/// the last row), zero where `a_i < b_j`.
pub fn sample_h(
    n: u32,
    a: &MultiDegree,
    b: &MultiDegree,
    p: Prime,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<HomogPoly>> {
    let r = a.len();
    a.entries()
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            b.entries()
                .iter()
                .map(|&bj| match ai.checked_sub(bj) {
                    None => HomogPoly::zero(n as usize, 0),
                    Some(d) => uniform_poly(n as usize, d, i + 1 == r, p, rng),
                })
                .collect()
        })
        .collect()
}

/// The witness for `seed`: `g` first, then `h`, from one generator.
pub fn sample_witness(n: u32, a: &MultiDegree, b: &MultiDegree, p: Prime, seed: u64) -> GHData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = sample_g(n, b, p, &mut rng);
    let h = sample_h(n, a, b, p, &mut rng);
    GHData {
        n,
        a: a.clone(),
        b: b.clone(),
        p,
        g,
        h,
    }
}

impl GHData {
    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn s(&self) -> usize {
        self.b.len()
    }

    /// Checks shape, degrees and membership in `V`.
    pub fn validate(&self) -> Result<()> {
        let (r, s) = (self.r(), self.s());
        let bad = |msg: String| Err(Error::Dimension(msg));
        if self.g.len() != s || self.h.len() != r || self.h.iter().any(|row| row.len() != s) {
            return bad(format!("witness shape does not match r = {r}, s = {s}"));
        }
        let nvars = self.n as usize + 1;
        for (j, (gj, &bj)) in self.g.iter().zip(self.b.entries()).enumerate() {
            if gj.nvars() != nvars || gj.degree() != bj {
                return bad(format!("g_{} must have degree {bj}", j + 1));
            }
            if !gj.vanishes_at_o() {
                return bad(format!("g_{} does not vanish at o", j + 1));
            }
        }
        for (i, (row, &ai)) in self.h.iter().zip(self.a.entries()).enumerate() {
            for (j, (hij, &bj)) in row.iter().zip(self.b.entries()).enumerate() {
                let (i1, j1) = (i + 1, j + 1);
                if hij.nvars() != nvars {
                    return bad(format!("h_{i1}{j1} has the wrong number of variables"));
                }
                match ai.checked_sub(bj) {
                    None if !hij.is_zero() => {
                        return bad(format!("h_{i1}{j1} must vanish since a_{i1} < b_{j1}"))
                    }
                    Some(d) if hij.degree() != d => {
                        return bad(format!("h_{i1}{j1} must have degree {d}"))
                    }
                    Some(_) if i1 == r && !hij.vanishes_at_o() => {
                        return bad(format!("h_{i1}{j1} must vanish at o"))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Text dump for auditing. Layout, one item per line:
    ///
    /// ```text
    /// witness
    /// p 101
    /// seed 42
    /// n 4
    /// a (3)
    /// b (1^3)
    /// g 1 : x1:17 x2:5 ...
    /// h 1 1 : x1^2:3 x1*x2:40 ...
    /// end
    /// ```
    ///
    /// Polynomials are `monomial:coefficient` pairs in decreasing graded-lex
    /// order (`x0 > x1 > ...`), monomials written as `x0^2*x3` or `1`, the
    /// zero polynomial as `0`. Indices are 1-based.
    pub fn dump(&self, seed: u64) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "witness");
        let _ = writeln!(out, "p {}", self.p);
        let _ = writeln!(out, "seed {seed}");
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "a {}", self.a);
        let _ = writeln!(out, "b {}", self.b);
        for (j, gj) in self.g.iter().enumerate() {
            let _ = writeln!(out, "g {} : {gj}", j + 1);
        }
        for (i, row) in self.h.iter().enumerate() {
            for (j, hij) in row.iter().enumerate() {
                let _ = writeln!(out, "h {} {} : {hij}", i + 1, j + 1);
            }
        }
        let _ = writeln!(out, "end");
        out
    }

    /// Parses [`GHData::dump`] output, returning the witness and its seed.
    pub fn parse_dump(text: &str) -> Result<(GHData, u64)> {
        let perr = |m: &str| Error::Parse(format!("witness dump: {m}"));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        if lines.next() != Some("witness") {
            return Err(perr("missing header"));
        }
        let mut field = |key: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| perr("truncated"))?;
            line.strip_prefix(key)
                .and_then(|rest| rest.strip_prefix(' '))
                .map(str::to_owned)
                .ok_or_else(|| perr(&format!("expected `{key}`")))
        };
        let p = Prime::new(field("p")?.parse().map_err(|_| perr("bad p"))?)?;
        let seed: u64 = field("seed")?.parse().map_err(|_| perr("bad seed"))?;
        let n: u32 = field("n")?.parse().map_err(|_| perr("bad n"))?;
        let a: MultiDegree = field("a")?.parse()?;
        let b: MultiDegree = field("b")?.parse()?;

        let mut g = Vec::with_capacity(b.len());
        for (j, &bj) in b.entries().iter().enumerate() {
            let body = field(&format!("g {} :", j + 1))?;
            let ctx = PolyContext {
                n: n as usize,
                degree: bj,
                p,
            };
            g.push(ctx.parse(&body)?);
        }
        let mut h = Vec::with_capacity(a.len());
        for (i, &ai) in a.entries().iter().enumerate() {
            let mut row = Vec::with_capacity(b.len());
            for (j, &bj) in b.entries().iter().enumerate() {
                let body = field(&format!("h {} {} :", i + 1, j + 1))?;
                let ctx = PolyContext {
                    n: n as usize,
                    degree: ai.saturating_sub(bj),
                    p,
                };
                row.push(ctx.parse(&body)?);
            }
            h.push(row);
        }
        if lines.next() != Some("end") {
            return Err(perr("missing `end`"));
        }
        let data = GHData { n, a, b, p, g, h };
        data.validate()?;
        Ok((data, seed))
    }
}
