use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fp::Prime;

/// Exponent vector over `x_0, ..., x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    /// `x_0^d` in `n + 1` variables.
    pub fn x0_power(nvars: usize, d: u32) -> Self {
        let mut e = vec![0; nvars];
        e[0] = d as u16;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }

    /// Whether this is a pure power of `x_0`, i.e. does not vanish at
    /// `o = [1:0:...:0]`.
    pub fn is_x0_power(&self) -> bool {
        self.0[1..].iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic with `x_0 > x_1 > ... > x_n`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// `x0^2*x3`, or `1` for the constant monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate().filter(|(_, &e)| e > 0) {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl Monomial {
    /// Parses the [`Display`](fmt::Display) form in `nvars` variables.
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        let bad = || Error::Parse(format!("bad monomial {s:?}"));
        let mut e = vec![0u16; nvars];
        if s == "1" {
            return Ok(Monomial(e));
        }
        for factor in s.split('*') {
            let (var, pow) = match factor.split_once('^') {
                Some((v, p)) => (v, p.parse::<u16>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            let idx: usize = var
                .strip_prefix('x')
                .and_then(|i| i.parse().ok())
                .ok_or_else(bad)?;
            if idx >= nvars || pow == 0 {
                return Err(bad());
            }
            e[idx] += pow;
        }
        Ok(Monomial(e))
    }
}

/// Every monomial of degree `d` in `x_0..x_n`, largest first in graded-lex
/// order. The first entry is always `x_0^d`.
pub fn monomial_basis(n: usize, d: u32) -> Vec<Monomial> {
    fn fill(out: &mut Vec<Monomial>, cur: &mut Vec<u16>, var: usize, left: u16) {
        if var + 1 == cur.len() {
            cur[var] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[var] = e;
            fill(out, cur, var + 1, left - e);
        }
        cur[var] = 0;
    }
    let nvars = n + 1;
    let mut out = Vec::with_capacity(basis_size(nvars, d));
    fill(&mut out, &mut vec![0; nvars], 0, d as u16);
    out
}

fn basis_size(nvars: usize, d: u32) -> usize {
    let mut acc: u128 = 1;
    for i in 1..nvars as u128 {
        acc = acc * (u128::from(d) + i) / i;
    }
    acc as usize
}

/// Position of a degree-`d` monomial within [`monomial_basis`], computed
/// directly from its exponents.
#[derive(Debug, Clone)]
pub struct MonomialIndexer {
    nvars: usize,
    degree: u32,
    /// `choose[v][t] = C(t + v, v)`: monomials of degree `<= t` in `v` variables.
    choose: Vec<Vec<usize>>,
}

impl MonomialIndexer {
    pub fn new(n: usize, degree: u32) -> Self {
        let nvars = n + 1;
        let choose = (0..nvars)
            .map(|v| (0..=degree).map(|t| basis_size(v + 1, t)).collect())
            .collect();
        MonomialIndexer {
            nvars,
            degree,
            choose,
        }
    }

    pub fn len(&self) -> usize {
        basis_size(self.nvars, self.degree)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn index(&self, m: &Monomial) -> usize {
        self.index_with(|i| m.0[i])
    }

    /// Index of the product `x * y` without materializing it.
    pub fn index_of_product(&self, x: &Monomial, y: &Monomial) -> usize {
        self.index_with(|i| x.0[i] + y.0[i])
    }

    fn index_with(&self, exp: impl Fn(usize) -> u16) -> usize {
        let mut left = self.degree as usize;
        let mut idx = 0;
        for i in 0..self.nvars - 1 {
            let e = exp(i) as usize;
            debug_assert!(e <= left, "monomial degree exceeds indexer degree");
            // Monomials sharing the prefix but with a larger exponent here
            // come first: they leave degree <= left - e - 1 for the
            // remaining nvars - i - 1 variables.
            if left > e {
                idx += self.choose[self.nvars - i - 1][left - e - 1];
            }
            left -= e;
        }
        debug_assert_eq!(exp(self.nvars - 1) as usize, left);
        idx
    }
}

/// A homogeneous polynomial over `F_p`, stored as its nonzero terms in
/// decreasing graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogPoly {
    nvars: usize,
    degree: u32,
    terms: Vec<(Monomial, u32)>,
}

impl HomogPoly {
    pub fn zero(n: usize, degree: u32) -> Self {
        HomogPoly {
            nvars: n + 1,
            degree,
            terms: Vec::new(),
        }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs. Coefficients
    /// are reduced mod `p`, repeated monomials summed, zero terms dropped.
    pub fn from_terms(
        n: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, u32)>,
        p: Prime,
    ) -> Result<Self> {
        let mut collected: Vec<(Monomial, u32)> = Vec::new();
        for (m, c) in terms {
            if m.nvars() != n + 1 || m.degree() != degree {
                return Err(Error::Dimension(format!(
                    "monomial {m} does not have degree {degree} in {} variables",
                    n + 1
                )));
            }
            collected.push((m, c % p.get()));
        }
        collected.sort_by(|x, y| y.0.cmp(&x.0));
        let mut terms: Vec<(Monomial, u32)> = Vec::with_capacity(collected.len());
        for (m, c) in collected {
            match terms.last_mut() {
                Some((last, acc)) if *last == m => *acc = p.add(*acc, c),
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| *c != 0);
        Ok(HomogPoly {
            nvars: n + 1,
            degree,
            terms,
        })
    }

    /// Builds a polynomial from coefficients listed in [`monomial_basis`]
    /// order. Zero coefficients are skipped.
    pub(crate) fn from_dense(basis: &[Monomial], degree: u32, coeffs: &[u32]) -> Self {
        debug_assert_eq!(basis.len(), coeffs.len());
        let nvars = basis.first().map_or(1, Monomial::nvars);
        let terms = basis
            .iter()
            .zip(coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        HomogPoly {
            nvars,
            degree,
            terms,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map_or(0, |&(_, c)| c)
    }

    /// Value at `o = [1:0:...:0]`: the coefficient of `x_0^d`.
    pub fn value_at_o(&self) -> u32 {
        self.terms
            .first()
            .filter(|(m, _)| m.is_x0_power())
            .map_or(0, |&(_, c)| c)
    }

    /// Whether the polynomial lies in `I_o = <x_1, ..., x_n>`.
    pub fn vanishes_at_o(&self) -> bool {
        self.value_at_o() == 0
    }

    /// `mono * self` scattered (added) into `out`, a dense vector indexed by
    /// `idx`, starting at `offset`.
    pub(crate) fn scatter_times(
        &self,
        mono: &Monomial,
        idx: &MonomialIndexer,
        out: &mut [u32],
        offset: usize,
        p: Prime,
    ) {
        for (m, c) in &self.terms {
            let slot = &mut out[offset + idx.index_of_product(mono, m)];
            *slot = p.add(*slot, *c);
        }
    }
}

impl fmt::Display for HomogPoly {
    /// Space-separated `monomial:coefficient` pairs, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{m}:{c}")?;
        }
        Ok(())
    }
}

/// Parses the [`Display`](fmt::Display) form; needs the context the text does
/// not carry.
pub(crate) struct PolyContext {
    pub n: usize,
    pub degree: u32,
    pub p: Prime,
}

impl PolyContext {
    pub fn parse(&self, s: &str) -> Result<HomogPoly> {
        let s = s.trim();
        if s == "0" {
            return Ok(HomogPoly::zero(self.n, self.degree));
        }
        let mut terms = Vec::new();
        for pair in s.split_whitespace() {
            let (m, c) = pair
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("bad term {pair:?}")))?;
            let c = u32::from_str(c).map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            if c >= self.p.get() {
                return Err(Error::Parse(format!(
                    "coefficient {c} not reduced mod {}",
                    self.p
                )));
            }
            terms.push((Monomial::parse(m, self.n + 1)?, c));
        }
        HomogPoly::from_terms(self.n, self.degree, terms, self.p)
    }
}
