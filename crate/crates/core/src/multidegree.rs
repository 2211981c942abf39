//! Multi-degree sequences and the small amount of sequence algebra the
//! searches need: sorting, merging (`⊎`), factorial expansion (`!`), tail
//! multiplicities and the Hodge level.
//!
//! A [`MultiDegree`] is always stored flat and non-decreasing. The textual
//! form `(2^4,3^3,4)` is handled by the [`FromStr`] and [`Display`] impls.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-decreasing sequence of positive integers.
///
/// The empty sequence is allowed; callers that need a non-empty sequence or
/// entries `>= 2` check that themselves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct MultiDegree(Vec<u32>);

impl MultiDegree {
    /// The empty sequence `()`.
    pub fn empty() -> Self {
        MultiDegree(Vec::new())
    }

    /// Sorts `raw` into non-decreasing order. Rejects zero entries.
    pub fn normalize(raw: impl Into<Vec<u32>>) -> Result<Self> {
        let mut v = raw.into();
        if let Some(&bad) = v.iter().find(|&&d| d == 0) {
            return Err(Error::InvalidMultiDegree(format!(
                "entries must be positive, got {bad}"
            )));
        }
        v.sort_unstable();
        Ok(MultiDegree(v))
    }

    /// `(d^count)`.
    pub fn repeat(d: u32, count: usize) -> Result<Self> {
        Self::normalize(vec![d; count])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_entry(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn max_entry(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&d| u64::from(d)).sum()
    }

    /// Number of entries equal to `value`.
    pub fn count_of(&self, value: u32) -> usize {
        self.0.iter().filter(|&&d| d == value).count()
    }

    /// The sorted multiset union `self ⊎ other`.
    pub fn uplus(&self, other: &MultiDegree) -> MultiDegree {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        MultiDegree(out)
    }

    /// `a! = (a_1)! ⊎ ... ⊎ (a_r)!` where `(d)! = (2, 3, ..., d)`.
    pub fn bang(&self) -> Result<MultiDegree> {
        if let Some(d) = self.min_entry().filter(|&d| d < 2) {
            return Err(Error::InvalidMultiDegree(format!(
                "factorial expansion needs entries >= 2, got {d}"
            )));
        }
        let mut out: Vec<u32> = self.0.iter().flat_map(|&d| 2..=d).collect();
        out.sort_unstable();
        Ok(MultiDegree(out))
    }

    /// Whether `self` is contained in `other` as a multiset.
    pub fn is_submultiset_of(&self, other: &MultiDegree) -> bool {
        self.multiset_difference(other).is_some()
    }

    /// `other \ self` as multisets, or `None` if `self ⊄ other`.
    pub fn multiset_difference(&self, other: &MultiDegree) -> Option<MultiDegree> {
        let mut rest = Vec::with_capacity(other.len());
        let mut mine = self.0.iter().peekable();
        for &d in &other.0 {
            if mine.peek() == Some(&&d) {
                mine.next();
            } else {
                rest.push(d);
            }
        }
        mine.peek().is_none().then_some(MultiDegree(rest))
    }

    /// Run-length view: `(value, multiplicity)` in increasing value order.
    pub fn runs(&self) -> Vec<(u32, usize)> {
        let mut runs: Vec<(u32, usize)> = Vec::new();
        for &d in &self.0 {
            match runs.last_mut() {
                Some((v, c)) if *v == d => *c += 1,
                _ => runs.push((d, 1)),
            }
        }
        runs
    }
}

impl TryFrom<Vec<u32>> for MultiDegree {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        MultiDegree::normalize(v)
    }
}

impl From<MultiDegree> for Vec<u32> {
    fn from(m: MultiDegree) -> Self {
        m.0
    }
}

/// `(t_a, t_b)`: how often `max(a)` occurs in `a` and in `b`.
///
/// Panics if `a` is empty.
pub fn tail_multiplicities(a: &MultiDegree, b: &MultiDegree) -> (usize, usize) {
    let top = a
        .max_entry()
        .expect("tail multiplicities need a non-empty a");
    (a.count_of(top), b.count_of(top))
}

/// A pair `(n, a)`: a general Fano complete intersection of multi-degree `a`
/// in projective `n`-space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairParams {
    n: u32,
    a: MultiDegree,
}

impl PairParams {
    /// Requires `n >= 4`, `a` non-empty, `min(a) >= 2` and `sum(a) <= n`.
    pub fn new(n: u32, a: MultiDegree) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidParams(format!(
                "n must be at least 4, got {n}"
            )));
        }
        match a.min_entry() {
            None => return Err(Error::InvalidParams("a must be non-empty".into())),
            Some(d) if d < 2 => {
                return Err(Error::InvalidParams(format!(
                    "min(a) must be >= 2, got {a}"
                )))
            }
            _ => {}
        }
        if a.sum() > u64::from(n) {
            return Err(Error::InvalidParams(format!(
                "sum(a) = {} exceeds n = {n} (not Fano)",
                a.sum()
            )));
        }
        Ok(PairParams { n, a })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> &MultiDegree {
        &self.a
    }

    pub fn r(&self) -> u32 {
        self.a.len() as u32
    }

    /// Dimension of the complete intersection, `n - r`.
    pub fn m(&self) -> u32 {
        self.n - self.r()
    }

    /// See [`hodge_level_k`].
    pub fn k(&self) -> u32 {
        hodge_level_k(self)
    }
}

/// `k = floor((n - sum(a)) / max(a)) + 1`.
///
/// The middle cohomology has `H^{ν, m-ν} = 0` exactly when `ν < k` or
/// `m - ν < k`, so `k` is the codimension a cycle-support must reach.
pub fn hodge_level_k(p: &PairParams) -> u32 {
    let slack = u64::from(p.n) - p.a.sum();
    let top = u64::from(p.a.max_entry().expect("PairParams has non-empty a"));
    (slack / top) as u32 + 1
}

impl fmt::Display for MultiDegree {
    /// Caret form: values repeated at least twice are written `d^count`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (d, c)) in self.runs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if c >= 2 {
                write!(f, "{d}^{c}")?;
            } else {
                write!(f, "{d}")?;
            }
        }
        f.write_str(")")
    }
}

impl FromStr for MultiDegree {
    type Err = Error;

    /// Accepts `(2,2,3)`, `(2^2,3)` and `()`. Whitespace is ignored; the
    /// entries need not be sorted.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("{why} in multi-degree {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| bad("expected surrounding parentheses"))?;
        if inner.is_empty() {
            return Ok(MultiDegree::empty());
        }
        let mut raw = Vec::new();
        for item in inner.split(',') {
            let (value, count) = match item.split_once('^') {
                Some((v, c)) => (
                    v,
                    c.parse::<usize>()
                        .map_err(|_| bad("bad repetition count"))?,
                ),
                None => (item, 1),
            };
            let value: u32 = value.parse().map_err(|_| bad("bad entry"))?;
            if value == 0 {
                return Err(bad("entries must be positive"));
            }
            if count == 0 {
                return Err(bad("repetition count must be positive"));
            }
            raw.extend(std::iter::repeat_n(value, count));
        }
        MultiDegree::normalize(raw)
    }
}
