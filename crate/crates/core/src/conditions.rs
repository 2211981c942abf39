//! Exact integer predicates on pairs `(n, a)` and triples `(n, a, b)`.
//!
//! Everything here is pure arithmetic. Binomials go through [`BigInt`] so
//! `δ` never overflows, whatever the inputs.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multidegree::{tail_multiplicities, MultiDegree, PairParams};

/// A triple `(n, a, b)` with `2 <= a_1`, `1 <= b_1` and `r < s < n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TripleParams {
    n: u32,
    a: MultiDegree,
    b: MultiDegree,
}

impl TripleParams {
    pub fn new(n: u32, a: MultiDegree, b: MultiDegree) -> Result<Self> {
        match a.min_entry() {
            None => return Err(Error::InvalidParams("a must be non-empty".into())),
            Some(d) if d < 2 => {
                return Err(Error::InvalidParams(format!(
                    "min(a) must be >= 2, got {a}"
                )))
            }
            _ => {}
        }
        if b.is_empty() {
            return Err(Error::InvalidParams("b must be non-empty".into()));
        }
        let (r, s) = (a.len(), b.len());
        if !(r < s && s < n as usize) {
            return Err(Error::InvalidParams(format!(
                "need r < s < n, got r = {r}, s = {s}, n = {n}"
            )));
        }
        Ok(TripleParams { n, a, b })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> &MultiDegree {
        &self.a
    }

    pub fn b(&self) -> &MultiDegree {
        &self.b
    }

    pub fn r(&self) -> u32 {
        self.a.len() as u32
    }

    pub fn s(&self) -> u32 {
        self.b.len() as u32
    }

    /// `m = n - r`.
    pub fn m(&self) -> u32 {
        self.n - self.r()
    }

    /// `l = n - s`.
    pub fn l(&self) -> u32 {
        self.n - self.s()
    }

    /// `n + r - s`, the quotient dimension the finite-field test aims for.
    pub fn target_dim(&self) -> u64 {
        u64::from(self.n + self.r() - self.s())
    }
}

/// Each inequality of the two numeric hypotheses, individually.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericDetail {
    /// `a_i >= b_i` for `i = 1..r`.
    pub termwise: bool,
    /// `a_r >= b_s`.
    pub top: bool,
    /// `m - 2l >= t_b - t_a`.
    pub tail_slack: bool,
    /// `m > 2l`.
    pub m_gt_2l: bool,
    pub m: u32,
    pub l: u32,
    pub t_a: u32,
    pub t_b: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericVerdict {
    pub num1_ok: bool,
    pub num2_ok: bool,
    pub detail: NumericDetail,
}

impl NumericVerdict {
    pub fn passes(&self) -> bool {
        self.num1_ok && self.num2_ok
    }
}

pub fn check_numeric(t: &TripleParams) -> NumericVerdict {
    let (a, b) = (t.a.entries(), t.b.entries());
    let termwise = a.iter().zip(b).all(|(ai, bi)| ai >= bi);
    let top = t.a.max_entry() >= t.b.max_entry();
    let (t_a, t_b) = tail_multiplicities(&t.a, &t.b);
    let (m, l) = (i64::from(t.m()), i64::from(t.l()));
    let tail_slack = m - 2 * l >= t_b as i64 - t_a as i64;
    let m_gt_2l = m > 2 * l;
    NumericVerdict {
        num1_ok: termwise && top,
        num2_ok: tail_slack && m_gt_2l,
        detail: NumericDetail {
            termwise,
            top,
            tail_slack,
            m_gt_2l,
            m: t.m(),
            l: t.l(),
            t_a: t_a as u32,
            t_b: t_b as u32,
        },
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `δ(n, a, ℓ) = (ℓ+1)(n-ℓ) - Σ C(a_i + ℓ, ℓ)`: the expected dimension of the
/// variety of `ℓ`-planes on a general complete intersection of multi-degree
/// `a` in `P^n`.
pub fn delta(n: u32, a: &MultiDegree, ell: u32) -> BigInt {
    let ell64 = u64::from(ell);
    let planes = BigInt::from(ell64 + 1) * (BigInt::from(n) - BigInt::from(ell));
    let conditions: BigUint = a
        .entries()
        .iter()
        .map(|&d| binomial(u64::from(d) + ell64, ell64))
        .sum();
    planes - BigInt::from(conditions)
}

/// `min(δ(n, a, ℓ), n - 2ℓ - |a|)`.
pub fn delta_minus(n: u32, a: &MultiDegree, ell: u32) -> BigInt {
    let other = i64::from(n) - 2 * i64::from(ell) - a.len() as i64;
    delta(n, a, ell).min(BigInt::from(other))
}

/// Whether a general complete intersection of multi-degree `a` in `P^n`
/// contains an `ℓ`-dimensional linear subspace (Debarre–Manivel).
pub fn contains_linear_subspace(n: u32, a: &MultiDegree, ell: u32) -> bool {
    !delta_minus(n, a, ell).is_negative()
}

/// The three conditions behind [`check_numlin`], reported separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumlinCheck {
    /// `a'' = a \ a'`.
    pub a_complement: MultiDegree,
    /// `δ₋(n - |a'|, a'!, λ - 1) >= 0`.
    pub linear_ok: bool,
    /// `|a''| < λ`.
    pub complement_ok: bool,
    /// `n - r > 2(λ - |a''|)`.
    pub codim_ok: bool,
    /// `(1^{n-λ}) ⊎ a''` when all three hold.
    pub b: Option<MultiDegree>,
}

/// Evaluates the linear-subspace construction for one choice of `a'` and `λ`.
///
/// When the conditions hold, a general complete intersection with a node
/// contains a `λ`-plane through the node, and cutting that plane with the
/// hypersurfaces of `a''` gives a member of the family `b`. The returned `b`
/// always satisfies the numeric hypotheses; this is asserted.
pub fn numlin_conditions(
    n: u32,
    a: &MultiDegree,
    a_prime: &MultiDegree,
    lambda: u32,
) -> Result<NumlinCheck> {
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
        return Err(Error::InvalidParams(format!("sum{a} exceeds n = {n}")));
    }
    if lambda == 0 {
        return Err(Error::InvalidParams("lambda must be positive".into()));
    }
    let a_complement = a_prime
        .multiset_difference(a)
        .ok_or_else(|| Error::InvalidParams(format!("{a_prime} is not a sub-multiset of {a}")))?;
    if a_prime.max_entry() != a.max_entry() {
        return Err(Error::InvalidParams(format!(
            "max{a_prime} must equal max{a}"
        )));
    }

    let reduced_n = n - a_prime.len() as u32;
    let linear_ok = contains_linear_subspace(reduced_n, &a_prime.bang()?, lambda - 1);
    let c = a_complement.len() as i64;
    let complement_ok = c < i64::from(lambda);
    let codim_ok = i64::from(n) - a.len() as i64 > 2 * (i64::from(lambda) - c);

    let b = (linear_ok && complement_ok && codim_ok).then(|| {
        let ones = MultiDegree::repeat(1, (n - lambda) as usize).expect("ones are positive");
        let b = ones.uplus(&a_complement);
        let triple = TripleParams::new(n, a.clone(), b.clone())
            .expect("linear-subspace construction yields r < s < n");
        assert_eq!(triple.l() as i64, i64::from(lambda) - c);
        assert!(
            check_numeric(&triple).passes(),
            "linear-subspace construction produced ({n}, {a}, {b}) failing the numeric hypotheses"
        );
        b
    });

    Ok(NumlinCheck {
        a_complement,
        linear_ok,
        complement_ok,
        codim_ok,
        b,
    })
}

/// `Some(b)` with `b = (1^{n-λ}) ⊎ a''` when the linear-subspace construction
/// applies to `(n, a, a', λ)`, else `None`.
pub fn check_numlin(
    n: u32,
    a: &MultiDegree,
    a_prime: &MultiDegree,
    lambda: u32,
) -> Result<Option<MultiDegree>> {
    numlin_conditions(n, a, a_prime, lambda).map(|c| c.b)
}

/// Pairs handled by the two classical families: `k = 1` (take `b = (1^{n-1})`)
/// and `a = (2^r)` (take `b = (1^{n-[n/2]}, 2^{r-1})`).
pub fn is_classically_covered(p: &PairParams) -> bool {
    p.k() == 1 || p.a().entries().iter().all(|&d| d == 2)
}

/// `m <= 2k`: the Hodge conjecture for these pairs is already known, so the
/// searches skip them.
pub fn excluded_small(p: &PairParams) -> bool {
    p.m() <= 2 * p.k()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(v: &[u32]) -> MultiDegree {
        MultiDegree::normalize(v.to_vec()).unwrap()
    }

    fn triple(n: u32, a: &[u32], b: &[u32]) -> TripleParams {
        TripleParams::new(n, md(a), md(b)).unwrap()
    }

    #[test]
    fn numeric_examples() {
        let v = check_numeric(&triple(4, &[3], &[1, 1, 1]));
        assert!(v.num1_ok && v.num2_ok);
        assert_eq!(
            (v.detail.m, v.detail.l, v.detail.t_a, v.detail.t_b),
            (3, 1, 1, 0)
        );

        let v = check_numeric(&triple(4, &[3], &[1, 1]));
        assert!(v.num1_ok);
        assert!(!v.num2_ok);
        assert!(!v.detail.m_gt_2l);
        assert!(v.detail.tail_slack);

        let b: Vec<u32> = [1; 7].iter().chain(&[2]).copied().collect();
        let v = check_numeric(&triple(10, &[2, 2, 3], &b));
        assert!(v.passes());
        assert_eq!((v.detail.m, v.detail.l), (7, 2));
    }

    #[test]
    fn numeric_termwise_and_top_failures() {
        let v = check_numeric(&triple(9, &[2, 3], &[3, 3, 3]));
        assert!(!v.detail.termwise);
        assert!(v.detail.top);
        let v = check_numeric(&triple(9, &[2, 3], &[1, 1, 4]));
        assert!(v.detail.termwise);
        assert!(!v.detail.top);
        assert!(!v.num1_ok);
    }

    #[test]
    fn triple_structure_errors() {
        assert!(TripleParams::new(4, md(&[3]), md(&[1])).is_err());
        assert!(TripleParams::new(4, md(&[3]), md(&[1, 1, 1, 1])).is_err());
        assert!(TripleParams::new(4, md(&[1, 3]), md(&[1, 1, 1])).is_err());
        assert!(TripleParams::new(4, MultiDegree::empty(), md(&[1, 1])).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(4, &md(&[3]), 1), BigInt::from(2));
        assert_eq!(delta(3, &md(&[4]), 1), BigInt::from(-1));
        assert_eq!(delta(9, &md(&[2, 3, 5]), 0), BigInt::from(9 - 3));
        assert_eq!(delta_minus(4, &md(&[3]), 1), BigInt::from(1));
        assert_eq!(delta_minus(3, &md(&[3]), 1), BigInt::from(0));
        assert_eq!(delta_minus(3, &md(&[4]), 1), BigInt::from(-1));
    }

    #[test]
    fn delta_large_values_are_exact() {
        // C(120, 60) is far beyond u64.
        let d = delta(200, &md(&[60]), 60);
        let expected: BigInt = "-96614908840363322603893139521364116".parse().unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn linear_subspace_examples() {
        assert!(contains_linear_subspace(4, &md(&[3]), 1));
        assert!(!contains_linear_subspace(3, &md(&[4]), 1));
        assert!(contains_linear_subspace(3, &md(&[3]), 1));
    }

    #[test]
    fn numlin_examples() {
        assert_eq!(
            check_numlin(4, &md(&[3]), &md(&[3]), 1).unwrap(),
            Some(md(&[1, 1, 1]))
        );
        assert_eq!(
            check_numlin(7, &md(&[2, 2]), &md(&[2]), 3).unwrap(),
            Some(md(&[1, 1, 1, 1, 2]))
        );
        assert_eq!(
            check_numlin(6, &md(&[3]), &md(&[3]), 2).unwrap(),
            Some(md(&[1, 1, 1, 1]))
        );
    }

    #[test]
    fn numlin_failing_conditions_are_reported() {
        // |a''| = 1 is not < λ = 1.
        let c = numlin_conditions(9, &md(&[2, 3]), &md(&[3]), 1).unwrap();
        assert!(!c.complement_ok);
        assert_eq!(c.b, None);
        // δ₋(3, (2,3), 1) = 4 - 7 < 0.
        let c = numlin_conditions(4, &md(&[3]), &md(&[3]), 2).unwrap();
        assert!(!c.linear_ok);
        assert_eq!(c.b, None);
    }

    #[test]
    fn numlin_rejects_bad_sub_multisets() {
        assert!(check_numlin(8, &md(&[2, 3]), &md(&[2]), 2).is_err());
        assert!(check_numlin(8, &md(&[2, 3]), &md(&[4]), 2).is_err());
        assert!(check_numlin(8, &md(&[2, 3]), &md(&[3, 3]), 2).is_err());
        assert!(check_numlin(8, &md(&[2, 3]), &md(&[3]), 0).is_err());
        assert!(check_numlin(4, &md(&[2, 3]), &md(&[3]), 1).is_err());
    }

    #[test]
    fn classical_coverage_examples() {
        assert!(!is_classically_covered(
            &PairParams::new(8, md(&[2, 3])).unwrap()
        ));
        assert!(is_classically_covered(
            &PairParams::new(6, md(&[2, 3])).unwrap()
        ));
        assert!(is_classically_covered(
            &PairParams::new(20, md(&[2, 2, 2])).unwrap()
        ));
    }

    #[test]
    fn exclusion_examples() {
        assert!(excluded_small(&PairParams::new(4, md(&[2, 2])).unwrap()));
        for n in 4..30 {
            assert!(excluded_small(&PairParams::new(n, md(&[2])).unwrap()));
        }
        assert!(!excluded_small(&PairParams::new(6, md(&[3])).unwrap()));
    }
}
