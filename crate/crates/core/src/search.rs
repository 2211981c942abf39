//! Triple verification and the exhaustive searches over multi-degrees.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conditions::{
    check_numeric, check_numlin, excluded_small, is_classically_covered, NumericVerdict,
    TripleParams,
};
use crate::error::{Error, Result};
use crate::fp::{quotient_dim, sample_witness, Prime};
use crate::multidegree::{MultiDegree, PairParams};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub primes: Vec<Prime>,
    pub trials_per_prime: u32,
    pub base_seed: u64,
    pub n_max: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            primes: vec![Prime::DEFAULT],
            trials_per_prime: 10,
            base_seed: 0,
            n_max: 40,
        }
    }
}

/// SplitMix64 output function.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of one randomized trial.
///
/// Folds the words `base_seed, n, r, a_1..a_r, s, b_1..b_s, p, trial` into a
/// state starting at 0 with `state = mix64(state ^ word).wrapping_add(GOLDEN)`,
/// where `mix64` is the SplitMix64 finalizer and `GOLDEN = 0x9e3779b97f4a7c15`;
/// the result is `mix64(state)`.
pub fn trial_seed(
    base_seed: u64,
    n: u32,
    a: &MultiDegree,
    b: &MultiDegree,
    p: Prime,
    trial: u32,
) -> u64 {
    const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
    let words = std::iter::once(base_seed)
        .chain([u64::from(n), a.len() as u64])
        .chain(a.entries().iter().map(|&x| u64::from(x)))
        .chain(std::iter::once(b.len() as u64))
        .chain(b.entries().iter().map(|&x| u64::from(x)))
        .chain([u64::from(p.get()), u64::from(trial)]);
    mix64(words.fold(0, |state, w| mix64(state ^ w).wrapping_add(GOLDEN)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub prime: Prime,
    pub seed: u64,
    pub dim: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Some witness reached `n + r - s`.
    Verified,
    /// Numeric hypotheses hold but no witness reached the target. Proves
    /// nothing either way.
    Inconclusive,
    /// The numeric hypotheses fail; no trials were run.
    NumericFail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: u32,
    pub a: MultiDegree,
    pub b: MultiDegree,
    pub numeric: NumericVerdict,
    /// `n + r - s`.
    pub target: u64,
    pub trials: Vec<TrialRecord>,
    pub status: Status,
}

impl VerificationReport {
    /// The trial that reached the target, if any.
    pub fn witness(&self) -> Option<&TrialRecord> {
        self.trials.iter().find(|t| t.dim == self.target)
    }
}

/// Checks the numeric hypotheses, then samples witnesses prime by prime until
/// one reaches `n + r - s` or the budget runs out.
pub fn verify_triple(
    n: u32,
    a: &MultiDegree,
    b: &MultiDegree,
    cfg: &SearchConfig,
) -> Result<VerificationReport> {
    let triple = TripleParams::new(n, a.clone(), b.clone())?;
    let numeric = check_numeric(&triple);
    let target = triple.target_dim();
    let mut report = VerificationReport {
        n,
        a: a.clone(),
        b: b.clone(),
        numeric,
        target,
        trials: Vec::new(),
        status: Status::NumericFail,
    };
    if !numeric.passes() {
        return Ok(report);
    }
    report.status = Status::Inconclusive;
    'outer: for &p in &cfg.primes {
        for trial in 0..cfg.trials_per_prime {
            let seed = trial_seed(cfg.base_seed, n, a, b, p, trial);
            let gh = sample_witness(n, a, b, p, seed);
            let dim = quotient_dim(&gh)?;
            assert!(
                dim >= target,
                "quotient dimension {dim} below n + r - s = {target} for ({n}, {a}, {b})"
            );
            report.trials.push(TrialRecord {
                prime: p,
                seed,
                dim,
            });
            if dim == target {
                report.status = Status::Verified;
                break 'outer;
            }
        }
    }
    Ok(report)
}

/// Every `b` of length `n - k` with `1 <= b_1 <= ... <= b_s` that passes the
/// numeric hypotheses for `(n, a)`, in lexicographic order.
pub fn candidate_bs(pair: &PairParams) -> Vec<MultiDegree> {
    let s = (pair.n() - pair.k()) as usize;
    let a = pair.a().entries();
    let top = pair.a().max_entry().expect("non-empty");
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    fn fill(cur: &mut Vec<u32>, s: usize, a: &[u32], top: u32, out: &mut Vec<Vec<u32>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(1);
        let hi = a.get(cur.len()).copied().unwrap_or(top);
        for v in lo..=hi {
            cur.push(v);
            fill(cur, s, a, top, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    fill(&mut cur, s, a, top, &mut raw);
    for b in raw {
        let b = MultiDegree::normalize(b).expect("positive entries");
        let Ok(t) = TripleParams::new(pair.n(), pair.a().clone(), b.clone()) else {
            continue;
        };
        if check_numeric(&t).passes() {
            out.push(b);
        }
    }
    out
}

/// Looks for `b` with `n - |b| = k` satisfying both hypotheses of the cylinder
/// criterion. Candidates are verified in lexicographic order; with
/// `first_only`, stops at the first verified one.
pub fn search_b(
    pair: &PairParams,
    cfg: &SearchConfig,
    first_only: bool,
) -> Result<Vec<VerificationReport>> {
    if excluded_small(pair) {
        return Err(Error::InvalidParams(format!(
            "({}, {}) has m = {} <= 2k = {}",
            pair.n(),
            pair.a(),
            pair.m(),
            2 * pair.k()
        )));
    }
    let candidates = candidate_bs(pair);
    let verify = |b: &MultiDegree| verify_triple(pair.n(), pair.a(), b, cfg);
    if first_only {
        return candidates
            .par_iter()
            .map(verify)
            .find_map_first(|r| match r {
                Ok(rep) if rep.status != Status::Verified => None,
                other => Some(other),
            })
            .transpose()
            .map(|r| r.into_iter().collect());
    }
    let reports: Vec<VerificationReport> =
        candidates.par_iter().map(verify).collect::<Result<_>>()?;
    Ok(reports
        .into_iter()
        .filter(|r| r.status == Status::Verified)
        .collect())
}

/// All non-decreasing sequences with entries `>= 2` and sum `<= n`, in
/// lexicographic order.
pub fn enumerate_a(n: u32) -> Vec<MultiDegree> {
    fn fill(cur: &mut Vec<u32>, left: u32, out: &mut Vec<MultiDegree>) {
        let lo = cur.last().copied().unwrap_or(2);
        for v in lo..=left {
            cur.push(v);
            out.push(MultiDegree::normalize(cur.clone()).expect("positive"));
            fill(cur, left - v, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::new(), n, &mut out);
    out
}

/// Distinct sub-multisets `a'` of `a` containing `max(a)`, each paired with
/// its complement `a''`. Ordered by `|a'|`, then lexicographically.
pub fn enumerate_subsequences_with_max(a: &MultiDegree) -> Vec<(MultiDegree, MultiDegree)> {
    let runs = a.runs();
    let Some(last) = runs.len().checked_sub(1) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut take = vec![0usize; runs.len()];
    loop {
        if take[last] > 0 {
            let mut kept = Vec::new();
            let mut rest = Vec::new();
            for (&(v, c), &t) in runs.iter().zip(&take) {
                kept.extend(std::iter::repeat_n(v, t));
                rest.extend(std::iter::repeat_n(v, c - t));
            }
            out.push((
                MultiDegree::normalize(kept).expect("positive"),
                MultiDegree::normalize(rest).expect("positive"),
            ));
        }
        // Odometer over 0..=count for each run.
        let mut k = 0;
        while k < runs.len() && take[k] == runs[k].1 {
            take[k] = 0;
            k += 1;
        }
        if k == runs.len() {
            break;
        }
        take[k] += 1;
    }
    out.sort_by(|x, y| x.0.len().cmp(&y.0.len()).then_with(|| x.0.cmp(&y.0)));
    out
}

/// A pair found by [`search_pairs_numlin`] and the choice that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumlinHit {
    pub a: MultiDegree,
    pub a_prime: MultiDegree,
    pub lambda: u32,
    pub b: MultiDegree,
}

/// For one pair: the first `a'` (in [`enumerate_subsequences_with_max`]
/// order) for which the linear-subspace construction gives `l = k`, i.e.
/// `λ = k + |a''|`.
pub fn numlin_witness(pair: &PairParams) -> Option<NumlinHit> {
    let k = pair.k();
    enumerate_subsequences_with_max(pair.a())
        .into_iter()
        .find_map(|(a_prime, a_rest)| {
            let lambda = k + a_rest.len() as u32;
            let b = check_numlin(pair.n(), pair.a(), &a_prime, lambda)
                .expect("a' is a sub-multiset of a with the same max")?;
            Some(NumlinHit {
                a: pair.a().clone(),
                a_prime,
                lambda,
                b,
            })
        })
}

/// Pairs `(n, a)`, `n <= n_max`, with `m > 2k`, not covered by the two
/// classical families, for which some `a'` yields `b` with `l = k` through
/// the linear-subspace construction. Keyed by `n`; `a` in lexicographic order.
pub fn search_pairs_numlin(n_max: u32) -> BTreeMap<u32, Vec<NumlinHit>> {
    (4..=n_max)
        .into_par_iter()
        .map(|n| {
            let hits: Vec<NumlinHit> = enumerate_a(n)
                .into_iter()
                .filter_map(|a| {
                    let pair = PairParams::new(n, a).expect("enumerate_a yields valid pairs");
                    if excluded_small(&pair) || is_classically_covered(&pair) {
                        return None;
                    }
                    numlin_witness(&pair)
                })
                .collect();
            (n, hits)
        })
        .filter(|(_, hits)| !hits.is_empty())
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(s: &str) -> MultiDegree {
        s.parse().unwrap()
    }

    #[test]
    fn enumerate_a_examples() {
        let four: Vec<String> = enumerate_a(4).iter().map(|a| a.to_string()).collect();
        assert_eq!(four, ["(2)", "(2^2)", "(3)", "(4)"]);
        let five: Vec<String> = enumerate_a(5).iter().map(|a| a.to_string()).collect();
        assert_eq!(five, ["(2)", "(2^2)", "(2,3)", "(3)", "(4)", "(5)"]);
        assert_eq!(enumerate_a(6).len(), 10);
    }

    #[test]
    fn enumerate_a_is_sorted_and_distinct() {
        let all = enumerate_a(14);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all
            .iter()
            .all(|a| a.min_entry() >= Some(2) && a.sum() <= 14));
    }

    #[test]
    fn subsequence_examples() {
        assert_eq!(
            enumerate_subsequences_with_max(&md("(3)")),
            vec![(md("(3)"), MultiDegree::empty())]
        );
        assert_eq!(
            enumerate_subsequences_with_max(&md("(2,3)")),
            vec![(md("(3)"), md("(2)")), (md("(2,3)"), MultiDegree::empty())]
        );
        assert_eq!(
            enumerate_subsequences_with_max(&md("(3,3)")),
            vec![(md("(3)"), md("(3)")), (md("(3,3)"), MultiDegree::empty())]
        );
        // (2^2, 3^2): 3 choices of twos times 2 of threes.
        assert_eq!(enumerate_subsequences_with_max(&md("(2^2,3^2)")).len(), 6);
    }

    #[test]
    fn trial_seed_depends_on_every_input() {
        let (a, b) = (md("(3)"), md("(1^3)"));
        let p = Prime::DEFAULT;
        let base = trial_seed(1, 4, &a, &b, p, 0);
        assert_eq!(base, trial_seed(1, 4, &a, &b, p, 0));
        assert_ne!(base, trial_seed(2, 4, &a, &b, p, 0));
        assert_ne!(base, trial_seed(1, 5, &a, &b, p, 0));
        assert_ne!(base, trial_seed(1, 4, &md("(4)"), &b, p, 0));
        assert_ne!(base, trial_seed(1, 4, &a, &md("(1^2,2)"), p, 0));
        assert_ne!(base, trial_seed(1, 4, &a, &b, Prime::new(103).unwrap(), 0));
        assert_ne!(base, trial_seed(1, 4, &a, &b, p, 1));
    }

    #[test]
    fn verify_cubic_threefold_lines() {
        let rep = verify_triple(4, &md("(3)"), &md("(1^3)"), &SearchConfig::default()).unwrap();
        assert_eq!(rep.status, Status::Verified);
        assert_eq!(rep.target, 2);
        assert_eq!(rep.witness().unwrap().dim, 2);
    }

    #[test]
    fn numeric_failure_runs_no_trials() {
        let rep = verify_triple(4, &md("(3)"), &md("(1^2)"), &SearchConfig::default()).unwrap();
        assert_eq!(rep.status, Status::NumericFail);
        assert!(rep.trials.is_empty());
    }

    #[test]
    fn zero_trials_is_inconclusive() {
        let cfg = SearchConfig {
            trials_per_prime: 0,
            ..SearchConfig::default()
        };
        let rep = verify_triple(4, &md("(3)"), &md("(1^3)"), &cfg).unwrap();
        assert_eq!(rep.status, Status::Inconclusive);
        assert!(rep.trials.is_empty());
    }

    #[test]
    fn structural_errors_propagate() {
        assert!(verify_triple(4, &md("(3)"), &md("(1)"), &SearchConfig::default()).is_err());
    }

    #[test]
    fn search_b_guard() {
        let pair = PairParams::new(4, md("(2,2)")).unwrap();
        assert!(search_b(&pair, &SearchConfig::default(), false).is_err());
    }

    #[test]
    fn candidate_bs_for_cubic_threefold() {
        let pair = PairParams::new(4, md("(3)")).unwrap();
        let c: Vec<String> = candidate_bs(&pair).iter().map(|b| b.to_string()).collect();
        // Length 3, entries <= 3, at most two 3's (m - 2l = 1 >= t_b - 1).
        assert_eq!(
            c,
            [
                "(1^3)", "(1^2,2)", "(1^2,3)", "(1,2^2)", "(1,2,3)", "(1,3^2)", "(2^3)", "(2^2,3)",
                "(2,3^2)"
            ]
        );
    }

    #[test]
    fn small_pair_search() {
        assert!(search_pairs_numlin(5).is_empty());
        let six = search_pairs_numlin(6);
        assert_eq!(six.len(), 1);
        assert_eq!(six[&6].len(), 1);
        assert_eq!(six[&6][0].a, md("(3)"));
        assert_eq!(six[&6][0].b, md("(1^4)"));
    }
}
