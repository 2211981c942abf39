//! Checks for the hypotheses under which a cylinder homomorphism built from
//! complete intersections of multi-degree `b` covers the vanishing cycles of a
//! general Fano complete intersection of multi-degree `a` in `P^n`.
//!
//! * [`multidegree`]: sequence algebra and the Hodge level `k`.
//! * [`conditions`]: exact integer predicates (numeric inequalities, the
//!   Debarre–Manivel linear-subspace criterion and its corollaries).
//! * [`fp`]: the randomized finite-field test, computing the dimension of a
//!   graded piece of a quotient module by Gaussian elimination over `F_p`.
//! * [`search`]: triple verification and the exhaustive searches.

pub mod conditions;
pub mod error;
pub mod fp;
pub mod multidegree;
pub mod search;

pub use error::{Error, Result};
pub use multidegree::{hodge_level_k, tail_multiplicities, MultiDegree, PairParams};
