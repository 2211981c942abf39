//! The randomized finite-field test.
//!
//! For a triple `(n, a, b)` we draw a random witness `(g, h)` from
//! `V = (I_o M_b)_0 × Hom(M_b, N_a)_0` over `F_p` and compute
//!
//! ```text
//! dim (M_a / (J_g M_a + I_o h(M_b)))_0
//! ```
//!
//! which is always at least `n + r - s`. Hitting `n + r - s` for one witness
//! certifies the geometric hypothesis, since it is an open condition on `V`.
//!
//! The degree-0 piece of `M_a` is `⊕ R_{a_i}`, a finite-dimensional space, so
//! the dimension is computed by plain Gaussian elimination over `F_p` on a
//! spanning set of the submodule's degree-0 piece.

mod field;
mod linalg;
mod poly;
mod quotient;
mod witness;

pub use field::Prime;
pub use linalg::{rank_fp, Rref};
pub use poly::{monomial_basis, HomogPoly, Monomial, MonomialIndexer};
pub use quotient::{
    assemble_generators, quotient_dim, quotient_dim_dense, type1_quotient_dim, GradedBasisIndex,
};
pub use witness::{sample_g, sample_h, sample_witness, GHData};
