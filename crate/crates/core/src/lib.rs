//! Exact tools for the orthogonality graph `Omega_n` on `{-1, 1}^n`, where two
//! vectors are adjacent when they are orthogonal (Hamming distance `n/2`).
//!
//! The crate builds the extremal independent sets of size
//! `a_n = 4 sum_{i < n/4} C(n-1, i)`, verifies them, and certifies the matching
//! upper bound for `n = 2^k` through a polynomial rank argument: a Krawtchouk
//! expansion, a mod-2 identity from Lucas' theorem and a chain of ranks of
//! Bose–Mesner idempotents. A branch-and-bound solver supplies ground truth
//! for `n <= 8`.

pub mod bose_mesner;
pub mod certificate;
pub mod combinatorics;
pub mod construction;
pub mod error;
pub mod exact_serde;
pub mod exact_solver;
pub mod gf2;
pub mod hypercube;
pub mod matrix;

pub use bose_mesner::{ratio_bound, spectral_check, SpectralReport};
pub use certificate::{certify, CertificateReport};
pub use combinatorics::{binom, binom_mod2, krawtchouk, krawtchouk_table, KrawtchoukTable};
pub use construction::{a_n, build_extremal_set, chromatic_lower_bound, ExtremalSetSpec};
pub use error::{Error, Result};
pub use exact_solver::{max_independent_set, max_independent_set_parity_class};
pub use gf2::Gf2Matrix;
pub use hypercube::{
    distance_spectrum, hamming, is_edge, split_truncate, verify_independent,
    verify_independent_sampled, FamilySplit, IndependenceVerdict, Vertex, VertexSet,
};
pub use matrix::ExactRationalMatrix;
