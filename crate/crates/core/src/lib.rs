//! Exact computations with two models of the irreducible `S_2n`-module of
//! shape `(n,n)`: standard polytabloids and sl2 webs (noncrossing perfect
//! matchings), and the integer transition matrix between them.
//!
//! The transition matrix is built by resolving the crossings of permuted
//! matchings with the three-term syzygy among `2 × 2` minors, and is checked
//! against an intertwiner computed from scratch by exact linear algebra.

pub mod character;
pub mod combinatorics;
pub mod error;
pub mod exactalg;
mod json_int;
pub mod lincomb;
pub mod minors;
pub mod specht;
pub mod transition;
pub mod webs;

pub use combinatorics::{
    all_perfect_matchings, apply_permutation_to_matching, catalan, crossing_pairs, enumerate_syt, enumerate_webs, m0,
    permutation_from_tableaux, random_matching, random_permutation, t0, tableau_to_web, web_to_tableau, Crossing,
    PerfectMatching, Permutation, StandardTableau, Tableau, Web,
};
pub use error::{Error, Result};
pub use exactalg::{BigInt, Rational, RationalMatrix};
pub use json_int::JsonInt;
pub use lincomb::LinComb;
pub use minors::{delta_product, minor, Polynomial};
pub use specht::{polytabloid, SpechtBasis, Tabloid, TabloidVector};
pub use transition::{
    compute_transition, intertwiner_oracle, transition_matrix, verify, Fault, TransitionMatrix, VerificationReport,
    VerifyOptions, DEFAULT_ORACLE_CAP, DEFAULT_SEED,
};
pub use webs::{resolve_crossings, CrossingResolver, SyzygyRule, WebBasis, WebVector};
