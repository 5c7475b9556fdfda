//! Exact analysis of finite normal-form games: correlated-equilibrium
//! diagnostics, dual vectors, and Myerson-style dual reductions.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the pipeline, so zero-vs-nonzero questions
//! (jeopardization, tightness, polytope dimension) are decided exactly.
//!
//! Module map:
//!
//! - [`rational`] — the exact number carrier and its text form
//! - [`linalg`] — dense rational elimination (rank, linear solves)
//! - [`lp`] — simplex over rationals with Bland's rule, implicit-equality
//!   detection and affine dimension of polyhedra
//! - [`game`] — games, profiles, mixed/correlated strategies, rescalings,
//!   blocks and player permutations
//! - [`ce`] — the correlated-equilibrium polytope: membership,
//!   jeopardization, coherence, tight/pretight/elementary classification
//! - [`dual`] — deviation plans, dual vectors and their refinements
//! - [`reduction`] — Markov decomposition of deviation plans, reduced games,
//!   lifting, and iteration to an elementary game
//! - [`nash`] — exact small-scale Nash machinery (pure, bimatrix support
//!   enumeration, block equilibria, quasi-strictness)
//! - [`gen`] — deterministic seeded game generation
//! - [`format`](mod@format) — the line-oriented game file grammar
//! - [`report`] — JSON-ready report documents with rational-string fields

pub mod ce;
pub mod dual;
pub mod format;
pub mod game;
pub mod gen;
pub mod linalg;
pub mod lp;
pub mod nash;
pub mod rational;
pub mod reduction;
pub mod report;

pub use game::{
    Block, CorrelatedStrategy, Game, MixedProfile, MixedStrategy, PlayerPermutation, Profile,
    Rescaling,
};
pub use rational::{parse_rational, rat, ratio, Rational};
