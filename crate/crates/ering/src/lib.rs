//! Finite-scale models of rings with a distinguished set of effects, plus
//! machine checks for the laws those models are supposed to satisfy.
//!
//! The carriers live in [`carrier`]: function rings over a finite field of
//! sets, rational symmetric matrices, and finite products of both. All
//! arithmetic is exact ([`rational`], [`matrix`]); no check in this crate
//! compares with a tolerance.
//!
//! Law checking is organised as suites over a carrier: ring/effect axioms
//! ([`axioms`]), the effect algebra and coexistence ([`effects`]), the
//! projection order with its orthomodular structure and compressions
//! ([`projections`]), and the Boolean/b-ring layer with the Stone-style
//! representation ([`boolean`]). Suites run exhaustively when the effect
//! set is finite and by seeded sampling otherwise; every verdict is either
//! a pass, a failure with a concrete counterexample payload, or an explicit
//! undecided entry. Reports are deterministic byte-for-byte for a fixed
//! model, suite, seed, and budget.

pub mod axioms;
pub mod boolean;
pub mod carrier;
pub mod effects;
pub mod matrix;
pub mod model;
pub mod projections;
pub mod rational;
pub mod report;
pub mod sample;
pub mod suite;

pub use carrier::{Carrier, Element, Mutation, RingElem, ValueRing};
pub use matrix::{RatMatrix, SymMatrix};
pub use model::{load_model, parse_model, ModelError, ModelSpec};
pub use rational::Rational;
pub use report::{Failure, LawResult, SampleStrategy, Undecided, VerificationReport, Verdict};
pub use suite::{resolve_strategy, run_suite, run_suite_with, SuiteError, SuiteId};
