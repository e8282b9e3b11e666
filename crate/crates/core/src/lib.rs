//! Modal μ-calculus toolkit: syntactic continuity fragments, the
//! flatten∘boxing normal form, Kripke and parity-game semantics, and
//! closure-ordinal constructions.

pub mod acceptance;
pub mod continuity;
pub mod error;
pub mod formula;
pub mod fragment;
pub mod game;
pub mod kripke;
pub mod names;
pub mod random;
pub mod transform;

pub use error::{Error, Position, Result};
pub use formula::{Formula, Fp, OccAddress, Substitution};
pub use names::{Action, Name};
