//! Nested-sequent proof search and Craig interpolation for tense logics with
//! path axioms and for bi-intuitionistic logic.
//!
//! Every interpolant comes with two derivations that [`certify`] checks
//! independently of the prover that produced them.

pub mod certify;
pub mod cli;
pub mod formula;
pub mod interpolate;
pub mod path_system;
pub mod proof;
pub mod prover;
pub mod sequent;
pub mod serial;
