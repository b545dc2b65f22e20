//! Multiple-conclusion rules over finite Heyting algebras.
//!
//! A multiple-conclusion rule (m-rule) `Γ / Δ` is valid in a Heyting algebra
//! when every valuation sending all of `Γ` to top sends some member of `Δ`
//! to top. This crate provides the pieces needed to study such rules over
//! finite algebras: a formula and rule language ([`syntax`]), validated
//! algebra tables with enumeration up to isomorphism ([`algebra`]), valuation
//! search ([`semantics`]), a contraction-free intuitionistic prover
//! ([`prover`]), finitely generated free algebras with bounded admissibility
//! checks ([`freealg`]), and the conjunction/disjunction reductions that
//! translate between single- and multiple-conclusion bases ([`transforms`]).
//!
//! The crate is `no_std` (with `alloc`); everything here is deterministic:
//! searches run in a fixed lexicographic order and report the least witness.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod freealg;
pub mod prover;
pub mod semantics;
pub mod syntax;
pub mod transforms;

pub use algebra::{FiniteHeytingAlgebra, Poset};
pub use freealg::{AdmissibilityVerdict, FreeAlgebra};
pub use semantics::{EvalBudget, Refutation, Valuation, Verdict};
pub use syntax::{Formula, MRule, Substitution, Var};
pub use transforms::Basis;
