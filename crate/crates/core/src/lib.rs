//! Reductions from (3,3)-SAT to (weighted) dominating set on geometric
//! intersection graphs, with exact geometric realizations and verifiers.
//!
//! * [`exactnum`]: rationals and single/double square-root sign predicates.
//! * [`sat`]: CNF model, DIMACS, unit preprocessing, DPLL, generator.
//! * [`graphs`]: labeled graphs and exact domination / Steiner solvers.
//! * [`scene`]: balls and planar objects, exact pair classification.
//! * [`reductions`]: gadget graphs, their realizations, and verification.

pub mod exactnum;
pub mod graphs;
pub mod reductions;
pub mod sat;
pub mod scene;
