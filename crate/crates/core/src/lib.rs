//! Toolkit for the uniform one-dimensional fragment of first-order logic and the
//! description logics that sit next to it.
//!
//! - [`logic`]: formulae, vocabularies, finite structures and their text formats.
//! - [`fragments`]: membership in U1(wo=), FU1, U1, UC1 and FO2 with diagnostics.
//! - [`eval`]: model checking on finite structures, counting quantifiers included.
//! - [`dl`] and [`dlr`]: DL_FU1 and DLR_reg syntax and extension semantics.
//! - [`translate`]: FU1 <-> DL_FU1 and DLR_reg without star and number restrictions -> FU1.
//! - [`sat`]: bounded model search.
//! - [`lab`]: the separating structures and formulae, packaged as runnable experiments.

pub mod dl;
pub mod dlr;
pub mod eval;
pub mod fragments;
pub mod gen;
pub mod lab;
pub mod logic;
pub mod sat;
pub mod text;
pub mod translate;

pub use logic::{Formula, Structure, Var, Vocabulary};
