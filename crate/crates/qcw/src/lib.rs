//! qcw: a workbench for exact computation with finite simplicial sets.
//!
//! The library represents finite simplicial sets in Eilenberg-Zilber normal
//! form and builds the standard constructions on them — joins, fat joins,
//! slices, comma objects, nerves, homotopy categories, markings — together
//! with bounded checkers for lifting-property classes (quasi-categories, Kan
//! complexes, isofibrations), terminal objects, adjunction witnesses,
//! smothering comparisons, and limits. Every verdict is a certificate: a
//! witness that can be re-checked, or an explicit counterexample, or an
//! honest "inconclusive at this depth".

pub mod error;
pub mod kernel;

pub use error::{Error, Result};
