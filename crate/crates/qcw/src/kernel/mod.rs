//! Exact representation of simplicial operators and finite simplicial sets,
//! with limits, colimits, quotients, truncated exponentials, and the
//! map-extension enumerator every downstream checker consumes.

pub mod colimit;
pub mod exponential;
pub mod extend;
pub mod map;
pub mod operator;
pub mod sset;
pub mod trunc;

pub use map::SimplicialMap;
pub use operator::SimplicialOperator;
pub use sset::{boundary, horn, standard_simplex, CellId, FiniteSimplicialSet, Simplex, SsetRef};
pub use trunc::TruncatedSSet;
