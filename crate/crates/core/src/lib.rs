//! Core library: p-norm Turán machinery for r-uniform hypergraphs —
//! norms, forbidden-pattern tests, extremal constructions and searches,
//! regularization pipelines, dependent random choice, and bound oracles.

pub mod bounds;
pub mod canon;
pub mod constructions;
pub mod drc;
pub mod error;
pub mod hypergraph;
pub mod io;
pub mod norms;
pub mod patterns;
pub mod regularization;
pub mod sampling;
pub mod search;
pub mod selftest;
pub mod util;
pub mod walks;

pub use error::{Error, Result};
pub use hypergraph::{BipartiteGraph, DegreeProfile, Edge, Host, Hypergraph, NormValue, Side};
pub use patterns::{FreenessWitness, PatternSpec, TauReport};
