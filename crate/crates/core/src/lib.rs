//! Turán-type computations on small uniform hypergraphs: constructions,
//! embedding and homomorphism search, canonical forms and exact or heuristic
//! extremal numbers.

pub mod canon;
pub mod coloring;
pub mod error;
pub mod extremal;
pub mod families;
pub mod hypergraph;
pub mod morphisms;
pub mod pipeline;
mod search;
pub mod verify;

pub use error::{Error, Result};
pub use hypergraph::{BlowUpView, EdgeOracle, Hypergraph};
pub use morphisms::{MapKind, VertexMap};
pub use search::{SearchLimits, SearchOutcome};
