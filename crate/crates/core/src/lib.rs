//! Exact fixed-parameter solver for Edge Bipartization.
//!
//! Iterative compression turns each step into a terminal separation instance,
//! which is solved by a reduce-and-branch search guided by a half-integral
//! relaxation computed with max-flow.

pub mod error;
pub mod branching;
pub mod excess;
pub mod flow;
pub mod generate;
pub mod io;
pub mod multigraph;
pub mod oracle;
pub mod pipeline;
pub mod reductions;
pub mod relaxation;
pub mod termsep;

pub use error::{Error, Result};
pub use multigraph::{MultiGraph, Provenance, VertexId, VertexSet};
pub use termsep::{Side, TermSepInstance, TerminalSeparation};
