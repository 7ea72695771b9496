//! Constructions and verifiers around the edge-subdivision gadget for
//! connected bipartite graphs.
//!
//! From a connected bipartite graph the crate builds the gadget graph whose
//! subdivision vertices have degree 2 over a completed bipartite core, the
//! height-3 poset whose comparability graph is exactly that gadget, a pair
//! of interval orders realizing the poset on an integer grid, and the
//! trapezoid representation of the gadget's complement. An isomorphism
//! engine (color refinement with individualization backtracking, plus an
//! exhaustive oracle for small graphs) checks that every construction step
//! preserves the isomorphism verdict.

#![forbid(unsafe_code)]

pub mod generate;
pub mod graph;
pub mod iso;
pub mod poset;
pub mod realizer;
pub mod reduction;
pub mod trapezoid;

pub use graph::{BipartiteGraph, Graph};
pub use iso::{Coloring, IsoOutcome, VertexMapping};
pub use poset::Poset;
pub use realizer::{Interval, IntervalRepresentation, Realizer};
pub use reduction::{Side, TripartiteGadget};
pub use trapezoid::{Trapezoid, TrapezoidRepresentation};
