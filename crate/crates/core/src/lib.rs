//! Leaf spaces of planar flows and the conjugacy problem for fixed-point-free
//! orientation-preserving plane homeomorphisms embedded in flows.
//!
//! * [`graph`]: combinatorial leaf spaces, isomorphism, canonical forms,
//!   contraction to a point, and the conjugacy decision.
//! * [`flow`]: band flows, their flow maps, and numerical probes of leaf
//!   topology (codivergence, non-separability, trivialization).
//! * [`maps`]: explicit plane homeomorphisms and conjugated flows.
//! * [`io`] and [`render`]: file formats and SVG output.

pub mod flow;
pub mod geom;
pub mod graph;
pub mod io;
pub mod maps;
pub mod render;

pub use flow::{Flow, FlowSpec};
pub use geom::{ConvexRegion, Point, Rect};
pub use graph::{Edge, LeafSpaceGraph};
pub use maps::PlaneMap;
