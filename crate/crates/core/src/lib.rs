//! Distance backbones of weighted graphs.
//!
//! A distance graph is closed under a pair of monoid operations: `⊗`
//! combines edge weights along a path and `⊕` picks among paths. The
//! backbone keeps exactly the edges whose weight already equals the closed
//! distance. Under `(min, max)` this is the ultrametric backbone, which for
//! undirected graphs coincides with the union of all minimum spanning
//! forests; [`spanning`] verifies that identity and [`directed`] explores how
//! it breaks down for directed graphs.

pub mod algebra;
pub mod backbone;
pub mod closure;
pub mod directed;
pub mod graph;
pub mod random;
pub mod spanning;
pub mod union_find;

pub use algebra::{DistanceStructure, IsomorphismMap, ProximityStructure};
pub use backbone::{extract_backbone, BackboneReport};
pub use closure::{distance_closure, ClosureMatrix};
pub use graph::{parse_graph, serialize_graph, DistanceGraph, Format, NodeId};
