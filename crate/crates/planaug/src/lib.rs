//! Connectivity augmentation for plane, geometric and convex graphs.
//!
//! Each algorithm comes with a brute-force or flow-based oracle that the
//! tests compare it against.
//!
//! - [`tree_augment`]: plane tree to 3-connected plane graph, minimum size.
//! - [`flip4`]: edge flips making a triangulation 4-connected, with a
//!   layered approximation, an exact hitting set and a tree-decomposition DP.
//! - [`convex`]: convex triangulations, minimum 3-connected augmentation with
//!   bounded local crossing number, and the five-planar construction.
//! - [`constructions`]: circulants, the fan instance, cluster augmentation.
//! - [`hardness`]: planar 3-SAT reductions with witness checking.
//! - [`graph`]: embeddings, exact geometry, connectivity, JSON files.
//! - [`cli`]: the `planaug` command line tool.
//!
//! Examples:
//!
//! ```text
//! cargo run -p planaug --example tree_augmentation
//! cargo run -p planaug --example flip_to_4connected
//! cargo run -p planaug --example bad_flip_order
//! cargo run -p planaug --example treewidth_dp
//! cargo run -p planaug --example convex_dp
//! cargo run -p planaug --example five_planar
//! cargo run -p planaug --example circulant
//! cargo run -p planaug --example clusters
//! cargo run -p planaug --example fan
//! cargo run -p planaug --example hardness_reduction
//! cargo run -p planaug --example verify
//! ```
//!
//! ```
//! use planaug::flip4::Triangulation;
//! use planaug::graph::vertex_connectivity_at_least;
//!
//! let oct = Triangulation::octahedron();
//! assert!(vertex_connectivity_at_least(&oct.graph(), 4).unwrap());
//! ```

pub mod cli;
pub mod constructions;
pub mod convex;
pub mod error;
pub mod flip4;
pub mod graph;
pub mod hardness;
pub mod tree_augment;
