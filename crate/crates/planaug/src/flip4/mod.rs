//! Flipping triangulations to 4-connectivity.
//!
//! A triangulation is 4-connected exactly when it has no separating
//! triangle. Any edge set meeting every separating triangle can be turned
//! into at most that many flips, so the problem reduces to a hitting set
//! over triangles, solved exactly on small inputs and by a layered tree
//! decomposition scheme otherwise.

pub mod dp;
pub mod eptas;
pub mod exact;
pub mod executor;
pub mod septri;
pub mod treedecomp;
pub mod triangulation;

pub use dp::dp_min_triangle_hitting;
pub use eptas::{bfs_layers, eptas_hitting_set, eptas_make_4connected, eptas_report, EptasReport};
pub use exact::exact_hitting_set;
pub use executor::{execute_hitting_set, execute_hitting_set_checked, naive_flip_order, FlipInstance};
pub use septri::{separating_triangles_of, SeparatingTriangleIndex};
pub use treedecomp::{tree_decomposition, TreeDecomposition};
pub use triangulation::{FlipSequence, Triangulation};
