//! Instance generators and constructive augmentations with bounded local
//! crossing number.

pub mod clusters;
pub mod generators;

pub use clusters::{
    cluster_augment_convex, cluster_augment_topological, cluster_partition, convex_cluster_partition,
    partition_tree, ClusterDecomposition, EdgeBound,
};
pub use generators::{
    balanced_convex_triangulation, circulant, fan_edges, fan_instance, greedy_triangulation,
    knearest_xsorted, random_points, regular_polygon_points, FAN_CENTER,
};
