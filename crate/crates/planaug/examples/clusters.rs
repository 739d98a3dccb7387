//! Cluster augmentation to k-connectivity, topological and straight-line.

use planaug::constructions::{cluster_augment_convex, cluster_augment_topological};
use planaug::convex::ConvexTriangulation;
use planaug::flip4::Triangulation;
use planaug::graph::{local_crossing_number, vertex_connectivity_at_least};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> planaug::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 3..=5 {
        let t = Triangulation::random(120, 200, &mut rng)?;
        let (g, d) = cluster_augment_topological(&t, k)?;
        println!(
            "topological k={k}: {} clusters, +{} edges, bound/k^2 {:.2}, {k}-connected {}",
            d.clusters.len(),
            g.m() - t.m(),
            d.constant(k),
            vertex_connectivity_at_least(&g, k)?
        );
        let ct = ConvexTriangulation::random(120, &mut rng)?;
        let g = cluster_augment_convex(&ct, k)?;
        let lcr = local_crossing_number(&g)?;
        println!(
            "convex      k={k}: lcr {lcr}, lcr/k^2 {:.2}, {k}-connected {}",
            lcr as f64 / (k * k) as f64,
            vertex_connectivity_at_least(g.graph(), k)?
        );
    }
    Ok(())
}
