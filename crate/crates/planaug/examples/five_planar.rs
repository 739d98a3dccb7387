//! n - 3 straight chords make any convex triangulation 3-connected with
//! every edge crossed at most five times.

use planaug::constructions::balanced_convex_triangulation;
use planaug::convex::{five_planar_3conn_augment, ConvexTriangulation};
use planaug::graph::{local_crossing_number, vertex_connectivity_at_least};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> planaug::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut cases = vec![("balanced", balanced_convex_triangulation(4)?)];
    for n in [10, 30, 60] {
        cases.push(("random", ConvexTriangulation::random(n, &mut rng)?));
    }
    for (name, ct) in cases {
        let f = five_planar_3conn_augment(&ct)?;
        let g = ct.augmented(&f)?;
        let per_edge = g.crossings_per_edge()?;
        let old_max = per_edge[..ct.graph().m()].iter().max().copied().unwrap_or(0);
        println!(
            "{name:>8} n={:>3} new={:>3} lcr={} old-edge max={} 3-connected={}",
            ct.n(),
            f.len(),
            local_crossing_number(&g)?,
            old_max,
            vertex_connectivity_at_least(g.graph(), 3)?
        );
    }
    Ok(())
}
