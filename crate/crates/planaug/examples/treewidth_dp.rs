//! Minimum edge set hitting chosen triangles, by dynamic programming over
//! a tree decomposition.

use planaug::flip4::{dp_min_triangle_hitting, separating_triangles_of, tree_decomposition, Triangulation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> planaug::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [10, 20, 40] {
        let t = Triangulation::random_stacked(n, &mut rng)?;
        let g = t.graph();
        let cycles = separating_triangles_of(&t);
        let td = tree_decomposition(&g, 8)?;
        let hit = dp_min_triangle_hitting(&g, &cycles, &td)?;
        println!(
            "n={n:>3} width={} bags={} targets={} minimum={}",
            td.width(),
            td.len(),
            cycles.len(),
            hit.len()
        );
    }
    Ok(())
}
