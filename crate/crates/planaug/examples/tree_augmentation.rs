//! Augment random plane trees to 3-connectivity and compare with the
//! degree lower bound (and with brute force on small trees).

use planaug::graph::vertex_connectivity_at_least;
use planaug::tree_augment::{
    augment_tree_3connected, brute_force_tree_minimum, random_plane_tree, tree_lower_bound,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> planaug::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("{:>7} {:>6} {:>6} {:>6}", "n", "bound", "added", "brute");
    for n in [5, 7, 9, 50, 1000, 100_000] {
        let t = random_plane_tree(n, &mut rng);
        let res = augment_tree_3connected(&t)?;
        let brute = if n <= 8 {
            brute_force_tree_minimum(&t)?.to_string()
        } else {
            "-".into()
        };
        if n <= 1000 {
            assert!(vertex_connectivity_at_least(res.graph.graph(), 3)?);
        }
        println!(
            "{n:>7} {:>6} {:>6} {brute:>6}",
            tree_lower_bound(&t)?,
            res.new_edges.len()
        );
    }
    Ok(())
}
