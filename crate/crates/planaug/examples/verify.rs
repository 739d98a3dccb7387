//! Vertex connectivity by flows against the brute-force cut search.

use planaug::flip4::Triangulation;
use planaug::graph::{vertex_connectivity_at_least, vertex_connectivity_bruteforce};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> planaug::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut graphs = vec![("octahedron", Triangulation::octahedron().graph())];
    for n in [8, 10, 12] {
        graphs.push(("random", Triangulation::random(n, 3 * n, &mut rng)?.graph()));
    }
    for (name, g) in graphs {
        let row: Vec<String> = (1..=5)
            .map(|k| {
                let f = vertex_connectivity_at_least(&g, k).unwrap();
                let b = vertex_connectivity_bruteforce(&g, k).unwrap();
                assert_eq!(f, b);
                format!("{k}:{}", if f { "y" } else { "n" })
            })
            .collect();
        println!("{name:>10} n={:>2} {}", g.n(), row.join(" "));
    }
    Ok(())
}
