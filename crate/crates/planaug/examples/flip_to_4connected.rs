//! Layered approximation of the minimum flip count on random stacked
//! triangulations, against the exact hitting set.

use planaug::flip4::{eptas_make_4connected, exact_hitting_set, separating_triangles_of, Triangulation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> planaug::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    println!("{:>4} {:>5} {:>4} {:>6} {:>6}", "n", "sep", "tau", "flips", "eps");
    for &eps in &[0.5, 0.25] {
        for n in [8, 16, 30, 40] {
            let t = Triangulation::random_stacked(n, &mut rng)?;
            let tau = exact_hitting_set(&t)?.len();
            let seq = eptas_make_4connected(&t, eps)?;
            let after = t.replay(&seq)?;
            assert!(separating_triangles_of(&after).is_empty());
            println!(
                "{n:>4} {:>5} {tau:>4} {:>6} {eps:>6}",
                separating_triangles_of(&t).len(),
                seq.len()
            );
        }
    }
    Ok(())
}
