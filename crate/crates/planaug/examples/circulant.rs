//! k-circulants: 2k-connected with local crossing number k² - k.

use planaug::constructions::circulant;
use planaug::graph::{local_crossing_number, vertex_connectivity_at_least};

fn main() -> planaug::error::Result<()> {
    for k in 1..=5 {
        let n = 4 * k + 2;
        let g = circulant(n, k)?;
        let conn = (1..=n)
            .take_while(|&c| vertex_connectivity_at_least(g.graph(), c).unwrap_or(false))
            .last()
            .unwrap_or(0);
        println!(
            "k={k} n={n:>2} connectivity={conn:>2} lcr={:>2} (k^2-k = {})",
            local_crossing_number(&g)?,
            k * k - k
        );
    }
    Ok(())
}
