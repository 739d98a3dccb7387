//! Minimum 3-connected augmentations of a convex triangulation for
//! increasing crossing budgets, with brute force alongside on small n.

use planaug::convex::{brute_min_augment, dp_min_augment_3, ConvexTriangulation};
use planaug::graph::local_crossing_number;

fn main() -> planaug::error::Result<()> {
    for ct in [
        ConvexTriangulation::fan(9)?,
        ConvexTriangulation::zigzag(9)?,
        ConvexTriangulation::zigzag(40)?,
    ] {
        println!("n = {}", ct.n());
        for ell in 0..=3 {
            let f = dp_min_augment_3(&ct, ell)?;
            let brute = if ct.n() <= 9 {
                brute_min_augment(&ct, 3, ell)?.map_or("infeasible".to_string(), |b| b.len().to_string())
            } else {
                "-".into()
            };
            match f {
                Some(f) => {
                    let lcr = local_crossing_number(&ct.augmented(&f)?)?;
                    println!("  ell={ell}: {} edges, lcr {lcr}, brute {brute}", f.len());
                }
                None => println!("  ell={ell}: infeasible, brute {brute}"),
            }
        }
    }
    Ok(())
}
