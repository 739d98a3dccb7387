//! A triangulation where the center has degree 3 and every chord that could
//! raise it crosses many fan edges.

use planaug::constructions::{fan_edges, fan_instance, FAN_CENTER};

fn main() -> planaug::error::Result<()> {
    for n in [7, 13, 31] {
        let g = fan_instance(n)?;
        let ip = g.int_points();
        let fans = fan_edges(n);
        let fewest = (0..n)
            .filter(|&v| v != FAN_CENTER && !g.graph().has_edge(FAN_CENTER, v))
            .map(|v| {
                fans.iter()
                    .filter(|&&(a, b)| ip.segments_cross(FAN_CENTER, v, a, b).unwrap_or(false))
                    .count()
            })
            .min()
            .unwrap_or(0);
        println!(
            "n={n:>2} center degree {} fewest fan crossings of a new center chord: {fewest}",
            g.graph().degree(FAN_CENTER)
        );
    }
    Ok(())
}
