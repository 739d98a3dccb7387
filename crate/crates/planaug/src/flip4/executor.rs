use serde::{Deserialize, Serialize};

use super::septri::{separating_triangles_of, SeparatingTriangleIndex};
use super::{FlipSequence, Triangulation};
use crate::error::{Error, Result};
use crate::graph::io::GraphFile;

/// A triangulation with a proposed hitting set, as stored in fixture files:
/// `{"graph": <graph file with rotation>, "hit": [[u,v],...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlipInstance {
    pub graph: GraphFile,
    pub hit: Vec<[usize; 2]>,
}

impl FlipInstance {
    pub fn parse(text: &str) -> Result<(Triangulation, Vec<(usize, usize)>)> {
        let inst: FlipInstance = serde_json::from_str(text)?;
        let loaded = inst.graph.into_graph()?;
        let p = loaded
            .plane()
            .ok_or_else(|| Error::Validation("fixture graph needs a rotation".into()))?;
        let t = Triangulation::new(p)?;
        Ok((t, inst.hit.iter().map(|e| (e[0], e[1])).collect()))
    }
}

fn edge_ids(t: &Triangulation, hit: &[(usize, usize)]) -> Result<Vec<usize>> {
    hit.iter()
        .map(|&(u, v)| {
            t.find_edge(u, v)
                .ok_or_else(|| Error::Argument(format!("hitting-set edge {u}-{v} absent")))
        })
        .collect()
}

fn check_hits(idx: &SeparatingTriangleIndex, in_hit: &[bool]) -> Result<()> {
    for i in idx.live_ids() {
        if !idx.edges_of(i).iter().any(|&e| in_hit[e]) {
            return Err(Error::NotHittingSet(idx.triangle(i)));
        }
    }
    Ok(())
}

/// Turns a hitting set of the separating triangles into at most `|hit|`
/// flips that leave no separating triangle. Each flipped edge bounds at
/// least one separating triangle and either bounds several, or belongs to a
/// triangle none of whose edges bounds another one; such flips create no new
/// separating triangle. Ties pick the lowest edge id.
pub fn execute_hitting_set(t: &Triangulation, hit: &[(usize, usize)]) -> Result<FlipSequence> {
    run(t, hit, false).map(|(s, _)| s)
}

/// Same as [`execute_hitting_set`], recomputing all separating triangles
/// after every flip and comparing with the maintained index.
pub fn execute_hitting_set_checked(
    t: &Triangulation,
    hit: &[(usize, usize)],
) -> Result<(FlipSequence, Triangulation)> {
    run(t, hit, true)
}

fn run(t: &Triangulation, hit: &[(usize, usize)], checked: bool) -> Result<(FlipSequence, Triangulation)> {
    if t.n() < 6 {
        return Err(Error::Argument(format!(
            "flip execution needs n >= 6, got {}; every 5-vertex triangulation has a separating triangle",
            t.n()
        )));
    }
    let ids = edge_ids(t, hit)?;
    let mut idx = SeparatingTriangleIndex::build(t);
    let mut in_hit = vec![false; t.m()];
    for &e in &ids {
        in_hit[e] = true;
    }
    check_hits(&idx, &in_hit)?;
    let mut t = t.clone();
    let mut flipped = vec![false; t.m()];
    let mut seq = FlipSequence::default();
    for &e in &ids {
        if flipped[e] || idx.count(e) == 0 {
            continue;
        }
        let target = if idx.count(e) >= 2 {
            e
        } else {
            let tri = idx.on_edge(e).next().unwrap();
            let edges = idx.edges_of(tri);
            edges
                .iter()
                .copied()
                .filter(|&f| idx.count(f) >= 2)
                .min()
                .unwrap_or(e)
        };
        let before = idx.len();
        let pair = t.endpoints(target);
        let destroyed: Vec<[usize; 3]> = idx.on_edge(target).map(|i| idx.triangle(i)).collect();
        idx.clear_edge(target);
        t.flip(target)?;
        flipped[target] = true;
        seq.flips.push(pair);
        if idx.len() >= before {
            return Err(Error::Internal("flip did not reduce separating triangles".into()));
        }
        if checked {
            let now = separating_triangles_of(&t);
            if now != idx.triangles() {
                return Err(Error::Internal(format!(
                    "flip of {pair:?} (destroying {destroyed:?}) changed the separating set to {now:?}"
                )));
            }
        }
    }
    if !idx.is_empty() {
        return Err(Error::Internal(
            "separating triangles remain after execution".into(),
        ));
    }
    Ok((seq, t))
}

/// The tempting strategy: flip the edges in the given order, skipping edges
/// that vanished or no longer bound a separating triangle. Returns the
/// flips made and the final triangulation; it may leave separating
/// triangles behind.
pub fn naive_flip_order(t: &Triangulation, hit: &[(usize, usize)]) -> Result<(FlipSequence, Triangulation)> {
    let mut t = t.clone();
    let mut seq = FlipSequence::default();
    for &(u, v) in hit {
        let Some(e) = t.find_edge(u, v) else { continue };
        let sep = separating_triangles_of(&t);
        if !sep.iter().any(|s| s.contains(&u) && s.contains(&v)) {
            continue;
        }
        t.flip(e)?;
        seq.flips.push((u, v));
    }
    Ok((seq, t))
}
