use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::dp::dp_min_triangle_hitting;
use super::executor::execute_hitting_set;
use super::septri::separating_triangles_of;
use super::treedecomp::tree_decomposition;
use super::{FlipSequence, Triangulation};
use crate::error::{Error, Result};
use crate::graph::{key, AbstractGraph};

/// BFS distance from `v0` for every vertex.
pub fn bfs_layers(t: &Triangulation, v0: usize) -> Vec<usize> {
    let n = t.n();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::from([v0]);
    dist[v0] = 0;
    while let Some(u) = queue.pop_front() {
        for w in t.embedding().around(u).map(|h| t.embedding().head(h)) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Layer ranges `[lo, hi]` for offset `c`: cut at every layer `≡ c (mod k)`
/// after layer 0, consecutive slabs sharing their cut layer.
pub fn slab_ranges(max_layer: usize, k: usize, c: usize) -> Vec<(usize, usize)> {
    let mut cuts = vec![0];
    let mut l = if c == 0 { k } else { c };
    while l < max_layer {
        cuts.push(l);
        l += k;
    }
    cuts.push(max_layer);
    if max_layer == 0 {
        return vec![(0, 0)];
    }
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EptasReport {
    pub k: usize,
    pub offset: usize,
    /// Solution size for each offset `0..k`.
    pub sizes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Number of layers per slab is `k + 1` with `k = ⌈1/ε⌉`.
pub fn eptas_k(epsilon: f64) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon <= 0.5) {
        return Err(Error::Argument(format!(
            "epsilon must lie in (0, 1/2], got {epsilon}"
        )));
    }
    Ok((1.0 / epsilon - 1e-9).ceil() as usize)
}

/// Layered approximation of the minimum hitting set of the separating
/// triangles, with every offset tried and the smallest union kept (ties go
/// to the lowest offset). Layers are measured from vertex 0.
pub fn eptas_report(t: &Triangulation, epsilon: f64) -> Result<EptasReport> {
    let k = eptas_k(epsilon)?;
    let sep = separating_triangles_of(t);
    if sep.is_empty() {
        return Ok(EptasReport {
            k,
            offset: 0,
            sizes: vec![0; k],
            edges: Vec::new(),
        });
    }
    let layer = bfs_layers(t, 0);
    let max_layer = *layer.iter().max().unwrap();
    let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
    let mut sizes = Vec::with_capacity(k);
    for c in 0..k {
        let mut union: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut placed = vec![false; sep.len()];
        for (lo, hi) in slab_ranges(max_layer, k, c) {
            let inside = |v: usize| (lo..=hi).contains(&layer[v]);
            let mine: Vec<usize> = (0..sep.len())
                .filter(|&i| sep[i].iter().all(|&v| inside(v)))
                .collect();
            if mine.is_empty() {
                continue;
            }
            for &i in &mine {
                placed[i] = true;
            }
            union.extend(solve_slab(t.n(), mine.iter().map(|&i| sep[i]), k)?);
        }
        if let Some(i) = placed.iter().position(|p| !p) {
            return Err(Error::Internal(format!("triangle {:?} fits no slab", sep[i])));
        }
        sizes.push(union.len());
        if best.as_ref().is_none_or(|(_, b)| union.len() < b.len()) {
            best = Some((c, union.into_iter().collect()));
        }
    }
    let (offset, edges) = best.unwrap();
    Ok(EptasReport {
        k,
        offset,
        sizes,
        edges,
    })
}

/// Solves one slab exactly on the graph formed by its target triangles.
fn solve_slab(n: usize, tris: impl Iterator<Item = [usize; 3]>, k: usize) -> Result<Vec<(usize, usize)>> {
    let tris: Vec<[usize; 3]> = tris.collect();
    // compact vertex ids
    let mut verts: Vec<usize> = tris.iter().flatten().copied().collect();
    verts.sort_unstable();
    verts.dedup();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let mut es: BTreeSet<(usize, usize)> = BTreeSet::new();
    let cyc: Vec<[usize; 3]> = tris
        .iter()
        .map(|t| {
            let mut l = t.map(|v| local[v]);
            l.sort_unstable();
            es.insert(key(l[0], l[1]));
            es.insert(key(l[1], l[2]));
            es.insert(key(l[0], l[2]));
            l
        })
        .collect();
    let es: Vec<(usize, usize)> = es.into_iter().collect();
    let g = AbstractGraph::from_edges(verts.len(), &es)?;
    let td = tree_decomposition(&g, 3 * (k + 1) - 1)?;
    let sol = dp_min_triangle_hitting(&g, &cyc, &td)?;
    Ok(sol.into_iter().map(|(a, b)| key(verts[a], verts[b])).collect())
}

pub fn eptas_hitting_set(t: &Triangulation, epsilon: f64) -> Result<Vec<(usize, usize)>> {
    eptas_report(t, epsilon).map(|r| r.edges)
}

/// Flip sequence to a 4-connected triangulation at most `1 + ε` times the
/// shortest one.
pub fn eptas_make_4connected(t: &Triangulation, epsilon: f64) -> Result<FlipSequence> {
    if t.n() < 6 {
        return Err(Error::Argument(format!("need n >= 6, got {}", t.n())));
    }
    let hit = eptas_hitting_set(t, epsilon)?;
    execute_hitting_set(t, &hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flip4::exact_hitting_set;
    use crate::graph::vertex_connectivity_at_least;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn layers() {
        let o = Triangulation::octahedron();
        assert_eq!(bfs_layers(&o, 0), vec![0, 1, 1, 1, 1, 2]);
        let k4 = Triangulation::tetrahedron();
        assert_eq!(*bfs_layers(&k4, 3).iter().max().unwrap(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = Triangulation::random(50, 100, &mut rng).unwrap();
        let l = bfs_layers(&t, 0);
        for &(u, v) in t.graph().edges() {
            assert!(l[u].abs_diff(l[v]) <= 1);
        }
    }

    #[test]
    fn slab_arithmetic() {
        assert_eq!(eptas_k(0.5).unwrap(), 2);
        assert_eq!(eptas_k(0.25).unwrap(), 4);
        assert_eq!(eptas_k(0.3).unwrap(), 4);
        assert!(eptas_k(0.0).is_err() && eptas_k(0.6).is_err());
        assert_eq!(slab_ranges(7, 3, 0), vec![(0, 3), (3, 6), (6, 7)]);
        assert_eq!(slab_ranges(7, 3, 1), vec![(0, 1), (1, 4), (4, 7)]);
        assert_eq!(slab_ranges(2, 4, 3), vec![(0, 2)]);
        for (lo, hi) in slab_ranges(30, 4, 2) {
            assert!(hi - lo <= 4);
        }
    }

    #[test]
    fn four_connected_input_needs_nothing() {
        let o = Triangulation::octahedron();
        for eps in [0.5, 0.25, 0.1] {
            assert!(eptas_hitting_set(&o, eps).unwrap().is_empty());
            assert!(eptas_make_4connected(&o, eps).unwrap().is_empty());
        }
        let r = eptas_report(&o, 0.5).unwrap();
        assert_eq!(r.sizes.len(), 2);
    }

    #[test]
    fn ratio_against_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let n = rng.gen_range(6..41);
            let t = Triangulation::random(n, rng.gen_range(0..n), &mut rng).unwrap();
            let opt = exact_hitting_set(&t).unwrap().len();
            for eps in [0.5, 0.25] {
                let r = eptas_report(&t, eps).unwrap();
                let sep = separating_triangles_of(&t);
                assert!(sep
                    .iter()
                    .all(|s| r.edges.iter().any(|&(u, v)| s.contains(&u) && s.contains(&v))));
                assert!(r.edges.len() >= opt);
                assert!(r.edges.len() as f64 <= (1.0 + eps) * opt as f64 + 1e-9);
                // some offset pays at most opt / k on its cut layers
                assert!(r.sizes.iter().min().unwrap() * r.k <= opt * (r.k + 1));
                let seq = eptas_make_4connected(&t, eps).unwrap();
                let out = t.replay(&seq).unwrap();
                assert!(vertex_connectivity_at_least(&out.graph(), 4).unwrap());
            }
        }
    }
}
