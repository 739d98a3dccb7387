use std::collections::{BTreeSet, VecDeque};

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::convex::dp::DualTreeOrder;
use crate::convex::ConvexTriangulation;
use crate::error::{Error, Result};
use crate::flip4::Triangulation;
use crate::graph::{key, AbstractGraph, GeometricGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeBound {
    pub edge: (usize, usize),
    pub bound: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClusterDecomposition {
    /// Vertex set of each cluster, sorted.
    pub clusters: Vec<Vec<usize>>,
    /// Triangle ids of each piece of the dual tree.
    pub dual_pieces: Vec<Vec<usize>>,
    pub triangles: Vec<[usize; 3]>,
    pub cluster_graph: Vec<Vec<usize>>,
    /// Crossing bound for each new edge; empty until augmented.
    pub per_edge_bound: Vec<EdgeBound>,
}

impl ClusterDecomposition {
    /// Largest certified bound divided by `k²`.
    pub fn constant(&self, k: usize) -> f64 {
        let b = self.per_edge_bound.iter().map(|e| e.bound).max().unwrap_or(0);
        b as f64 / (k * k) as f64
    }

    fn shared(&self, i: usize, j: usize) -> Vec<usize> {
        let b: BTreeSet<usize> = self.clusters[j].iter().copied().collect();
        self.clusters[i]
            .iter()
            .copied()
            .filter(|v| b.contains(v))
            .collect()
    }
}

/// Splits a tree into subtrees of at least `min` nodes by repeatedly cutting
/// the centroid's edge towards its largest branch, as long as both sides
/// keep `min` nodes. Ties go to the branch with the smaller least node.
pub fn partition_tree(adj: &[Vec<usize>], min: usize) -> Vec<Vec<usize>> {
    let n = adj.len();
    if n == 0 {
        return Vec::new();
    }
    let mut comp = vec![0usize; n];
    let mut pending = vec![(0usize, (0..n).collect::<Vec<usize>>())];
    let mut next_id = 1;
    let mut done = Vec::new();
    let mut size = vec![0usize; n];
    let mut low = vec![0usize; n];
    let mut par = vec![usize::MAX; n];
    while let Some((id, nodes)) = pending.pop() {
        // rooted traversal inside the component
        let root = nodes[0];
        let mut order = Vec::with_capacity(nodes.len());
        let mut stack = vec![root];
        par[root] = usize::MAX;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &adj[x] {
                if comp[y] == id && y != par[x] {
                    par[y] = x;
                    stack.push(y);
                }
            }
        }
        for &x in order.iter().rev() {
            size[x] = 1;
            low[x] = x;
            for &y in &adj[x] {
                if comp[y] == id && y != par[x] {
                    size[x] += size[y];
                    low[x] = low[x].min(low[y]);
                }
            }
        }
        let total = order.len();
        // branches at x: children subtrees and the part above
        let branches = |x: usize| -> Vec<(usize, usize, usize)> {
            let mut b: Vec<(usize, usize, usize)> = adj[x]
                .iter()
                .filter(|&&y| comp[y] == id && y != par[x])
                .map(|&y| (size[y], low[y], y))
                .collect();
            if par[x] != usize::MAX {
                let above_low = order
                    .iter()
                    .copied()
                    .filter(|&z| !in_subtree(z, x, &par))
                    .min()
                    .unwrap();
                b.push((total - size[x], above_low, par[x]));
            }
            b
        };
        let centroid = order
            .iter()
            .copied()
            .min_by_key(|&x| {
                let worst = adj[x]
                    .iter()
                    .filter(|&&y| comp[y] == id && y != par[x])
                    .map(|&y| size[y])
                    .chain(std::iter::once(total - size[x]))
                    .max()
                    .unwrap();
                (worst, x)
            })
            .unwrap();
        let best = branches(centroid)
            .into_iter()
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        match best {
            Some((s, _, y)) if s >= min && total - s >= min => {
                // collect y's side after removing edge centroid-y
                let mut side = Vec::with_capacity(s);
                let mut st = vec![y];
                comp[y] = next_id;
                while let Some(x) = st.pop() {
                    side.push(x);
                    for &z in &adj[x] {
                        if comp[z] == id && !(x == y && z == centroid) {
                            comp[z] = next_id;
                            st.push(z);
                        }
                    }
                }
                let rest: Vec<usize> = nodes.iter().copied().filter(|&x| comp[x] == id).collect();
                side.sort_unstable();
                pending.push((next_id, side));
                pending.push((id, rest));
                next_id += 1;
            }
            _ => done.push(nodes),
        }
    }
    for d in done.iter_mut() {
        d.sort_unstable();
    }
    done.sort();
    done
}

fn in_subtree(z: usize, x: usize, par: &[usize]) -> bool {
    let mut y = z;
    loop {
        if y == x {
            return true;
        }
        if par[y] == usize::MAX {
            return false;
        }
        y = par[y];
    }
}

/// Dual graph adjacency of a set of triangles sharing edges.
fn dual_graph(tris: &[[usize; 3]]) -> Vec<Vec<usize>> {
    let mut by_edge: FxHashMap<(usize, usize), Vec<usize>> = FxHashMap::default();
    for (i, t) in tris.iter().enumerate() {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            by_edge.entry(key(a, b)).or_default().push(i);
        }
    }
    let mut adj = vec![Vec::new(); tris.len()];
    let mut keys: Vec<_> = by_edge.keys().copied().collect();
    keys.sort_unstable();
    for e in keys {
        let fs = &by_edge[&e];
        if let [f, g] = fs[..] {
            adj[f].push(g);
            adj[g].push(f);
        }
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }
    adj
}

fn bfs_tree(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut tree = vec![Vec::new(); adj.len()];
    let mut seen = vec![false; adj.len()];
    if adj.is_empty() {
        return tree;
    }
    let mut q = VecDeque::from([0]);
    seen[0] = true;
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                tree[x].push(y);
                tree[y].push(x);
                q.push_back(y);
            }
        }
    }
    tree
}

fn decompose(
    tris: Vec<[usize; 3]>,
    dual: &[Vec<usize>],
    tree: &[Vec<usize>],
    min: usize,
) -> ClusterDecomposition {
    let pieces = partition_tree(tree, min.max(1));
    let mut owner = vec![0usize; tris.len()];
    for (i, p) in pieces.iter().enumerate() {
        for &f in p {
            owner[f] = i;
        }
    }
    let clusters: Vec<Vec<usize>> = pieces
        .iter()
        .map(|p| {
            let s: BTreeSet<usize> = p.iter().flat_map(|&f| tris[f]).collect();
            s.into_iter().collect()
        })
        .collect();
    let mut cg: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); pieces.len()];
    for (f, ns) in dual.iter().enumerate() {
        for &g in ns {
            if owner[f] != owner[g] {
                cg[owner[f]].insert(owner[g]);
            }
        }
    }
    ClusterDecomposition {
        clusters,
        dual_pieces: pieces,
        triangles: tris,
        cluster_graph: cg.into_iter().map(|s| s.into_iter().collect()).collect(),
        per_edge_bound: Vec::new(),
    }
}

/// Clusters of a plane triangulation: pieces of a BFS spanning tree of the
/// dual (from face 0) with `2k-1` to `6k-2` triangles each.
pub fn cluster_partition(t: &Triangulation, k: usize) -> Result<ClusterDecomposition> {
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    let tris = t.faces();
    let dual = dual_graph(&tris);
    let tree = bfs_tree(&dual);
    Ok(decompose(tris, &dual, &tree, 2 * k - 1))
}

fn check_sizes(d: &ClusterDecomposition, k: usize) -> Result<()> {
    if let Some((i, c)) = d.clusters.iter().enumerate().find(|(_, c)| c.len() < k + 1) {
        return Err(Error::Infeasible(format!(
            "cluster {i} has {} vertices, a matching for k = {k} needs at least {}",
            c.len(),
            k + 1
        )));
    }
    Ok(())
}

/// Each cluster becomes a clique; adjacent clusters sharing `s` vertices get
/// a matching of size `k - s` between their private vertices.
///
/// The result is an abstract graph. Each new edge carries the number of
/// edges it may meet when drawn inside its cluster region (or the union of
/// two regions for matching edges): region triangles plus the cliques and
/// matchings drawn there.
pub fn cluster_augment_topological(
    t: &Triangulation,
    k: usize,
) -> Result<(AbstractGraph, ClusterDecomposition)> {
    let mut d = cluster_partition(t, k)?;
    check_sizes(&d, k)?;
    let g = t.graph();
    let c = d.clusters.len();
    let clique = |i: usize| d.clusters[i].len() * (d.clusters[i].len() - 1) / 2;
    let mut match_load = vec![0usize; c];
    let mut pairs = Vec::new();
    for i in 0..c {
        for &j in &d.cluster_graph[i] {
            if j < i {
                continue;
            }
            let shared = d.shared(i, j);
            let size = k.saturating_sub(shared.len());
            let a: Vec<usize> = d.clusters[i]
                .iter()
                .copied()
                .filter(|v| !shared.contains(v))
                .collect();
            let b: Vec<usize> = d.clusters[j]
                .iter()
                .copied()
                .filter(|v| !shared.contains(v))
                .collect();
            let m: Vec<(usize, usize)> = (0..size).map(|x| key(a[x], b[x])).collect();
            match_load[i] += m.len();
            match_load[j] += m.len();
            pairs.push((i, j, m));
        }
    }
    let mut bound: FxHashMap<(usize, usize), usize> = FxHashMap::default();
    let mut out = g.clone();
    for i in 0..c {
        let b = d.dual_pieces[i].len() + clique(i) + match_load[i];
        let vs = &d.clusters[i];
        for x in 0..vs.len() {
            for y in x + 1..vs.len() {
                if !out.has_edge(vs[x], vs[y]) {
                    out.add_edge(vs[x], vs[y])?;
                    bound.insert((vs[x], vs[y]), b);
                }
            }
        }
    }
    for (i, j, m) in pairs {
        let b = d.dual_pieces[i].len()
            + d.dual_pieces[j].len()
            + clique(i)
            + clique(j)
            + match_load[i]
            + match_load[j];
        for (u, v) in m {
            if !out.has_edge(u, v) {
                out.add_edge(u, v)?;
                bound.insert((u, v), b);
            }
        }
    }
    let mut pb: Vec<EdgeBound> = bound
        .into_iter()
        .map(|(edge, bound)| EdgeBound { edge, bound })
        .collect();
    pb.sort_by_key(|e| e.edge);
    d.per_edge_bound = pb;
    Ok((out, d))
}

/// Clusters of a convex triangulation: pieces of its dual tree with `k` to
/// `3k` triangles. Vertex ids, not hull positions.
pub fn convex_cluster_partition(ct: &ConvexTriangulation, k: usize) -> Result<ClusterDecomposition> {
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    let order = DualTreeOrder::build(ct);
    let h = ct.hull();
    let tris: Vec<[usize; 3]> = (0..order.edges.len())
        .map(|i| [h[order.edges[i].0], h[order.apex[i]], h[order.edges[i].1]])
        .collect();
    let mut tree = vec![Vec::new(); tris.len()];
    for (i, p) in order.parent.iter().enumerate() {
        if let Some(p) = *p {
            tree[i].push(p);
            tree[p].push(i);
        }
    }
    Ok(decompose(tris, &tree.clone(), &tree, k))
}

/// Straight-line version: cliques on the cluster polygons and, across each
/// shared diagonal `ab`, `k - 2` non-crossing chords taken alternately
/// nearest to `a` and nearest to `b`.
pub fn cluster_augment_convex(ct: &ConvexTriangulation, k: usize) -> Result<GeometricGraph> {
    let d = convex_cluster_partition(ct, k)?;
    check_sizes(&d, k)?;
    let n = ct.n();
    let pos = |v: usize| ct.position(v);
    let mut new: BTreeSet<(usize, usize)> = BTreeSet::new();
    let g = ct.graph();
    for vs in &d.clusters {
        for x in 0..vs.len() {
            for y in x + 1..vs.len() {
                if !g.has_edge(vs[x], vs[y]) {
                    new.insert(key(vs[x], vs[y]));
                }
            }
        }
    }
    for i in 0..d.clusters.len() {
        for &j in &d.cluster_graph[i] {
            if j < i {
                continue;
            }
            let shared = d.shared(i, j);
            if shared.len() != 2 {
                return Err(Error::Internal(format!("clusters {i} and {j} share {shared:?}")));
            }
            let (a, b) = {
                let (p, q) = (pos(shared[0]), pos(shared[1]));
                (p.min(q), p.max(q))
            };
            let side = |c: usize| -> Vec<usize> {
                let inner = d.clusters[c].iter().any(|&v| (a + 1..b).contains(&pos(v)));
                let mut s: Vec<usize> = d.clusters[c]
                    .iter()
                    .map(|&v| pos(v))
                    .filter(|&p| p != a && p != b)
                    .collect();
                // ordered from the a end to the b end
                if inner {
                    s.sort_unstable();
                } else {
                    s.sort_by_key(|&p| (a + n - p) % n);
                }
                s
            };
            let (si, sj) = (side(i), side(j));
            let t = k.saturating_sub(2);
            let (mut lo, mut hi) = (0usize, 0usize);
            for x in 0..t {
                let (p, q) = if x % 2 == 0 {
                    lo += 1;
                    (si[lo - 1], sj[lo - 1])
                } else {
                    hi += 1;
                    (si[si.len() - hi], sj[sj.len() - hi])
                };
                let (u, v) = (ct.hull()[p], ct.hull()[q]);
                if !g.has_edge(u, v) {
                    new.insert(key(u, v));
                }
            }
        }
    }
    let new: Vec<(usize, usize)> = new.into_iter().collect();
    ct.geometry().with_edges(&new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{local_crossing_number, vertex_connectivity_at_least};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| {
                let mut a = Vec::new();
                if i > 0 {
                    a.push(i - 1);
                }
                if i + 1 < n {
                    a.push(i + 1);
                }
                a
            })
            .collect()
    }

    #[test]
    fn tree_partition_bounds() {
        assert_eq!(partition_tree(&path(9), 9), vec![(0..9).collect::<Vec<_>>()]);
        let p = partition_tree(&path(40), 5);
        assert!(p.iter().all(|x| (5..=15).contains(&x.len())));
        assert_eq!(p.iter().map(|x| x.len()).sum::<usize>(), 40);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(1..300);
            let mut adj = vec![Vec::new(); n];
            for v in 1..n {
                // max degree 3
                let mut u = rng.gen_range(0..v);
                while adj[u].len() >= 3 {
                    u = rng.gen_range(0..v);
                }
                adj[u].push(v);
                adj[v].push(u);
            }
            let min = rng.gen_range(1..12);
            let parts = partition_tree(&adj, min);
            for p in &parts {
                if n >= min {
                    assert!(
                        p.len() >= min && p.len() <= 3 * min,
                        "{} not in [{min}, {}]",
                        p.len(),
                        3 * min
                    );
                }
            }
            assert_eq!(parts.iter().map(|p| p.len()).sum::<usize>(), n);
        }
    }

    #[test]
    fn topological() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for k in [1, 2, 3, 4, 5] {
            let t = Triangulation::random_stacked(60, &mut rng).unwrap();
            let (g, d) = cluster_augment_topological(&t, k).unwrap();
            assert!(vertex_connectivity_at_least(&g, k).unwrap());
            for p in &d.dual_pieces {
                assert!(p.len() >= 2 * k - 1 && p.len() <= 6 * k - 2);
            }
            for (i, ns) in d.cluster_graph.iter().enumerate() {
                for &j in ns {
                    assert!(d.shared(i, j).len() >= 2);
                }
            }
            assert_eq!(g.m() - t.m(), d.per_edge_bound.len());
        }
        let small = Triangulation::octahedron();
        let (g, d) = cluster_augment_topological(&small, 4).unwrap();
        assert_eq!(d.clusters.len(), 1);
        assert_eq!(g.m(), 15);
        assert!(matches!(
            cluster_augment_topological(&small, 6),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn convex() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for k in [2, 3, 4] {
            let ct = ConvexTriangulation::random(60, &mut rng).unwrap();
            let g = cluster_augment_convex(&ct, k).unwrap();
            assert!(vertex_connectivity_at_least(g.graph(), k).unwrap());
            assert!(local_crossing_number(&g).unwrap() <= 12 * k * k);
            let d = convex_cluster_partition(&ct, k).unwrap();
            assert!(d.dual_pieces.iter().all(|p| (k..=3 * k).contains(&p.len())));
        }
    }
}
