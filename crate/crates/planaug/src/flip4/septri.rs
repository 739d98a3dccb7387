//! Separating triangles with per-edge intrusive lists.
//!
//! Each triangle owns three list nodes, node `3t + k` sitting in the list of
//! its `k`-th edge. Removing a triangle unlinks its three nodes in O(1).

use std::collections::HashSet;

use super::Triangulation;
use crate::graph::embedding::NONE;

#[derive(Clone, Debug)]
pub struct SeparatingTriangleIndex {
    tris: Vec<[usize; 3]>,
    tri_edges: Vec<[usize; 3]>,
    alive: Vec<bool>,
    live: usize,
    head: Vec<usize>,
    count: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
}

/// All 3-cycles as sorted vertex triples, by the degree-ordered listing:
/// each edge is oriented towards the endpoint later in (degree, index)
/// order, and triangles are found from their lowest vertex.
pub fn all_triangles(t: &Triangulation) -> Vec<[usize; 3]> {
    let n = t.n();
    let rank = |v: usize| (t.degree(v), v);
    let out: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            t.neighbors(u)
                .into_iter()
                .filter(|&v| rank(v) > rank(u))
                .collect()
        })
        .collect();
    let mut mark = vec![false; n];
    let mut res = Vec::new();
    for u in 0..n {
        for &v in &out[u] {
            mark[v] = true;
        }
        for &v in &out[u] {
            for &w in &out[v] {
                if mark[w] {
                    let mut tri = [u, v, w];
                    tri.sort_unstable();
                    res.push(tri);
                }
            }
        }
        for &v in &out[u] {
            mark[v] = false;
        }
    }
    res.sort_unstable();
    res
}

/// Separating triangles: 3-cycles that are not faces.
pub fn separating_triangles_of(t: &Triangulation) -> Vec<[usize; 3]> {
    let faces: HashSet<[usize; 3]> = t
        .faces()
        .into_iter()
        .map(|mut f| {
            f.sort_unstable();
            f
        })
        .collect();
    all_triangles(t)
        .into_iter()
        .filter(|x| !faces.contains(x))
        .collect()
}

impl SeparatingTriangleIndex {
    pub fn build(t: &Triangulation) -> Self {
        let tris = separating_triangles_of(t);
        let m = t.m();
        let k = tris.len();
        let mut idx = SeparatingTriangleIndex {
            tri_edges: Vec::with_capacity(k),
            alive: vec![true; k],
            live: k,
            head: vec![NONE; m],
            count: vec![0; m],
            next: vec![NONE; 3 * k],
            prev: vec![NONE; 3 * k],
            tris,
        };
        for i in 0..k {
            let [a, b, c] = idx.tris[i];
            let es = [(a, b), (b, c), (a, c)].map(|(x, y)| t.find_edge(x, y).unwrap());
            idx.tri_edges.push(es);
            for (j, &e) in es.iter().enumerate() {
                let node = 3 * i + j;
                idx.next[node] = idx.head[e];
                if idx.head[e] != NONE {
                    idx.prev[idx.head[e]] = node;
                }
                idx.head[e] = node;
                idx.count[e] += 1;
            }
        }
        idx
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// Number of live separating triangles bounded by edge `e`.
    pub fn count(&self, e: usize) -> usize {
        self.count[e]
    }

    pub fn triangle(&self, i: usize) -> [usize; 3] {
        self.tris[i]
    }

    pub fn edges_of(&self, i: usize) -> [usize; 3] {
        self.tri_edges[i]
    }

    /// Live triangle ids on edge `e`.
    pub fn on_edge(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        let mut node = self.head[e];
        std::iter::from_fn(move || {
            if node == NONE {
                return None;
            }
            let out = node / 3;
            node = self.next[node];
            Some(out)
        })
    }

    /// Live triangles as sorted vertex triples.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        (0..self.tris.len())
            .filter(|&i| self.alive[i])
            .map(|i| self.tris[i])
            .collect()
    }

    pub fn live_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.tris.len()).filter(|&i| self.alive[i])
    }

    pub fn remove(&mut self, i: usize) {
        if !self.alive[i] {
            return;
        }
        self.alive[i] = false;
        self.live -= 1;
        for j in 0..3 {
            let node = 3 * i + j;
            let e = self.tri_edges[i][j];
            let (p, nx) = (self.prev[node], self.next[node]);
            if p == NONE {
                self.head[e] = nx;
            } else {
                self.next[p] = nx;
            }
            if nx != NONE {
                self.prev[nx] = p;
            }
            self.count[e] -= 1;
        }
    }

    /// Removes every triangle on edge `e`; returns how many there were.
    pub fn clear_edge(&mut self, e: usize) -> usize {
        let ids: Vec<usize> = self.on_edge(e).collect();
        for &i in &ids {
            self.remove(i);
        }
        ids.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flip4::triangulation::tests::stack5;
    use crate::graph::vertex_connectivity_bruteforce;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Oracle: every vertex triple, adjacency checked pairwise.
    fn triple_oracle(t: &Triangulation) -> Vec<[usize; 3]> {
        let faces: HashSet<[usize; 3]> = t
            .faces()
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f
            })
            .collect();
        let n = t.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if t.has_edge(a, b) && t.has_edge(b, c) && t.has_edge(a, c) && !faces.contains(&[a, b, c])
                    {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn examples() {
        assert!(SeparatingTriangleIndex::build(&Triangulation::octahedron()).is_empty());
        let s = stack5();
        assert_eq!(separating_triangles_of(&s), vec![[0, 1, 3]]);
        // a second stack in a face disjoint from the first one
        let mut two = Triangulation::octahedron();
        let h1 = two.embedding().half_edge(0, 1).unwrap();
        two.stack_into(h1);
        let h2 = two.embedding().half_edge(5, 3).unwrap();
        two.stack_into(h2);
        assert_eq!(separating_triangles_of(&two).len(), 2);
    }

    #[test]
    fn listing_matches_oracles() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 5..30 {
            let t = Triangulation::random(n, n, &mut rng).unwrap();
            let sep = separating_triangles_of(&t);
            assert_eq!(sep, triple_oracle(&t));
            if n <= 20 {
                let four = vertex_connectivity_bruteforce(&t.graph(), 4).unwrap();
                assert_eq!(four, sep.is_empty(), "n = {n}");
            }
        }
    }

    #[test]
    fn index_lists_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = Triangulation::random_stacked(25, &mut rng).unwrap();
        let mut idx = SeparatingTriangleIndex::build(&t);
        let total: usize = (0..t.m()).map(|e| idx.count(e)).sum();
        assert_eq!(total, 3 * idx.len());
        let ids: Vec<usize> = idx.live_ids().collect();
        for &i in ids.iter().step_by(2) {
            idx.remove(i);
        }
        for e in 0..t.m() {
            let listed: Vec<usize> = idx.on_edge(e).collect();
            assert_eq!(listed.len(), idx.count(e));
            for i in listed {
                assert!(idx.edges_of(i).contains(&e));
            }
        }
        let total: usize = (0..t.m()).map(|e| idx.count(e)).sum();
        assert_eq!(total, 3 * idx.len());
    }
}
