//! Mutable half-edge rotation system.
//!
//! Half-edge `2e` leaves the first endpoint of edge `e`, `2e + 1` the second,
//! so a half-edge id doubles as the edge-end id used in graph files. Rotations
//! are counterclockwise. The face to the left of `u -> v` continues with
//! `v -> w` where `w` precedes `u` in the rotation at `v`.

use super::{AbstractGraph, PlaneGraph};

pub const NONE: usize = usize::MAX;

#[derive(Clone, Debug, Default)]
pub struct Embedding {
    origin: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    first: Vec<usize>,
    deg: Vec<usize>,
    alive_edges: usize,
}

impl Embedding {
    pub fn with_vertices(n: usize) -> Self {
        Embedding {
            first: vec![NONE; n],
            deg: vec![0; n],
            ..Default::default()
        }
    }

    pub fn vertex_slots(&self) -> usize {
        self.first.len()
    }

    pub fn edge_slots(&self) -> usize {
        self.origin.len() / 2
    }

    pub fn edge_count(&self) -> usize {
        self.alive_edges
    }

    pub fn add_vertex(&mut self) -> usize {
        self.first.push(NONE);
        self.deg.push(0);
        self.first.len() - 1
    }

    #[inline]
    pub fn origin(&self, h: usize) -> usize {
        self.origin[h]
    }
    #[inline]
    pub fn head(&self, h: usize) -> usize {
        self.origin[h ^ 1]
    }
    #[inline]
    pub fn ccw_next(&self, h: usize) -> usize {
        self.next[h]
    }
    #[inline]
    pub fn ccw_prev(&self, h: usize) -> usize {
        self.prev[h]
    }
    #[inline]
    pub fn face_next(&self, h: usize) -> usize {
        self.prev[h ^ 1]
    }
    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.deg[v]
    }
    #[inline]
    pub fn first(&self, v: usize) -> usize {
        self.first[v]
    }
    pub fn is_alive(&self, h: usize) -> bool {
        self.origin[h] != NONE
    }

    /// Outgoing half-edges of `v` in counterclockwise order.
    pub fn rotation(&self, v: usize) -> Vec<usize> {
        self.around(v).collect()
    }

    /// Half-edges leaving `v` in counterclockwise order, without allocating.
    pub fn around(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let f = self.first[v];
        let mut h = f;
        let mut done = f == NONE;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = h;
            h = self.next[h];
            done = h == f;
            Some(out)
        })
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.around(v).map(|h| self.head(h)).collect()
    }

    /// Half-edge from `u` to `v`, if present. Linear in the smaller degree.
    pub fn half_edge(&self, u: usize, v: usize) -> Option<usize> {
        if self.deg[u] <= self.deg[v] {
            self.around(u).find(|&h| self.head(h) == v)
        } else {
            self.around(v).find(|&h| self.head(h) == u).map(|h| h ^ 1)
        }
    }

    fn link_after(&mut self, v: usize, h: usize, after: usize) {
        self.origin[h] = v;
        if after == NONE {
            debug_assert_eq!(self.first[v], NONE);
            self.next[h] = h;
            self.prev[h] = h;
            self.first[v] = h;
        } else {
            debug_assert_eq!(self.origin[after], v);
            let nx = self.next[after];
            self.next[after] = h;
            self.prev[h] = after;
            self.next[h] = nx;
            self.prev[nx] = h;
        }
        self.deg[v] += 1;
    }

    fn unlink(&mut self, h: usize) {
        let v = self.origin[h];
        if self.next[h] == h {
            self.first[v] = NONE;
        } else {
            let (p, n) = (self.prev[h], self.next[h]);
            self.next[p] = n;
            self.prev[n] = p;
            if self.first[v] == h {
                self.first[v] = n;
            }
        }
        self.deg[v] -= 1;
    }

    /// Inserts edge `uv`, placing it counterclockwise right after `after_u`
    /// at `u` and after `after_v` at `v` (`NONE` for an isolated endpoint).
    /// Returns the edge id; its half-edge `2e` leaves `u`.
    pub fn insert_edge(&mut self, u: usize, after_u: usize, v: usize, after_v: usize) -> usize {
        let e = self.origin.len() / 2;
        self.origin.extend([NONE, NONE]);
        self.next.extend([NONE, NONE]);
        self.prev.extend([NONE, NONE]);
        self.link_after(u, 2 * e, after_u);
        self.link_after(v, 2 * e + 1, after_v);
        self.alive_edges += 1;
        e
    }

    pub fn remove_edge(&mut self, e: usize) {
        let h = 2 * e;
        debug_assert!(self.is_alive(h));
        self.unlink(h);
        self.unlink(h + 1);
        self.origin[h] = NONE;
        self.origin[h + 1] = NONE;
        self.alive_edges -= 1;
    }

    /// Flips edge `e` in place, assuming both incident faces are triangles
    /// `u v a` and `v u b`. Afterwards `2e` leaves `a` and `2e + 1` leaves `b`.
    /// Legality is the caller's business.
    pub fn flip(&mut self, e: usize) -> (usize, usize) {
        let h = 2 * e;
        let hva = self.face_next(h);
        let hau = self.face_next(hva);
        let hub = self.face_next(h ^ 1);
        let hbv = self.face_next(hub);
        let (a, b) = (self.origin[hau], self.origin[hbv]);
        self.unlink(h);
        self.unlink(h ^ 1);
        self.link_after(a, h, hau);
        self.link_after(b, h ^ 1, hbv);
        (a, b)
    }

    /// Subdivides the edge of half-edge `h` (from `u` to `v`) by a new vertex
    /// `m`. The edge of `h` becomes `u m`; a new edge `m v` takes the old slot
    /// at `v`. Returns `(m, half-edge m -> v)`.
    pub fn subdivide(&mut self, h: usize) -> (usize, usize) {
        let m = self.add_vertex();
        let t = h ^ 1;
        let v = self.origin[t];
        let after_v = if self.deg[v] == 1 { NONE } else { self.prev[t] };
        self.unlink(t);
        self.link_after(m, t, NONE);
        let e = self.origin.len() / 2;
        self.origin.extend([NONE, NONE]);
        self.next.extend([NONE, NONE]);
        self.prev.extend([NONE, NONE]);
        self.link_after(m, 2 * e, t);
        self.link_after(v, 2 * e + 1, after_v);
        self.alive_edges += 1;
        (m, 2 * e)
    }

    /// Moves every half-edge of `old` onto `new`, which must be isolated.
    pub fn rename_vertex(&mut self, old: usize, new: usize) {
        assert_eq!(self.first[new], NONE, "rename target must be isolated");
        for h in self.rotation(old) {
            self.origin[h] = new;
        }
        self.first[new] = self.first[old];
        self.deg[new] = self.deg[old];
        self.first[old] = NONE;
        self.deg[old] = 0;
    }

    /// Face walk starting at half-edge `h`.
    pub fn face_of(&self, h: usize) -> Vec<usize> {
        let mut out = vec![h];
        let mut x = self.face_next(h);
        while x != h {
            out.push(x);
            x = self.face_next(x);
        }
        out
    }

    /// All faces as half-edge walks.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.origin.len()];
        let mut out = Vec::new();
        for h in 0..self.origin.len() {
            if seen[h] || !self.is_alive(h) {
                continue;
            }
            let f = self.face_of(h);
            for &x in &f {
                seen[x] = true;
            }
            out.push(f);
        }
        out
    }

    /// Compacts the live edges into a `PlaneGraph` on vertices `0..n`.
    /// Live vertices must already be numbered `0..n`.
    pub fn to_plane(&self, n: usize) -> PlaneGraph {
        let ident: Vec<usize> = (0..n).collect();
        self.to_plane_mapped(&ident)
    }

    /// Like [`to_plane`](Self::to_plane), renaming live vertex `v` to
    /// `name[v]`, a permutation of `0..name.len()`.
    pub fn to_plane_mapped(&self, name: &[usize]) -> PlaneGraph {
        let n = name.len();
        let mut id = vec![NONE; self.edge_slots()];
        let mut g = AbstractGraph::with_capacity(n, self.alive_edges);
        for e in 0..self.edge_slots() {
            if self.is_alive(2 * e) {
                let (u, v) = (self.origin[2 * e], self.origin[2 * e + 1]);
                assert!(u < n && v < n, "vertex outside 0..{n}");
                id[e] = g.push_edge_unchecked(name[u], name[v]);
            }
        }
        for v in n..self.vertex_slots() {
            assert_eq!(self.deg[v], 0, "live vertex {v} beyond {n}");
        }
        let mut rotation = vec![Vec::new(); n];
        for v in 0..n {
            rotation[name[v]] = self.around(v).map(|h| 2 * id[h / 2] + (h & 1)).collect();
        }
        PlaneGraph::from_parts_unchecked(g, rotation)
    }

    pub fn from_plane(p: &PlaneGraph) -> Self {
        let vs: Vec<usize> = (0..p.n()).collect();
        let es: Vec<usize> = (0..p.graph().m()).collect();
        Self::from_plane_mapped(p, &vs, &es)
    }

    /// Copies `p`, renaming vertex `v` to `vmap[v]` and edge `e` to
    /// `emap[e]`. Both maps must be permutations.
    pub fn from_plane_mapped(p: &PlaneGraph, vmap: &[usize], emap: &[usize]) -> Self {
        let mut emb = Embedding::with_vertices(p.n());
        let m = p.graph().m();
        emb.origin = vec![NONE; 2 * m];
        emb.next = vec![NONE; 2 * m];
        emb.prev = vec![NONE; 2 * m];
        for (v, rot) in p.rotation().iter().enumerate() {
            let mut after = NONE;
            for &h in rot {
                let h2 = 2 * emap[h / 2] + (h & 1);
                emb.link_after(vmap[v], h2, after);
                after = h2;
            }
        }
        emb.alive_edges = m;
        emb
    }
}
