use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::embedding::{Embedding, NONE};
use crate::graph::{AbstractGraph, PlaneGraph};

/// Combinatorial triangulation of the sphere: every face, the outer one
/// included, is a triangle. Edge ids are stable under flips.
#[derive(Clone, Debug)]
pub struct Triangulation {
    emb: Embedding,
    n: usize,
}

/// Flips in the order performed, each named by its endpoints at flip time.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipSequence {
    pub flips: Vec<(usize, usize)>,
}

impl FlipSequence {
    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }
}

impl Triangulation {
    pub fn new(p: &PlaneGraph) -> Result<Self> {
        let n = p.n();
        if n < 4 {
            return Err(Error::Validation(format!(
                "triangulation needs 4 vertices, got {n}"
            )));
        }
        if p.graph().m() != 3 * n - 6 {
            return Err(Error::Validation(format!(
                "{} edges, a triangulation on {n} vertices has {}; triangulate the outer face first",
                p.graph().m(),
                3 * n - 6
            )));
        }
        p.validate()?;
        let emb = Embedding::from_plane(p);
        if let Some(f) = emb.faces().into_iter().find(|f| f.len() != 3) {
            return Err(Error::Validation(format!(
                "face of length {} found; every face, the outer one included, must be a triangle",
                f.len()
            )));
        }
        Ok(Triangulation { emb, n })
    }

    /// Octahedron, the smallest 4-connected triangulation.
    pub fn octahedron() -> Self {
        // 0,5 poles, 1..=4 equator
        let rot = vec![
            vec![1, 2, 3, 4],
            vec![0, 4, 5, 2],
            vec![0, 1, 5, 3],
            vec![0, 2, 5, 4],
            vec![0, 3, 5, 1],
            vec![1, 4, 3, 2],
        ];
        Triangulation::new(&PlaneGraph::from_neighbor_rotation(&rot).unwrap()).unwrap()
    }

    /// K4 with faces oriented counterclockwise around `0 1 2`.
    pub fn tetrahedron() -> Self {
        let rot = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]];
        Triangulation::new(&PlaneGraph::from_neighbor_rotation(&rot).unwrap()).unwrap()
    }

    /// Places a new vertex inside the face left of half-edge `h`, joined to
    /// its three corners. Returns the new vertex.
    pub fn stack_into(&mut self, h: usize) -> usize {
        let h1 = h;
        let h2 = self.emb.face_next(h1);
        let h3 = self.emb.face_next(h2);
        debug_assert_eq!(self.emb.face_next(h3), h1);
        let (a, b, c) = (self.emb.origin(h1), self.emb.origin(h2), self.emb.origin(h3));
        let x = self.emb.add_vertex();
        let ea = self.emb.insert_edge(x, NONE, a, h1);
        let eb = self.emb.insert_edge(x, 2 * ea, b, h2);
        self.emb.insert_edge(x, 2 * eb, c, h3);
        self.n += 1;
        x
    }

    /// Stacked triangulation: starting from K4, each new vertex goes into a
    /// uniformly random face.
    pub fn random_stacked<R: Rng>(n: usize, rng: &mut R) -> Result<Self> {
        if n < 4 {
            return Err(Error::Argument(format!("need n >= 4, got {n}")));
        }
        let mut t = Triangulation::tetrahedron();
        // faces are identified by one of their half-edges
        let mut faces: Vec<usize> = t.emb.faces().into_iter().map(|f| f[0]).collect();
        while t.n < n {
            let i = rng.gen_range(0..faces.len());
            let h = faces[i];
            let x = t.stack_into(h);
            let hs: Vec<usize> = t.emb.around(x).collect();
            faces.swap_remove(i);
            faces.extend(hs);
        }
        Ok(t)
    }

    /// Stacked triangulation scrambled by `flips` random legal flips.
    pub fn random<R: Rng>(n: usize, flips: usize, rng: &mut R) -> Result<Self> {
        let mut t = Triangulation::random_stacked(n, rng)?;
        let m = t.m();
        for _ in 0..flips {
            let e = rng.gen_range(0..m);
            let _ = t.flip(e);
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.emb.edge_slots()
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.emb.origin(2 * e), self.emb.origin(2 * e + 1))
    }

    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.emb.half_edge(u, v).map(|h| h / 2)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.find_edge(u, v).is_some()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.emb.degree(v)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.emb.neighbors(v)
    }

    /// The two apexes `(a, b)` of the triangles on either side of `e`.
    pub fn opposite(&self, e: usize) -> (usize, usize) {
        let h = 2 * e;
        let a = self.emb.head(self.emb.face_next(h));
        let b = self.emb.head(self.emb.face_next(h ^ 1));
        (a, b)
    }

    pub fn is_flippable(&self, e: usize) -> bool {
        let (a, b) = self.opposite(e);
        a != b && !self.has_edge(a, b)
    }

    /// Flips edge `e` in place and returns its new endpoints.
    pub fn flip(&mut self, e: usize) -> Result<(usize, usize)> {
        let (a, b) = self.opposite(e);
        if a == b || self.has_edge(a, b) {
            let (u, v) = self.endpoints(e);
            return Err(Error::IllegalFlip(u, v));
        }
        Ok(self.emb.flip(e))
    }

    /// Pure variant of [`flip`](Self::flip).
    pub fn flipped(&self, e: usize) -> Result<Triangulation> {
        let mut t = self.clone();
        t.flip(e)?;
        Ok(t)
    }

    pub fn flip_pair(&mut self, u: usize, v: usize) -> Result<(usize, usize)> {
        let e = self
            .find_edge(u, v)
            .ok_or_else(|| Error::Argument(format!("edge {u}-{v} absent")))?;
        self.flip(e)
    }

    /// Replays a flip sequence on a copy.
    pub fn replay(&self, seq: &FlipSequence) -> Result<Triangulation> {
        let mut t = self.clone();
        for &(u, v) in &seq.flips {
            t.flip_pair(u, v)?;
        }
        Ok(t)
    }

    /// Faces as vertex triples in walk order.
    pub fn faces(&self) -> Vec<[usize; 3]> {
        self.emb
            .faces()
            .into_iter()
            .map(|f| {
                [
                    self.emb.origin(f[0]),
                    self.emb.origin(f[1]),
                    self.emb.origin(f[2]),
                ]
            })
            .collect()
    }

    pub fn graph(&self) -> AbstractGraph {
        let mut g = AbstractGraph::with_capacity(self.n, self.m());
        for e in 0..self.m() {
            let (u, v) = self.endpoints(e);
            g.add_edge(u, v).expect("triangulation is simple");
        }
        g
    }

    pub fn to_plane(&self) -> PlaneGraph {
        self.emb.to_plane(self.n)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::vertex_connectivity_bruteforce;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Outer `a b c` = `0 1 2`, `d` = 3 joined to all, `e` = 4 inside `abd`.
    pub(crate) fn stack5() -> Triangulation {
        let mut t = Triangulation::tetrahedron();
        let h = t.embedding().half_edge(0, 1).unwrap();
        // the face left of 0->1 is 0 1 3 or 0 1 2; pick the one with 3
        let h = if t.embedding().head(t.embedding().face_next(h)) == 3 {
            h
        } else {
            h ^ 1
        };
        t.stack_into(h);
        t
    }

    #[test]
    fn basic_shapes() {
        let o = Triangulation::octahedron();
        assert_eq!((o.n(), o.m(), o.faces().len()), (6, 12, 8));
        assert!(vertex_connectivity_bruteforce(&o.graph(), 4).unwrap());
        let k4 = Triangulation::tetrahedron();
        for e in 0..6 {
            assert!(matches!(k4.flipped(e), Err(Error::IllegalFlip(..))));
        }
        let s = stack5();
        assert_eq!((s.n(), s.m()), (5, 9));
        assert!(s.has_edge(4, 0) && s.has_edge(4, 1) && s.has_edge(4, 3));
    }

    #[test]
    fn flip_keeps_triangulation() {
        let s = stack5();
        // interior edge 3-4 lies between faces 3 4 0 and 4 3 1: flip to 0-1?
        // 0-1 exists, so it is illegal; edge 0-3 is legal
        let e = s.find_edge(3, 4).unwrap();
        assert!(s.flipped(e).is_err());
        let e = s.find_edge(0, 3).unwrap();
        let f = s.flipped(e).unwrap();
        assert_eq!(f.m(), 9);
        Triangulation::new(&f.to_plane()).unwrap();
    }

    #[test]
    fn random_triangulations_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 4..40 {
            let t = Triangulation::random(n, 3 * n, &mut rng).unwrap();
            let p = t.to_plane();
            let back = Triangulation::new(&p).unwrap();
            assert_eq!(back.m(), 3 * n - 6);
        }
    }

    #[test]
    fn rejects_non_triangulations() {
        let quad =
            PlaneGraph::from_neighbor_rotation(&[vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        assert!(Triangulation::new(&quad).is_err());
    }
}
