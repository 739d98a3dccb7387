use super::embedding::Embedding;
use super::AbstractGraph;
use crate::error::{Error, Result};

/// A graph with a fixed combinatorial embedding.
///
/// `rotation[v]` lists the edge ends at `v` counterclockwise; edge end
/// `2e + s` is the end of edge `e` at `edges[e].0` when `s == 0` and at
/// `edges[e].1` when `s == 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    graph: AbstractGraph,
    rotation: Vec<Vec<usize>>,
}

/// A gap in the rotation at `vertex`, directly counterclockwise after edge
/// end `after`. It lies on the face that contains the half-edge `after`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    pub vertex: usize,
    pub after: usize,
}

impl PlaneGraph {
    pub fn new(graph: AbstractGraph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        let p = PlaneGraph { graph, rotation };
        p.validate()?;
        Ok(p)
    }

    pub(crate) fn from_parts_unchecked(graph: AbstractGraph, rotation: Vec<Vec<usize>>) -> Self {
        PlaneGraph { graph, rotation }
    }

    /// Builds an embedding from per-vertex neighbor lists in counterclockwise
    /// order. Edge ids follow first appearance with `u < v`.
    pub fn from_neighbor_rotation(rot: &[Vec<usize>]) -> Result<Self> {
        let n = rot.len();
        let mut g = AbstractGraph::new(n);
        for (u, ns) in rot.iter().enumerate() {
            for &v in ns {
                if v >= n {
                    return Err(Error::Validation(format!("neighbor {v} out of range")));
                }
                if u < v {
                    g.add_edge(u, v)?;
                }
            }
        }
        let mut index = std::collections::HashMap::new();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            index.insert((u, v), 2 * e);
            index.insert((v, u), 2 * e + 1);
        }
        let mut rotation = Vec::with_capacity(n);
        for (u, ns) in rot.iter().enumerate() {
            let mut r = Vec::with_capacity(ns.len());
            for &v in ns {
                match index.get(&(u, v)) {
                    Some(&h) => r.push(h),
                    None => return Err(Error::Validation(format!("rotation of {v} does not list {u}"))),
                }
            }
            rotation.push(r);
        }
        PlaneGraph::new(g, rotation)
    }

    pub fn graph(&self) -> &AbstractGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    /// Vertex an edge end sits at.
    pub fn end_vertex(&self, h: usize) -> usize {
        let (u, v) = self.graph.edges()[h / 2];
        if h & 1 == 0 {
            u
        } else {
            v
        }
    }

    /// Neighbors of `v` in counterclockwise order.
    pub fn neighbor_rotation(&self, v: usize) -> Vec<usize> {
        self.rotation[v].iter().map(|&h| self.end_vertex(h ^ 1)).collect()
    }

    /// Checks that the rotation lists every edge end once at the right vertex
    /// and, for connected graphs, that the embedding has genus 0.
    pub fn validate(&self) -> Result<()> {
        let n = self.graph.n();
        let m = self.graph.m();
        if self.rotation.len() != n {
            return Err(Error::Validation(format!(
                "rotation has {} entries for {n} vertices",
                self.rotation.len()
            )));
        }
        let mut seen = vec![false; 2 * m];
        for (v, rot) in self.rotation.iter().enumerate() {
            for &h in rot {
                if h >= 2 * m {
                    return Err(Error::Validation(format!("edge end {h} out of range")));
                }
                if seen[h] {
                    return Err(Error::Validation(format!("edge end {h} listed twice")));
                }
                seen[h] = true;
                if self.end_vertex(h) != v {
                    return Err(Error::Validation(format!(
                        "edge end {h} listed at {v} but belongs to {}",
                        self.end_vertex(h)
                    )));
                }
            }
        }
        if let Some(h) = seen.iter().position(|s| !s) {
            return Err(Error::Validation(format!("edge end {h} missing from rotation")));
        }
        if n > 0 && self.graph.is_connected() {
            let f = faces(self).len();
            if n as i64 - m as i64 + f as i64 != 2 {
                return Err(Error::Validation(format!(
                    "Euler check failed: V={n} E={m} F={f}, rotation is not planar"
                )));
            }
        }
        Ok(())
    }

    pub fn face_count(&self) -> usize {
        faces(self).len()
    }

    /// True if `sub`'s rotation at every vertex is a cyclic subsequence of
    /// ours, comparing neighbors.
    pub fn extends_embedding_of(&self, sub: &PlaneGraph) -> bool {
        if sub.n() > self.n() {
            return false;
        }
        (0..sub.n()).all(|v| {
            let small = sub.neighbor_rotation(v);
            if small.len() <= 2 {
                return small.iter().all(|&w| self.graph.has_edge(v, w));
            }
            let big = self.neighbor_rotation(v);
            let filtered: Vec<usize> = big.into_iter().filter(|w| small.contains(w)).collect();
            if filtered.len() != small.len() {
                return false;
            }
            let s = filtered.iter().position(|&w| w == small[0]).unwrap();
            (0..small.len()).all(|i| filtered[(s + i) % small.len()] == small[i])
        })
    }
}

/// Face walks as sequences of edge ends; each walk keeps its face on the
/// left and every edge end appears in exactly one walk.
pub fn faces(g: &PlaneGraph) -> Vec<Vec<usize>> {
    let m = g.graph.m();
    let mut pos = vec![0usize; 2 * m];
    for rot in &g.rotation {
        for (i, &h) in rot.iter().enumerate() {
            pos[h] = i;
        }
    }
    let next = |h: usize| {
        let t = h ^ 1;
        let rot = &g.rotation[g.end_vertex(t)];
        rot[(pos[t] + rot.len() - 1) % rot.len()]
    };
    let mut seen = vec![false; 2 * m];
    let mut out = Vec::new();
    for h in 0..2 * m {
        if seen[h] {
            continue;
        }
        let mut walk = Vec::new();
        let mut x = h;
        while !seen[x] {
            seen[x] = true;
            walk.push(x);
            x = next(x);
        }
        out.push(walk);
    }
    out
}

/// Inserts the edge between two corners of the same face.
pub fn insert_edge_in_face(g: &PlaneGraph, cu: Corner, cv: Corner) -> Result<PlaneGraph> {
    let (u, v) = (cu.vertex, cv.vertex);
    if g.graph.has_edge(u, v) {
        return Err(Error::DuplicateEdge(u, v));
    }
    if u == v {
        return Err(Error::Validation("corners at the same vertex".into()));
    }
    for c in [cu, cv] {
        if c.after >= 2 * g.graph.m() || g.end_vertex(c.after) != c.vertex {
            return Err(Error::Validation(format!(
                "corner {:?} does not name an edge end at its vertex",
                c
            )));
        }
    }
    let emb = Embedding::from_plane(g);
    let walk = emb.face_of(cu.after);
    if !walk.contains(&cv.after) {
        return Err(Error::Infeasible(format!(
            "corners at {u} and {v} are not on a common face"
        )));
    }
    let mut emb = emb;
    emb.insert_edge(u, cu.after, v, cv.after);
    Ok(emb.to_plane(g.n()))
}

/// Corner of `v` on the face left of half-edge `h` that arrives at `v`.
pub fn corner_after_arrival(g: &PlaneGraph, h: usize) -> Corner {
    let emb = Embedding::from_plane(g);
    let out = emb.face_next(h);
    Corner {
        vertex: emb.origin(out),
        after: out,
    }
}

impl From<&PlaneGraph> for Embedding {
    fn from(p: &PlaneGraph) -> Self {
        Embedding::from_plane(p)
    }
}

#[cfg(test)]
pub(crate) use tests::k4 as test_k4;

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k4() -> PlaneGraph {
        // center 0 inside triangle 1,2,3 (counterclockwise)
        PlaneGraph::from_neighbor_rotation(&[vec![1, 2, 3], vec![2, 0, 3], vec![3, 0, 1], vec![1, 0, 2]])
            .unwrap()
    }

    #[test]
    fn triangle_faces() {
        let t = PlaneGraph::from_neighbor_rotation(&[vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        let f = faces(&t);
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|w| w.len() == 3));
    }

    #[test]
    fn k4_faces() {
        let f = faces(&k4());
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|w| w.len() == 3));
    }

    #[test]
    fn path_single_face() {
        let p = PlaneGraph::from_neighbor_rotation(&[vec![1], vec![0, 2], vec![1]]).unwrap();
        let f = faces(&p);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].len(), 4);
    }

    #[test]
    fn non_planar_rotation_rejected() {
        // K4 with the rotation at vertex 0 reversed has genus 1
        let r =
            PlaneGraph::from_neighbor_rotation(&[vec![3, 2, 1], vec![2, 0, 3], vec![3, 0, 1], vec![1, 0, 2]]);
        assert!(r.is_err());
    }

    #[test]
    fn quad_diagonal_splits_face() {
        let c4 =
            PlaneGraph::from_neighbor_rotation(&[vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        let fs = faces(&c4);
        let walk = &fs[0];
        let at = |v: usize| *walk.iter().find(|&&h| c4.end_vertex(h) == v).unwrap();
        let g = insert_edge_in_face(
            &c4,
            Corner {
                vertex: 0,
                after: at(0),
            },
            Corner {
                vertex: 2,
                after: at(2),
            },
        )
        .unwrap();
        let f = faces(&g);
        assert_eq!(f.len(), 3);
        assert_eq!(f.iter().filter(|w| w.len() == 3).count(), 2);
        assert!(matches!(
            insert_edge_in_face(
                &g,
                Corner {
                    vertex: 0,
                    after: at(0)
                },
                Corner {
                    vertex: 2,
                    after: at(2)
                }
            ),
            Err(Error::DuplicateEdge(0, 2))
        ));
    }

    #[test]
    fn path_outer_insertion_makes_cycle() {
        let p = PlaneGraph::from_neighbor_rotation(&[vec![1], vec![0, 2], vec![1]]).unwrap();
        let h0 = p.rotation()[0][0];
        let h2 = p.rotation()[2][0];
        let g = insert_edge_in_face(
            &p,
            Corner { vertex: 0, after: h0 },
            Corner { vertex: 2, after: h2 },
        )
        .unwrap();
        assert_eq!(faces(&g).len(), 2);
    }
}
