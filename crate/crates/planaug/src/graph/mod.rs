//! Graph representations and the oracles the rest of the crate checks against.

pub mod connectivity;
pub mod embedding;
pub mod geometric;
pub mod geometry;
pub mod io;
pub mod plane;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};

pub use connectivity::{vertex_connectivity_at_least, vertex_connectivity_bruteforce};
pub use embedding::Embedding;
pub use geometric::{local_crossing_number, GeometricGraph};
pub use geometry::RatPoint;
pub use plane::{faces, insert_edge_in_face, Corner, PlaneGraph};

#[inline]
pub fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Edges keep the orientation and order they were added in, since plane
/// rotations refer to edge ends by index.
#[derive(Clone, Debug, Default)]
pub struct AbstractGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    /// built on first lookup when edges were pushed unchecked
    set: OnceLock<FxHashSet<(usize, usize)>>,
}

impl PartialEq for AbstractGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}
impl Eq for AbstractGraph {}

impl AbstractGraph {
    pub fn new(n: usize) -> Self {
        AbstractGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            set: OnceLock::from(FxHashSet::default()),
        }
    }

    /// Empty graph with room for `m` edges.
    pub fn with_capacity(n: usize, m: usize) -> Self {
        let mut g = AbstractGraph::new(n);
        g.edges.reserve(m);
        g.set_mut().reserve(m);
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = AbstractGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        if u >= self.n || v >= self.n {
            return Err(Error::Validation(format!(
                "edge {u}-{v} out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::Validation(format!("self-loop at {u}")));
        }
        if !self.set_mut().insert(key(u, v)) {
            return Err(Error::DuplicateEdge(u, v));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edges.push((u, v));
        Ok(self.edges.len() - 1)
    }

    /// Appends an edge known to be new, skipping the duplicate check.
    pub(crate) fn push_edge_unchecked(&mut self, u: usize, v: usize) -> usize {
        self.set = OnceLock::new();
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edges.push((u, v));
        self.edges.len() - 1
    }

    fn edge_set(&self) -> &FxHashSet<(usize, usize)> {
        self.set
            .get_or_init(|| self.edges.iter().map(|&(u, v)| key(u, v)).collect())
    }

    fn set_mut(&mut self) -> &mut FxHashSet<(usize, usize)> {
        self.edge_set();
        self.set.get_mut().expect("initialized above")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_set().contains(&key(u, v))
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Copy of `self` with the extra edges appended.
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Result<Self> {
        let mut g = self.clone();
        for &(u, v) in extra {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

/// Counts `n_i`, the number of vertices of degree `i`.
pub fn degree_histogram(g: &AbstractGraph) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for v in 0..g.n() {
        *h.entry(g.degree(v)).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> AbstractGraph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        AbstractGraph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn histogram_examples() {
        assert_eq!(degree_histogram(&path(4)), BTreeMap::from([(1, 2), (2, 2)]));
        let star = AbstractGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(degree_histogram(&star), BTreeMap::from([(1, 4), (4, 1)]));
        let k4 = AbstractGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(degree_histogram(&k4), BTreeMap::from([(3, 4)]));
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = AbstractGraph::new(3);
        g.add_edge(0, 1).unwrap();
        assert!(matches!(g.add_edge(1, 0), Err(Error::DuplicateEdge(1, 0))));
        assert!(g.add_edge(2, 2).is_err());
        assert!(g.add_edge(0, 3).is_err());
    }
}
