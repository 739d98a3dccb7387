use std::cmp::Ordering;

use super::geometry::{check_general_position, IntPoints, RatPoint};
use super::{AbstractGraph, PlaneGraph};
use crate::error::{Error, Result};

/// Largest point set whose general position is checked eagerly.
pub const EAGER_GP_LIMIT: usize = 400;

/// Straight-line drawing of a graph on rational points.
#[derive(Clone, Debug)]
pub struct GeometricGraph {
    points: Vec<RatPoint>,
    graph: AbstractGraph,
    ip: IntPoints,
}

impl PartialEq for GeometricGraph {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.graph == other.graph
    }
}

impl GeometricGraph {
    pub fn new(points: Vec<RatPoint>, graph: AbstractGraph) -> Result<Self> {
        if points.len() != graph.n() {
            return Err(Error::Validation(format!(
                "{} points for {} vertices",
                points.len(),
                graph.n()
            )));
        }
        let ip = IntPoints::new(&points);
        if points.len() <= EAGER_GP_LIMIT {
            check_general_position(&ip)?;
        }
        Ok(GeometricGraph { points, graph, ip })
    }

    pub fn from_edges(points: Vec<RatPoint>, edges: &[(usize, usize)]) -> Result<Self> {
        let g = AbstractGraph::from_edges(points.len(), edges)?;
        GeometricGraph::new(points, g)
    }

    pub fn points(&self) -> &[RatPoint] {
        &self.points
    }

    pub fn graph(&self) -> &AbstractGraph {
        &self.graph
    }

    pub fn int_points(&self) -> &IntPoints {
        &self.ip
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Result<Self> {
        Ok(GeometricGraph {
            points: self.points.clone(),
            graph: self.graph.with_edges(extra)?,
            ip: self.ip.clone(),
        })
    }

    /// Number of proper crossings on each edge, indexed like `graph().edges()`.
    pub fn crossings_per_edge(&self) -> Result<Vec<usize>> {
        let e = self.graph.edges();
        let mut c = vec![0usize; e.len()];
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if self.ip.segments_cross(e[i].0, e[i].1, e[j].0, e[j].1)? {
                    c[i] += 1;
                    c[j] += 1;
                }
            }
        }
        Ok(c)
    }

    /// Neighbors of each vertex sorted counterclockwise by angle.
    pub fn angular_rotation(&self) -> Vec<Vec<usize>> {
        (0..self.n())
            .map(|v| {
                let mut ns = self.graph.neighbors(v).to_vec();
                ns.sort_by(|&a, &b| self.ip.cmp_angle(v, a, b));
                ns
            })
            .collect()
    }

    /// The straight-line embedding, if the drawing is crossing-free.
    pub fn to_plane(&self) -> Result<PlaneGraph> {
        if local_crossing_number(self)? > 0 {
            return Err(Error::Validation("drawing has crossings".into()));
        }
        let rot = self.angular_rotation();
        let mut g = AbstractGraph::new(self.n());
        let mut index = std::collections::HashMap::new();
        for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
            g.add_edge(u, v)?;
            index.insert((u, v), 2 * e);
            index.insert((v, u), 2 * e + 1);
        }
        let rotation = rot
            .iter()
            .enumerate()
            .map(|(u, ns)| ns.iter().map(|&v| index[&(u, v)]).collect())
            .collect();
        PlaneGraph::new(g, rotation)
    }

    /// True if `u`, `v`, `w` turn counterclockwise.
    pub fn ccw(&self, u: usize, v: usize, w: usize) -> bool {
        self.ip.orient(u, v, w) == Ordering::Greater
    }
}

/// Maximum number of crossings on a single edge.
pub fn local_crossing_number(g: &GeometricGraph) -> Result<usize> {
    Ok(g.crossings_per_edge()?.into_iter().max().unwrap_or(0))
}
