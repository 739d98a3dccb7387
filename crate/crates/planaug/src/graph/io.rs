//! JSON graph files.
//!
//! `{"n": int, "edges": [[u,v],...], "rotation": [[edge_end,...],...]?,
//! "points": [[x_num,x_den,y_num,y_den],...]?}`

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{AbstractGraph, GeometricGraph, PlaneGraph, RatPoint};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[i64; 4]>>,
}

/// A parsed graph file.
#[derive(Clone, Debug)]
pub enum LoadedGraph {
    Abstract(AbstractGraph),
    Plane(PlaneGraph),
    Geometric(GeometricGraph),
    /// Both fields present and the rotation matches the drawing.
    PlaneGeometric(PlaneGraph, GeometricGraph),
}

impl LoadedGraph {
    pub fn abstract_graph(&self) -> &AbstractGraph {
        match self {
            LoadedGraph::Abstract(g) => g,
            LoadedGraph::Plane(p) | LoadedGraph::PlaneGeometric(p, _) => p.graph(),
            LoadedGraph::Geometric(g) => g.graph(),
        }
    }

    pub fn plane(&self) -> Option<&PlaneGraph> {
        match self {
            LoadedGraph::Plane(p) | LoadedGraph::PlaneGeometric(p, _) => Some(p),
            _ => None,
        }
    }

    pub fn geometric(&self) -> Option<&GeometricGraph> {
        match self {
            LoadedGraph::Geometric(g) | LoadedGraph::PlaneGeometric(_, g) => Some(g),
            _ => None,
        }
    }
}

fn edges_of(g: &AbstractGraph) -> Vec<[usize; 2]> {
    g.edges().iter().map(|&(u, v)| [u, v]).collect()
}

impl GraphFile {
    pub fn from_abstract(g: &AbstractGraph) -> Self {
        GraphFile {
            n: g.n(),
            edges: edges_of(g),
            rotation: None,
            points: None,
        }
    }

    pub fn from_plane(p: &PlaneGraph) -> Self {
        GraphFile {
            n: p.n(),
            edges: edges_of(p.graph()),
            rotation: Some(p.rotation().to_vec()),
            points: None,
        }
    }

    pub fn from_geometric(g: &GeometricGraph) -> Self {
        GraphFile {
            n: g.n(),
            edges: edges_of(g.graph()),
            rotation: None,
            points: Some(g.points().iter().map(RatPoint::as_array).collect()),
        }
    }

    pub fn into_graph(self) -> Result<LoadedGraph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = AbstractGraph::from_edges(self.n, &edges)?;
        let geo = match &self.points {
            Some(pts) => {
                let pts = pts
                    .iter()
                    .map(|p| RatPoint::new(p[0], p[1], p[2], p[3]))
                    .collect::<Result<Vec<_>>>()?;
                Some(GeometricGraph::new(pts, g.clone())?)
            }
            None => None,
        };
        let plane = match self.rotation {
            Some(rot) => Some(PlaneGraph::new(g.clone(), rot)?),
            None => None,
        };
        match (plane, geo) {
            (None, None) => Ok(LoadedGraph::Abstract(g)),
            (Some(p), None) => Ok(LoadedGraph::Plane(p)),
            (None, Some(q)) => Ok(LoadedGraph::Geometric(q)),
            (Some(p), Some(q)) => {
                let drawn = q
                    .to_plane()
                    .map_err(|_| Error::Validation("rotation given for a drawing with crossings".into()))?;
                for v in 0..p.n() {
                    if !same_cycle(&p.neighbor_rotation(v), &drawn.neighbor_rotation(v)) {
                        return Err(Error::Validation(format!(
                            "rotation at vertex {v} does not match the geometric order"
                        )));
                    }
                }
                Ok(LoadedGraph::PlaneGeometric(p, q))
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("graph file serializes");
        s.push('\n');
        s
    }
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&x| x == a[0]) {
        Some(s) => (0..a.len()).all(|i| b[(s + i) % b.len()] == a[i]),
        None => false,
    }
}

/// Reads from a path, or standard input when the path is `-`.
pub fn read_input(path: &str) -> Result<String> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path)?;
    }
    Ok(s)
}

/// Writes to a path, or standard output when the path is `-`.
pub fn write_output(path: &str, data: &str) -> Result<()> {
    if path == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(data.as_bytes())?;
        out.flush()?;
    } else {
        std::fs::write(path, data)?;
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<LoadedGraph> {
    let f: GraphFile =
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("graph file: {e}")))?;
    f.into_graph()
}

pub fn load_graph(path: &str) -> Result<LoadedGraph> {
    parse_graph(&read_input(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_plane() {
        let p = crate::graph::plane::test_k4();
        let text = GraphFile::from_plane(&p).to_json();
        let back = parse_graph(&text).unwrap();
        assert_eq!(back.plane().unwrap(), &p);
        assert_eq!(GraphFile::from_plane(back.plane().unwrap()).to_json(), text);
    }

    #[test]
    fn kind_detection() {
        let a = parse_graph(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert!(matches!(a, LoadedGraph::Abstract(_)));
        let g =
            parse_graph(r#"{"n":3,"edges":[[0,1],[1,2]],"points":[[0,1,0,1],[1,1,0,1],[0,1,1,1]]}"#).unwrap();
        assert!(matches!(g, LoadedGraph::Geometric(_)));
    }

    #[test]
    fn mismatched_rotation_rejected() {
        // triangle drawn counterclockwise 0,1,2; rotation at 0 reversed is
        // still a valid embedding of a triangle (mirror), so use a K4 drawing
        let pts = "[[0,1,0,1],[6,1,0,1],[0,1,6,1],[1,1,1,1]]";
        let edges = "[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]";
        let good = crate::graph::GeometricGraph::from_edges(
            vec![
                RatPoint::int(0, 0),
                RatPoint::int(6, 0),
                RatPoint::int(0, 6),
                RatPoint::int(1, 1),
            ],
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap()
        .to_plane()
        .unwrap();
        let rot = serde_json::to_string(good.rotation()).unwrap();
        let ok = format!(r#"{{"n":4,"edges":{edges},"rotation":{rot},"points":{pts}}}"#);
        assert!(matches!(
            parse_graph(&ok).unwrap(),
            LoadedGraph::PlaneGeometric(..)
        ));
        let mirrored: Vec<Vec<usize>> = good
            .rotation()
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let rot = serde_json::to_string(&mirrored).unwrap();
        let bad = format!(r#"{{"n":4,"edges":{edges},"rotation":{rot},"points":{pts}}}"#);
        assert!(parse_graph(&bad).is_err());
    }
}
