//! Triangulations of points in convex position.
//!
//! Vertices are addressed by their graph ids in the public API. Internally
//! everything runs on hull positions `0..n` in counterclockwise order, where
//! two chords cross iff their endpoints interleave.

pub mod brute;
pub mod dp;

use std::cmp::Ordering;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{key, AbstractGraph, GeometricGraph, RatPoint};

pub use brute::brute_min_augment;
pub use dp::dp_min_augment_3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Hull,
    /// A diagonal with more than one point on each side.
    Diagonal,
    /// A diagonal with exactly one point on one side.
    Ear,
}

/// Straight-line triangulation of a strictly convex point set.
#[derive(Clone, Debug)]
pub struct ConvexTriangulation {
    geo: GeometricGraph,
    hull: Vec<usize>,
    pos: Vec<usize>,
}

/// `n` points on the parabola `y = x²`, counterclockwise by index.
pub fn parabola_points(n: usize) -> Vec<RatPoint> {
    (0..n as i64).map(|i| RatPoint::int(i, i * i)).collect()
}

impl ConvexTriangulation {
    pub fn new(geo: GeometricGraph) -> Result<Self> {
        let n = geo.n();
        if n < 3 {
            return Err(Error::Validation(format!("need at least 3 points, got {n}")));
        }
        let ip = geo.int_points();
        let start = (0..n)
            .min_by(|&a, &b| {
                let (pa, pb) = (&geo.points()[a], &geo.points()[b]);
                pa.cmp_y(pb).then(pa.cmp_x(pb))
            })
            .unwrap();
        let mut hull: Vec<usize> = (0..n).filter(|&v| v != start).collect();
        hull.sort_by(|&a, &b| ip.cmp_angle(start, a, b));
        hull.insert(0, start);
        for i in 0..n {
            let (a, b, c) = (hull[i], hull[(i + 1) % n], hull[(i + 2) % n]);
            if ip.orient(a, b, c) != Ordering::Greater {
                return Err(Error::Validation(format!(
                    "points are not in strictly convex position at {a}, {b}, {c}"
                )));
            }
        }
        let mut pos = vec![0; n];
        for (i, &v) in hull.iter().enumerate() {
            pos[v] = i;
        }
        let g = geo.graph();
        if g.m() != 2 * n - 3 {
            return Err(Error::Validation(format!(
                "{} edges; a triangulation of {n} convex points has {}",
                g.m(),
                2 * n - 3
            )));
        }
        for i in 0..n {
            let (a, b) = (hull[i], hull[(i + 1) % n]);
            if !g.has_edge(a, b) {
                return Err(Error::Validation(format!("hull edge {a}-{b} missing")));
            }
        }
        let ct = ConvexTriangulation { geo, hull, pos };
        let es: Vec<(usize, usize)> = ct.pos_edges();
        for i in 0..es.len() {
            for j in i + 1..es.len() {
                if interleave(es[i], es[j]) {
                    return Err(Error::Validation("edges cross".into()));
                }
            }
        }
        Ok(ct)
    }

    /// Triangulation on [`parabola_points`] with the given diagonals
    /// (vertex ids equal hull positions).
    pub fn from_diagonals(n: usize, diagonals: &[(usize, usize)]) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| key(i, (i + 1) % n)).collect();
        edges.extend(diagonals.iter().map(|&(u, v)| key(u, v)));
        ConvexTriangulation::new(GeometricGraph::from_edges(parabola_points(n), &edges)?)
    }

    /// Fan from vertex 0.
    pub fn fan(n: usize) -> Result<Self> {
        let d: Vec<(usize, usize)> = (2..n.saturating_sub(1)).map(|i| (0, i)).collect();
        ConvexTriangulation::from_diagonals(n, &d)
    }

    /// Zigzag: diagonals alternate between the two ends of the polygon.
    pub fn zigzag(n: usize) -> Result<Self> {
        let (mut lo, mut hi) = (0usize, n - 1);
        let mut d = Vec::new();
        let mut left = true;
        while hi - lo > 2 {
            if left {
                d.push((lo, hi - 1));
                hi -= 1;
            } else {
                d.push((lo + 1, hi));
                lo += 1;
            }
            left = !left;
        }
        ConvexTriangulation::from_diagonals(n, &d)
    }

    /// Uniform random split points, recursively.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Result<Self> {
        let mut d = Vec::new();
        let mut stack = vec![(0usize, n - 1)];
        while let Some((lo, hi)) = stack.pop() {
            if hi - lo < 2 {
                continue;
            }
            let c = rng.gen_range(lo + 1..hi);
            for (x, y) in [(lo, c), (c, hi)] {
                if y - x >= 2 {
                    d.push((x, y));
                    stack.push((x, y));
                }
            }
        }
        ConvexTriangulation::from_diagonals(n, &d)
    }

    /// Every triangulation of the convex `n`-gon on [`parabola_points`].
    pub fn all(n: usize) -> Result<Vec<Self>> {
        fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
            if hi - lo < 2 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for c in lo + 1..hi {
                let l = rec(lo, c);
                let r = rec(c, hi);
                for a in &l {
                    for b in &r {
                        let mut d = a.clone();
                        d.extend(b);
                        if c - lo >= 2 {
                            d.push((lo, c));
                        }
                        if hi - c >= 2 {
                            d.push((c, hi));
                        }
                        out.push(d);
                    }
                }
            }
            out
        }
        rec(0, n - 1)
            .iter()
            .map(|d| ConvexTriangulation::from_diagonals(n, d))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.hull.len()
    }

    pub fn geometry(&self) -> &GeometricGraph {
        &self.geo
    }

    pub fn graph(&self) -> &AbstractGraph {
        self.geo.graph()
    }

    /// Vertex ids in counterclockwise hull order.
    pub fn hull(&self) -> &[usize] {
        &self.hull
    }

    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub(crate) fn pos_edges(&self) -> Vec<(usize, usize)> {
        self.graph()
            .edges()
            .iter()
            .map(|&(u, v)| key(self.pos[u], self.pos[v]))
            .collect()
    }

    /// Diagonals in hull positions.
    pub(crate) fn pos_diagonals(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        self.pos_edges()
            .into_iter()
            .filter(|&(a, b)| !is_hull_pair(n, a, b))
            .collect()
    }

    pub(crate) fn to_vertices(&self, f: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = f.iter().map(|&(a, b)| key(self.hull[a], self.hull[b])).collect();
        out.sort_unstable();
        out
    }

    /// Non-edges in hull positions.
    pub(crate) fn pos_chords(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let es: std::collections::HashSet<(usize, usize)> = self.pos_edges().into_iter().collect();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !es.contains(&(a, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The graph with `f` added, as a drawing.
    pub fn augmented(&self, f: &[(usize, usize)]) -> Result<GeometricGraph> {
        self.geo.with_edges(f)
    }
}

pub(crate) fn is_hull_pair(n: usize, a: usize, b: usize) -> bool {
    let (a, b) = key(a, b);
    b == a + 1 || (a == 0 && b == n - 1)
}

/// Chords in hull positions cross iff their endpoints interleave.
pub(crate) fn interleave(e: (usize, usize), f: (usize, usize)) -> bool {
    let (a, b) = key(e.0, e.1);
    let (c, d) = key(f.0, f.1);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Labels each edge, indexed like `graph().edges()`, by exact counting of
/// the points strictly on each side of its supporting line.
pub fn classify_edges(ct: &ConvexTriangulation) -> Vec<EdgeClass> {
    let ip = ct.geometry().int_points();
    let n = ct.n();
    ct.graph()
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (mut left, mut right) = (0, 0);
            for w in 0..n {
                match ip.orient(u, v, w) {
                    Ordering::Greater => left += 1,
                    Ordering::Less => right += 1,
                    Ordering::Equal => {}
                }
            }
            if left == 0 || right == 0 {
                EdgeClass::Hull
            } else if left == 1 || right == 1 {
                EdgeClass::Ear
            } else {
                EdgeClass::Diagonal
            }
        })
        .collect()
}

fn check_new_edges(ct: &ConvexTriangulation, f: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    let n = ct.n();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(f.len());
    for &(u, v) in f {
        if u >= n || v >= n || u == v {
            return Err(Error::Argument(format!("{u}-{v} is not a chord")));
        }
        if ct.graph().has_edge(u, v) {
            return Err(Error::Argument(format!("{u}-{v} is already an edge")));
        }
        if !seen.insert(key(u, v)) {
            return Err(Error::Argument(format!("{u}-{v} listed twice")));
        }
        out.push((u, v));
    }
    Ok(out)
}

/// Decides whether `E ∪ F` is `k`-connected (`k` = 3 or 4) from crossings
/// alone: for `k = 3` every diagonal crosses an edge of `F`; for `k = 4`
/// every diagonal crosses two edges of `F`, and two disjoint ones unless it
/// is an ear.
pub fn check_characterization(ct: &ConvexTriangulation, f: &[(usize, usize)], k: usize) -> Result<bool> {
    if k != 3 && k != 4 {
        return Err(Error::Argument(format!("k must be 3 or 4, got {k}")));
    }
    let f = check_new_edges(ct, f)?;
    let ip = ct.geometry().int_points();
    let classes = classify_edges(ct);
    for (&(a, b), class) in ct.graph().edges().iter().zip(classes) {
        if class == EdgeClass::Hull {
            continue;
        }
        let crossing: Vec<(usize, usize)> = f
            .iter()
            .copied()
            .filter(|&(u, v)| ip.segments_cross(a, b, u, v).unwrap_or(false))
            .collect();
        let ok = match k {
            3 => !crossing.is_empty(),
            _ => {
                crossing.len() >= 2
                    && (class == EdgeClass::Ear
                        || crossing.iter().enumerate().any(|(i, &(u, v))| {
                            crossing[i + 1..]
                                .iter()
                                .any(|&(x, y)| u != x && u != y && v != x && v != y)
                        }))
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact `k`-connectivity test for `E ∪ F` using the structure of `E`: a
/// triangulated polygon is chordal, so every vertex cut of `E ∪ F` contains
/// the two ends of a diagonal. Only those cuts, padded with up to `k - 3`
/// further vertices, are tried.
pub fn check_by_separators(ct: &ConvexTriangulation, f: &[(usize, usize)], k: usize) -> Result<bool> {
    if k != 3 && k != 4 {
        return Err(Error::Argument(format!("k must be 3 or 4, got {k}")));
    }
    let f = check_new_edges(ct, f)?;
    let n = ct.n();
    if n <= k {
        return Ok(false);
    }
    let g = ct.graph().with_edges(&f)?;
    let connected_without = |cut: &[usize]| {
        let start = (0..n).find(|v| !cut.contains(v)).unwrap();
        let mut seen = vec![false; n];
        for &c in cut {
            seen[c] = true;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == n - cut.len()
    };
    for (a, b) in ct.pos_diagonals() {
        let (a, b) = (ct.hull[a], ct.hull[b]);
        if k == 3 {
            if !connected_without(&[a, b]) {
                return Ok(false);
            }
        } else if (0..n).any(|x| x != a && x != b && !connected_without(&[a, b, x])) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One new edge per diagonal `ab`: the segment joining the apexes of the
/// two triangles on `ab`. Each old edge is crossed at most once and the
/// result is 3-connected with local crossing number at most 5.
pub fn five_planar_3conn_augment(ct: &ConvexTriangulation) -> Result<Vec<(usize, usize)>> {
    let n = ct.n();
    if n < 4 {
        return Err(Error::Argument(format!("need n >= 4, got {n}")));
    }
    let g = ct.graph();
    let mut out = Vec::with_capacity(n - 3);
    for (a, b) in ct.pos_diagonals() {
        let (va, vb) = (ct.hull[a], ct.hull[b]);
        // apexes: common neighbors on either side
        let apex = |c: &usize| g.has_edge(va, ct.hull[*c]) && g.has_edge(vb, ct.hull[*c]);
        let c = (a + 1..b)
            .find(apex)
            .ok_or_else(|| Error::Internal("no apex".into()))?;
        let d = (b + 1..n)
            .chain(0..a)
            .find(apex)
            .ok_or_else(|| Error::Internal("no apex".into()))?;
        out.push((c, d));
    }
    Ok(ct.to_vertices(&out))
}
