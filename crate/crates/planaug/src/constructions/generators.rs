use std::sync::OnceLock;

use rand::Rng;

use crate::convex::ConvexTriangulation;
use crate::error::{Error, Result};
use crate::graph::geometry::{check_general_position, IntPoints};
use crate::graph::{key, AbstractGraph, GeometricGraph, RatPoint};

// x² + y² = R² has 4·3⁸ integer solutions for this R
const CIRCLE_PRIMES: [i128; 8] = [5, 13, 17, 29, 37, 41, 53, 61];

fn radius() -> i64 {
    CIRCLE_PRIMES.iter().product::<i128>() as i64
}

fn two_squares(p: i128) -> (i128, i128) {
    (1..p)
        .find_map(|a| {
            let b = ((p - a * a) as f64).sqrt().round() as i128;
            (b > 0 && a * a + b * b == p).then_some((a, b))
        })
        .expect("prime is 1 mod 4")
}

/// Integer points on the circle of radius [`radius`], sorted by angle.
fn circle_points() -> &'static [(i64, i64)] {
    static PTS: OnceLock<Vec<(i64, i64)>> = OnceLock::new();
    PTS.get_or_init(|| {
        let mut acc: Vec<(i128, i128)> = vec![(1, 0)];
        for &p in &CIRCLE_PRIMES {
            let (a, b) = two_squares(p);
            // (a+bi)^e (a-bi)^(2-e)
            let opts = [(a * a - b * b, -2 * a * b), (p, 0), (a * a - b * b, 2 * a * b)];
            acc = acc
                .iter()
                .flat_map(|&(x, y)| opts.iter().map(move |&(u, v)| (x * u - y * v, x * v + y * u)))
                .collect();
        }
        let mut pts: Vec<(i64, i64)> = acc
            .into_iter()
            .flat_map(|(x, y)| [(x, y), (-y, x), (-x, -y), (y, -x)])
            .map(|(x, y)| (x as i64, y as i64))
            .collect();
        pts.sort_by(|a, b| {
            let ta = (a.1 as f64).atan2(a.0 as f64);
            let tb = (b.1 as f64).atan2(b.0 as f64);
            ta.total_cmp(&tb)
        });
        pts.dedup();
        pts
    })
}

/// Rational points on the unit circle close to the vertices of a regular
/// `n`-gon, counterclockwise.
pub fn regular_polygon_points(n: usize) -> Result<Vec<RatPoint>> {
    let pts = circle_points();
    if n > pts.len() {
        return Err(Error::Capacity(format!(
            "at most {} circle points, asked for {n}",
            pts.len()
        )));
    }
    let r = radius();
    let angles: Vec<f64> = pts.iter().map(|p| (p.1 as f64).atan2(p.0 as f64)).collect();
    let mut out = Vec::with_capacity(n);
    let mut last: Option<usize> = None;
    for j in 0..n {
        let target = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        let i = angles.partition_point(|&a| a < target);
        let mut pick = [i.saturating_sub(1), i.min(pts.len() - 1)]
            .into_iter()
            .min_by(|&a, &b| (angles[a] - target).abs().total_cmp(&(angles[b] - target).abs()))
            .unwrap();
        if let Some(l) = last {
            pick = pick.max(l + 1);
        }
        if pick >= pts.len() {
            return Err(Error::Capacity(format!("circle too coarse for {n} points")));
        }
        last = Some(pick);
        out.push(pick);
    }
    Ok(out
        .into_iter()
        .map(|i| RatPoint::new(pts[i].0, r, pts[i].1, r).unwrap())
        .collect())
}

/// The `k`-circulant graph: `n` points in convex position, each joined to
/// the `k` nearest on either side along the circle.
pub fn circulant(n: usize, k: usize) -> Result<GeometricGraph> {
    if n < 3 || k == 0 || 2 * k >= n {
        return Err(Error::Argument(format!(
            "circulant needs 1 <= k < n/2, got n={n} k={k}"
        )));
    }
    let mut edges = Vec::with_capacity(n * k);
    for i in 0..n {
        for d in 1..=k {
            edges.push(key(i, (i + d) % n));
        }
    }
    GeometricGraph::from_edges(regular_polygon_points(n)?, &edges)
}

/// Joins every point to its `k` predecessors and successors in x-order.
pub fn knearest_xsorted(points: Vec<RatPoint>, k: usize) -> Result<GeometricGraph> {
    let n = points.len();
    if k == 0 || n < k + 1 {
        return Err(Error::Argument(format!(
            "need n >= k + 1 and k >= 1, got n={n} k={k}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| points[a].cmp_x(&points[b]));
    if let Some(w) = order
        .windows(2)
        .find(|w| points[w[0]].cmp_x(&points[w[1]]).is_eq())
    {
        return Err(Error::Degenerate(format!(
            "points {} and {} share an x-coordinate; perturb the input",
            w[0], w[1]
        )));
    }
    let mut edges = Vec::with_capacity(n * k);
    for i in 0..n {
        for j in i + 1..(i + k + 1).min(n) {
            edges.push(key(order[i], order[j]));
        }
    }
    GeometricGraph::from_edges(points, &edges)
}

/// Random integer points with distinct x-coordinates in general position.
pub fn random_points<R: Rng>(n: usize, rng: &mut R) -> Vec<RatPoint> {
    let span = (n as i64).max(8) * 1000;
    loop {
        let mut xs: Vec<i64> = (0..n).map(|_| rng.gen_range(0..span)).collect();
        xs.sort_unstable();
        xs.dedup();
        if xs.len() < n {
            continue;
        }
        let pts: Vec<RatPoint> = xs
            .iter()
            .map(|&x| RatPoint::int(x, rng.gen_range(0..span)))
            .collect();
        if check_general_position(&IntPoints::new(&pts)).is_ok() {
            return pts;
        }
    }
}

/// Adds straight segments shortest first while they cross nothing,
/// keeping `fixed`. Integer points in general position only.
pub fn greedy_triangulation(points: Vec<RatPoint>, fixed: &[(usize, usize)]) -> Result<GeometricGraph> {
    let n = points.len();
    if points.iter().any(|p| p.x_den != 1 || p.y_den != 1) {
        return Err(Error::Argument(
            "greedy triangulation takes integer points".into(),
        ));
    }
    let ip = IntPoints::new(&points);
    let mut edges: Vec<(usize, usize)> = fixed.iter().map(|&(u, v)| key(u, v)).collect();
    let mut g = AbstractGraph::from_edges(n, &edges)?;
    let mut cand: Vec<(i128, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            let dx = (points[u].x_num - points[v].x_num) as i128;
            let dy = (points[u].y_num - points[v].y_num) as i128;
            cand.push((dx * dx + dy * dy, u, v));
        }
    }
    cand.sort_unstable();
    for (_, u, v) in cand {
        if g.has_edge(u, v) {
            continue;
        }
        let mut free = true;
        for &(a, b) in &edges {
            if ip.segments_cross(u, v, a, b)? {
                free = false;
                break;
            }
        }
        if free {
            g.add_edge(u, v)?;
            edges.push((u, v));
        }
    }
    GeometricGraph::new(points, g)
}

/// Vertex ids in [`fan_instance`].
pub const FAN_CENTER: usize = 3;

/// Triangle `0 1 2` with center `3`, plus `(n-4)/3` long edges from each
/// corner running just outside the next side and ending past the next
/// corner. The gaps are filled by [`greedy_triangulation`].
pub fn fan_instance(n: usize) -> Result<GeometricGraph> {
    if n < 7 || n % 3 != 1 {
        return Err(Error::Argument(format!(
            "fan instance needs n = 1 mod 3 and n >= 7, got {n}"
        )));
    }
    let m = ((n - 4) / 3) as i64;
    let u = 4000 * m * m;
    let corners = [(0i64, 0i64), (2000 * u, 0), (1000 * u, 1732 * u)];
    let mut pts: Vec<(i64, i64)> = corners.to_vec();
    pts.push((1000 * u, 577 * u));
    let mut fixed: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)];
    for s in 0..3 {
        let (p, q) = (corners[s], corners[(s + 1) % 3]);
        let d = (q.0 - p.0, q.1 - p.1);
        // outward normal of a counterclockwise side
        let nu = (d.1, -d.0);
        let w = (d.0 / 4 + nu.0 / 40, d.1 / 4 + nu.1 / 40);
        let bend = (nu.0 / 100, nu.1 / 100);
        for j in 1..=m {
            let x = q.0 + (j * m * w.0 + j * j * bend.0) / (m * m);
            let y = q.1 + (j * m * w.1 + j * j * bend.1) / (m * m);
            fixed.push((s, pts.len()));
            pts.push((x, y));
        }
    }
    let pts: Vec<RatPoint> = pts.into_iter().map(|(x, y)| RatPoint::int(x, y)).collect();
    greedy_triangulation(pts, &fixed)
}

/// The fan edges of [`fan_instance`]: corner `s` to its `(n-4)/3` endpoints.
pub fn fan_edges(n: usize) -> Vec<(usize, usize)> {
    let m = (n.saturating_sub(4)) / 3;
    (0..3)
        .flat_map(|s| (0..m).map(move |j| (s, 4 + s * m + j)))
        .collect()
}

/// Convex triangulation whose dual tree is a complete binary tree below a
/// root triangle of degree 3; `n = 3·2^depth`.
pub fn balanced_convex_triangulation(depth: usize) -> Result<ConvexTriangulation> {
    if !(1..=16).contains(&depth) {
        return Err(Error::Argument(format!("depth must lie in 1..=16, got {depth}")));
    }
    let l = 1usize << depth;
    let n = 3 * l;
    let mut diags = vec![(0, l), (l, 2 * l), (0, 2 * l)];
    let mut stack = vec![(0, l), (l, 2 * l), (2 * l, n)];
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo < 2 {
            continue;
        }
        let mid = (lo + hi) / 2;
        for (a, b) in [(lo, mid), (mid, hi)] {
            if b - a >= 2 {
                diags.push((a, b % n));
                stack.push((a, b));
            }
        }
    }
    ConvexTriangulation::from_diagonals(n, &diags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::five_planar_3conn_augment;
    use crate::graph::{local_crossing_number, vertex_connectivity_at_least};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn circle_is_exact() {
        let r = radius() as i128;
        let pts = circle_points();
        assert_eq!(pts.len(), 4 * 3usize.pow(8));
        assert!(pts
            .iter()
            .all(|&(x, y)| (x as i128).pow(2) + (y as i128).pow(2) == r * r));
        let p = regular_polygon_points(1000).unwrap();
        assert_eq!(p.len(), 1000);
    }

    #[test]
    fn circulant_examples() {
        let g = circulant(12, 3).unwrap();
        assert!(vertex_connectivity_at_least(g.graph(), 6).unwrap());
        assert_eq!(local_crossing_number(&g).unwrap(), 6);
        let h = circulant(6, 1).unwrap();
        assert_eq!(h.graph().m(), 6);
        assert!(vertex_connectivity_at_least(h.graph(), 2).unwrap());
        assert_eq!(local_crossing_number(&h).unwrap(), 0);
        let k5 = circulant(5, 2).unwrap();
        assert_eq!(k5.graph().m(), 10);
        assert!(vertex_connectivity_at_least(k5.graph(), 4).unwrap());
        assert_eq!(local_crossing_number(&k5).unwrap(), 2);
        assert!(circulant(6, 3).is_err());
    }

    #[test]
    fn knearest() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let pts = random_points(5, &mut rng);
        let g = knearest_xsorted(pts.clone(), 4).unwrap();
        assert_eq!(g.graph().m(), 10);
        let path = knearest_xsorted(pts, 1).unwrap();
        assert_eq!(path.graph().m(), 4);
        assert_eq!(local_crossing_number(&path).unwrap(), 0);
        let g = knearest_xsorted(random_points(50, &mut rng), 4).unwrap();
        assert!(vertex_connectivity_at_least(g.graph(), 4).unwrap());
        assert!(local_crossing_number(&g).unwrap() <= 64);
        let dup = vec![RatPoint::int(0, 0), RatPoint::int(0, 1), RatPoint::int(1, 5)];
        assert!(matches!(knearest_xsorted(dup, 1), Err(Error::Degenerate(_))));
    }

    #[test]
    fn fan_structure() {
        assert!(fan_instance(8).is_err());
        for n in [7, 10, 19, 31] {
            let g = fan_instance(n).unwrap();
            assert_eq!(g.graph().m(), 3 * n - 6);
            assert_eq!(g.graph().degree(FAN_CENTER), 3);
            let m = (n - 4) / 3;
            let fans = fan_edges(n);
            assert!(fans.iter().all(|&(u, v)| g.graph().has_edge(u, v)));
            let ip = g.int_points();
            for v in 0..n {
                if v == FAN_CENTER || g.graph().has_edge(FAN_CENTER, v) {
                    continue;
                }
                let c = fans
                    .iter()
                    .filter(|&&(a, b)| ip.segments_cross(FAN_CENTER, v, a, b).unwrap())
                    .count();
                assert!(c >= m, "n={n} v={v} crosses {c} fan edges");
            }
        }
    }

    #[test]
    fn balanced_shape() {
        for d in 1..=5 {
            let ct = balanced_convex_triangulation(d).unwrap();
            let n = ct.n();
            assert_eq!(n, 3 << d);
            let g = ct.graph();
            // triangles = n - 2 and, per dual degree, count diagonal sides
            let mut tri = 0;
            let mut leaves = 0;
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                            tri += 1;
                            let inner = [(a, b), (b, c), (a, c)]
                                .iter()
                                .filter(|&&(x, y)| y - x != 1 && !(x == 0 && y == n - 1))
                                .count();
                            if inner == 1 {
                                leaves += 1;
                            }
                        }
                    }
                }
            }
            assert_eq!(tri, n - 2);
            assert_eq!(leaves, 3 << (d - 1));
            if d <= 4 {
                let f = five_planar_3conn_augment(&ct).unwrap();
                let aug = ct.augmented(&f).unwrap();
                assert!(local_crossing_number(&aug).unwrap() <= 5);
            }
        }
        assert_eq!(balanced_convex_triangulation(1).unwrap().n(), 6);
    }
}
