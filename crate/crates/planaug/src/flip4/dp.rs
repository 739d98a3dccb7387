use rustc_hash::{FxHashMap, FxHashSet};

use super::treedecomp::{BagKind, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{key, AbstractGraph};

/// Bag-induced target edges allowed per bag; states are subsets of them.
pub const MAX_BAG_EDGES: usize = 26;

struct Table {
    edges: Vec<(usize, usize)>,
    // state mask -> (cost, child mask it came from)
    states: FxHashMap<u64, (u32, u64)>,
}

/// Minimum edge set meeting every 3-cycle in `cycles`, by dynamic
/// programming over a nice tree decomposition of `g`.
///
/// Only edges lying on some target cycle are ever chosen. A state is the
/// set of chosen edges among those with both ends in the bag; an edge is
/// paid for when its later endpoint is introduced, and a cycle must be hit
/// as soon as its last vertex is introduced.
pub fn dp_min_triangle_hitting(
    g: &AbstractGraph,
    cycles: &[[usize; 3]],
    td: &TreeDecomposition,
) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    let mut relevant: FxHashSet<(usize, usize)> = FxHashSet::default();
    let mut at: Vec<Vec<[usize; 3]>> = vec![Vec::new(); n];
    for c in cycles {
        let [a, b, d] = *c;
        if a >= n || b >= n || d >= n || !g.has_edge(a, b) || !g.has_edge(b, d) || !g.has_edge(a, d) {
            return Err(Error::Argument(format!("{c:?} is not a 3-cycle of the graph")));
        }
        for (x, y) in [(a, b), (b, d), (a, d)] {
            relevant.insert(key(x, y));
        }
        for v in [a, b, d] {
            at[v].push(*c);
        }
    }
    if cycles.is_empty() {
        return Ok(Vec::new());
    }
    // every cycle must sit inside some bag
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (b, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            holders[v].push(b);
        }
    }
    for c in cycles {
        let inside = holders[c[0]].iter().any(|&b| {
            let bag = &td.bags[b];
            bag.binary_search(&c[1]).is_ok() && bag.binary_search(&c[2]).is_ok()
        });
        if !inside {
            return Err(Error::Validation(format!(
                "cycle {c:?} lies in no bag of the decomposition"
            )));
        }
    }

    let bag_edges = |b: usize| -> Result<Vec<(usize, usize)>> {
        let bag = &td.bags[b];
        let mut es = Vec::new();
        for i in 0..bag.len() {
            for j in i + 1..bag.len() {
                if relevant.contains(&(bag[i], bag[j])) {
                    es.push((bag[i], bag[j]));
                }
            }
        }
        if es.len() > MAX_BAG_EDGES {
            return Err(Error::Capacity(format!(
                "bag with {} target edges exceeds the limit of {MAX_BAG_EDGES}",
                es.len()
            )));
        }
        Ok(es)
    };
    let bit = |es: &[(usize, usize)], e: (usize, usize)| es.binary_search(&e).unwrap();

    let mut tables: Vec<Option<Table>> = (0..td.len()).map(|_| None).collect();
    for b in td.post_order() {
        let edges = bag_edges(b)?;
        let mut states: FxHashMap<u64, (u32, u64)> = FxHashMap::default();
        match td.kind(b) {
            BagKind::Leaf => {
                states.insert(0, (0, 0));
            }
            BagKind::Introduce(v) => {
                let ch = tables[td.children[b][0]].as_ref().unwrap();
                let remap: Vec<usize> = ch.edges.iter().map(|&e| bit(&edges, e)).collect();
                let fresh: u64 = edges
                    .iter()
                    .enumerate()
                    .filter(|(_, &(x, y))| x == v || y == v)
                    .fold(0, |m, (i, _)| m | 1 << i);
                let bag = &td.bags[b];
                let closed: Vec<u64> = at[v]
                    .iter()
                    .filter(|c| c.iter().all(|x| bag.binary_search(x).is_ok()))
                    .map(|&[a, p, q]| {
                        (1 << bit(&edges, (a, p))) | (1 << bit(&edges, (p, q))) | (1 << bit(&edges, (a, q)))
                    })
                    .collect();
                for (&m, &(c, _)) in &ch.states {
                    let mut base = 0u64;
                    for (i, &p) in remap.iter().enumerate() {
                        if m >> i & 1 == 1 {
                            base |= 1 << p;
                        }
                    }
                    // all subsets of the fresh edges
                    let mut x = fresh;
                    loop {
                        let s = base | x;
                        if closed.iter().all(|&t| t & s != 0) {
                            let cost = c + x.count_ones();
                            let slot = states.entry(s).or_insert((u32::MAX, 0));
                            if cost < slot.0 {
                                *slot = (cost, m);
                            }
                        }
                        if x == 0 {
                            break;
                        }
                        x = (x - 1) & fresh;
                    }
                }
            }
            BagKind::Forget(_) => {
                let ch = tables[td.children[b][0]].as_ref().unwrap();
                let remap: Vec<Option<usize>> =
                    ch.edges.iter().map(|&e| edges.binary_search(&e).ok()).collect();
                for (&m, &(c, _)) in &ch.states {
                    let mut s = 0u64;
                    for (i, p) in remap.iter().enumerate() {
                        if let Some(p) = p {
                            if m >> i & 1 == 1 {
                                s |= 1 << p;
                            }
                        }
                    }
                    let slot = states.entry(s).or_insert((u32::MAX, 0));
                    if c < slot.0 {
                        *slot = (c, m);
                    }
                }
            }
            BagKind::Join => {
                let l = tables[td.children[b][0]].as_ref().unwrap();
                let r = tables[td.children[b][1]].as_ref().unwrap();
                let (small, big) = if l.states.len() <= r.states.len() {
                    (l, r)
                } else {
                    (r, l)
                };
                for (&m, &(c1, _)) in &small.states {
                    if let Some(&(c2, _)) = big.states.get(&m) {
                        states.insert(m, (c1 + c2 - m.count_ones(), m));
                    }
                }
            }
        }
        tables[b] = Some(Table { edges, states });
    }

    let root = tables[td.root].as_ref().unwrap();
    let Some(&(best, _)) = root.states.get(&0) else {
        return Err(Error::Internal("no feasible state at the root".into()));
    };
    let mut chosen: FxHashSet<(usize, usize)> = FxHashSet::default();
    let mut stack = vec![(td.root, 0u64)];
    while let Some((b, m)) = stack.pop() {
        let t = tables[b].as_ref().unwrap();
        for (i, &e) in t.edges.iter().enumerate() {
            if m >> i & 1 == 1 {
                chosen.insert(e);
            }
        }
        let back = t.states[&m].1;
        for &c in &td.children[b] {
            stack.push((c, back));
        }
    }
    let mut out: Vec<(usize, usize)> = chosen.into_iter().collect();
    out.sort_unstable();
    if out.len() != best as usize {
        return Err(Error::Internal(format!(
            "reconstructed {} edges for optimum {best}",
            out.len()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flip4::exact::min_triangle_cover;
    use crate::flip4::septri::all_triangles;
    use crate::flip4::treedecomp::tree_decomposition;
    use crate::flip4::Triangulation;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hits(sol: &[(usize, usize)], cycles: &[[usize; 3]]) -> bool {
        cycles.iter().all(|&[a, b, c]| {
            sol.iter()
                .any(|&e| e == key(a, b) || e == key(b, c) || e == key(a, c))
        })
    }

    #[test]
    fn examples() {
        let g = AbstractGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let td = tree_decomposition(&g, 2).unwrap();
        assert!(dp_min_triangle_hitting(&g, &[], &td).unwrap().is_empty());
        let sol = dp_min_triangle_hitting(&g, &[[0, 1, 2]], &td).unwrap();
        assert_eq!(sol.len(), 1);
        assert!(matches!(
            dp_min_triangle_hitting(&g, &[[0, 1, 3]], &td),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn cycle_outside_every_bag_is_rejected() {
        let g = AbstractGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        // a path decomposition that ignores edge 0-2
        let td = TreeDecomposition {
            bags: vec![vec![], vec![0], vec![0, 1], vec![1], vec![1, 2], vec![2], vec![]],
            parent: vec![1, 2, 3, 4, 5, 6, crate::graph::embedding::NONE],
            root: 6,
            children: vec![vec![], vec![0], vec![1], vec![2], vec![3], vec![4], vec![5]],
        };
        assert!(matches!(
            dp_min_triangle_hitting(&g, &[[0, 1, 2]], &td),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn matches_exact_cover_on_random_planar_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..120 {
            let n = rng.gen_range(4..16);
            let t = Triangulation::random(n, rng.gen_range(0..2 * n), &mut rng).unwrap();
            let keep: Vec<(usize, usize)> = t
                .graph()
                .edges()
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(0.8))
                .collect();
            let g = AbstractGraph::from_edges(n, &keep).unwrap();
            let mut tris: Vec<[usize; 3]> = all_triangles(&t)
                .into_iter()
                .filter(|&[a, b, c]| g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c))
                .collect();
            tris.shuffle(&mut rng);
            tris.truncate(rng.gen_range(0..=tris.len()));
            let td = tree_decomposition(&g, 6).unwrap();
            let sol = dp_min_triangle_hitting(&g, &tris, &td).unwrap();
            assert!(hits(&sol, &tris));
            let ids: Vec<[usize; 3]> = tris
                .iter()
                .map(|&[a, b, c]| [key(a, b), key(b, c), key(a, c)].map(|(x, y)| x * n + y))
                .collect();
            assert_eq!(sol.len(), min_triangle_cover(&ids).unwrap().len());
        }
    }
}
