use super::septri::SeparatingTriangleIndex;
use super::Triangulation;
use crate::error::{Error, Result};

/// Size guards for [`exact_hitting_set`]: it runs when either holds.
pub const EXACT_MAX_TRIANGLES: usize = 20;
pub const EXACT_MAX_VERTICES: usize = 40;

/// Minimum edge set meeting every separating triangle, by branch and bound.
///
/// Branches on the three edges of the first uncovered triangle; the bound is
/// a greedy packing of pairwise edge-disjoint uncovered triangles.
pub fn exact_hitting_set(t: &Triangulation) -> Result<Vec<(usize, usize)>> {
    let idx = SeparatingTriangleIndex::build(t);
    let k = idx.len();
    if k > EXACT_MAX_TRIANGLES && t.n() > EXACT_MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "exact hitting set limited to {EXACT_MAX_TRIANGLES} separating triangles or \
             {EXACT_MAX_VERTICES} vertices, got {k} and {}",
            t.n()
        )));
    }
    let tris: Vec<[usize; 3]> = idx.live_ids().map(|i| idx.edges_of(i)).collect();
    let edges = min_triangle_cover(&tris)?;
    Ok(edges.into_iter().map(|e| t.endpoints(e)).collect())
}

/// Minimum set of ids hitting each triple (ids are arbitrary labels).
pub(crate) fn min_triangle_cover(tris: &[[usize; 3]]) -> Result<Vec<usize>> {
    let k = tris.len();
    if k > 128 {
        return Err(Error::Capacity(format!(
            "{k} triangles exceed the 128-bit search state"
        )));
    }
    let mut labels: Vec<usize> = tris.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let cover: Vec<u128> = labels
        .iter()
        .map(|&l| {
            tris.iter()
                .enumerate()
                .filter(|(_, t)| t.contains(&l))
                .fold(0u128, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let local: Vec<[usize; 3]> = tris
        .iter()
        .map(|t| t.map(|l| labels.binary_search(&l).unwrap()))
        .collect();
    let all: u128 = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
    let mut s = Search {
        local: &local,
        cover: &cover,
        best: Vec::new(),
        cur: Vec::new(),
    };
    // greedy upper bound
    let mut left = all;
    while left != 0 {
        let l = (0..cover.len())
            .max_by_key(|&l| ((cover[l] & left).count_ones(), usize::MAX - l))
            .unwrap();
        s.best.push(l);
        left &= !cover[l];
    }
    s.rec(all);
    let mut out: Vec<usize> = s.best.iter().map(|&l| labels[l]).collect();
    out.sort_unstable();
    Ok(out)
}

struct Search<'a> {
    local: &'a [[usize; 3]],
    cover: &'a [u128],
    best: Vec<usize>,
    cur: Vec<usize>,
}

impl Search<'_> {
    fn packing_bound(&self, mut left: u128) -> usize {
        let mut used: Vec<usize> = Vec::new();
        let mut lb = 0;
        while left != 0 {
            let i = left.trailing_zeros() as usize;
            left &= left - 1;
            let t = self.local[i];
            if t.iter().all(|e| !used.contains(e)) {
                used.extend_from_slice(&t);
                lb += 1;
            }
        }
        lb
    }

    fn rec(&mut self, left: u128) {
        if left == 0 {
            if self.cur.len() < self.best.len() {
                self.best = self.cur.clone();
            }
            return;
        }
        if self.cur.len() + self.packing_bound(left) >= self.best.len() {
            return;
        }
        let i = left.trailing_zeros() as usize;
        let mut opts = self.local[i];
        opts.sort_by_key(|&e| std::cmp::Reverse((self.cover[e] & left).count_ones()));
        for e in opts {
            self.cur.push(e);
            self.rec(left & !self.cover[e]);
            self.cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flip4::septri::separating_triangles_of;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Subsets of the candidate labels by increasing size.
    pub(crate) fn brute_cover(tris: &[[usize; 3]]) -> usize {
        let mut labels: Vec<usize> = tris.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let m = labels.len();
        assert!(m <= 20);
        (0u32..1 << m)
            .filter(|mask| {
                tris.iter().all(|t| {
                    t.iter()
                        .any(|l| mask >> labels.binary_search(l).unwrap() & 1 == 1)
                })
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert!(exact_hitting_set(&Triangulation::octahedron())
            .unwrap()
            .is_empty());
        let s = crate::flip4::triangulation::tests::stack5();
        let h = exact_hitting_set(&s).unwrap();
        assert_eq!(h.len(), 1);
        // disjoint stacks need one edge each
        let mut t = Triangulation::octahedron();
        for (u, v) in [(0, 1), (5, 3)] {
            let h = t.embedding().half_edge(u, v).unwrap();
            t.stack_into(h);
        }
        assert_eq!(exact_hitting_set(&t).unwrap().len(), 2);
    }

    #[test]
    fn matches_subset_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut checked = 0;
        while checked < 60 {
            let n = rng.gen_range(6..14);
            let t = Triangulation::random(n, rng.gen_range(0..4), &mut rng).unwrap();
            let idx = SeparatingTriangleIndex::build(&t);
            let tris: Vec<[usize; 3]> = idx.live_ids().map(|i| idx.edges_of(i)).collect();
            let labels: std::collections::BTreeSet<usize> = tris.iter().flatten().copied().collect();
            if labels.len() > 20 {
                continue;
            }
            let h = exact_hitting_set(&t).unwrap();
            assert_eq!(h.len(), if tris.is_empty() { 0 } else { brute_cover(&tris) });
            let sep = separating_triangles_of(&t);
            assert!(sep
                .iter()
                .all(|s| h.iter().any(|&(u, v)| s.contains(&u) && s.contains(&v))));
            checked += 1;
        }
    }
}
