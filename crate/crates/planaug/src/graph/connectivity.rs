//! Vertex connectivity by unit-capacity max-flow, plus an exhaustive oracle.
//!
//! Conventions: a graph on `n` vertices is k-connected iff `n > k` and no
//! fewer than `k` vertex deletions disconnect it. So K1 is k-connected for no
//! `k >= 1` and K2 is 1-connected only.

use std::collections::VecDeque;

use super::AbstractGraph;
use crate::error::{Error, Result};

/// Largest graph accepted by the exhaustive oracle.
pub const BRUTE_LIMIT: usize = 20;

struct SplitNetwork {
    head: Vec<usize>,
    cap: Vec<i8>,
    adj: Vec<Vec<usize>>,
}

impl SplitNetwork {
    // node 2v = v_in, 2v + 1 = v_out
    fn new(g: &AbstractGraph) -> Self {
        let n = g.n();
        let mut net = SplitNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); 2 * n],
        };
        for v in 0..n {
            net.arc(2 * v, 2 * v + 1);
        }
        for &(u, v) in g.edges() {
            net.arc(2 * u + 1, 2 * v);
            net.arc(2 * v + 1, 2 * u);
        }
        net
    }

    fn arc(&mut self, a: usize, b: usize) {
        let id = self.head.len();
        self.head.push(b);
        self.cap.push(1);
        self.adj[a].push(id);
        self.head.push(a);
        self.cap.push(0);
        self.adj[b].push(id + 1);
    }

    fn reset(&mut self) {
        for (i, c) in self.cap.iter_mut().enumerate() {
            *c = if i % 2 == 0 { 1 } else { 0 };
        }
    }

    /// Number of internally disjoint `s`-`t` paths, stopping at `cap`.
    fn local(&mut self, s: usize, t: usize, cap: usize) -> usize {
        self.reset();
        let (src, dst) = (2 * s + 1, 2 * t);
        let nodes = self.adj.len();
        let mut parent = vec![usize::MAX; nodes];
        let mut flow = 0;
        while flow < cap {
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            let mut q = VecDeque::from([src]);
            parent[src] = usize::MAX - 1;
            while let Some(x) = q.pop_front() {
                if x == dst {
                    break;
                }
                for &a in &self.adj[x] {
                    let y = self.head[a];
                    if self.cap[a] > 0 && parent[y] == usize::MAX {
                        parent[y] = a;
                        q.push_back(y);
                    }
                }
            }
            if parent[dst] == usize::MAX {
                break;
            }
            let mut y = dst;
            while y != src {
                let a = parent[y];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                y = self.head[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Flow-based test for k-connectivity.
///
/// Pivot `v` is the lowest-index vertex of minimum degree. A cut of size
/// below `k` either misses `v`, and then separates `v` from some non-neighbor,
/// or contains `v`, and then separates two non-adjacent neighbors of `v`.
pub fn vertex_connectivity_at_least(g: &AbstractGraph, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    let n = g.n();
    if n <= k {
        return Ok(false);
    }
    if g.min_degree() < k {
        return Ok(false);
    }
    if !g.is_connected() {
        return Ok(false);
    }
    if k == 1 {
        return Ok(true);
    }
    let v = (0..n).min_by_key(|&x| (g.degree(x), x)).unwrap();
    let mut net = SplitNetwork::new(g);
    let mut adj_v = vec![false; n];
    for &w in g.neighbors(v) {
        adj_v[w] = true;
    }
    for w in 0..n {
        if w != v && !adj_v[w] && net.local(v, w, k) < k {
            return Ok(false);
        }
    }
    let ns = g.neighbors(v);
    for i in 0..ns.len() {
        for j in i + 1..ns.len() {
            let (x, y) = (ns[i], ns[j]);
            if !g.has_edge(x, y) && net.local(x, y, k) < k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exhaustive oracle: removes every vertex set of size below `k`.
pub fn vertex_connectivity_bruteforce(g: &AbstractGraph, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    let n = g.n();
    if n > BRUTE_LIMIT {
        return Err(Error::Capacity(format!(
            "brute-force connectivity limited to {BRUTE_LIMIT} vertices, got {n}"
        )));
    }
    if n <= k {
        return Ok(false);
    }
    let mut nb = vec![0u32; n];
    for &(u, v) in g.edges() {
        nb[u] |= 1 << v;
        nb[v] |= 1 << u;
    }
    let all: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let connected = |removed: u32| {
        let alive = all & !removed;
        let start = alive.trailing_zeros();
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = nb[x] & alive & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == alive
    };
    // enumerate subsets of size < k in increasing size
    for size in 0..k {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mask = idx.iter().fold(0u32, |m, &i| m | 1 << i);
            if !connected(mask) {
                return Ok(false);
            }
            // next combination
            let mut i = size;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] < n - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    Ok(true)
}
