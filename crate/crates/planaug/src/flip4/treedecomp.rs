//! Tree decompositions from elimination orders, converted to nice form.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::graph::embedding::NONE;
use crate::graph::AbstractGraph;

/// Kind of a bag in a nice decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BagKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

/// Rooted tree decomposition. Bags are sorted vertex lists; `children` is
/// derived from `parent`.
#[derive(Clone, Debug)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub parent: Vec<usize>,
    pub root: usize,
    pub children: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    fn from_parts(bags: Vec<Vec<usize>>, parent: Vec<usize>, root: usize) -> Self {
        let mut children = vec![Vec::new(); bags.len()];
        for (i, &p) in parent.iter().enumerate() {
            if p != NONE {
                children[p].push(i);
            }
        }
        TreeDecomposition {
            bags,
            parent,
            root,
            children,
        }
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn kind(&self, b: usize) -> BagKind {
        let ch = &self.children[b];
        match ch.len() {
            0 => BagKind::Leaf,
            1 => {
                let (mine, theirs) = (&self.bags[b], &self.bags[ch[0]]);
                if mine.len() > theirs.len() {
                    BagKind::Introduce(*mine.iter().find(|v| !theirs.contains(v)).unwrap())
                } else {
                    BagKind::Forget(*theirs.iter().find(|v| !mine.contains(v)).unwrap())
                }
            }
            _ => BagKind::Join,
        }
    }

    /// Post-order of the bags.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![(self.root, false)];
        while let Some((b, done)) = stack.pop() {
            if done {
                out.push(b);
                continue;
            }
            stack.push((b, true));
            for &c in &self.children[b] {
                stack.push((c, false));
            }
        }
        out
    }

    /// Checks vertex and edge coverage and that every vertex's bags are
    /// connected in the tree.
    pub fn validate(&self, g: &AbstractGraph) -> Result<()> {
        let bad = |m: String| Err(Error::Internal(format!("tree decomposition: {m}")));
        let n = g.n();
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (b, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return bad(format!("vertex {v} out of range"));
                }
                holders[v].push(b);
            }
        }
        let mut roots = 0;
        for (i, &p) in self.parent.iter().enumerate() {
            if p == NONE {
                roots += 1;
                if i != self.root {
                    return bad("stray root".into());
                }
            }
        }
        if roots != 1 {
            return bad(format!("{roots} roots"));
        }
        for (v, hs) in holders.iter().enumerate() {
            if hs.is_empty() {
                return bad(format!("vertex {v} in no bag"));
            }
            // bags of v form a subtree iff exactly one of them has its parent
            // outside the set
            let set: HashSet<usize> = hs.iter().copied().collect();
            let tops = hs
                .iter()
                .filter(|&&b| self.parent[b] == NONE || !set.contains(&self.parent[b]))
                .count();
            if tops != 1 {
                return bad(format!("bags of vertex {v} are disconnected"));
            }
        }
        let sets: Vec<HashSet<usize>> = self.bags.iter().map(|b| b.iter().copied().collect()).collect();
        for &(u, v) in g.edges() {
            if !holders[u].iter().any(|&b| sets[b].contains(&v)) {
                return bad(format!("edge {u}-{v} in no bag"));
            }
        }
        Ok(())
    }

    /// Nice-form checks: at most two children, join children equal to the
    /// parent, single-child bags differing by exactly one vertex.
    pub fn is_nice(&self) -> bool {
        (0..self.len()).all(|b| {
            let ch = &self.children[b];
            match ch.len() {
                0 => true,
                1 => {
                    let (x, y) = (self.bags[b].len(), self.bags[ch[0]].len());
                    let common = self.bags[b]
                        .iter()
                        .filter(|v| self.bags[ch[0]].contains(v))
                        .count();
                    x.abs_diff(y) == 1 && common == x.min(y)
                }
                2 => ch.iter().all(|&c| self.bags[c] == self.bags[b]),
                _ => false,
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Heuristic {
    MinFill,
    MinDegree,
}

fn elimination_order(g: &AbstractGraph, h: Heuristic) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let fill = |adj: &[BTreeSet<usize>], v: usize| -> usize {
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for i in 0..ns.len() {
            for j in i + 1..ns.len() {
                if !adj[ns[i]].contains(&ns[j]) {
                    missing += 1;
                }
            }
        }
        missing
    };
    let score = |adj: &[BTreeSet<usize>], v: usize| match h {
        Heuristic::MinFill => (fill(adj, v), adj[v].len(), v),
        Heuristic::MinDegree => (adj[v].len(), 0, v),
    };
    let mut key: Vec<(usize, usize, usize)> = (0..n).map(|v| score(&adj, v)).collect();
    let mut queue: BTreeSet<(usize, usize, usize)> = key.iter().copied().collect();
    let mut order = Vec::with_capacity(n);
    while let Some(k) = queue.pop_first() {
        let v = k.2;
        order.push(v);
        let ns: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &ns {
            adj[a].remove(&v);
        }
        for i in 0..ns.len() {
            for j in i + 1..ns.len() {
                adj[ns[i]].insert(ns[j]);
                adj[ns[j]].insert(ns[i]);
            }
        }
        adj[v].clear();
        // fill values change only within distance two of v
        let mut touched: BTreeSet<usize> = ns.iter().copied().collect();
        if h == Heuristic::MinFill {
            for &a in &ns {
                touched.extend(adj[a].iter().copied());
            }
        }
        for w in touched {
            if queue.remove(&key[w]) {
                key[w] = score(&adj, w);
                queue.insert(key[w]);
            }
        }
    }
    order
}

/// Decomposition from an elimination order: the bag of `v` is `v` plus its
/// later neighbors in the filled graph, hung below the bag of the earliest
/// such neighbor. Components are chained under one root.
fn from_order(g: &AbstractGraph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = vec![Vec::new(); n];
    let mut parent = vec![NONE; n];
    for &v in order {
        let later: Vec<usize> = adj[v].iter().copied().filter(|&w| pos[w] > pos[v]).collect();
        for i in 0..later.len() {
            for j in i + 1..later.len() {
                adj[later[i]].insert(later[j]);
                adj[later[j]].insert(later[i]);
            }
        }
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags[pos[v]] = bag;
        if let Some(&p) = later.iter().min_by_key(|&&w| pos[w]) {
            parent[pos[v]] = pos[p];
        }
    }
    // join forest components under the last bag
    let root = n - 1;
    for i in 0..n.saturating_sub(1) {
        if parent[i] == NONE {
            parent[i] = root;
        }
    }
    TreeDecomposition::from_parts(bags, parent, root)
}

/// Converts to nice form: empty leaves, binary joins over copies of the
/// bag, and introduce/forget chains, with an empty root.
pub fn make_nice(td: &TreeDecomposition) -> TreeDecomposition {
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut parent: Vec<usize> = Vec::new();
    let push = |bags: &mut Vec<Vec<usize>>, parent: &mut Vec<usize>, bag: Vec<usize>, p| {
        bags.push(bag);
        parent.push(p);
        bags.len() - 1
    };
    // root chain: forget everything above the original root
    let root = push(&mut bags, &mut parent, Vec::new(), NONE);
    let mut stack = vec![(td.root, root)];
    while let Some((b, above)) = stack.pop() {
        // walk from the bag `above` (already built) down to a copy of bag b
        let mut cur = above;
        let mut have = bags[cur].clone();
        let target = &td.bags[b];
        // from `have` (parent side) to `target`: going down, first re-add
        // what the parent forgot (appears as introduce when read upwards,
        // i.e. forget nodes below), then drop what the child lacks
        for &v in have
            .clone()
            .iter()
            .filter(|v| !target.contains(v))
            .collect::<Vec<_>>()
            .iter()
        {
            have.retain(|x| x != v);
            cur = push(&mut bags, &mut parent, have.clone(), cur);
        }
        for &v in target
            .iter()
            .filter(|v| !have.contains(v))
            .collect::<Vec<_>>()
            .iter()
        {
            have.push(*v);
            have.sort_unstable();
            cur = push(&mut bags, &mut parent, have.clone(), cur);
        }
        // `cur` now holds exactly target
        let ch = &td.children[b];
        match ch.len() {
            0 => {
                // introduce chain down to an empty leaf
                let mut h = have.clone();
                while let Some(v) = h.pop() {
                    let _ = v;
                    cur = push(&mut bags, &mut parent, h.clone(), cur);
                }
            }
            1 => stack.push((ch[0], cur)),
            _ => {
                // binary join tree over copies of the bag
                let mut slots = vec![cur];
                let mut left = ch.len();
                let mut attach = Vec::new();
                while left > 0 {
                    let s = slots.pop().unwrap();
                    if left == 1 {
                        attach.push(s);
                        left -= 1;
                    } else {
                        let a = push(&mut bags, &mut parent, have.clone(), s);
                        let c = push(&mut bags, &mut parent, have.clone(), s);
                        attach.push(a);
                        slots.push(c);
                        left -= 1;
                    }
                }
                for (&c, &slot) in ch.iter().zip(&attach) {
                    stack.push((c, slot));
                }
            }
        }
    }
    TreeDecomposition::from_parts(bags, parent, root)
}

/// Nice tree decomposition by min-fill elimination. If min-fill exceeds
/// `width_hint`, a min-degree order is tried and the narrower one kept.
pub fn tree_decomposition(g: &AbstractGraph, width_hint: usize) -> Result<TreeDecomposition> {
    if g.n() == 0 {
        return Ok(TreeDecomposition::from_parts(vec![Vec::new()], vec![NONE], 0));
    }
    let mut td = from_order(g, &elimination_order(g, Heuristic::MinFill));
    if td.width() > width_hint {
        let alt = from_order(g, &elimination_order(g, Heuristic::MinDegree));
        if alt.width() < td.width() {
            td = alt;
        }
    }
    if td.validate(g).is_err() {
        let order: Vec<usize> = (0..g.n()).collect();
        td = from_order(g, &order);
    }
    td.validate(g)?;
    let nice = make_nice(&td);
    nice.validate(g)?;
    if !nice.is_nice() {
        return Err(Error::Internal("nice conversion failed".into()));
    }
    Ok(nice)
}
