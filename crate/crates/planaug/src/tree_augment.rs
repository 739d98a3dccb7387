//! Minimum 3-connected plane augmentation of plane trees.
//!
//! The tree is reduced leaf-group by leaf-group until four vertices remain,
//! recording each reduction. The answer is rebuilt from K4 by replaying the
//! records backwards, each replay being a short sequence of subdivisions and
//! edge insertions in a face. Every step is O(1), so the whole run is linear.
//!
//! Orientation: rotations are counterclockwise. For a temporary leaf `w`
//! hanging off `v`, `x` is the new-edge neighbor of `w` on the face that holds
//! the corner of `v` just before `w`, and `y` the one on the face just after.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::embedding::{Embedding, NONE};
use crate::graph::{degree_histogram, vertex_connectivity_bruteforce, AbstractGraph, PlaneGraph};

/// The augmented graph and the inserted edges.
#[derive(Clone, Debug)]
pub struct AugmentationResult {
    pub graph: PlaneGraph,
    pub new_edges: Vec<(usize, usize)>,
}

/// `ceil((2 n1 + n2) / 2)`: every vertex of a 3-connected graph has degree 3.
pub fn tree_lower_bound(t: &PlaneGraph) -> Result<usize> {
    check_tree(t)?;
    let h = degree_histogram(t.graph());
    let n1 = h.get(&1).copied().unwrap_or(0);
    let n2 = h.get(&2).copied().unwrap_or(0);
    Ok((2 * n1 + n2).div_ceil(2))
}

fn check_tree(t: &PlaneGraph) -> Result<()> {
    let n = t.n();
    if n < 4 {
        return Err(Error::Argument(format!(
            "tree needs at least 4 vertices, got {n}"
        )));
    }
    if t.graph().m() != n - 1 || !t.graph().is_connected() {
        return Err(Error::Validation("input is not a tree".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
enum Step {
    /// Pruned a degree-2 vertex `v` by contracting `v u`.
    Contract { v: usize, u: usize, t: usize },
    /// Consecutive leaves `a`, `b` (b counterclockwise after a) at `v`.
    Leaves {
        v: usize,
        p: usize,
        a: usize,
        b: usize,
        w: usize,
    },
    /// Legs `a`, `b` with leaves `a2`, `b2`, optional leaf `c` between.
    Legs {
        v: usize,
        p: usize,
        a: usize,
        a2: usize,
        b: usize,
        b2: usize,
        c: usize,
        w: usize,
    },
    /// Degree-2 `v` with leg `b` and its leaf `a`.
    Leg { v: usize, p: usize, a: usize, b: usize },
    /// One leg `a` (leaf `a2`) plus leaves `after`/`before` around `a` at `v`.
    Mixed {
        v: usize,
        p: usize,
        a: usize,
        a2: usize,
        after: usize,
        before: usize,
        w: usize,
    },
}

struct Reducer {
    t: Embedding,
    alive: usize,
    parent: Vec<usize>,
    steps: Vec<Step>,
}

impl Reducer {
    fn head(&self, h: usize) -> usize {
        self.t.head(h)
    }

    fn is_leaf(&self, x: usize) -> bool {
        self.t.degree(x) == 1
    }

    /// Leaf hanging off `x` when `x` is a leg seen from `from`.
    fn leg_leaf(&self, x: usize, from: usize) -> Option<usize> {
        if self.t.degree(x) != 2 {
            return None;
        }
        let f = self.t.first(x);
        let o = if self.head(f) == from {
            self.t.ccw_next(f)
        } else {
            f
        };
        let other = self.head(o);
        (other != from && self.t.degree(other) == 1).then_some(other)
    }

    fn is_leg(&self, x: usize) -> bool {
        if self.t.degree(x) != 2 {
            return false;
        }
        let f = self.t.first(x);
        self.is_leaf(self.head(f)) || self.is_leaf(self.head(self.t.ccw_next(f)))
    }

    fn remove_edge_between(&mut self, h: usize) {
        self.t.remove_edge(h / 2);
    }

    /// Inserts a temporary leaf at `v` after half-edge `after`.
    fn add_leaf(&mut self, v: usize, after: usize) -> usize {
        let w = self.t.add_vertex();
        self.parent.push(v);
        self.t.insert_edge(v, after, w, NONE);
        self.alive += 1;
        w
    }

    fn sole_neighbor(&self, v: usize) -> usize {
        self.head(self.t.first(v))
    }

    fn process(&mut self, v: usize) -> Result<()> {
        loop {
            if self.alive <= 4 {
                return Ok(());
            }
            let d = self.t.degree(v);
            if d <= 1 || self.is_leg(v) {
                return Ok(());
            }
            if d == 2 {
                let f = self.t.first(v);
                let cand = [f, self.t.ccw_next(f)];
                let hit = cand.iter().find_map(|&h| {
                    let b = self.head(h);
                    self.leg_leaf(b, v).map(|a| (h, a, b))
                });
                let (h, a, b) = hit
                    .ok_or_else(|| Error::Internal(format!("degree-2 vertex {v} without a leg neighbor")))?;
                let p = self.head(self.t.ccw_next(h));
                self.remove_edge_between(h);
                let ha = self.t.first(b);
                self.remove_edge_between(ha);
                self.alive -= 2;
                self.check_size()?;
                self.steps.push(Step::Leg { v, p, a, b });
                continue;
            }
            if !self.try_pairs(v)? {
                self.mixed(v, self.parent[v])?;
            }
        }
    }

    fn check_size(&self) -> Result<()> {
        if self.alive < 4 {
            return Err(Error::Internal("reduction left fewer than 4 vertices".into()));
        }
        Ok(())
    }

    /// Scans the rotation at `v` for Case 1 or Case 2 patterns and applies
    /// the first one found. Returns false if none exists.
    fn try_pairs(&mut self, v: usize) -> Result<bool> {
        let p = self.parent[v];
        let start = self.t.first(v);
        let mut h = start;
        let mut seen = 0;
        let deg = self.t.degree(v);
        while seen < deg {
            let a = self.head(h);
            let h2 = self.t.ccw_next(h);
            let b = self.head(h2);
            if a != p && b != p {
                if self.is_leaf(a) && self.is_leaf(b) {
                    self.apply_leaves(v, h, h2);
                    return Ok(true);
                }
                if let Some(a2) = self.leg_leaf(a, v) {
                    if let Some(b2) = self.leg_leaf(b, v) {
                        if self.collapses(v, 2) {
                            self.mixed(v, a)?;
                            return Ok(true);
                        }
                        self.apply_legs(v, h, NONE, h2, a2, b2)?;
                        return Ok(true);
                    }
                    let h3 = self.t.ccw_next(h2);
                    let bb = self.head(h3);
                    if deg >= 4 && self.is_leaf(b) && bb != p {
                        if let Some(b2) = self.leg_leaf(bb, v) {
                            if self.collapses(v, 3) {
                                self.mixed(v, a)?;
                                return Ok(true);
                            }
                            self.apply_legs(v, h, h2, h3, a2, b2)?;
                            return Ok(true);
                        }
                    }
                }
            }
            h = h2;
            seen += 1;
        }
        Ok(false)
    }

    fn apply_leaves(&mut self, v: usize, ha: usize, hb: usize) {
        let (a, b) = (self.head(ha), self.head(hb));
        let before = self.t.ccw_prev(ha);
        self.remove_edge_between(ha);
        self.remove_edge_between(hb);
        self.alive -= 2;
        let (w, p) = if self.t.degree(v) >= 2 {
            (self.add_leaf(v, before), NONE)
        } else {
            (NONE, self.sole_neighbor(v))
        };
        self.steps.push(Step::Leaves { v, p, a, b, w });
    }

    fn apply_legs(&mut self, v: usize, ha: usize, hc: usize, hb: usize, a2: usize, b2: usize) -> Result<()> {
        let (a, b) = (self.head(ha), self.head(hb));
        let c = if hc == NONE { NONE } else { self.head(hc) };
        let before = self.t.ccw_prev(ha);
        for h in [ha, hb] {
            let x = self.head(h);
            let leaf_edge = self.t.first(if x == a { a2 } else { b2 });
            self.remove_edge_between(leaf_edge);
            self.remove_edge_between(h);
        }
        self.alive -= 4;
        if hc != NONE {
            self.remove_edge_between(hc);
            self.alive -= 1;
        }
        let (w, p) = if self.t.degree(v) >= 2 {
            (self.add_leaf(v, before), NONE)
        } else {
            (NONE, self.sole_neighbor(v))
        };
        self.check_size()?;
        self.steps.push(Step::Legs {
            v,
            p,
            a,
            a2,
            b,
            b2,
            c,
            w,
        });
        Ok(())
    }

    /// Whether removing `k` branches at `v` would leave only `v` and its
    /// parent. Then one leg is used as the parent in Case 4 instead.
    fn collapses(&self, v: usize, k: usize) -> bool {
        let p = self.parent[v];
        self.t.degree(v) == k + 1 && self.is_leaf(p)
    }

    fn mixed(&mut self, v: usize, p: usize) -> Result<()> {
        let d = self.t.degree(v);
        let fail = || Error::Internal(format!("no reduction applies at vertex {v}"));
        if p == NONE || !(3..=4).contains(&d) {
            return Err(fail());
        }
        let rot = self.t.rotation(v);
        let mut leg = None;
        for &h in &rot {
            let x = self.head(h);
            if x == p {
                continue;
            }
            if let Some(l) = self.leg_leaf(x, v) {
                if leg.is_some() {
                    return Err(fail());
                }
                leg = Some((h, l));
            } else if !self.is_leaf(x) {
                return Err(fail());
            }
        }
        let (ha, a2) = leg.ok_or_else(fail)?;
        let a = self.head(ha);
        let nx = self.head(self.t.ccw_next(ha));
        let pv = self.head(self.t.ccw_prev(ha));
        let after = if nx != p { nx } else { NONE };
        let before = if pv != p && pv != nx { pv } else { NONE };
        let before = if d == 3 && after != NONE { NONE } else { before };
        let hp = rot.iter().copied().find(|&h| self.head(h) == p).unwrap();
        for &h in &rot {
            if h != hp {
                let x = self.head(h);
                if x == a {
                    let leaf_edge = self.t.first(a2);
                    self.remove_edge_between(leaf_edge);
                }
                self.remove_edge_between(h);
            }
        }
        self.alive -= d;
        let w = self.add_leaf(v, hp);
        self.check_size()?;
        self.steps.push(Step::Mixed {
            v,
            p,
            a,
            a2,
            after,
            before,
            w,
        });
        Ok(())
    }
}

/// Builder state for the reconstruction phase.
struct Builder {
    g: Embedding,
}

impl Builder {
    fn he(&self, from: usize, to: usize) -> usize {
        self.g
            .half_edge(from, to)
            .unwrap_or_else(|| panic!("expected edge {from}-{to} during rebuild"))
    }

    /// Subdivides along half-edge `h` and names the new vertex `name`.
    fn split(&mut self, h: usize, name: usize) {
        let (m, _) = self.g.subdivide(h);
        self.g.rename_vertex(m, name);
    }

    /// Inserts edge from `origin(h)` to `target` through the face left of `h`,
    /// locating `target` within a few steps either way around the face.
    fn connect(&mut self, h: usize, target: usize) -> usize {
        const STEPS: usize = 8;
        let u = self.g.origin(h);
        let mut fwd = h;
        let mut bwd = h;
        for _ in 0..STEPS {
            fwd = self.g.face_next(fwd);
            if self.g.origin(fwd) == target {
                return self.g.insert_edge(u, h, target, fwd);
            }
            bwd = self.g.ccw_next(bwd) ^ 1;
            if self.g.origin(bwd) == target {
                return self.g.insert_edge(u, h, target, bwd);
            }
        }
        panic!("vertex {target} not near {u} on the expected face");
    }

    fn base_k4(&mut self, tree: &Embedding, verts: &[usize]) {
        let s = *verts
            .iter()
            .max_by_key(|&&x| (tree.degree(x), usize::MAX - x))
            .unwrap();
        let mut ls: Vec<usize> = tree.neighbors(s);
        for &x in verts {
            if x != s && !ls.contains(&x) {
                ls.push(x);
            }
        }
        let (l1, l2, l3) = (ls[0], ls[1], ls[2]);
        let rot = [
            (s, [l1, l2, l3]),
            (l1, [l2, s, l3]),
            (l2, [l3, s, l1]),
            (l3, [l1, s, l2]),
        ];
        let mut placed: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let order = [(s, l1), (s, l2), (s, l3), (l1, l2), (l2, l3), (l3, l1)];
        let rot_of = |x: usize| rot.iter().find(|r| r.0 == x).unwrap().1;
        for (u, v) in order {
            let au = self.anchor(&placed, rot_of(u), u, v);
            let av = self.anchor(&placed, rot_of(v), v, u);
            let e = self.g.insert_edge(u, au, v, av);
            placed.entry(u).or_default().push(2 * e);
            placed.entry(v).or_default().push(2 * e + 1);
        }
        debug_assert_eq!(self.g.edge_count(), 6);
    }

    /// Half-edge at `u` after which the edge to `v` goes, given the target
    /// cyclic order `want` and the half-edges already placed at `u`.
    fn anchor(&self, placed: &BTreeMap<usize, Vec<usize>>, want: [usize; 3], u: usize, v: usize) -> usize {
        let have = match placed.get(&u) {
            Some(h) if !h.is_empty() => h,
            _ => return NONE,
        };
        let pos = want.iter().position(|&x| x == v).unwrap();
        // walk backwards through the wanted order to the nearest placed one
        for k in 1..3 {
            let prev = want[(pos + 3 - k) % 3];
            if let Some(&h) = have.iter().find(|&&h| self.g.head(h) == prev) {
                return h;
            }
        }
        unreachable!()
    }

    fn undo(&mut self, step: Step) {
        match step {
            Step::Contract { v, u, t } => {
                let h = if self.g.degree(u) <= self.g.degree(t) {
                    self.he(u, t)
                } else {
                    self.he(t, u) ^ 1
                };
                self.split(h, v);
                let hvt = self.he(v, t);
                let hts = self.g.face_next(hvt);
                let s = self.g.head(hts);
                debug_assert!(s != u && s != v);
                let hsr = self.g.face_next(hts);
                self.g.insert_edge(v, hvt, s, hsr);
            }
            Step::Leaves { v, p, a, b, w } => {
                if w != NONE {
                    self.g.rename_vertex(w, a);
                    let hav = self.he(a, v);
                    self.split(self.g.ccw_prev(hav), b);
                    let hva = self.he(v, a);
                    self.connect(hva, b);
                } else {
                    let hvp = self.he(v, p);
                    let s1 = self.g.ccw_next(hvp);
                    let s2 = self.g.ccw_next(s1);
                    self.split(s1, a);
                    self.split(s2, b);
                    let hva = self.he(v, a);
                    self.connect(self.g.face_next(hva), b);
                }
            }
            Step::Legs {
                v,
                p,
                a,
                a2,
                b,
                b2,
                c,
                w,
            } => {
                if w != NONE {
                    self.g.rename_vertex(w, a);
                    let hav = self.he(a, v);
                    let hx = self.g.ccw_next(hav);
                    let hy = self.g.ccw_prev(hav);
                    self.split(hx, a2);
                    self.split(hy, b2);
                    let haa2 = self.he(a, a2);
                    self.connect(self.g.face_next(haa2), b2);
                    let hab2 = self.he(a, b2);
                    self.split(hab2, b);
                    let hva = self.he(v, a);
                    self.connect(hva, b);
                } else {
                    let hvp = self.he(v, p);
                    let s1 = self.g.ccw_next(hvp);
                    let s2 = self.g.ccw_next(s1);
                    self.split(s1, a);
                    self.split(s2, b);
                    let hax = self.g.ccw_next(self.he(a, v));
                    self.split(hax, a2);
                    let hby = self.g.ccw_next(self.he(b, v));
                    self.split(hby, b2);
                    let hva = self.he(v, a);
                    self.connect(self.g.face_next(hva), b);
                    let haa2 = self.he(a, a2);
                    self.connect(self.g.face_next(haa2), b2);
                }
                if c != NONE {
                    let hab = self.he(a, b);
                    self.split(hab, c);
                    let hva = self.he(v, a);
                    self.connect(hva, c);
                }
            }
            Step::Leg { v, p, a, b } => {
                let hvp = self.he(v, p);
                let s1 = self.g.ccw_next(hvp);
                let s2 = self.g.ccw_next(s1);
                self.split(s1, a);
                self.split(s2, b);
                let hva = self.he(v, a);
                self.connect(self.g.face_next(hva), b);
            }
            Step::Mixed {
                v,
                p,
                a,
                a2,
                after,
                before,
                w,
            } => {
                let hvw = self.he(v, w);
                let hwv = hvw ^ 1;
                let z_after_w = {
                    let n = self.g.head(self.g.ccw_next(hvw));
                    n != p
                };
                let z = if z_after_w {
                    self.g.head(self.g.ccw_next(hvw))
                } else {
                    self.g.head(self.g.ccw_prev(hvw))
                };
                let (hx, _hy) = if z_after_w {
                    (self.g.ccw_next(hwv), self.g.ccw_prev(hwv))
                } else {
                    (self.g.ccw_prev(hwv), self.g.ccw_next(hwv))
                };
                let x = self.g.head(hx);
                let (bleaf, cleaf) = if z_after_w {
                    (after, before)
                } else {
                    (before, after)
                };
                self.g.rename_vertex(w, a2);
                self.split(self.he(a2, v), a);
                if bleaf != NONE {
                    let hvz = self.he(v, z);
                    self.split(hvz, bleaf);
                    let hva = self.he(v, a);
                    let (hs, t) = if self.g.head(self.g.ccw_next(hva)) == bleaf {
                        (hva, bleaf)
                    } else {
                        (self.he(v, bleaf), a)
                    };
                    self.connect(self.g.face_next(hs), t);
                    if cleaf != NONE {
                        let ha2x = self.he(a2, x);
                        self.split(ha2x, cleaf);
                        let anchor = if z_after_w { self.he(v, p) } else { self.he(v, a) };
                        self.connect(anchor, cleaf);
                    }
                } else {
                    let ha2x = self.he(a2, x);
                    self.split(ha2x, cleaf);
                    let anchor = if z_after_w { self.he(v, p) } else { self.he(v, a) };
                    self.connect(anchor, cleaf);
                    let hzv = self.he(z, v);
                    let gz = self.g.ccw_prev(hzv);
                    self.g.remove_edge(hzv / 2);
                    let ha = if z_after_w { self.he(a, a2) } else { self.he(a, v) };
                    self.g.insert_edge(a, ha, z, gz);
                }
            }
        }
    }
}

/// Augments a plane tree to a 3-connected plane graph with exactly
/// `tree_lower_bound` new edges, preserving the tree's rotation.
pub fn augment_tree_3connected(t: &PlaneGraph) -> Result<AugmentationResult> {
    augment(t, false)
}

/// Like [`augment_tree_3connected`], but validates the faces and
/// 3-connectivity of every intermediate graph of the rebuild. Quadratic.
pub fn augment_tree_3connected_checked(t: &PlaneGraph) -> Result<AugmentationResult> {
    augment(t, true)
}

fn live_graph(emb: &Embedding) -> AbstractGraph {
    let live: Vec<usize> = (0..emb.vertex_slots()).filter(|&x| emb.degree(x) > 0).collect();
    let mut id = vec![NONE; emb.vertex_slots()];
    for (i, &x) in live.iter().enumerate() {
        id[x] = i;
    }
    let mut g = AbstractGraph::new(live.len());
    for &x in &live {
        for y in emb.neighbors(x) {
            if x < y {
                g.add_edge(id[x], id[y]).expect("embedding is simple");
            }
        }
    }
    g
}

/// Preorder numbering from vertex 0 so that the working arrays are accessed
/// roughly sequentially. Returns new ids, original names, new parents and
/// new edge ids.
fn dfs_relabel(t: &AbstractGraph) -> (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>) {
    let n = t.n();
    let mut id = vec![NONE; n];
    let mut name = Vec::with_capacity(n);
    let mut par = vec![NONE; n];
    let mut stack = vec![(0, NONE)];
    while let Some((v, p)) = stack.pop() {
        id[v] = name.len();
        par[id[v]] = if p == NONE { NONE } else { id[p] };
        name.push(v);
        stack.extend(t.neighbors(v).iter().filter(|&&c| c != p).map(|&c| (c, v)));
    }
    let emap = t
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (id[u], id[v]);
            a.max(b) - 1
        })
        .collect();
    (id, name, par, emap)
}

fn augment(t: &PlaneGraph, checked: bool) -> Result<AugmentationResult> {
    check_tree(t)?;
    let n = t.n();
    let (id, name, tree_par, emap) = dfs_relabel(t.graph());
    let mut red = Reducer {
        t: Embedding::from_plane_mapped(t, &id, &emap),
        alive: n,
        parent: vec![NONE; n],
        steps: Vec::new(),
    };
    let h = degree_histogram(t.graph());
    if h.get(&2).copied().unwrap_or(0) % 2 == 1 {
        let v = (0..n).map(|x| id[x]).find(|&x| red.t.degree(x) == 2).unwrap();
        let r = red.t.rotation(v);
        let (hu, ht) = (r[0], r[1]);
        let (u, tt) = (red.t.head(hu), red.t.head(ht));
        let au = red.t.ccw_prev(hu ^ 1);
        let at = red.t.ccw_prev(ht ^ 1);
        let au = if au == (hu ^ 1) { NONE } else { au };
        let at = if at == (ht ^ 1) { NONE } else { at };
        red.t.remove_edge(hu / 2);
        red.t.remove_edge(ht / 2);
        red.t.insert_edge(u, au, tt, at);
        red.alive -= 1;
        red.steps.push(Step::Contract { v, u, t: tt });
    }
    if red.alive > 4 {
        // a leaf root gives every processed vertex a parent; a leaf of a leg
        // keeps Case 2 from collapsing the tree onto the root
        let leaves = (0..n).map(|x| id[x]).filter(|&x| red.t.degree(x) == 1);
        let root = leaves
            .clone()
            .find(|&x| red.t.degree(red.sole_neighbor(x)) == 2)
            .or_else(|| leaves.clone().next())
            .unwrap();
        // iterative post-order with children in rotation order
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![(root, NONE)];
        while let Some((v, par)) = stack.pop() {
            red.parent[v] = par;
            order.push(v);
            let base = stack.len();
            stack.extend(
                red.t
                    .around(v)
                    .map(|h| (red.t.head(h), v))
                    .filter(|&(c, _)| c != par),
            );
            stack[base..].reverse();
        }
        for &v in order.iter().rev() {
            if red.alive <= 4 {
                break;
            }
            red.process(v)?;
        }
    }
    if red.alive != 4 {
        return Err(Error::Internal(format!(
            "reduction stopped with {} vertices",
            red.alive
        )));
    }
    let verts: Vec<usize> = (0..red.t.vertex_slots())
        .filter(|&x| red.t.degree(x) > 0)
        .collect();
    let mut b = Builder {
        g: Embedding::with_vertices(red.t.vertex_slots()),
    };
    b.base_k4(&red.t, &verts);
    for &s in red.steps.iter().rev() {
        b.undo(s);
        if checked {
            let g = live_graph(&b.g);
            let faces = b.g.faces().len();
            if g.n() + faces != g.m() + 2 || !crate::graph::vertex_connectivity_at_least(&g, 3)? {
                return Err(Error::Internal(format!("rebuild step {s:?} broke the invariant")));
            }
        }
    }
    let graph = b.g.to_plane_mapped(&name);
    let new_edges = (0..b.g.edge_slots())
        .filter(|&e| b.g.is_alive(2 * e))
        .map(|e| (b.g.origin(2 * e), b.g.origin(2 * e + 1)))
        .filter(|&(u, v)| tree_par[u.max(v)] != u.min(v))
        .map(|(u, v)| (name[u], name[v]))
        .collect();
    Ok(AugmentationResult { graph, new_edges })
}

/// Barnette–Grünbaum operations on a plane graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BgOp {
    /// Subdivide `edge` by a new vertex and join it to `to`.
    OneTwo { edge: (usize, usize), to: usize },
    /// Subdivide both edges and join the two new vertices.
    TwoThree {
        first: (usize, usize),
        second: (usize, usize),
    },
}

/// Applies a BG operation; new vertices get the next free indices.
pub fn apply_bg_operation(g: &PlaneGraph, op: BgOp) -> Result<PlaneGraph> {
    let mut emb = Embedding::from_plane(g);
    let n = g.n();
    let find = |emb: &Embedding, (x, y): (usize, usize)| {
        if x >= n || y >= n {
            return None;
        }
        emb.half_edge(x, y)
    };
    let absent = |e: (usize, usize)| Error::Validation(format!("edge {}-{} absent", e.0, e.1));
    match op {
        BgOp::OneTwo { edge, to } => {
            let h = find(&emb, edge).ok_or_else(|| absent(edge))?;
            if to == edge.0 || to == edge.1 || to >= n {
                return Err(Error::Argument("(1,2) target must be a third vertex".into()));
            }
            let (m, hm) = emb.subdivide(h);
            for start in [hm, emb.ccw_next(hm)] {
                if let Some(x) = emb.face_of(start).into_iter().find(|&x| emb.origin(x) == to) {
                    emb.insert_edge(m, start, to, x);
                    return Ok(emb.to_plane(n + 1));
                }
            }
            Err(Error::Infeasible(format!(
                "vertex {to} does not share a face with edge"
            )))
        }
        BgOp::TwoThree { first, second } => {
            let h1 = find(&emb, first).ok_or_else(|| absent(first))?;
            find(&emb, second).ok_or_else(|| absent(second))?;
            if crate::graph::key(first.0, first.1) == crate::graph::key(second.0, second.1) {
                return Err(Error::Argument("(2,3) needs two distinct edges".into()));
            }
            let (a, ha) = emb.subdivide(h1);
            let h2 = emb.half_edge(second.0, second.1).unwrap();
            let (b, hb) = emb.subdivide(h2);
            for sa in [ha, emb.ccw_next(ha)] {
                for sb in [hb, emb.ccw_next(hb)] {
                    if emb.face_of(sa).contains(&sb) {
                        emb.insert_edge(a, sa, b, sb);
                        let _ = (a, b);
                        return Ok(emb.to_plane(n + 2));
                    }
                }
            }
            Err(Error::Infeasible("edges do not share a face".into()))
        }
    }
}

/// Uniform random labelled tree by random attachment, with random rotations.
pub fn random_plane_tree<R: Rng>(n: usize, rng: &mut R) -> PlaneGraph {
    let mut nb: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 1..n {
        let p = rng.gen_range(0..i);
        nb[i].push(p);
        nb[p].push(i);
    }
    for l in nb.iter_mut() {
        l.shuffle(rng);
    }
    PlaneGraph::from_neighbor_rotation(&nb).expect("trees are plane")
}

/// Exhaustive minimum for tiny trees: smallest edge set whose addition is
/// 3-connected and admits an embedding extending the tree's rotation.
pub fn brute_force_tree_minimum(t: &PlaneGraph) -> Result<usize> {
    check_tree(t)?;
    let n = t.n();
    if n > 9 {
        return Err(Error::Capacity(format!(
            "tree brute force limited to 9 vertices, got {n}"
        )));
    }
    let cand: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !t.graph().has_edge(u, v))
        .collect();
    for size in 0..=cand.len() {
        let mut chosen = Vec::new();
        if search_sets(t, &cand, 0, size, &mut chosen, &mut vec![0; n]) {
            return Ok(size);
        }
    }
    Err(Error::Infeasible("no augmentation found".into()))
}

fn search_sets(
    t: &PlaneGraph,
    cand: &[(usize, usize)],
    from: usize,
    left: usize,
    chosen: &mut Vec<(usize, usize)>,
    extra: &mut Vec<usize>,
) -> bool {
    let n = t.n();
    // necessary: every vertex reaches degree 3
    let deficit: usize = (0..n)
        .map(|v| 3usize.saturating_sub(t.graph().degree(v) + extra[v]))
        .sum();
    if deficit > 2 * left {
        return false;
    }
    if left == 0 {
        let g = match t.graph().with_edges(chosen) {
            Ok(g) => g,
            Err(_) => return false,
        };
        return vertex_connectivity_bruteforce(&g, 3).unwrap_or(false) && extends_plane(t, chosen);
    }
    for i in from..cand.len() {
        if cand.len() - i < left {
            break;
        }
        let (u, v) = cand[i];
        chosen.push((u, v));
        extra[u] += 1;
        extra[v] += 1;
        let ok = search_sets(t, cand, i + 1, left - 1, chosen, extra);
        extra[u] -= 1;
        extra[v] -= 1;
        chosen.pop();
        if ok {
            return true;
        }
    }
    false
}

/// Whether the edges can be drawn into the tree's embedding without
/// crossings, trying every corner pair on every shared face.
pub fn extends_plane(t: &PlaneGraph, edges: &[(usize, usize)]) -> bool {
    fn rec(emb: &mut Embedding, edges: &[(usize, usize)]) -> bool {
        let Some((&(u, v), rest)) = edges.split_first() else {
            return true;
        };
        let mut options = Vec::new();
        for f in emb.faces() {
            for &a in f.iter().filter(|&&h| emb.origin(h) == u) {
                for &b in f.iter().filter(|&&h| emb.origin(h) == v) {
                    options.push((a, b));
                }
            }
        }
        for (a, b) in options {
            let e = emb.insert_edge(u, a, v, b);
            if rec(emb, rest) {
                return true;
            }
            emb.remove_edge(e);
        }
        false
    }
    let mut emb = Embedding::from_plane(t);
    rec(&mut emb, edges)
}

/// Degree histogram shortcut used by reports.
pub fn leaf_and_degree2_counts(g: &AbstractGraph) -> (usize, usize) {
    let h = degree_histogram(g);
    (h.get(&1).copied().unwrap_or(0), h.get(&2).copied().unwrap_or(0))
}
