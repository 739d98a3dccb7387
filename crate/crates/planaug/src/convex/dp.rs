//! Minimum 3-connected `ℓ`-planar augmentation of a convex triangulation.
//!
//! Diagonals are processed bottom-up in the dual tree rooted at the hull
//! edge `(0, n-1)`. The state of a diagonal `e` describes the new chords
//! crossing it: their order along the part of the polygon below `e`, which
//! consecutive ones share their lower endpoint, and how many crossings each
//! has collected so far. Two chords that both still cross `e` have not been
//! compared yet; a pair is counted in the triangle where the first of the
//! two ends.

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use super::{check_characterization, ConvexTriangulation};
use crate::error::{Error, Result};
use crate::graph::local_crossing_number;

pub const MAX_ELL: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
struct St {
    counts: Vec<u8>,
    // ties[i]: chords i and i+1 share their lower endpoint
    ties: Vec<bool>,
}

#[derive(Clone, Copy, Debug)]
enum End {
    S1(u8),
    S2(u8),
    A,
    B,
    C,
}

#[derive(Clone, Debug)]
struct Back {
    k1: St,
    k2: St,
    finished: Vec<(End, End)>,
    up: Vec<End>,
}

#[derive(Clone, Debug)]
struct Entry {
    cost: u32,
    back: Option<Back>,
}

/// The rooted dual tree: each diagonal and the root hull edge `(0, n-1)`,
/// in hull positions, with the apex of the triangle below it.
#[derive(Clone, Debug, Serialize)]
pub struct DualTreeOrder {
    pub edges: Vec<(usize, usize)>,
    pub apex: Vec<usize>,
    /// Child slots for the two lower sides; `None` for hull edges.
    pub children: Vec<[Option<usize>; 2]>,
    pub parent: Vec<Option<usize>>,
    /// Post-order; the root comes last.
    pub order: Vec<usize>,
}

impl DualTreeOrder {
    pub fn build(ct: &ConvexTriangulation) -> Self {
        let n = ct.n();
        let es: FxHashSet<(usize, usize)> = ct.pos_edges().into_iter().collect();
        let mut t = DualTreeOrder {
            edges: vec![(0, n - 1)],
            apex: Vec::new(),
            children: Vec::new(),
            parent: vec![None],
            order: Vec::new(),
        };
        let mut i = 0;
        while i < t.edges.len() {
            let (lo, hi) = t.edges[i];
            let c = (lo + 1..hi)
                .find(|&c| es.contains(&(lo, c)) && es.contains(&(c, hi)))
                .expect("triangulated polygon");
            t.apex.push(c);
            let mut ch = [None, None];
            for (s, (x, y)) in [(lo, c), (c, hi)].into_iter().enumerate() {
                if y - x >= 2 {
                    ch[s] = Some(t.edges.len());
                    t.edges.push((x, y));
                    t.parent.push(Some(i));
                }
            }
            t.children.push(ch);
            i += 1;
        }
        // children always have larger indices
        t.order = (0..t.edges.len()).rev().collect();
        t
    }

    /// `e ⪯ f`: `f` lies on the root side of `e`, that is `f` is `e` or an
    /// ancestor of it.
    pub fn precedes(&self, e: usize, f: usize) -> bool {
        let mut x = Some(e);
        while let Some(y) = x {
            if y == f {
                return true;
            }
            x = self.parent[y];
        }
        false
    }
}

struct Chord {
    lo: usize,
    // usize::MAX for chords continuing upwards
    hi: usize,
    count: usize,
    src: (End, End),
}

fn groups(ties: &[bool], q: usize) -> Vec<usize> {
    let mut g = Vec::with_capacity(q);
    let mut cur = 0;
    for i in 0..q {
        if i > 0 && !ties[i - 1] {
            cur += 1;
        }
        g.push(cur);
    }
    g
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

fn digits(mut x: usize, q: usize) -> Vec<u8> {
    (0..q)
        .map(|_| {
            let d = (x % 3) as u8;
            x /= 3;
            d
        })
        .collect()
}

const END_LOW: u8 = 0; // S1 chord ends at b, S2 chord ends at a
const CROSS: u8 = 1; // continues through the sibling side
const UP: u8 = 2;

type Table = FxHashMap<St, Entry>;

/// Combines the tables of the two lower sides of the triangle under `e`.
fn merge(t1: &Table, t2: &Table, ell: usize, root: bool) -> Table {
    let mut out: Table = FxHashMap::default();
    let mut perms: Vec<Vec<Vec<usize>>> = Vec::new();
    for (k1, e1) in t1 {
        let q1 = k1.counts.len();
        let g1 = groups(&k1.ties, q1);
        let n1 = g1.last().map_or(0, |g| g + 1);
        for (k2, e2) in t2 {
            let q2 = k2.counts.len();
            let g2 = groups(&k2.ties, q2);
            let n2 = g2.last().map_or(0, |g| g + 1);
            let pos1: Vec<usize> = g1.iter().map(|g| 1 + g).collect();
            let cpos = n1 + 1;
            let pos2: Vec<usize> = g2.iter().map(|g| n1 + 2 + g).collect();
            let bpos = n1 + n2 + 2;
            let all1: Vec<Vec<u8>> = (0..3usize.pow(q1 as u32)).map(|x| digits(x, q1)).collect();
            let all2: Vec<Vec<u8>> = (0..3usize.pow(q2 as u32)).map(|x| digits(x, q2)).collect();
            for d1 in &all1 {
                // tied chords cannot both end at b
                if (1..q1).any(|i| k1.ties[i - 1] && d1[i] == END_LOW && d1[i - 1] == END_LOW) {
                    continue;
                }
                let up1 = d1.iter().filter(|&&d| d == UP).count();
                let x1: Vec<usize> = (0..q1).filter(|&i| d1[i] == CROSS).collect();
                if up1 > ell || (root && up1 > 0) {
                    continue;
                }
                for d2 in &all2 {
                    if (1..q2).any(|i| k2.ties[i - 1] && d2[i] == END_LOW && d2[i - 1] == END_LOW) {
                        continue;
                    }
                    let x2: Vec<usize> = (0..q2).filter(|&j| d2[j] == CROSS).collect();
                    if x1.len() != x2.len() {
                        continue;
                    }
                    let nup = up1 + d2.iter().filter(|&&d| d == UP).count();
                    if nup > ell || (root && nup > 0) {
                        continue;
                    }
                    let m = x1.len();
                    while perms.len() <= m {
                        perms.push(permutations(perms.len()));
                    }
                    for p in &perms[m] {
                        let pairs: Vec<(usize, usize)> = (0..m).map(|t| (x1[t], x2[p[t]])).collect();
                        // a chord listed twice
                        let dup = pairs.iter().enumerate().any(|(s, &(i, j))| {
                            pairs[s + 1..]
                                .iter()
                                .any(|&(i2, j2)| g1[i] == g1[i2] && g2[j] == g2[j2])
                        });
                        if dup {
                            continue;
                        }
                        let rcs = if root {
                            0..=0
                        } else {
                            (if nup == 0 { 1 } else { 0 })..=(ell - nup)
                        };
                        for rc in rcs {
                            let mut ch: Vec<Chord> = Vec::with_capacity(q1 + q2 + rc);
                            for i in 0..q1 {
                                let c = k1.counts[i] as usize;
                                match d1[i] {
                                    END_LOW => ch.push(Chord {
                                        lo: pos1[i],
                                        hi: bpos,
                                        count: c,
                                        src: (End::S1(i as u8), End::B),
                                    }),
                                    UP => ch.push(Chord {
                                        lo: pos1[i],
                                        hi: usize::MAX,
                                        count: c,
                                        src: (End::S1(i as u8), End::S1(i as u8)),
                                    }),
                                    _ => {}
                                }
                            }
                            for &(i, j) in &pairs {
                                ch.push(Chord {
                                    lo: pos1[i],
                                    hi: pos2[j],
                                    count: (k1.counts[i] + k2.counts[j]) as usize,
                                    src: (End::S1(i as u8), End::S2(j as u8)),
                                });
                            }
                            for _ in 0..rc {
                                ch.push(Chord {
                                    lo: cpos,
                                    hi: usize::MAX,
                                    count: 0,
                                    src: (End::C, End::C),
                                });
                            }
                            for j in 0..q2 {
                                let c = k2.counts[j] as usize;
                                match d2[j] {
                                    END_LOW => ch.push(Chord {
                                        lo: 0,
                                        hi: pos2[j],
                                        count: c,
                                        src: (End::A, End::S2(j as u8)),
                                    }),
                                    UP => ch.push(Chord {
                                        lo: pos2[j],
                                        hi: usize::MAX,
                                        count: c,
                                        src: (End::S2(j as u8), End::S2(j as u8)),
                                    }),
                                    _ => {}
                                }
                            }
                            let done = |c: &Chord| c.hi != usize::MAX;
                            for i in 0..ch.len() {
                                for j in i + 1..ch.len() {
                                    let (a, b) = (&ch[i], &ch[j]);
                                    let crosses = match (done(a), done(b)) {
                                        (false, false) => false,
                                        (true, true) => {
                                            (a.lo < b.lo && b.lo < a.hi && a.hi < b.hi)
                                                || (b.lo < a.lo && a.lo < b.hi && b.hi < a.hi)
                                        }
                                        (true, false) => a.lo < b.lo && b.lo < a.hi,
                                        (false, true) => b.lo < a.lo && a.lo < b.hi,
                                    };
                                    if crosses {
                                        ch[i].count += 1;
                                        ch[j].count += 1;
                                    }
                                }
                            }
                            // continuing chords cross e itself
                            for c in ch.iter_mut().filter(|c| c.hi == usize::MAX) {
                                c.count += 1;
                            }
                            if ch.iter().any(|c| c.count > ell) {
                                continue;
                            }
                            let mut up: Vec<(usize, usize, End)> = ch
                                .iter()
                                .filter(|c| !done(c))
                                .map(|c| (c.lo, c.count, c.src.0))
                                .collect();
                            up.sort_by_key(|&(p, c, _)| (p, c));
                            let st = St {
                                counts: up.iter().map(|u| u.1 as u8).collect(),
                                ties: up.windows(2).map(|w| w[0].0 == w[1].0).collect(),
                            };
                            let fin: Vec<(End, End)> = ch.iter().filter(|c| done(c)).map(|c| c.src).collect();
                            let cost = e1.cost + e2.cost + fin.len() as u32;
                            if out.get(&st).is_none_or(|e| cost < e.cost) {
                                let back = Back {
                                    k1: k1.clone(),
                                    k2: k2.clone(),
                                    finished: fin,
                                    up: up.iter().map(|u| u.2).collect(),
                                };
                                out.insert(
                                    st,
                                    Entry {
                                        cost,
                                        back: Some(back),
                                    },
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Drops states beaten by another with the same chord order and ties,
/// pointwise no larger crossing counts and no larger cost.
fn prune(t: Table) -> Table {
    let mut by_ties: FxHashMap<Vec<bool>, Vec<(St, Entry)>> = FxHashMap::default();
    for (k, e) in t {
        by_ties.entry(k.ties.clone()).or_default().push((k, e));
    }
    let mut out: Table = FxHashMap::default();
    for (_, mut group) in by_ties {
        group.sort_by_key(|(k, e)| (e.cost, k.counts.iter().map(|&c| c as u32).sum::<u32>()));
        let mut kept: Vec<(St, Entry)> = Vec::new();
        for (k, e) in group {
            let beaten = kept
                .iter()
                .any(|(k2, e2)| e2.cost <= e.cost && k2.counts.iter().zip(&k.counts).all(|(a, b)| a <= b));
            if !beaten {
                kept.push((k, e));
            }
        }
        out.extend(kept);
    }
    out
}

/// Minimum set of new straight-line edges making `ct` 3-connected while
/// every edge, old or new, is crossed at most `ell` times. `Ok(None)` when
/// no such set exists.
pub fn dp_min_augment_3(ct: &ConvexTriangulation, ell: usize) -> Result<Option<Vec<(usize, usize)>>> {
    if ell > MAX_ELL {
        return Err(Error::Argument(format!(
            "ell must be at most {MAX_ELL}, got {ell}"
        )));
    }
    let n = ct.n();
    if n <= 3 {
        return Ok(None);
    }
    let tree = DualTreeOrder::build(ct);
    let hull_table: Table = [(St::default(), Entry { cost: 0, back: None })]
        .into_iter()
        .collect();
    let mut tables: Vec<Table> = vec![FxHashMap::default(); tree.edges.len()];
    for &e in &tree.order {
        let [c1, c2] = tree.children[e];
        let t1 = c1.map_or(&hull_table, |c| &tables[c]);
        let t2 = c2.map_or(&hull_table, |c| &tables[c]);
        let t = prune(merge(t1, t2, ell, e == 0));
        if t.is_empty() {
            return Ok(None);
        }
        tables[e] = t;
    }
    let Some(root) = tables[0].get(&St::default()) else {
        return Ok(None);
    };
    let cost = root.cost as usize;
    let mut f = Vec::with_capacity(cost);
    resolve(&tree, &tables, 0, &St::default(), &mut f);
    if f.len() != cost {
        return Err(Error::Internal(format!(
            "rebuilt {} chords for optimum {cost}",
            f.len()
        )));
    }
    let f = ct.to_vertices(&f);
    if !check_characterization(ct, &f, 3)? || local_crossing_number(&ct.augmented(&f)?)? > ell {
        return Err(Error::Internal(
            "dynamic program produced an invalid augmentation".into(),
        ));
    }
    Ok(Some(f))
}

/// Lower endpoints, in state order, of the chords crossing edge `e`;
/// finished chords are appended to `out`.
fn resolve(
    tree: &DualTreeOrder,
    tables: &[Table],
    e: usize,
    st: &St,
    out: &mut Vec<(usize, usize)>,
) -> Vec<usize> {
    let back = tables[e][st]
        .back
        .as_ref()
        .expect("diagonal entries have a source");
    let [c1, c2] = tree.children[e];
    let xs1 = c1.map_or(Vec::new(), |c| resolve(tree, tables, c, &back.k1, out));
    let xs2 = c2.map_or(Vec::new(), |c| resolve(tree, tables, c, &back.k2, out));
    let (lo, hi) = tree.edges[e];
    let at = |x: End| match x {
        End::S1(i) => xs1[i as usize],
        End::S2(j) => xs2[j as usize],
        End::A => lo,
        End::B => hi,
        End::C => tree.apex[e],
    };
    for &(x, y) in &back.finished {
        out.push((at(x), at(y)));
    }
    back.up.iter().map(|&x| at(x)).collect()
}
