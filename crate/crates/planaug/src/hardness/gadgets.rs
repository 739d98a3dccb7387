use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use super::assembly::{Assembly, GadgetKind};
use super::reduce::{build_band, build_clause, UnitKind, VariableLayout};
use crate::error::{Error, Result};
use crate::graph::{faces, key, vertex_connectivity_at_least, PlaneGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    Positive,
    Negated,
}

/// A gadget on its own. `graph` has the dotted edges removed, `full` keeps
/// them.
#[derive(Clone, Debug)]
pub struct GadgetFragment {
    pub graph: PlaneGraph,
    pub full: PlaneGraph,
    pub central: Vec<usize>,
    pub boundary: Vec<usize>,
    pub dotted: Vec<(usize, usize)>,
    /// Dotted edges another gadget attaches to.
    pub attachment: Vec<(usize, usize)>,
}

fn fragment(a: &Assembly, attachment: Vec<(usize, usize)>) -> Result<GadgetFragment> {
    let central = (0..a.n()).filter(|&v| a.tags[v].kind.is_central()).collect();
    let boundary = (0..a.n())
        .filter(|&v| {
            matches!(
                a.tags[v].kind,
                GadgetKind::VariableBoundary | GadgetKind::ClauseBoundary
            )
        })
        .collect();
    Ok(GadgetFragment {
        graph: a.plane_without_dotted()?,
        full: a.plane()?,
        central,
        boundary,
        dotted: a.dotted.clone(),
        attachment,
    })
}

/// Variable gadget closed into a sphere: `w4_count` modified W4s around a
/// hub, their rim region filled. Consecutive W4s share a dotted rung.
#[derive(Clone, Debug)]
pub struct VariableGadget {
    pub fragment: GadgetFragment,
    pub layout: VariableLayout,
}

impl VariableGadget {
    /// The two perfect matchings of consecutive W4s.
    pub fn matchings(&self) -> [Vec<(usize, usize)>; 2] {
        let l = &self.layout;
        let n = l.w4_count;
        [0, 1].map(|start| {
            (0..n / 2)
                .map(|i| {
                    let s = (start + 2 * i) % n;
                    key(l.slot_central[s], l.slot_central[(s + 1) % n])
                })
                .collect()
        })
    }
}

pub fn build_variable_gadget(w4_count: usize) -> Result<VariableGadget> {
    if w4_count < 4 || w4_count % 2 == 1 {
        return Err(Error::Argument(format!(
            "W4 count must be even and at least 4, got {w4_count}"
        )));
    }
    let mut a = Assembly::default();
    let units = vec![UnitKind::Plain(false); w4_count];
    let layout = build_band(
        &mut a,
        0,
        &units,
        &FxHashMap::default(),
        &mut FxHashMap::default(),
    )?;
    a.fill_regions()?;
    Ok(VariableGadget {
        fragment: fragment(&a, Vec::new())?,
        layout,
    })
}

/// Literal gadget: boundary `[b1, b2, b3]` around centrals `[l1, l2, l3]`,
/// with the clause attaching at `b1 b3`. `l1` sits on the `b1 b2` side. The
/// negated gadget is the mirror image.
pub fn build_literal_gadget(polarity: Polarity) -> Result<GadgetFragment> {
    let mut a = Assembly::default();
    let [b1, b2, b3] = [(); 3].map(|_| a.vertex(GadgetKind::VariableBoundary, 0));
    let l2 = a.stack([b1, b3, b2], GadgetKind::LiteralCentral, 0);
    let f1 = [b2, b1, l2];
    let f3 = [b3, b2, l2];
    a.tris.retain(|t| *t != f1 && *t != f3);
    a.stack(f1, GadgetKind::LiteralCentral, 0);
    a.stack(f3, GadgetKind::LiteralCentral, 0);
    for (u, v) in [(b1, b2), (b2, b3), (b1, b3), (l2, b2)] {
        a.dot(u, v);
    }
    if polarity == Polarity::Negated {
        // mirror: reverse orientation and swap the two sides
        let swap = |v: usize| match v {
            0 => 2,
            2 => 0,
            4 => 5,
            5 => 4,
            v => v,
        };
        a.tris = a
            .tris
            .iter()
            .map(|t| [swap(t[2]), swap(t[1]), swap(t[0])])
            .collect();
        a.dotted = a.dotted.iter().map(|&(u, v)| key(swap(u), swap(v))).collect();
    }
    fragment(&a, vec![key(b1, b3)])
}

/// Clause gadget: value W4 in the middle, three term W4s around it. The
/// attachment edges are the literal sites, one per term.
pub fn build_clause_gadget() -> Result<GadgetFragment> {
    let mut a = Assembly::default();
    let (_, _, _, bases) = build_clause(&mut a, 0);
    fragment(&a, bases.iter().map(|&(u, v)| key(u, v)).collect())
}

/// A new edge drawn inside a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceChord {
    pub u: usize,
    pub v: usize,
    pub face: usize,
    /// positions of `u` and `v` along the face walk
    pub pos: (usize, usize),
}

/// Every chord insertable inside a face: two non-adjacent vertices of a
/// face. Faces are assumed to be simple cycles.
pub fn face_chords(g: &PlaneGraph) -> Vec<FaceChord> {
    let mut out = Vec::new();
    for (f, walk) in faces(g).iter().enumerate() {
        let vs: Vec<usize> = walk.iter().map(|&h| g.end_vertex(h)).collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if vs[i] != vs[j] && !g.graph().has_edge(vs[i], vs[j]) {
                    out.push(FaceChord {
                        u: vs[i],
                        v: vs[j],
                        face: f,
                        pos: (i, j),
                    });
                }
            }
        }
    }
    out
}

fn chords_compatible(a: &FaceChord, b: &FaceChord) -> bool {
    if key(a.u, a.v) == key(b.u, b.v) {
        return false;
    }
    if a.face != b.face {
        return true;
    }
    let (i, j) = a.pos;
    let inside = |p: usize| i < p && p < j;
    let (x, y) = b.pos;
    if x == i || x == j || y == i || y == j {
        return true;
    }
    inside(x) == inside(y)
}

/// Smallest planar chord sets (size at most `max_size`) that make `g`
/// 4-connected, all of them. `None` if no set of that size works.
///
/// Sets must raise every degree to 4, which prunes most of the search
/// before the flow test runs.
pub fn min_planar_augmentations(
    g: &PlaneGraph,
    max_size: usize,
) -> Result<Option<(usize, Vec<Vec<(usize, usize)>>)>> {
    let chords = face_chords(g);
    let deficit: Vec<usize> = (0..g.n())
        .map(|v| 4usize.saturating_sub(g.graph().degree(v)))
        .collect();
    for size in 0..=max_size {
        let mut found = Vec::new();
        let mut chosen = Vec::new();
        let mut need = deficit.clone();
        search(g, &chords, 0, size, &mut chosen, &mut need, &mut found)?;
        if !found.is_empty() {
            let mut sets: Vec<Vec<(usize, usize)>> = found
                .into_iter()
                .map(|s: Vec<usize>| {
                    let mut e: Vec<(usize, usize)> =
                        s.iter().map(|&c| key(chords[c].u, chords[c].v)).collect();
                    e.sort_unstable();
                    e
                })
                .collect();
            sets.sort();
            sets.dedup();
            return Ok(Some((size, sets)));
        }
    }
    Ok(None)
}

fn search(
    g: &PlaneGraph,
    chords: &[FaceChord],
    from: usize,
    left: usize,
    chosen: &mut Vec<usize>,
    need: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let total: usize = need.iter().sum();
    if total > 2 * left {
        return Ok(());
    }
    if left == 0 {
        let extra: Vec<(usize, usize)> = chosen.iter().map(|&c| (chords[c].u, chords[c].v)).collect();
        if vertex_connectivity_at_least(&g.graph().with_edges(&extra)?, 4)? {
            found.push(chosen.clone());
        }
        return Ok(());
    }
    // the lowest deficient vertex must be covered by some chord from here on
    let first_need = need.iter().position(|&d| d > 0);
    for c in from..chords.len() {
        let ch = chords[c];
        if chosen.iter().any(|&o| !chords_compatible(&chords[o], &ch)) {
            continue;
        }
        if let Some(v) = first_need {
            let covers_later = chords[c..].iter().any(|o| o.u == v || o.v == v);
            if !covers_later {
                return Ok(());
            }
        }
        let (du, dv) = (need[ch.u] > 0, need[ch.v] > 0);
        if du {
            need[ch.u] -= 1;
        }
        if dv {
            need[ch.v] -= 1;
        }
        chosen.push(c);
        search(g, chords, c + 1, left - 1, chosen, need, found)?;
        chosen.pop();
        if du {
            need[ch.u] += 1;
        }
        if dv {
            need[ch.v] += 1;
        }
    }
    Ok(())
}

/// True if deleting `cut` leaves some vertex of `group` separated from some
/// vertex outside `group`.
pub fn separates(g: &PlaneGraph, cut: &[usize], group: &[usize]) -> bool {
    let removed: FxHashSet<usize> = cut.iter().copied().collect();
    let start = group[0];
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.graph().neighbors(v) {
            if !removed.contains(&w) && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    (0..g.n()).any(|v| !removed.contains(&v) && !group.contains(&v) && !seen[v])
}
