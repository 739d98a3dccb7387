use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{key, PlaneGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetKind {
    VariableBoundary,
    VariableCentral,
    LiteralCentral,
    ClauseBoundary,
    TermCentral,
    ValueCentral,
    Filler,
}

impl GadgetKind {
    pub fn is_central(self) -> bool {
        matches!(
            self,
            GadgetKind::VariableCentral
                | GadgetKind::LiteralCentral
                | GadgetKind::TermCentral
                | GadgetKind::ValueCentral
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GadgetTag {
    pub kind: GadgetKind,
    pub id: usize,
}

/// Counterclockwise triangles over a growing vertex set. Unfilled regions are
/// traced from the unmatched half-edges.
#[derive(Clone, Debug, Default)]
pub(crate) struct Assembly {
    pub tags: Vec<GadgetTag>,
    pub tris: Vec<[usize; 3]>,
    pub dotted: Vec<(usize, usize)>,
    /// separating triangles the construction intends
    pub units: Vec<[usize; 3]>,
}

impl Assembly {
    pub fn vertex(&mut self, kind: GadgetKind, id: usize) -> usize {
        self.tags.push(GadgetTag { kind, id });
        self.tags.len() - 1
    }

    pub fn n(&self) -> usize {
        self.tags.len()
    }

    /// New vertex inside the counterclockwise triangle `t`.
    pub fn stack(&mut self, t: [usize; 3], kind: GadgetKind, id: usize) -> usize {
        let c = self.vertex(kind, id);
        let [a, b, d] = t;
        self.tris.extend([[a, b, c], [b, d, c], [d, a, c]]);
        c
    }

    pub fn dot(&mut self, u: usize, v: usize) {
        self.dotted.push(key(u, v));
    }

    /// Boundary cycles of the unfilled regions, each counterclockwise around
    /// its region.
    pub fn regions(&self) -> Result<Vec<Vec<usize>>> {
        let mut half: FxHashSet<(usize, usize)> = FxHashSet::default();
        for t in &self.tris {
            for i in 0..3 {
                if !half.insert((t[i], t[(i + 1) % 3])) {
                    return Err(Error::Internal(format!(
                        "half-edge {}->{} used twice",
                        t[i],
                        t[(i + 1) % 3]
                    )));
                }
            }
        }
        let mut out_edge: FxHashMap<usize, usize> = FxHashMap::default();
        for &(u, v) in &half {
            if !half.contains(&(v, u)) && out_edge.insert(v, u).is_some() {
                return Err(Error::Internal(format!("vertex {v} touches two open regions")));
            }
        }
        let mut starts: Vec<usize> = out_edge.keys().copied().collect();
        starts.sort_unstable();
        let mut seen = FxHashSet::default();
        let mut regions = Vec::new();
        for s in starts {
            if seen.contains(&s) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut v = s;
            while seen.insert(v) {
                cyc.push(v);
                v = out_edge[&v];
            }
            if v != s {
                return Err(Error::Internal("open region boundary is not a cycle".into()));
            }
            regions.push(cyc);
        }
        Ok(regions)
    }

    /// Closes every open region: a triangle stays a face, longer cycles get a
    /// ring of new vertices and a hub.
    pub fn fill_regions(&mut self) -> Result<()> {
        for (id, w) in self.regions()?.into_iter().enumerate() {
            let l = w.len();
            match l {
                0..=2 => return Err(Error::Internal(format!("open region of length {l}"))),
                3 => self.tris.push([w[0], w[1], w[2]]),
                _ => {
                    let ring: Vec<usize> = (0..l).map(|_| self.vertex(GadgetKind::Filler, id)).collect();
                    let hub = self.vertex(GadgetKind::Filler, id);
                    for i in 0..l {
                        let j = (i + 1) % l;
                        self.tris.push([w[i], w[j], ring[i]]);
                        self.tris.push([ring[i], w[j], ring[j]]);
                        self.tris.push([ring[i], ring[j], hub]);
                    }
                }
            }
        }
        Ok(())
    }

    /// Counterclockwise neighbor lists. A vertex on one open region gets its
    /// rotation starting right after the gap.
    pub fn rotation(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.n();
        let mut next: Vec<FxHashMap<usize, usize>> = vec![FxHashMap::default(); n];
        for t in &self.tris {
            for i in 0..3 {
                next[t[i]].insert(t[(i + 1) % 3], t[(i + 2) % 3]);
            }
        }
        let mut rot = Vec::with_capacity(n);
        for (v, nx) in next.iter().enumerate() {
            let targets: FxHashSet<usize> = nx.values().copied().collect();
            let mut nbrs: FxHashSet<usize> = nx.keys().copied().collect();
            nbrs.extend(targets.iter().copied());
            let mut open: Vec<usize> = nx.keys().copied().filter(|u| !targets.contains(u)).collect();
            open.sort_unstable();
            if open.len() > 1 {
                return Err(Error::Internal(format!("vertex {v} has {} gaps", open.len())));
            }
            let start = match open.first() {
                Some(&s) => s,
                None => match nx.keys().min() {
                    Some(&s) => s,
                    None => return Err(Error::Internal(format!("vertex {v} is isolated"))),
                },
            };
            let mut r = vec![start];
            let mut u = start;
            while let Some(&w) = nx.get(&u) {
                if w == start {
                    break;
                }
                r.push(w);
                u = w;
            }
            if r.len() != nbrs.len() {
                return Err(Error::Internal(format!(
                    "link of vertex {v} is not a single cycle or path"
                )));
            }
            rot.push(r);
        }
        Ok(rot)
    }

    pub fn plane(&self) -> Result<PlaneGraph> {
        PlaneGraph::from_neighbor_rotation(&self.rotation()?)
    }

    /// The embedding with the dotted edges deleted.
    pub fn plane_without_dotted(&self) -> Result<PlaneGraph> {
        let dotted: FxHashSet<(usize, usize)> = self.dotted.iter().copied().collect();
        let rot: Vec<Vec<usize>> = self
            .rotation()?
            .into_iter()
            .enumerate()
            .map(|(v, r)| r.into_iter().filter(|&w| !dotted.contains(&key(v, w))).collect())
            .collect();
        PlaneGraph::from_neighbor_rotation(&rot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flip4::Triangulation;

    #[test]
    fn square_region_gets_filled() {
        let mut a = Assembly::default();
        let v: Vec<usize> = (0..4).map(|i| a.vertex(GadgetKind::Filler, i)).collect();
        a.tris.push([v[0], v[1], v[2]]);
        a.tris.push([v[0], v[2], v[3]]);
        let regions = a.regions().unwrap();
        assert_eq!(regions.len(), 1);
        assert_eq!(regions[0].len(), 4);
        a.fill_regions().unwrap();
        let t = Triangulation::new(&a.plane().unwrap()).unwrap();
        assert_eq!(t.n(), 9);
    }

    #[test]
    fn open_fragment_has_rotation() {
        let mut a = Assembly::default();
        let v: Vec<usize> = (0..3).map(|i| a.vertex(GadgetKind::Filler, i)).collect();
        a.stack([v[0], v[1], v[2]], GadgetKind::VariableCentral, 0);
        let p = a.plane().unwrap();
        assert_eq!(p.graph().m(), 6);
        assert_eq!(p.face_count(), 4);
    }
}
