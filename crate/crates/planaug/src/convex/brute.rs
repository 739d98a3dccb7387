use super::{check_by_separators, check_characterization, interleave, ConvexTriangulation};
use crate::error::{Error, Result};

pub const BRUTE_MAX_N: usize = 10;

struct Enum<'a> {
    ct: &'a ConvexTriangulation,
    chords: &'a [(usize, usize)],
    diag_masks: &'a [u32],
    cross: &'a [Vec<bool>],
    diags: &'a [(usize, usize)],
    ears: u32,
    k: usize,
    ell: usize,
    // crossings on each chosen chord and each diagonal
    chord_load: Vec<usize>,
    diag_load: Vec<usize>,
    chosen: Vec<usize>,
    any_planar: bool,
}

impl Enum<'_> {
    fn satisfied(&self) -> bool {
        let full = (1u32 << self.diags.len()) - 1;
        match self.k {
            3 => self.chosen.iter().fold(0, |m, &c| m | self.diag_masks[c]) == full,
            _ => (0..self.diags.len()).all(|d| {
                let hits: Vec<(usize, usize)> = self
                    .chosen
                    .iter()
                    .filter(|&&c| self.diag_masks[c] >> d & 1 == 1)
                    .map(|&c| self.chords[c])
                    .collect();
                hits.len() >= 2
                    && (self.ears >> d & 1 == 1
                        || hits.iter().enumerate().any(|(i, &(u, v))| {
                            hits[i + 1..]
                                .iter()
                                .any(|&(x, y)| u != x && u != y && v != x && v != y)
                        }))
            }),
        }
    }

    fn confirmed(&self) -> bool {
        let f: Vec<(usize, usize)> = self.chosen.iter().map(|&c| self.chords[c]).collect();
        check_by_separators(self.ct, &self.ct.to_vertices(&f), self.k).unwrap_or(false)
    }

    /// Subsets of size `left` more, drawn from chords `from..`.
    fn go(&mut self, from: usize, left: usize) -> bool {
        if left == 0 {
            self.any_planar = true;
            // the crossing conditions are necessary; for k = 4 they are not
            // sufficient, so survivors are confirmed on vertex cuts
            return self.satisfied() && (self.k == 3 || self.confirmed());
        }
        for c in from..self.chords.len() {
            if self.chords.len() - c < left {
                break;
            }
            // own load: diagonals plus chosen chords it crosses
            let mut own = self.diag_masks[c].count_ones() as usize;
            let mut ok = true;
            for &o in &self.chosen {
                if self.cross[c][o] {
                    own += 1;
                    if self.chord_load[o] + 1 > self.ell {
                        ok = false;
                    }
                }
            }
            if !ok || own > self.ell {
                continue;
            }
            if (0..self.diags.len())
                .any(|d| self.diag_masks[c] >> d & 1 == 1 && self.diag_load[d] + 1 > self.ell)
            {
                continue;
            }
            for i in 0..self.chosen.len() {
                if self.cross[c][self.chosen[i]] {
                    self.chord_load[self.chosen[i]] += 1;
                }
            }
            for d in 0..self.diags.len() {
                if self.diag_masks[c] >> d & 1 == 1 {
                    self.diag_load[d] += 1;
                }
            }
            self.chord_load[c] = own;
            self.chosen.push(c);
            if self.go(c + 1, left - 1) {
                return true;
            }
            self.chosen.pop();
            for d in 0..self.diags.len() {
                if self.diag_masks[c] >> d & 1 == 1 {
                    self.diag_load[d] -= 1;
                }
            }
            for i in 0..self.chosen.len() {
                if self.cross[c][self.chosen[i]] {
                    self.chord_load[self.chosen[i]] -= 1;
                }
            }
            self.chord_load[c] = 0;
        }
        false
    }
}

/// Minimum set of new chords making the triangulation `k`-connected
/// (`k` = 3 or 4) with every edge crossed at most `ell` times, by
/// enumerating chord sets in order of size. `None` means infeasible.
///
/// Sets are filtered by the crossing conditions of
/// [`check_characterization`]; for `k = 4` those are only necessary, and
/// [`check_by_separators`] decides.
pub fn brute_min_augment(
    ct: &ConvexTriangulation,
    k: usize,
    ell: usize,
) -> Result<Option<Vec<(usize, usize)>>> {
    let n = ct.n();
    if n > BRUTE_MAX_N {
        return Err(Error::Capacity(format!(
            "brute force limited to {BRUTE_MAX_N} points, got {n}"
        )));
    }
    if k != 3 && k != 4 {
        return Err(Error::Argument(format!("k must be 3 or 4, got {k}")));
    }
    if n <= k {
        return Ok(None);
    }
    let chords = ct.pos_chords();
    let diags = ct.pos_diagonals();
    let diag_masks: Vec<u32> = chords
        .iter()
        .map(|&c| {
            diags
                .iter()
                .enumerate()
                .filter(|(_, &d)| interleave(c, d))
                .fold(0, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let cross: Vec<Vec<bool>> = chords
        .iter()
        .map(|&a| chords.iter().map(|&b| interleave(a, b)).collect())
        .collect();
    let ears = diags
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| b - a == 2 || n - (b - a) == 2)
        .fold(0u32, |m, (i, _)| m | 1 << i);
    let mut en = Enum {
        ct,
        chords: &chords,
        diag_masks: &diag_masks,
        cross: &cross,
        diags: &diags,
        ears,
        k,
        ell,
        chord_load: vec![0; chords.len()],
        diag_load: vec![0; diags.len()],
        chosen: Vec::new(),
        any_planar: false,
    };
    for size in 0..=chords.len() {
        en.any_planar = false;
        if en.go(0, size) {
            let f: Vec<(usize, usize)> = en.chosen.iter().map(|&c| chords[c]).collect();
            let f = ct.to_vertices(&f);
            debug_assert!(check_characterization(ct, &f, k)?);
            return Ok(Some(f));
        }
        if !en.any_planar {
            // every larger set contains an over-crossed one
            break;
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::tests::square;
    use crate::graph::{local_crossing_number, vertex_connectivity_bruteforce};

    #[test]
    fn examples() {
        let sq = square();
        assert_eq!(brute_min_augment(&sq, 3, 1).unwrap(), Some(vec![(1, 3)]));
        assert_eq!(brute_min_augment(&sq, 3, 0).unwrap(), None);
        assert_eq!(brute_min_augment(&sq, 4, 9).unwrap(), None);
        let fan = ConvexTriangulation::fan(5).unwrap();
        let f = brute_min_augment(&fan, 3, 10).unwrap().unwrap();
        assert_eq!(f, vec![(1, 4)]);
    }

    #[test]
    fn results_are_valid_and_monotone() {
        for n in 4..=7 {
            for ct in ConvexTriangulation::all(n).unwrap() {
                for k in [3, 4] {
                    let mut last: Option<usize> = None;
                    for ell in 0..=4 {
                        let r = brute_min_augment(&ct, k, ell).unwrap();
                        if let Some(f) = &r {
                            let aug = ct.augmented(f).unwrap();
                            assert!(local_crossing_number(&aug).unwrap() <= ell);
                            assert!(vertex_connectivity_bruteforce(aug.graph(), k).unwrap());
                        }
                        let size = r.map(|f| f.len());
                        if let (Some(a), Some(b)) = (last, size) {
                            assert!(b <= a);
                        }
                        assert!(!(last.is_some() && size.is_none()));
                        last = size.or(last);
                    }
                }
            }
        }
    }
}
