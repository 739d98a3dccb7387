//! Command line dispatcher behind the `planaug` binary.
//!
//! Artifacts go to `--out` (a path, or `-` for standard output). Report lines
//! go to standard output, or to standard error when an artifact already
//! occupies standard output.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructions::{
    balanced_convex_triangulation, circulant, cluster_augment_convex, cluster_augment_topological,
    fan_instance, knearest_xsorted, random_points,
};
use crate::convex::{brute_min_augment, dp_min_augment_3, ConvexTriangulation};
use crate::error::{Error, Result};
use crate::flip4::{
    eptas_report, exact_hitting_set, execute_hitting_set, separating_triangles_of, Triangulation,
};
use crate::graph::io::{parse_graph, GraphFile, LoadedGraph};
use crate::graph::{
    local_crossing_number, vertex_connectivity_at_least, vertex_connectivity_bruteforce, AbstractGraph,
    PlaneGraph,
};
use crate::hardness::{
    check_flip_witness, check_witness, reduce_3to4, reduce_flip_variant, witness_flips,
    witness_from_assignment, SatInstance,
};
use crate::tree_augment::{
    augment_tree_3connected, brute_force_tree_minimum, extends_plane, random_plane_tree, tree_lower_bound,
};

/// Exit code for command line usage errors.
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "planaug",
    version,
    about = "Connectivity augmentation of plane and geometric graphs"
)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum 3-connected plane augmentation of a plane tree.
    AugmentTree {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
        /// Brute force for n <= 12 (minimality for n <= 9), flows otherwise.
        #[arg(long)]
        check: bool,
    },
    /// Flip a triangulation to 4-connectivity.
    Flip4 {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, default_value_t = 0.25)]
        epsilon: f64,
        /// Compare against the exact minimum hitting set.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        emit_sequence: Option<String>,
        #[arg(long)]
        stats: bool,
        /// Where to write the flipped triangulation.
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        check: bool,
    },
    /// Minimum augmentation of a convex triangulation with bounded crossings.
    ConvexAug {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        /// Cross-check against brute force (n <= 10).
        #[arg(long)]
        oracle: bool,
    },
    /// Instance generators.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, global = true, default_value = "-")]
        out: String,
    },
    /// Cluster construction: k-connected with O(k²) crossings per edge.
    ClusterAug {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long)]
        k: usize,
        /// Straight-line version on a convex triangulation.
        #[arg(long)]
        convex: bool,
        #[arg(long)]
        check: bool,
    },
    /// Planar 3-SAT to augmentation instance.
    Reduce {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, default_value = "-")]
        out: String,
        /// JSON array of booleans, one per variable.
        #[arg(long)]
        witness: Option<String>,
        /// Where to write the witness edges or flips.
        #[arg(long)]
        witness_out: Option<String>,
    },
    /// Connectivity and crossing checks. Exits 1 when not k-connected.
    Verify {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lcr: bool,
        /// Also run the brute-force oracle (n <= 12).
        #[arg(long)]
        check: bool,
    },
    /// Random instances against their oracles, as CSV.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0.25)]
        epsilon: f64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// k-circulant graph on n points in convex position.
    Circulant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Random points joined to their k nearest neighbors in x-order.
    Knearest {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Triangulation forcing many crossings for 4-connectivity.
    Fan {
        #[arg(long)]
        n: usize,
    },
    /// Balanced convex triangulation.
    Balanced {
        #[arg(long)]
        depth: usize,
    },
    /// Random convex triangulation.
    Convex {
        #[arg(long)]
        n: usize,
    },
    /// Random stacked triangulation.
    Stacked {
        #[arg(long)]
        n: usize,
    },
    /// Random plane tree.
    Tree {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Aug34,
    Flip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Tree,
    Flip4,
    Convex,
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    /// set once an artifact went to standard output
    stdout_taken: bool,
}

impl Ctx<'_> {
    fn read(&mut self, path: &str) -> Result<String> {
        if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            Ok(s)
        } else {
            Ok(std::fs::read_to_string(path)?)
        }
    }

    fn write(&mut self, path: &str, data: &str) -> Result<()> {
        if path == "-" {
            self.stdout.write_all(data.as_bytes())?;
            self.stdout_taken = true;
        } else {
            std::fs::write(path, data)?;
        }
        Ok(())
    }

    fn say(&mut self, line: &str) -> Result<()> {
        if self.stdout_taken {
            writeln!(self.stderr, "{line}")?;
        } else {
            writeln!(self.stdout, "{line}")?;
        }
        Ok(())
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut ctx = Ctx {
        stdin,
        stdout,
        stderr,
        stdout_taken: false,
    };
    match dispatch(&cli, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn plane_of(g: &LoadedGraph) -> Result<PlaneGraph> {
    if let Some(p) = g.plane() {
        return Ok(p.clone());
    }
    if let Some(q) = g.geometric() {
        return q.to_plane();
    }
    Err(Error::Validation("graph needs a rotation or points".into()))
}

/// Trees without a rotation get their adjacency order; every rotation of a
/// tree is an embedding.
fn tree_of(g: &LoadedGraph) -> Result<PlaneGraph> {
    match g {
        LoadedGraph::Abstract(a) => {
            let nb: Vec<Vec<usize>> = (0..a.n()).map(|v| a.neighbors(v).to_vec()).collect();
            PlaneGraph::from_neighbor_rotation(&nb)
        }
        _ => plane_of(g),
    }
}

fn convex_of(g: &LoadedGraph) -> Result<ConvexTriangulation> {
    let geo = g
        .geometric()
        .ok_or_else(|| Error::Validation("convex triangulation needs points".into()))?;
    ConvexTriangulation::new(geo.clone())
}

fn connected(g: &AbstractGraph, k: usize, brute: bool) -> Result<bool> {
    let flow = vertex_connectivity_at_least(g, k)?;
    if brute && g.n() <= 12 {
        let b = vertex_connectivity_bruteforce(g, k)?;
        if b != flow {
            return Err(Error::Internal(format!("flow says {flow}, brute force says {b}")));
        }
    }
    Ok(flow)
}

fn ratio(achieved: usize, lower: usize) -> f64 {
    if lower == 0 {
        if achieved == 0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        achieved as f64 / lower as f64
    }
}

/// Greedy packing of edge-disjoint separating triangles. Each needs its own
/// flip, so the packing size bounds the optimum from below.
pub fn packing_lower_bound(t: &Triangulation) -> usize {
    let mut used = rustc_hash::FxHashSet::default();
    let mut count = 0;
    for tri in separating_triangles_of(t) {
        let es = [0, 1, 2].map(|i| crate::graph::key(tri[i], tri[(i + 1) % 3]));
        if es.iter().all(|e| !used.contains(e)) {
            used.extend(es);
            count += 1;
        }
    }
    count
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::AugmentTree { input, out, check } => {
            let t = tree_of(&parse_graph(&ctx.read(input)?)?)?;
            let res = augment_tree_3connected(&t)?;
            ctx.write(out, &GraphFile::from_plane(&res.graph).to_json())?;
            ctx.say(&format!("new edges: {}", res.new_edges.len()))?;
            ctx.say(&format!("lower bound: {}", tree_lower_bound(&t)?))?;
            if *check {
                let g = res.graph.graph();
                let ok3 = connected(g, 3, true)?;
                let ext = extends_plane(&t, &res.new_edges);
                ctx.say(&format!("3-connected: {ok3}"))?;
                ctx.say(&format!("extends tree embedding: {ext}"))?;
                if t.n() <= 9 {
                    ctx.say(&format!("brute-force minimum: {}", brute_force_tree_minimum(&t)?))?;
                }
                if !ok3 || !ext {
                    return Err(Error::Internal("augmentation failed its check".into()));
                }
            }
        }
        Command::Flip4 {
            input,
            epsilon,
            exact,
            emit_sequence,
            stats,
            out,
            check,
        } => {
            let t = Triangulation::new(&plane_of(&parse_graph(&ctx.read(input)?)?)?)?;
            let t0 = Instant::now();
            let rep = eptas_report(&t, *epsilon)?;
            let t1 = Instant::now();
            let seq = execute_hitting_set(&t, &rep.edges)?;
            let t2 = Instant::now();
            let after = t.replay(&seq)?;
            let left = separating_triangles_of(&after).len();
            if left > 0 {
                return Err(Error::Internal(format!("{left} separating triangles remain")));
            }
            let (tau, label) = if *exact {
                (exact_hitting_set(&t)?.len(), "tau")
            } else {
                (packing_lower_bound(&t), "tau lower bound")
            };
            if let Some(p) = emit_sequence {
                let mut s = serde_json::to_string(&seq)?;
                s.push('\n');
                ctx.write(p, &s)?;
            }
            if let Some(p) = out {
                ctx.write(p, &GraphFile::from_plane(&after.to_plane()).to_json())?;
            }
            ctx.say(&format!("flips: {}", seq.len()))?;
            ctx.say(&format!("{label}: {tau}"))?;
            ctx.say(&format!("ratio: {:.2}", ratio(seq.len(), tau)))?;
            if *stats {
                ctx.say(&format!("n: {}", t.n()))?;
                ctx.say(&format!(
                    "separating triangles: {}",
                    separating_triangles_of(&t).len()
                ))?;
                ctx.say(&format!(
                    "k: {} offset: {} sizes: {:?}",
                    rep.k, rep.offset, rep.sizes
                ))?;
                ctx.say(&format!("hitting set ms: {:.3}", (t1 - t0).as_secs_f64() * 1e3))?;
                ctx.say(&format!("flip ms: {:.3}", (t2 - t1).as_secs_f64() * 1e3))?;
            }
            if *check {
                ctx.say(&format!("4-connected: {}", connected(&after.graph(), 4, true)?))?;
            }
        }
        Command::ConvexAug {
            input,
            out,
            k,
            ell,
            oracle,
        } => {
            let ct = convex_of(&parse_graph(&ctx.read(input)?)?)?;
            let f = match k {
                3 => dp_min_augment_3(&ct, *ell)?,
                4 => brute_min_augment(&ct, 4, *ell)?,
                _ => return Err(Error::Argument(format!("k must be 3 or 4, got {k}"))),
            };
            if *oracle && *k == 3 {
                let b = brute_min_augment(&ct, 3, *ell)?;
                if b.as_ref().map(Vec::len) != f.as_ref().map(Vec::len) {
                    return Err(Error::Internal(
                        "dynamic program disagrees with brute force".into(),
                    ));
                }
            }
            let Some(mut f) = f else {
                return Err(Error::Infeasible(format!(
                    "no {k}-connected augmentation with lcr <= {ell}"
                )));
            };
            f.sort_unstable();
            let lcr = local_crossing_number(&ct.augmented(&f)?)?;
            let body = serde_json::json!({ "F": f, "lcr": lcr, "optimal": true });
            ctx.write(out, &format!("{body}\n"))?;
        }
        Command::Gen { kind, out } => {
            let text = match kind {
                GenKind::Circulant { n, k } => GraphFile::from_geometric(&circulant(*n, *k)?).to_json(),
                GenKind::Knearest { n, k } => {
                    GraphFile::from_geometric(&knearest_xsorted(random_points(*n, &mut rng), *k)?).to_json()
                }
                GenKind::Fan { n } => GraphFile::from_geometric(&fan_instance(*n)?).to_json(),
                GenKind::Balanced { depth } => {
                    GraphFile::from_geometric(balanced_convex_triangulation(*depth)?.geometry()).to_json()
                }
                GenKind::Convex { n } => {
                    if *n < 3 {
                        return Err(Error::Argument(format!("need n >= 3, got {n}")));
                    }
                    GraphFile::from_geometric(ConvexTriangulation::random(*n, &mut rng)?.geometry()).to_json()
                }
                GenKind::Stacked { n } => {
                    GraphFile::from_plane(&Triangulation::random_stacked(*n, &mut rng)?.to_plane()).to_json()
                }
                GenKind::Tree { n } => {
                    if *n < 2 {
                        return Err(Error::Argument(format!("need n >= 2, got {n}")));
                    }
                    GraphFile::from_plane(&random_plane_tree(*n, &mut rng)).to_json()
                }
            };
            ctx.write(out, &text)?;
        }
        Command::ClusterAug {
            input,
            out,
            k,
            convex,
            check,
        } => {
            let g = parse_graph(&ctx.read(input)?)?;
            let result = if *convex {
                let ct = convex_of(&g)?;
                let aug = cluster_augment_convex(&ct, *k)?;
                ctx.write(out, &GraphFile::from_geometric(&aug).to_json())?;
                let lcr = local_crossing_number(&aug)?;
                ctx.say(&format!("lcr: {lcr}"))?;
                ctx.say(&format!("lcr/k^2: {:.3}", lcr as f64 / (k * k) as f64))?;
                aug.graph().clone()
            } else {
                let t = Triangulation::new(&plane_of(&g)?)?;
                let (aug, d) = cluster_augment_topological(&t, *k)?;
                ctx.write(out, &GraphFile::from_abstract(&aug).to_json())?;
                ctx.say(&format!("clusters: {}", d.clusters.len()))?;
                ctx.say(&format!("crossing bound/k^2: {:.3}", d.constant(*k)))?;
                aug
            };
            if *check {
                let ok = connected(&result, *k, true)?;
                ctx.say(&format!("{k}-connected: {ok}"))?;
                if !ok {
                    return Err(Error::Internal("cluster augmentation is not k-connected".into()));
                }
            }
        }
        Command::Reduce {
            input,
            variant,
            out,
            witness,
            witness_out,
        } => {
            let inst = SatInstance::parse(&ctx.read(input)?)?;
            let red = match variant {
                VariantArg::Aug34 => reduce_3to4(&inst)?,
                VariantArg::Flip => reduce_flip_variant(&inst)?,
            };
            ctx.write(out, &red.to_json())?;
            ctx.say(&format!("n: {}", red.graph.n()))?;
            ctx.say(&format!("tau: {}", red.tau))?;
            if let Some(path) = witness {
                let assignment: Vec<bool> = serde_json::from_str(&ctx.read(path)?)?;
                let (report, body) = match variant {
                    VariantArg::Aug34 => {
                        let Some(edges) = witness_from_assignment(&red, &assignment)? else {
                            return Err(Error::Infeasible(
                                "assignment does not satisfy the formula".into(),
                            ));
                        };
                        (check_witness(&red, &edges)?, serde_json::to_string(&edges)?)
                    }
                    VariantArg::Flip => {
                        let Some(seq) = witness_flips(&red, &assignment)? else {
                            return Err(Error::Infeasible(
                                "assignment does not satisfy the formula".into(),
                            ));
                        };
                        (check_flip_witness(&red, &seq)?, serde_json::to_string(&seq)?)
                    }
                };
                if let Some(p) = witness_out {
                    ctx.write(p, &format!("{body}\n"))?;
                }
                ctx.say(&format!("witness size: {}", report.edges))?;
                ctx.say(&format!("4-connected: {}", report.four_connected))?;
                if !report.ok() {
                    return Err(Error::Internal("witness failed its check".into()));
                }
            }
        }
        Command::Verify { input, k, lcr, check } => {
            let g = parse_graph(&ctx.read(input)?)?;
            let ok = connected(g.abstract_graph(), *k, *check)?;
            ctx.say(&format!("{k}-connected: {ok}"))?;
            if *lcr {
                let geo = g
                    .geometric()
                    .ok_or_else(|| Error::Validation("lcr needs points".into()))?;
                ctx.say(&format!("lcr: {}", local_crossing_number(geo)?))?;
            }
            if !ok {
                return Ok(1);
            }
        }
        Command::Bench {
            suite,
            count,
            epsilon,
            jobs,
            out,
        } => {
            let csv = bench(*suite, *count, *epsilon, (*jobs).max(1), cli.seed)?;
            ctx.write(out, &csv)?;
        }
    }
    Ok(0)
}

#[derive(Clone, Debug)]
struct BenchRow {
    instance: String,
    n: usize,
    opt: usize,
    achieved: usize,
    millis: f64,
}

fn bench_one(suite: Suite, i: usize, epsilon: f64, seed: u64) -> Result<BenchRow> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64));
    match suite {
        Suite::Tree => {
            let n = rng.gen_range(4..=12);
            let t = random_plane_tree(n, &mut rng);
            let start = Instant::now();
            let r = augment_tree_3connected(&t)?;
            let millis = start.elapsed().as_secs_f64() * 1e3;
            Ok(BenchRow {
                instance: format!("tree-{i}"),
                n,
                opt: tree_lower_bound(&t)?,
                achieved: r.new_edges.len(),
                millis,
            })
        }
        Suite::Flip4 => {
            let n = rng.gen_range(6..=40);
            let t = Triangulation::random_stacked(n, &mut rng)?;
            let start = Instant::now();
            let rep = eptas_report(&t, epsilon)?;
            let seq = execute_hitting_set(&t, &rep.edges)?;
            let millis = start.elapsed().as_secs_f64() * 1e3;
            let opt = exact_hitting_set(&t)?.len();
            Ok(BenchRow {
                instance: format!("stacked-{i}"),
                n,
                opt,
                achieved: seq.len(),
                millis,
            })
        }
        Suite::Convex => {
            let n = rng.gen_range(5..=8);
            let ct = ConvexTriangulation::random(n, &mut rng)?;
            let start = Instant::now();
            let f = dp_min_augment_3(&ct, 2)?;
            let millis = start.elapsed().as_secs_f64() * 1e3;
            let b = brute_min_augment(&ct, 3, 2)?;
            let size = |f: &Option<Vec<(usize, usize)>>| f.as_ref().map_or(0, Vec::len);
            Ok(BenchRow {
                instance: format!("convex-{i}"),
                n,
                opt: size(&b),
                achieved: size(&f),
                millis,
            })
        }
    }
}

/// CSV rows `instance,n,opt,achieved,ratio,millis`. Instance `i` draws from
/// its own generator, so the rows do not depend on `jobs`.
fn bench(suite: Suite, count: usize, epsilon: f64, jobs: usize, seed: u64) -> Result<String> {
    let mut rows: Vec<Option<Result<BenchRow>>> = (0..count).map(|_| None).collect();
    std::thread::scope(|s| {
        for (j, chunk) in rows.chunks_mut(count.div_ceil(jobs).max(1)).enumerate() {
            let base = j * count.div_ceil(jobs).max(1);
            s.spawn(move || {
                for (o, slot) in chunk.iter_mut().enumerate() {
                    *slot = Some(bench_one(suite, base + o, epsilon, seed));
                }
            });
        }
    });
    let mut out = String::from("instance,n,opt,achieved,ratio,millis\n");
    for r in rows {
        let r = r.expect("every slot filled")?;
        out.push_str(&format!(
            "{},{},{},{},{:.4},{:.3}\n",
            r.instance,
            r.n,
            r.opt,
            r.achieved,
            ratio(r.achieved, r.opt),
            r.millis
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["planaug"];
        full.extend_from_slice(args);
        let code = run(full, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        assert_eq!(call(&["verify", "--bogus"], "").0, EXIT_USAGE);
        assert_eq!(call(&["nope"], "").0, EXIT_USAGE);
        assert_eq!(call(&["--help"], "").0, 0);
    }

    #[test]
    fn verify_octahedron() {
        let g = GraphFile::from_plane(&Triangulation::octahedron().to_plane()).to_json();
        let (code, out, _) = call(&["verify", "--in", "-", "--k", "4", "--check"], &g);
        assert_eq!(code, 0);
        assert!(out.contains("4-connected: true"));
        let (code, out, _) = call(&["verify", "--k", "5"], &g);
        assert_eq!(code, 1);
        assert!(out.contains("5-connected: false"));
    }

    #[test]
    fn circulant_pipeline() {
        let (code, g, _) = call(&["gen", "circulant", "--n", "12", "--k", "3"], "");
        assert_eq!(code, 0);
        let (code, out, _) = call(&["verify", "--k", "6", "--lcr"], &g);
        assert_eq!(code, 0);
        assert!(out.contains("lcr: 6"), "{out}");
    }

    #[test]
    fn invalid_input_exits_2() {
        let (code, _, err) = call(&["verify", "--k", "3"], "{\"n\": 2, \"edges\": [[0, 5]]}");
        assert_eq!(code, 2);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn generators_are_deterministic() {
        for args in [
            vec!["gen", "knearest", "--n", "30", "--k", "4", "--seed", "7"],
            vec!["gen", "stacked", "--n", "20", "--seed", "3"],
            vec!["gen", "tree", "--n", "15", "--seed", "3"],
        ] {
            let a = call(&args, "");
            let b = call(&args, "");
            assert_eq!(a.0, 0);
            assert_eq!(a.1, b.1);
            let back = parse_graph(&a.1).unwrap();
            let again = match &back {
                LoadedGraph::Plane(p) => GraphFile::from_plane(p).to_json(),
                LoadedGraph::Geometric(q) => GraphFile::from_geometric(q).to_json(),
                _ => unreachable!(),
            };
            assert_eq!(again, a.1);
        }
    }

    #[test]
    fn tree_then_verify() {
        let (_, tree, _) = call(&["gen", "tree", "--n", "9", "--seed", "1"], "");
        let (code, g, err) = call(&["augment-tree", "--check"], &tree);
        assert_eq!(code, 0, "{err}");
        assert!(err.contains("3-connected: true"));
        assert_eq!(call(&["verify", "--k", "3"], &g).0, 0);
    }

    #[test]
    fn infeasible_convex_exits_1() {
        let (_, tri, _) = call(&["gen", "convex", "--n", "7"], "");
        let (code, _, err) = call(&["convex-aug", "--k", "3", "--ell", "0"], &tri);
        assert_eq!(code, 1, "{err}");
        let (code, out, _) = call(&["convex-aug", "--k", "3", "--ell", "5", "--oracle"], &tri);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["lcr"].as_u64().unwrap() <= 5);
        assert_eq!(v["optimal"], true);
    }

    #[test]
    fn bench_rows_do_not_depend_on_jobs() {
        let strip = |s: String| -> Vec<String> {
            s.lines()
                .map(|l| l.rsplit_once(',').unwrap().0.to_string())
                .collect()
        };
        let a = call(&["bench", "--suite", "tree", "--count", "6", "--jobs", "1"], "").1;
        let b = call(&["bench", "--suite", "tree", "--count", "6", "--jobs", "3"], "").1;
        assert_eq!(strip(a), strip(b));
    }
}
