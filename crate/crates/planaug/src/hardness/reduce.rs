use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::assembly::{Assembly, GadgetKind, GadgetTag};
use super::formula::{FormulaFile, SatInstance};
use crate::error::{Error, Result};
use crate::flip4::{FlipSequence, Triangulation};
use crate::graph::io::GraphFile;
use crate::graph::{faces, insert_edge_in_face, key, vertex_connectivity_at_least, Corner, PlaneGraph};

/// Plain W4s placed before each literal: outer, inner, outer. Literal bases
/// never share an endpoint, and no inner vertex sees a long run of outer
/// ones.
const GAP_BEFORE_LITERAL: [UnitKind; 3] = [
    UnitKind::Plain(true),
    UnitKind::Plain(false),
    UnitKind::Plain(true),
];
/// Least number of W4s with their base on the inner side of a band; the
/// inner region must be a cycle of length at least 4.
pub const MIN_INNER: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Aug34,
    Flip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableLayout {
    pub w4_count: usize,
    /// Central vertex that is matched across the boundary of each slot.
    pub slot_central: Vec<usize>,
    /// Dotted edge between slot `s` and slot `s + 1`.
    pub slot_link: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiteralLayout {
    pub var: usize,
    pub positive: bool,
    /// First of the two slots it occupies.
    pub slot: usize,
    pub central: [usize; 3],
    pub boundary: [usize; 3],
    pub base: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseLayout {
    pub value: usize,
    pub terms: [usize; 3],
    /// Dotted edge between the value W4 and each term W4.
    pub sides: [(usize, usize); 3],
    /// Literal attached to each term.
    pub literals: [LiteralLayout; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub variables: Vec<VariableLayout>,
    pub clauses: Vec<ClauseLayout>,
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub variant: Variant,
    pub graph: PlaneGraph,
    pub tau: usize,
    pub gadget_map: Vec<GadgetTag>,
    /// Only for the flip variant.
    pub dotted_edges: Option<Vec<(usize, usize)>>,
    pub formula: FormulaFile,
    pub layout: Layout,
    /// Separating triangles built in on purpose: one per W4, three per
    /// literal.
    pub units: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    variant: Variant,
    tau: usize,
    padding_rule: String,
    graph: GraphFile,
    gadget_map: Vec<GadgetTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dotted_edges: Option<Vec<(usize, usize)>>,
    formula: FormulaFile,
    layout: Layout,
    units: Vec<[usize; 3]>,
}

fn padding_rule() -> String {
    format!(
        "3 plain W4s before each literal, one more when needed for polarity parity, \
         total even with at least {MIN_INNER} inner-side W4s"
    )
}

impl ReductionOutput {
    pub fn to_json(&self) -> String {
        let f = InstanceFile {
            variant: self.variant,
            tau: self.tau,
            padding_rule: padding_rule(),
            graph: GraphFile::from_plane(&self.graph),
            gadget_map: self.gadget_map.clone(),
            dotted_edges: self.dotted_edges.clone(),
            formula: self.formula.clone(),
            layout: self.layout.clone(),
            units: self.units.clone(),
        };
        let mut s = serde_json::to_string(&f).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: InstanceFile = serde_json::from_str(text)?;
        let graph = match f.graph.into_graph()?.plane() {
            Some(p) => p.clone(),
            None => return Err(Error::Validation("instance graph carries no rotation".into())),
        };
        if f.gadget_map.len() != graph.n() {
            return Err(Error::Validation("gadget map does not cover every vertex".into()));
        }
        Ok(ReductionOutput {
            variant: f.variant,
            graph,
            tau: f.tau,
            gadget_map: f.gadget_map,
            dotted_edges: f.dotted_edges,
            formula: f.formula,
            layout: f.layout,
            units: f.units,
        })
    }

    pub fn w4_total(&self) -> usize {
        self.layout.variables.iter().map(|v| v.w4_count).sum()
    }

    /// Vertices whose kind is central.
    pub fn centrals(&self) -> Vec<usize> {
        (0..self.gadget_map.len())
            .filter(|&v| self.gadget_map[v].kind.is_central())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum UnitKind {
    /// Plain W4; `true` puts its base on the outer side.
    Plain(bool),
    /// Literal gadget for (clause, site).
    Literal(usize, usize),
}

pub(crate) struct SiteInfo {
    pub base: (usize, usize),
    pub var: usize,
    pub positive: bool,
}

/// Lays one variable band into `a`: a closed strip of triangles, each a W4
/// (stacked central) or a literal, consecutive ones sharing a dotted rung.
pub(crate) fn build_band(
    a: &mut Assembly,
    x: usize,
    units: &[UnitKind],
    sites: &FxHashMap<(usize, usize), SiteInfo>,
    literals: &mut FxHashMap<(usize, usize), LiteralLayout>,
) -> Result<VariableLayout> {
    let m_out = units
        .iter()
        .filter(|u| !matches!(u, UnitKind::Plain(false)))
        .count();
    let n_in = units.len() - m_out;
    if m_out == 1 || m_out == 2 || n_in < 3 {
        return Err(Error::Internal(format!(
            "band of variable {x} has {m_out} outer and {n_in} inner units"
        )));
    }
    let mut outer: Vec<Option<usize>> = vec![None; m_out.max(1)];
    let mut k = 0;
    for u in units {
        match *u {
            UnitKind::Plain(true) => k += 1,
            UnitKind::Plain(false) => {}
            UnitKind::Literal(j, s) => {
                let (b1, b2) = sites[&(j, s)].base;
                for (idx, b) in [(k, b1), ((k + 1) % m_out, b2)] {
                    if outer[idx].is_some_and(|o| o != b) {
                        return Err(Error::Internal("two literal bases meet on a band".into()));
                    }
                    outer[idx] = Some(b);
                }
                k += 1;
            }
        }
    }
    let outer: Vec<usize> = outer
        .into_iter()
        .map(|o| o.unwrap_or_else(|| a.vertex(GadgetKind::VariableBoundary, x)))
        .collect();
    let inner: Vec<usize> = (0..n_in)
        .map(|_| a.vertex(GadgetKind::VariableBoundary, x))
        .collect();
    let mo = outer.len();
    let (mut co, mut ci) = (0usize, 0usize);
    let mut slot_central = Vec::new();
    let mut slot_link = Vec::new();
    let mut slot = 0;
    for u in units {
        match *u {
            UnitKind::Plain(true) => {
                let t = [outer[co % mo], outer[(co + 1) % mo], inner[ci % n_in]];
                co += 1;
                a.units.push(t);
                slot_central.push(a.stack(t, GadgetKind::VariableCentral, x));
                slot += 1;
            }
            UnitKind::Plain(false) => {
                let t = [inner[(ci + 1) % n_in], inner[ci % n_in], outer[co % mo]];
                ci += 1;
                a.units.push(t);
                slot_central.push(a.stack(t, GadgetKind::VariableCentral, x));
                slot += 1;
            }
            UnitKind::Literal(j, s) => {
                let (b1, b2) = (outer[co % mo], outer[(co + 1) % mo]);
                let apex = inner[ci % n_in];
                co += 1;
                let id = 3 * j + s;
                let l2 = a.stack([b1, b2, apex], GadgetKind::LiteralCentral, id);
                // l1 and l3 go into the faces that touch the previous and the
                // next rung; stacking replaces the face in place
                let f1 = [apex, b1, l2];
                let f3 = [b2, apex, l2];
                a.tris.retain(|t| *t != f1 && *t != f3);
                let l1 = a.stack(f1, GadgetKind::LiteralCentral, id);
                let l3 = a.stack(f3, GadgetKind::LiteralCentral, id);
                a.units.extend([[b1, b2, apex], f1, f3]);
                a.dot(l2, apex);
                let info = &sites[&(j, s)];
                literals.insert(
                    (j, s),
                    LiteralLayout {
                        var: info.var,
                        positive: info.positive,
                        slot,
                        central: [l1, l2, l3],
                        boundary: [b1, apex, b2],
                        base: key(b1, b2),
                    },
                );
                slot_central.extend([l1, l3]);
                slot_link.push(key(l2, apex));
                slot += 2;
            }
        }
        let rung = key(outer[co % mo], inner[ci % n_in]);
        a.dot(rung.0, rung.1);
        slot_link.push(rung);
    }
    Ok(VariableLayout {
        w4_count: slot,
        slot_central,
        slot_link,
    })
}

/// W4 sequence of one variable band. Positive literals start on even
/// slots, negated ones on odd slots, so a literal's two slots are matched
/// to each other exactly when the literal is false.
pub(crate) fn band_units(inst: &SatInstance, x: usize) -> Vec<UnitKind> {
    // inner-side units between outer-side ones keep every rung distinct
    // around the band
    let mut units = vec![
        UnitKind::Plain(true),
        UnitKind::Plain(false),
        UnitKind::Plain(false),
    ];
    let mut slot = 3;
    for &j in inst.order(x) {
        units.extend(GAP_BEFORE_LITERAL);
        slot += GAP_BEFORE_LITERAL.len();
        let p = inst.position_in_clause(j, x);
        let want = if inst.clauses()[j][p].positive { 0 } else { 1 };
        if slot % 2 != want {
            units.push(UnitKind::Plain(false));
            slot += 1;
        }
        let site = (0..3)
            .find(|&s| inst.rotation(j)[s] == p)
            .expect("rotation is a permutation");
        units.push(UnitKind::Literal(j, site));
        slot += 2;
    }
    let inner = |u: &[UnitKind]| u.iter().filter(|k| **k == UnitKind::Plain(false)).count();
    if slot % 2 == 1 {
        units.push(UnitKind::Plain(false));
    }
    while inner(&units) < MIN_INNER {
        units.extend([UnitKind::Plain(false), UnitKind::Plain(false)]);
    }
    units
}

/// Clause gadget: value W4 (p, q, r) with a term W4 on each side. Returns
/// value, terms, sides, and the literal bases per site.
pub(crate) fn build_clause(
    a: &mut Assembly,
    j: usize,
) -> (usize, [usize; 3], [(usize, usize); 3], [(usize, usize); 3]) {
    let [p, q, r, s1, s2, s3] = [(); 6].map(|_| a.vertex(GadgetKind::ClauseBoundary, j));
    let v = a.stack([p, q, r], GadgetKind::ValueCentral, j);
    let t1 = a.stack([q, p, s1], GadgetKind::TermCentral, j);
    let t2 = a.stack([r, q, s2], GadgetKind::TermCentral, j);
    let t3 = a.stack([p, r, s3], GadgetKind::TermCentral, j);
    a.units.extend([[p, q, r], [q, p, s1], [r, q, s2], [p, r, s3]]);
    let sides = [key(p, q), key(q, r), key(r, p)];
    for &(x, y) in &sides {
        a.dot(x, y);
    }
    // bases as oriented in the band: the literal triangle holds b1 -> b2
    let bases = [(q, s1), (r, s2), (p, s3)];
    for &(x, y) in &bases {
        a.dot(x, y);
    }
    (v, [t1, t2, t3], sides, bases)
}

fn assemble(inst: &SatInstance) -> Result<(Assembly, Layout)> {
    let mut a = Assembly::default();
    let m = inst.clauses().len();
    let mut sites = FxHashMap::default();
    let mut clause_parts = Vec::with_capacity(m);
    for j in 0..m {
        let (v, terms, sides, bases) = build_clause(&mut a, j);
        for s in 0..3 {
            let lit = inst.clauses()[j][inst.rotation(j)[s]];
            sites.insert(
                (j, s),
                SiteInfo {
                    base: bases[s],
                    var: lit.var,
                    positive: lit.positive,
                },
            );
        }
        clause_parts.push((v, terms, sides));
    }
    let mut literals = FxHashMap::default();
    let mut variables = Vec::with_capacity(inst.variable_count());
    for x in 0..inst.variable_count() {
        let units = band_units(inst, x);
        variables.push(build_band(&mut a, x, &units, &sites, &mut literals)?);
    }
    a.fill_regions()?;
    let clauses = clause_parts
        .into_iter()
        .enumerate()
        .map(|(j, (value, terms, sides))| ClauseLayout {
            value,
            terms,
            sides,
            literals: [0, 1, 2].map(|s| literals.remove(&(j, s)).expect("every site has a literal")),
        })
        .collect();
    Ok((a, Layout { variables, clauses }))
}

fn reduce(inst: &SatInstance, variant: Variant) -> Result<ReductionOutput> {
    let (a, layout) = assemble(inst)?;
    let full = a.plane()?;
    // a closed sphere triangulation or the construction is broken
    Triangulation::new(&full).map_err(|e| Error::Internal(format!("assembled surface: {e}")))?;
    let graph = match variant {
        Variant::Aug34 => a.plane_without_dotted()?,
        Variant::Flip => full,
    };
    let w4: usize = layout.variables.iter().map(|v| v.w4_count).sum();
    let mut dotted = a.dotted.clone();
    dotted.sort_unstable();
    Ok(ReductionOutput {
        variant,
        graph,
        tau: w4 / 2 + 3 * inst.clauses().len(),
        gadget_map: a.tags,
        dotted_edges: (variant == Variant::Flip).then_some(dotted),
        formula: inst.to_file(),
        layout,
        units: a.units,
    })
}

/// Planar 3-SAT to planar 3-connected-to-4-connected augmentation.
pub fn reduce_3to4(inst: &SatInstance) -> Result<ReductionOutput> {
    reduce(inst, Variant::Aug34)
}

/// The same construction with every dotted edge kept, giving a
/// triangulation whose augmenting edges are flips of dotted edges.
pub fn reduce_flip_variant(inst: &SatInstance) -> Result<ReductionOutput> {
    reduce(inst, Variant::Flip)
}

/// Witness pairs (new edge, dotted edge it replaces).
fn witness_pairs(
    out: &ReductionOutput,
    assignment: &[bool],
) -> Result<Option<Vec<((usize, usize), (usize, usize))>>> {
    let nvars = out.layout.variables.len();
    if assignment.len() != nvars {
        return Err(Error::Argument(format!(
            "assignment has {} values for {nvars} variables",
            assignment.len()
        )));
    }
    let mut pairs = Vec::with_capacity(out.tau);
    let mut clause_pairs = Vec::new();
    for c in &out.layout.clauses {
        let Some(win) = (0..3).find(|&s| assignment[c.literals[s].var] == c.literals[s].positive) else {
            return Ok(None);
        };
        for s in 0..3 {
            if s == win {
                clause_pairs.push((key(c.value, c.terms[s]), c.sides[s]));
            } else {
                clause_pairs.push((key(c.terms[s], c.literals[s].central[1]), c.literals[s].base));
            }
        }
    }
    for (x, var) in out.layout.variables.iter().enumerate() {
        let n = var.w4_count;
        // true pairs slot 2i+1 with 2i+2, false pairs 2i with 2i+1
        let start = usize::from(assignment[x]);
        for i in 0..n / 2 {
            let s = (start + 2 * i) % n;
            let e = key(var.slot_central[s], var.slot_central[(s + 1) % n]);
            pairs.push((e, var.slot_link[s]));
        }
    }
    pairs.extend(clause_pairs);
    Ok(Some(pairs))
}

/// Edges that 4-connect the 3→4 instance when `assignment` satisfies the
/// formula; `None` otherwise.
pub fn witness_from_assignment(
    out: &ReductionOutput,
    assignment: &[bool],
) -> Result<Option<Vec<(usize, usize)>>> {
    Ok(witness_pairs(out, assignment)?.map(|p| p.into_iter().map(|(e, _)| e).collect()))
}

/// Flips of dotted edges realizing the same witness in the flip variant.
pub fn witness_flips(out: &ReductionOutput, assignment: &[bool]) -> Result<Option<FlipSequence>> {
    Ok(witness_pairs(out, assignment)?.map(|p| FlipSequence {
        flips: p.into_iter().map(|(_, d)| d).collect(),
    }))
}

/// Inserts each edge into a face containing both endpoints.
pub fn insert_in_faces(g: &PlaneGraph, edges: &[(usize, usize)]) -> Result<PlaneGraph> {
    let mut g = g.clone();
    for &(u, v) in edges {
        let walks = faces(&g);
        let mut done = false;
        for w in &walks {
            let cu = w.iter().find(|&&h| g.end_vertex(h) == u);
            let cv = w.iter().find(|&&h| g.end_vertex(h) == v);
            if let (Some(&hu), Some(&hv)) = (cu, cv) {
                g = insert_edge_in_face(
                    &g,
                    Corner { vertex: u, after: hu },
                    Corner { vertex: v, after: hv },
                )?;
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::Infeasible(format!("{u} and {v} share no face")));
        }
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub edges: usize,
    pub tau: usize,
    pub planar: bool,
    pub four_connected: bool,
}

impl WitnessReport {
    pub fn ok(&self) -> bool {
        self.edges == self.tau && self.planar && self.four_connected
    }
}

/// Checks a 3→4 witness: inserted face by face into the embedding, then
/// tested for 4-connectivity by flows.
pub fn check_witness(out: &ReductionOutput, edges: &[(usize, usize)]) -> Result<WitnessReport> {
    if out.variant != Variant::Aug34 {
        return Err(Error::Argument(
            "edge witnesses belong to the aug34 variant".into(),
        ));
    }
    let (planar, four_connected) = match insert_in_faces(&out.graph, edges) {
        Ok(g) => (
            g.extends_embedding_of(&out.graph),
            vertex_connectivity_at_least(g.graph(), 4)?,
        ),
        Err(Error::Infeasible(_)) | Err(Error::DuplicateEdge(..)) => (false, false),
        Err(e) => return Err(e),
    };
    Ok(WitnessReport {
        edges: edges.len(),
        tau: out.tau,
        planar,
        four_connected,
    })
}

/// Replays flips on the flip variant; every flip must be legal.
pub fn check_flip_witness(out: &ReductionOutput, seq: &FlipSequence) -> Result<WitnessReport> {
    if out.variant != Variant::Flip {
        return Err(Error::Argument(
            "flip witnesses belong to the flip variant".into(),
        ));
    }
    let dotted = out.dotted_edges.as_deref().unwrap_or(&[]);
    if let Some(&(u, v)) = seq
        .flips
        .iter()
        .find(|&&(u, v)| dotted.binary_search(&key(u, v)).is_err())
    {
        return Err(Error::Validation(format!("flip of {u}-{v}, which is not dotted")));
    }
    let t = Triangulation::new(&out.graph)?;
    let after = t.replay(seq)?;
    Ok(WitnessReport {
        edges: seq.len(),
        tau: out.tau,
        planar: true,
        four_connected: vertex_connectivity_at_least(&after.graph(), 4)?,
    })
}
