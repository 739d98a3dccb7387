use super::*;
use crate::flip4::{separating_triangles_of, Triangulation};
use crate::graph::{key, vertex_connectivity_at_least};

fn one_clause() -> FormulaFile {
    FormulaFile {
        variables: 3,
        clauses: vec![[1, 2, 3]],
        order: vec![vec![1], vec![1], vec![1]],
    }
}

#[test]
fn example_reduction_shape() {
    let inst = SatInstance::new(&example_formula()).unwrap();
    let out = reduce_3to4(&inst).unwrap();
    assert_eq!(out.layout.variables.len(), 4);
    assert_eq!(out.layout.clauses.len(), 2);
    assert_eq!(out.tau, out.w4_total() / 2 + 6);
    let g = out.graph.graph();
    assert!(vertex_connectivity_at_least(g, 3).unwrap());
    for v in 0..g.n() {
        let d = g.degree(v);
        if d < 4 {
            assert_eq!(d, 3, "vertex {v}");
            assert!(
                out.gadget_map[v].kind.is_central(),
                "vertex {v} {:?}",
                out.gadget_map[v]
            );
        }
    }
    println!("n = {}, tau = {}", g.n(), out.tau);
}

#[test]
fn flip_variant_separating_triangles_are_the_units() {
    for (_, f) in formula_corpus() {
        let inst = SatInstance::new(&f).unwrap();
        let out = reduce_flip_variant(&inst).unwrap();
        let t = Triangulation::new(&out.graph).unwrap();
        let mut got: Vec<[usize; 3]> = separating_triangles_of(&t);
        for x in &mut got {
            x.sort_unstable();
        }
        got.sort_unstable();
        let mut want = out.units.clone();
        for x in &mut want {
            x.sort_unstable();
        }
        want.sort_unstable();
        assert_eq!(got, want);
    }
}

#[test]
fn witnesses_for_every_satisfying_assignment() {
    for (_, f) in formula_corpus() {
        let inst = SatInstance::new(&f).unwrap();
        let aug = reduce_3to4(&inst).unwrap();
        let flip = reduce_flip_variant(&inst).unwrap();
        assert_eq!(aug.tau, flip.tau);
        let n = inst.variable_count();
        for mask in 0..1u32 << n {
            let a: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            let w = witness_from_assignment(&aug, &a).unwrap();
            assert_eq!(w.is_some(), inst.satisfies(&a).unwrap());
            if let Some(w) = w {
                let r = check_witness(&aug, &w).unwrap();
                assert!(r.ok(), "{a:?} {r:?}");
                let seq = witness_flips(&flip, &a).unwrap().unwrap();
                let r = check_flip_witness(&flip, &seq).unwrap();
                assert!(r.ok(), "{a:?} {r:?}");
            }
        }
    }
}

#[test]
fn corpus_degrees_and_connectivity() {
    for (name, f) in formula_corpus() {
        let out = reduce_3to4(&SatInstance::new(&f).unwrap()).unwrap();
        let g = out.graph.graph();
        assert!(vertex_connectivity_at_least(g, 3).unwrap(), "{name}");
        assert!(!vertex_connectivity_at_least(g, 4).unwrap(), "{name}");
        for v in 0..g.n() {
            let d = g.degree(v);
            let t = out.gadget_map[v];
            if d < 4 {
                assert!(
                    d == 3 && t.kind.is_central(),
                    "{name}: vertex {v} {t:?} degree {d}"
                );
            }
        }
        assert_eq!(out.tau, out.w4_total() / 2 + 3 * f.clauses.len());
        for v in &out.layout.variables {
            assert_eq!(v.w4_count % 2, 0);
            assert!(v.w4_count >= 4);
        }
    }
}

#[test]
fn complement_of_symmetric_witness() {
    let (_, f) = formula_corpus()
        .into_iter()
        .find(|(n, _)| *n == "symmetric")
        .unwrap();
    let out = reduce_3to4(&SatInstance::new(&f).unwrap()).unwrap();
    for a in [[true, false, false], [false, true, true]] {
        let w = witness_from_assignment(&out, &a).unwrap().unwrap();
        assert_eq!(w.len(), out.tau);
        assert!(check_witness(&out, &w).unwrap().ok());
    }
}

#[test]
fn arity_mismatch_is_an_argument_error() {
    let out = reduce_3to4(&SatInstance::new(&one_clause()).unwrap()).unwrap();
    assert!(matches!(
        witness_from_assignment(&out, &[true]),
        Err(crate::error::Error::Argument(_))
    ));
}

#[test]
fn instance_file_round_trips() {
    let out = reduce_flip_variant(&SatInstance::new(&example_formula()).unwrap()).unwrap();
    let back = ReductionOutput::parse(&out.to_json()).unwrap();
    assert_eq!(back.graph, out.graph);
    assert_eq!(back.to_json(), out.to_json());
}

#[test]
fn variable_gadget_minimum_is_two_matchings() {
    let vg = build_variable_gadget(4).unwrap();
    let g = &vg.fragment.graph;
    for &c in &vg.fragment.central {
        assert_eq!(g.graph().degree(c), 3);
        for &d in &vg.fragment.central {
            assert!(!g.graph().has_edge(c, d));
        }
    }
    let (size, sets) = min_planar_augmentations(g, 2).unwrap().unwrap();
    assert_eq!(size, 2);
    let mut want: Vec<Vec<(usize, usize)>> = vg
        .matchings()
        .into_iter()
        .map(|mut m| {
            m.sort_unstable();
            m
        })
        .collect();
    want.sort();
    assert_eq!(sets, want);
    assert!(build_variable_gadget(5).is_err());
    assert!(build_variable_gadget(2).is_err());
}

#[test]
fn literal_gadget_cut_and_mirror() {
    let pos = build_literal_gadget(Polarity::Positive).unwrap();
    let neg = build_literal_gadget(Polarity::Negated).unwrap();
    assert_eq!(pos.graph.n(), 6);
    assert_eq!(pos.central.len(), 3);
    assert_eq!(pos.boundary.len(), 3);
    // mirror swaps b1 <-> b3 and l1 <-> l3
    let swap = |v: usize| [2, 1, 0, 3, 5, 4][v];
    let mut a: Vec<(usize, usize)> = pos
        .graph
        .graph()
        .edges()
        .iter()
        .map(|&(u, v)| key(swap(u), swap(v)))
        .collect();
    let mut b: Vec<(usize, usize)> = neg
        .graph
        .graph()
        .edges()
        .iter()
        .map(|&(u, v)| key(u, v))
        .collect();
    a.sort_unstable();
    b.sort_unstable();
    assert_eq!(a, b);
    for v in 0..6 {
        let mut r: Vec<usize> = pos.graph.neighbor_rotation(v).into_iter().map(swap).collect();
        r.reverse();
        let s = neg.graph.neighbor_rotation(swap(v));
        let k = s.iter().position(|&w| w == r[0]).unwrap();
        assert!((0..r.len()).all(|i| s[(k + i) % s.len()] == r[i]));
    }
}

#[test]
fn literal_cut_in_assembly() {
    let out = reduce_3to4(&SatInstance::new(&one_clause()).unwrap()).unwrap();
    for c in &out.layout.clauses {
        for l in &c.literals {
            assert!(separates(&out.graph, &l.boundary, &l.central));
            let d: Vec<usize> = l.central.iter().map(|&v| out.graph.graph().degree(v)).collect();
            assert_eq!(d, vec![3, 4, 3]);
        }
    }
}

#[test]
fn clause_gadget_shape() {
    let c = build_clause_gadget().unwrap();
    assert_eq!(c.central.len(), 4);
    for &v in &c.central {
        assert_eq!(c.graph.graph().degree(v), 3);
    }
    assert_eq!(c.attachment.len(), 3);
}

#[test]
fn all_false_clause_needs_four_edges() {
    let inst = SatInstance::new(&one_clause()).unwrap();
    let out = reduce_3to4(&inst).unwrap();
    // variable part of the witness
    let mut var_edges = Vec::new();
    for v in &out.layout.variables {
        let n = v.w4_count;
        for i in 0..n / 2 {
            let s = 2 * i;
            var_edges.push(key(v.slot_central[s], v.slot_central[s + 1]));
        }
    }
    let g = insert_in_faces(&out.graph, &var_edges).unwrap();
    let (size, _) = min_planar_augmentations(&g, 4).unwrap().unwrap();
    assert_eq!(size, 4);
    // with one literal true, three suffice
    let mut var_edges = Vec::new();
    for (x, v) in out.layout.variables.iter().enumerate() {
        let n = v.w4_count;
        let start = usize::from(x == 0);
        for i in 0..n / 2 {
            let s = (start + 2 * i) % n;
            var_edges.push(key(v.slot_central[s], v.slot_central[(s + 1) % n]));
        }
    }
    let g = insert_in_faces(&out.graph, &var_edges).unwrap();
    let (size, _) = min_planar_augmentations(&g, 3).unwrap().unwrap();
    assert_eq!(size, 3);
}
