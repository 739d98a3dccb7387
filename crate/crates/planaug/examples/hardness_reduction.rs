//! Planar 3-SAT to 3→4 augmentation, and the flip variant, with witnesses
//! built from satisfying assignments.

use planaug::hardness::{
    check_flip_witness, check_witness, example_formula, reduce_3to4, reduce_flip_variant, witness_flips,
    witness_from_assignment, SatInstance,
};

fn main() -> planaug::error::Result<()> {
    let inst = SatInstance::new(&example_formula())?;
    let aug = reduce_3to4(&inst)?;
    let flip = reduce_flip_variant(&inst)?;
    println!(
        "n = {}, tau = {}, W4s = {}",
        aug.graph.n(),
        aug.tau,
        aug.w4_total()
    );
    let vars = inst.variable_count();
    for bits in 0..1u32 << vars {
        let a: Vec<bool> = (0..vars).map(|i| bits >> i & 1 == 1).collect();
        match witness_from_assignment(&aug, &a)? {
            None => println!("{a:?}: unsatisfied"),
            Some(edges) => {
                let r = check_witness(&aug, &edges)?;
                let seq = witness_flips(&flip, &a)?.expect("same formula");
                let rf = check_flip_witness(&flip, &seq)?;
                println!(
                    "{a:?}: {} edges ok={}, {} flips ok={}",
                    r.edges,
                    r.ok(),
                    rf.edges,
                    rf.ok()
                );
            }
        }
    }
    Ok(())
}
