//! A hitting set flipped in the wrong order leaves a separating triangle;
//! the executor picks a safe order.

use planaug::flip4::{execute_hitting_set, naive_flip_order, separating_triangles_of, FlipInstance};

fn main() -> planaug::error::Result<()> {
    let text = include_str!("../fixtures/bad_flip.json");
    let (t, hit) = FlipInstance::parse(text)?;
    println!("n = {}, hitting set {:?}", t.n(), hit);
    println!("separating triangles: {:?}", separating_triangles_of(&t));

    let (naive, after) = naive_flip_order(&t, &hit)?;
    println!(
        "naive order {:?} leaves {:?}",
        naive.flips,
        separating_triangles_of(&after)
    );

    let seq = execute_hitting_set(&t, &hit)?;
    let after = t.replay(&seq)?;
    println!(
        "executor order {:?} leaves {:?}",
        seq.flips,
        separating_triangles_of(&after)
    );
    Ok(())
}
