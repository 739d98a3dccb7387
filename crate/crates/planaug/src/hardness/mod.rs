//! Planar 3-SAT reduces to augmenting a planar 3-connected graph to
//! 4-connectivity with a fixed number of edges, and to flipping a
//! triangulation to 4-connectivity.
//!
//! Every gadget is assembled from counterclockwise triangles. A modified W4
//! is a triangle with a central vertex stacked inside; consecutive W4s of a
//! variable share a dotted edge. The flip variant keeps the dotted edges,
//! the augmentation variant deletes them, and each augmenting edge joins the
//! two centrals on either side of a dotted edge.

mod assembly;
pub mod formula;
pub mod gadgets;
pub mod reduce;

pub use assembly::{GadgetKind, GadgetTag};
pub use formula::{example_formula, formula_corpus, FormulaFile, Literal, SatInstance};
pub use gadgets::{
    build_clause_gadget, build_literal_gadget, build_variable_gadget, face_chords, min_planar_augmentations,
    separates, FaceChord, GadgetFragment, Polarity, VariableGadget,
};
pub use reduce::{
    check_flip_witness, check_witness, insert_in_faces, reduce_3to4, reduce_flip_variant, witness_flips,
    witness_from_assignment, ClauseLayout, Layout, LiteralLayout, ReductionOutput, VariableLayout, Variant,
    WitnessReport,
};

#[cfg(test)]
mod tests;
