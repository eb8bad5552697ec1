//! Well-linked sets, free sets, tangles and the wall-growing procedure.

mod grow;
mod linked;
mod oracle;
mod push;
mod window;

pub use grow::{find_wall, grow_wall, wall_representatives, GrownWall, TruncationCheck, WallConstants};
pub use linked::{
    build_s_free_set, build_s_free_set_with, find_balanced_separator, free_set_violation, is_balanced_separator,
    is_s_free, is_strongly_linked, is_strongly_linked_with, is_well_linked, is_well_linked_with,
    strong_linkedness_violation, treewidth_bound_check, well_linked_order, LinkednessWitness, WellLinkedWitness,
};
pub use oracle::{
    check_tangle_axioms, is_truncation, tangle_axiom_violation, truncation_violation, AxiomViolation, BigSide,
    Provenance, TangleOracle,
};
pub use push::{push_or_delete, push_or_delete_with, PushOutcome};
pub use window::{treewidth_window_search, Window};
