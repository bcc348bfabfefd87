//! Connected multigraphs with loops and parallel edges, their edge classes,
//! automorphism counts, canonical forms and the enumerated families.

mod canon;
mod enumerate;
mod multigraph;
mod trees;

pub use canon::{canonical_form, CanonicalForm};
pub use enumerate::{
    enumerate_gamma_g_bounded, enumerate_gamma_r, enumerate_min_degree3, read_jsonl, write_jsonl,
    GraphEntry, GraphRecord, MAX_BOUNDED_VERTICES, MAX_GAMMA_R,
};
pub use multigraph::{aut_orders, edge_classes, ClassKind, EdgeClass, Multigraph};
pub use trees::{spanning_tree_reps, SpanningTreeRep};
