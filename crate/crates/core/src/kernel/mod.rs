//! Language-agnostic machinery shared by the three calculi.

mod closure;
mod fixpoint;
mod oracle;
mod relation;
mod stepindex;
mod verdict;

pub use closure::{may_terminate, weak_closure, Semantics, Termination, WeakClosure};
pub use fixpoint::{simulation_fixpoint, FixpointRun};
pub use oracle::{context_oracle, egli_milner_match};
pub use relation::{Diagonal, IndexedRelation};
pub use stepindex::{is_antitone, stabilization_index, stepindex_chain, StepClauses, StepIndexed};
pub use verdict::{Status, Verdict, VerdictBuilder, Witness};
