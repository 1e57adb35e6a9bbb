//! Reduction, observations and the equivalence checkers.

mod clauses;
mod congruence;
mod context;
mod lax;
mod logrel;
mod rho;
mod sim;
mod step;

pub use clauses::{CbpvIndex, CheckConfig};
pub use congruence::congruence_check;
pub use context::{
    context_oracle_cbpv, enumerate_contexts_cbpv, enumerate_contexts_with, CbpvContext,
    ContextEnumerator,
};
pub use lax::cbpv_lax_check;
pub use logrel::{logrel_cbpv, CbpvLogrel, CbpvPair};
pub use rho::{
    rho1_subst, rho2_agreement, rho2_agreement_with, rho2_step, Agreement, CbpvStep, RhoObs,
    RhoOptions,
};
pub use sim::{
    cbpv_greatest_simulation, check_indices, check_weak_simulation, CbpvRelation, IndexError,
};
pub use step::{
    administrative, apply_value, cbpv_closure, may_terminates, observe, pm_reduct, step_rules,
    successors, successors_with, trace_cbpv, Cbpv, Observation, Rule, StepConfig, TraceRecord,
};
