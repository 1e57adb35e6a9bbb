//! Two-sorted fine-grain call-by-value combinatory logic.

mod context;
mod lax;
mod logrel;
mod sim;
mod step;
mod term;

pub use context::{context_oracle_fg, enumerate_contexts_fg, FgContext};
pub use lax::fg_lax_bialgebra_check;
pub use logrel::{fg_logrel, fg_logrel_inputs, FgLogrel};
pub use sim::{fg_check_simulation, fg_greatest_simulation, FgRelation, FgRuns};
pub use step::{fg_apply_label, fg_closure, fg_step, Fg, FgRun};
pub use term::{
    cc, cv, fix, kp, random_comp, random_value, ret, sp, spp, vc, vv, FgComp, FgTables, FgTerm,
    FgValue, Sort,
};
